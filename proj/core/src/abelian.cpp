#include <algorithm>
#include <numeric>

#include "quiverks/fitting.hpp"

namespace qks {

mpz_class FiniteAbelianGroup::order() const {
  mpz_class n = 1;
  for (auto o : orders) n *= mpz_class(std::to_string(o));
  return n;
}

std::string FiniteAbelianGroup::to_string() const {
  if (orders.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    if (i != 0) s += " x ";
    s += "Z/" + std::to_string(orders[i]);
  }
  return s;
}

bool multiplication_eventually_zero(std::uint64_t n, std::uint64_t k) {
  if (n == 0) throw Error(Errc::InvalidArgument, "cyclic order must be positive");
  // n | k^j for some j iff every prime of n divides k: strip gcds.
  std::uint64_t rest = n;
  for (std::uint64_t g = std::gcd(rest, k); g > 1; g = std::gcd(rest, k)) rest /= g;
  return rest == 1;
}

AbelianFitting abelian_fitting_demo(const FiniteAbelianGroup& a, std::uint64_t k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "k must be at least 1");
  AbelianFitting out;
  for (auto n : a.orders) {
    if (n == 0) throw Error(Errc::InvalidArgument, "cyclic order must be positive");
    std::uint64_t good = n;
    std::uint64_t bad = 1;
    for (std::uint64_t g = std::gcd(good, k); g > 1; g = std::gcd(good, k)) {
      good /= g;
      bad *= g;
    }
    if (bad > 1) out.f0.orders.push_back(bad);
    if (good > 1) out.f1.orders.push_back(good);
  }
  std::sort(out.f0.orders.begin(), out.f0.orders.end());
  std::sort(out.f1.orders.begin(), out.f1.orders.end());
  return out;
}

}  // namespace qks
