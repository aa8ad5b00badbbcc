#include "quiverks/poly.hpp"

#include <set>

namespace qks {

namespace {

constexpr unsigned long kDivisorLimit = 1000000000000UL;

std::vector<unsigned long> divisors(const mpz_class& n) {
  std::vector<unsigned long> out;
  mpz_class a = abs(n);
  if (a == 0 || a > kDivisorLimit) return out;
  unsigned long v = a.get_ui();
  for (unsigned long d = 1; d * d <= v; ++d) {
    if (v % d != 0) continue;
    out.push_back(d);
    if (d != v / d) out.push_back(v / d);
  }
  return out;
}

}  // namespace

std::vector<mpq_class> rational_roots(const Poly<RationalField>& p) {
  std::vector<mpq_class> roots;
  if (p.degree() <= 0) return roots;
  mpz_class den_lcm = 1;
  for (const auto& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
  std::vector<mpz_class> ints;
  for (const auto& c : p.coeffs()) ints.push_back(mpz_class(c * den_lcm));
  std::size_t shift = 0;
  while (shift < ints.size() && ints[shift] == 0) ++shift;
  if (shift > 0) roots.push_back(0);
  if (ints.size() - shift <= 1) return roots;
  auto num_divs = divisors(ints[shift]);
  auto den_divs = divisors(ints.back());
  std::set<mpq_class> found;
  for (auto r : num_divs) {
    for (auto s : den_divs) {
      for (int sign : {1, -1}) {
        mpq_class cand(static_cast<long>(r) * sign, s);
        cand.canonicalize();
        if (found.count(cand)) continue;
        if (sgn(p.evaluate(cand)) == 0) found.insert(cand);
      }
    }
  }
  roots.insert(roots.end(), found.begin(), found.end());
  return roots;
}

}  // namespace qks
