#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "quiverks_cli/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = qks::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(QUIVERKS_TEST_DATA) + "/" + name; }

}  // namespace

TEST_CASE("end: both methods print the same basis") {
  auto direct = run({"end", data("jordan_loop.json"), "--method", "direct"});
  auto central = run({"end", data("jordan_loop.json"), "--method", "centralizer"});
  CHECK(direct.code == 0);
  CHECK(central.code == 0);
  CHECK(direct.out == central.out);
  CHECK(direct.out.find("dimension: 5") != std::string::npos);
  CHECK(run({"end", data("jordan_loop.json"), "--method", "magic"}).code == qks::cli::kExitInputError);
}

TEST_CASE("verify is deterministic") {
  auto a = run({"verify", "--seed", "7", "--cases", "50"});
  auto b = run({"verify", "--seed", "7", "--cases", "50"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("passed 50/50") != std::string::npos);
  auto c = run({"verify", "--seed", "8", "--cases", "5"});
  CHECK(c.out != a.out);
  auto j = run({"verify", "--seed", "7", "--cases", "3", "--json"});
  CHECK(j.code == 0);
  CHECK(j.out.front() == '{');
}

TEST_CASE("demo-abelian") {
  auto r = run({"demo-abelian", "--orders", "12", "--k", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("F0 = Z/4") != std::string::npos);
  CHECK(r.out.find("F1 = Z/3") != std::string::npos);
  CHECK(run({"demo-abelian", "--orders", "12", "--k", "0"}).code == qks::cli::kExitInputError);
}

TEST_CASE("decompose") {
  auto r = run({"decompose", data("a2_rank1.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("summands: 3") != std::string::npos);
  auto w = run({"decompose", data("jordan_loop.json"), "--witnesses", "--seed", "3"});
  CHECK(w.code == 0);
  CHECK(w.out.find("dims (3)") != std::string::npos);
  auto j1 = run({"decompose", data("jordan_loop.json"), "--json"});
  auto j2 = run({"decompose", data("jordan_loop.json"), "--json", "--seed", "99"});
  CHECK(j1.code == 0);
  CHECK(j1.out == j2.out);
}

TEST_CASE("iso exit codes") {
  CHECK(run({"iso", data("jordan_loop.json"), data("jordan_conjugate.json")}).code == qks::cli::kExitOk);
  CHECK(run({"iso", data("jordan_loop.json"), data("jordan_other.json")}).code == qks::cli::kExitNegative);
}

TEST_CASE("hom and fitting") {
  auto h = run({"hom", data("a2_rank1.json"), data("a2_rank1.json")});
  CHECK(h.code == 0);
  auto f = run({"fitting", data("jordan_loop.json"), "--endo", data("jordan_endo.json")});
  CHECK(f.code == 0);
  CHECK(f.out.find("nilpotency index 2") != std::string::npos);
  auto g = run({"fitting", data("idempotent_functor.json"), "--endo", data("idempotent_endo.json")});
  CHECK(g.code == 0);
  CHECK(run({"fitting", data("jordan_loop.json"), "--endo", data("idempotent_endo.json")}).code ==
        qks::cli::kExitInputError);
}

TEST_CASE("pairing commands") {
  auto d = run({"pairing", "decompose", data("pairing_diag.json")});
  CHECK(d.code == 0);
  CHECK(d.out.find("copies 4") != std::string::npos);
  CHECK(run({"pairing", "isometry", data("pairing_diag.json"), data("pairing_scaled.json")}).code == 0);
  CHECK(run({"pairing", "isometry", data("pairing_diag.json"), data("pairing_rank1.json")}).code ==
        qks::cli::kExitNegative);
}

TEST_CASE("input errors exit with code 2") {
  auto shape = run({"decompose", data("bad_shape.json")});
  CHECK(shape.code == qks::cli::kExitInputError);
  CHECK(shape.err.find("ShapeError") != std::string::npos);
  CHECK(run({"decompose", data("missing.json")}).code == qks::cli::kExitInputError);
  CHECK(run({"no-such-command"}).code == qks::cli::kExitInputError);
  CHECK(run({"iso", data("jordan_loop.json"), data("a2_rank1.json")}).code == qks::cli::kExitInputError);
  CHECK(run({"--help"}).code == 0);
}
