#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "qrep/cli.hpp"
#include "qrep/linalg.hpp"

using namespace qrep;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
  auto dir = std::filesystem::temp_directory_path() / "qrep_cli_test";
  std::filesystem::create_directories(dir);
  auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

bool has_line(const std::string& out, const std::string& line) {
  std::istringstream in(out);
  for (std::string l; std::getline(in, l);)
    if (l == line) return true;
  return false;
}

const char* kKronJordan = R"(quiver kronecker
vertex 1
vertex 2
arrow alpha: 1 -> 2
arrow beta: 1 -> 2
dim 1 = 2
dim 2 = 2
mat alpha = [[1, 0]; [0, 1]]
mat beta = [[0, 0]; [1, 0]]
)";

const char* kC3 = R"(quiver C3
vertex 1
vertex 2
vertex 3
arrow a1: 1 -> 2
arrow a2: 2 -> 3
arrow a3: 3 -> 1
dim 1 = 1
dim 2 = 1
dim 3 = 1
mat a1 = [[1]]
mat a2 = [[1]]
mat a3 = [[0]]
)";

}  // namespace

TEST_CASE("analyze reports End, transitivity and indecomposability") {
  auto path = write_temp("kron_jordan2.rep", kKronJordan);
  Result r = call({"analyze", path});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "end_dim=2"));
  CHECK(has_line(r.out, "transitive=false"));
  CHECK(has_line(r.out, "indecomposable=true"));
  CHECK(has_line(r.out, "seed=0"));
  CHECK(has_line(r.out, "tol=1e-09"));
}

TEST_CASE("analyze prints a split for decomposable input") {
  auto path = write_temp("kron_diag.rep", R"(vertex 1
vertex 2
arrow alpha: 1 -> 2
arrow beta: 1 -> 2
dim 1 = 2
dim 2 = 2
mat alpha = [[1, 0]; [0, 1]]
mat beta = [[1, 0]; [0, 2]]
)");
  Result r = call({"--format", "json", "analyze", path});
  REQUIRE(r.code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["indecomposable"] == false);
  CHECK(j["end_dim"] == 2);
  CHECK(j["witness"]["idempotent_residual"].get<double>() <= 1e-8);
  CHECK(j["witness"]["idempotent"].get<std::string>().find("map 1 = ") == 0);
}

TEST_CASE("cycle cross-checks the closed form") {
  Result r = call({"cycle", write_temp("c3_110.rep", kC3)});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "criterion=true"));
  CHECK(has_line(r.out, "end_dim=1"));
  CHECK(has_line(r.out, "agree=true"));
  // not an oriented cycle
  CHECK(call({"cycle", write_temp("kron.rep", kKronJordan)}).code == 3);
}

TEST_CASE("opmodel") {
  Result r = call({"opmodel", "--pair", "shift-rank-one", "--lambda", "seq:reciprocal", "--w", "seq:reciprocal", "--n",
                   "16", "--density"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "density.verdict=dense"));
  CHECK(has_line(r.out, "ker_a=0"));

  Result nd = call({"opmodel", "--pair", "shift-rank-one", "--lambda", "seq:one-minus-pow:2", "--w", "seq:reciprocal",
                    "--n", "8", "--density"});
  CHECK(has_line(nd.out, "density.verdict=not_dense"));

  Result bil = call({"--format", "json", "opmodel", "--pair", "bilateral", "--lambda", "seq:const:1", "--w",
                     "seq:const:1", "--n", "4", "--phi", "--four-subspace"});
  REQUIRE(bil.code == 0);
  auto j = nlohmann::json::parse(bil.out);
  CHECK(j["phi"]["injective"] == true);
  CHECK(j["phi"]["surjective"] == true);
  CHECK(j["four_subspace"]["agree"] == true);

  CHECK(call({"opmodel", "--pair", "bilateral", "--lambda", "seq:const:1", "--w", "seq:const:1", "--n", "4",
              "--density"})
            .code == 3);
  CHECK(call({"opmodel", "--pair", "shift-rank-one", "--lambda", "seq:nope", "--w", "seq:reciprocal", "--n", "4"}).code ==
        2);
  CHECK(call({"opmodel", "--pair", "shift-rank-one", "--lambda", "seq:list:[1,1]:reciprocal", "--w", "seq:reciprocal",
              "--n", "4"})
            .code == 3);
}

TEST_CASE("reflect and build") {
  auto path = write_temp("kron_jordan2.rep", kKronJordan);
  Result r = call({"reflect", path, "--vertex", "2", "--dir", "plus", "--verify-end-iso"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "end_iso.isomorphic=true"));
  CHECK(has_line(r.out, "  arrow alpha~: 2 -> 1"));
  Result bad = call({"reflect", path, "--vertex", "1", "--dir", "plus"});
  CHECK(bad.code == 3);
  CHECK(bad.err.find("not a sink") != std::string::npos);

  Result b = call({"build", "--family", "e6tilde", "--op", "jordan:2"});
  CHECK(b.code == 0);
  CHECK(has_line(b.out, "end_dim=2"));
  CHECK(has_line(b.out, "indecomposable=true"));
  auto mat = write_temp("diag.mat", "# diag(1,2)\n[[1, 0];\n [0, 2]]\n");
  Result d = call({"build", "--family", "d4tilde", "--op", "file:" + mat});
  CHECK(has_line(d.out, "indecomposable=false"));
  CHECK(call({"build", "--family", "e9tilde", "--op", "jordan:2"}).code == 2);
  CHECK(call({"build", "--family", "d4tilde", "--op", "shift:2"}).code == 2);
  CHECK(call({"build", "--family", "d4tilde", "--op", "file:" + write_temp("rect.mat", "[[1, 2]]")}).code == 3);
}

TEST_CASE("exit codes and flags") {
  CHECK(call({}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"analyze", "/nonexistent.rep"}).code == 2);
  CHECK(call({"analyze", write_temp("broken.rep", "vertex 1\nmat x = [[1]]\n")}).code == 2);
  CHECK(call({"--tol", "-1", "analyze", write_temp("k.rep", kKronJordan)}).code == 2);
  CHECK(call({"--format", "xml", "analyze", write_temp("k.rep", kKronJordan)}).code == 2);
  CHECK(call({"--help"}).code == 0);
  const double before = default_tolerances().relative;
  Result r = call({"analyze", write_temp("k.rep", kKronJordan), "--tol", "1e-6"});
  CHECK(r.code == 0);
  CHECK(has_line(r.out, "tol=1e-06"));
  CHECK(default_tolerances().relative == before);
}

TEST_CASE("verify output is byte-identical across runs") {
  Result a = call({"verify", "--suite", "cyclic", "--seed", "7", "--trials", "5"});
  Result b = call({"verify", "--suite", "cyclic", "--seed", "7", "--trials", "5"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(has_line(a.out, "ok=true"));
  CHECK(call({"verify", "--suite", "everything"}).code == 2);
  CHECK(call({"verify", "--suite", "cyclic", "--trials", "0"}).code == 2);
}
