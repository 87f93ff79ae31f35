#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "heatjet/cli/commands.hpp"
#include "heatjet/cli/problem_spec.hpp"
#include "heatjet/cli/result_doc.hpp"
#include "heatjet/cli/verification.hpp"
#include "heatjet/error.hpp"
#include "support/mehler.hpp"

using namespace heatjet;
using namespace heatjet::cli;

namespace fs = std::filesystem;

namespace {

const fs::path kData = HEATJET_DATA_DIR;

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() /
            ("heatjet_cli_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)) + "_" +
             std::to_string(counter_++));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = path_ / name;
    std::ofstream(p, std::ios::binary) << text;
    return p.string();
  }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

ProblemSpec load_example(const std::string& name) {
  return load_problem_spec((kData / name).string());
}

Rational value_at_origin(const JetPoly& a) {
  return a.coefficient(MultiIndex(a.dim()))(0, 0);
}

struct Captured {
  int code;
  std::string out;
  std::string err;
};

template <class F>
Captured capture(F&& f) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = f(out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("problem files: defaults and accepted fields") {
  const ProblemSpec spec =
      parse_problem_spec(R"({"dimension": 2, "max_k": 1, "max_degree": 0})");
  CHECK(spec.dimension == 2);
  CHECK(spec.rank == 1);
  CHECK(spec.jet_degree == kExactDegree);
  CHECK(spec.metric.empty());
  CHECK(spec.first_order.empty());
  CHECK(spec.potential.dim() == 0);
  CHECK(spec.verify == VerifyLevel::none);
  CHECK_FALSE(spec.reinstate_4pi);

  const ProblemSpec twisted = load_example("twisted_bundle.json");
  CHECK(twisted.rank == 2);
  REQUIRE(twisted.first_order.size() == 2);
  CHECK(twisted.first_order[0].coefficient(MultiIndex{0, 1}) == Matrix(2, 2, {0, 1, -1, 0}));
  CHECK(twisted.potential.coefficient(MultiIndex{1, 0}) ==
        Matrix(2, 2, {0, Rational(1, 2), Rational(1, 2), 0}));
}

TEST_CASE("problem files: malformed input is a parse error") {
  const char* bad[] = {
      R"({"dimension": 2, "max_k": 1)",
      R"([1, 2])",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "colour": 1})",
      R"({"dimension": 0, "max_k": 1, "max_degree": 0})",
      R"({"dimension": 7, "max_k": 1, "max_degree": 0})",
      R"({"dimension": 2, "max_k": -1, "max_degree": 0})",
      R"({"dimension": 2, "max_k": 1})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "jet_degree": "lots"})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "potential": [{"exponents": [0], "value": "1"}]})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "potential": [{"exponents": [0, 0], "value": 1}]})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "potential": [{"exponents": [0, 0], "value": "1/0"}]})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "potential": [{"exponents": [0, 65], "value": "1"}]})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "jet_degree": 1, "potential": [{"exponents": [1, 1], "value": "1"}]})",
      R"({"dimension": 2, "rank": 2, "max_k": 1, "max_degree": 0, "potential": [{"exponents": [0, 0], "value": ["1", "2"]}]})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "metric": [[[], []]]})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "options": {"verify": "paranoid"}})",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0, "options": {"colour": true}})",
      R"({"format": "something-else", "dimension": 2, "max_k": 1, "max_degree": 0})",
  };
  for (const char* text : bad) {
    INFO(text);
    CHECK_THROWS_AS(parse_problem_spec(text), ParseError);
  }
}

TEST_CASE("degree requirements follow R = 2K + D and 2(R - 1)") {
  for (int k = 0; k <= 4; ++k) {
    for (int d = 0; d <= 4; ++d) {
      const DegreeRequirements req = degree_requirements(k, d);
      const int r = 2 * k + d;
      const int op = r == 0 ? 0 : 2 * (r - 1);
      CHECK(req.difference_order == r);
      CHECK(req.operator_degree == op);
      CHECK(req.metric_degree == op + 1);
      CHECK(req.first_order_degree == op);
      CHECK(req.potential_degree == op);
    }
  }
}

TEST_CASE("short input jets are a truncation error; bad metrics a validation error") {
  ProblemSpec spec = parse_problem_spec(
      R"({"dimension": 2, "max_k": 2, "max_degree": 2, "jet_degree": 9,
          "potential": [{"exponents": [0, 0], "value": "1"}]})");
  CHECK_THROWS_AS(build_operator(spec), TruncationError);
  spec.jet_degree = 10;
  CHECK_NOTHROW(build_operator(spec));

  // The flat model with no inputs needs nothing.
  const ProblemSpec flat =
      parse_problem_spec(R"({"dimension": 3, "max_k": 3, "max_degree": 3, "jet_degree": 0})");
  CHECK_NOTHROW(build_operator(flat));

  const ProblemSpec skew = parse_problem_spec(
      R"({"dimension": 2, "max_k": 1, "max_degree": 0,
          "metric": [[[{"exponents": [0, 0], "value": "1"}, {"exponents": [1, 0], "value": "1"}], []],
                     [[], [{"exponents": [0, 0], "value": "1"}]]]})");
  CHECK_THROWS_AS(problem_metric(skew), ValidationError);
}

TEST_CASE("compute: closed-form examples") {
  SUBCASE("flat Laplacian") {
    const ResultDoc doc = compute_result(load_example("flat_r3.json"));
    CHECK(doc.max_degree == 4);
    CHECK(doc.heat[0] == JetPoly::constant(3, Role::endomorphism, 1, 4, Matrix::identity(1)));
    for (int k = 1; k <= doc.max_k; ++k) CHECK(doc.heat[k].is_zero());
    REQUIRE(doc.hat);
    CHECK(*doc.hat == doc.heat);
  }
  SUBCASE("constant potential: a_k = (-1)^k / k!") {
    const ResultDoc doc = compute_result(load_example("constant_potential.json"));
    for (int k = 0; k <= doc.max_k; ++k) {
      const JetPoly expected = JetPoly::constant(2, Role::endomorphism, 1, 2,
                                                 Matrix::scalar(pow(Rational(-1), k) / factorial(k)));
      CHECK(doc.heat[k] == expected);
    }
  }
  SUBCASE("harmonic oscillator on the diagonal") {
    const ResultDoc doc = compute_result(load_example("harmonic_oscillator.json"));
    const std::vector<Rational> mehler = testing::mehler_diagonal_series(doc.max_k);
    for (int k = 0; k <= doc.max_k; ++k)
      CHECK(value_at_origin(doc.heat[k]) == mehler[static_cast<std::size_t>(k)]);
  }
  SUBCASE("round sphere metric: a_1(0) = scal / 6 = 1/3") {
    const ResultDoc doc = compute_result(load_example("curved_surface.json"));
    CHECK(value_at_origin(doc.heat[1]) == Rational(1, 3));
    REQUIRE(doc.verification);
    CHECK(doc.verification->passed());
  }
}

TEST_CASE("result documents round-trip losslessly and deterministically") {
  for (const char* name : {"twisted_bundle.json", "curved_surface.json", "harmonic_oscillator.json"}) {
    INFO(name);
    ProblemSpec spec = load_example(name);
    spec.reinstate_4pi = true;
    spec.verify = VerifyLevel::fast;
    const ResultDoc doc = compute_result(spec);
    const std::string text = to_json(doc);
    const ResultDoc back = result_from_json(text);
    CHECK(back == doc);
    CHECK(to_json(back) == text);
    CHECK(to_json(compute_result(spec)) == text);
  }
}

TEST_CASE("reinstate_4pi only flags the prefactor") {
  ProblemSpec spec = load_example("constant_potential.json");
  const ResultDoc plain = compute_result(spec);
  spec.reinstate_4pi = true;
  const ResultDoc flagged = compute_result(spec);
  CHECK(plain.prefactor() == "1");
  CHECK(flagged.prefactor() == "(4*pi)^(-2/2)");
  CHECK(flagged.heat == plain.heat);
}

TEST_CASE("input hash is FNV-1a over the raw bytes") {
  CHECK(fnv1a64("") == "fnv1a64:cbf29ce484222325");
  CHECK(fnv1a64("a") == "fnv1a64:af63dc4c8601ec8c");
  const std::string text = R"({"dimension": 1, "max_k": 0, "max_degree": 0})";
  CHECK(parse_problem_spec(text).input_hash == fnv1a64(text));
  CHECK(parse_problem_spec(text + " ").input_hash != fnv1a64(text));
}

TEST_CASE("result documents: malformed input is a parse error") {
  const std::string good = to_json(compute_result(load_example("constant_potential.json")));
  CHECK_NOTHROW(result_from_json(good));
  auto mutated = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    const auto pos = s.find(from);
    REQUIRE(pos != std::string::npos);
    return s.replace(pos, from.size(), to);
  };
  CHECK_THROWS_AS(result_from_json(mutated("heatjet-result", "heatjet-problem")), ParseError);
  CHECK_THROWS_AS(result_from_json(mutated("\"prefactor\": \"1\"", "\"prefactor\": \"2\"")),
                  ParseError);
  CHECK_THROWS_AS(result_from_json(mutated("\"k\": 1", "\"k\": 2")), ParseError);
  CHECK_THROWS_AS(result_from_json(mutated("\"max_k\": 4", "\"max_k\": 5")), ParseError);
  CHECK_THROWS_AS(result_from_json(good.substr(0, good.size() / 2)), ParseError);
}

TEST_CASE("commands: exit codes") {
  TempDir dir;
  const std::string good = (kData / "twisted_bundle.json").string();
  const Overrides none;

  Captured r = capture([&](auto& out, auto& err) {
    return run_compute(good, dir.file("out.json"), none, out, err);
  });
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("requirements: difference operator order R = 6") != std::string::npos);
  CHECK(result_from_json(read_file(dir.file("out.json"))).max_k == 2);

  r = capture([&](auto& out, auto& err) {
    return run_compute(dir.file("missing.json"), "-", none, out, err);
  });
  CHECK(r.code == kExitParse);

  const std::string skew = dir.write(
      "skew.json",
      R"({"dimension": 2, "max_k": 1, "max_degree": 0,
          "metric": [[[{"exponents": [0, 0], "value": "1"}, {"exponents": [1, 0], "value": "1"}], []],
                     [[], [{"exponents": [0, 0], "value": "1"}]]]})");
  r = capture([&](auto& out, auto& err) { return run_compute(skew, "-", none, out, err); });
  CHECK(r.code == kExitValidation);

  const std::string shortjets = dir.write(
      "short.json", R"({"dimension": 1, "max_k": 2, "max_degree": 0, "jet_degree": 2,
                        "potential": [{"exponents": [2], "value": "1"}]})");
  r = capture([&](auto& out, auto& err) { return run_compute(shortjets, "-", none, out, err); });
  CHECK(r.code == kExitTruncation);
  CHECK(r.err.find("potential jets to degree 6") != std::string::npos);

  Overrides negative;
  negative.max_k = -1;
  r = capture([&](auto& out, auto& err) { return run_compute(good, "-", negative, out, err); });
  CHECK(r.code == kExitParse);

  r = capture([&](auto& out, auto& err) { return run_selftest_command(out, err); });
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
}

TEST_CASE("commands: overrides change the targets") {
  Overrides o;
  o.max_k = 1;
  o.max_degree = 4;
  o.reinstate_4pi = true;
  Captured r = capture([&](auto& out, auto& err) {
    return run_compute((kData / "harmonic_oscillator.json").string(), "-", o, out, err);
  });
  REQUIRE(r.code == kExitOk);
  const ResultDoc doc = result_from_json(r.out);
  CHECK(doc.max_k == 1);
  CHECK(doc.max_degree == 4);
  CHECK(doc.reinstate_4pi);
  // Off the diagonal a_1(x, 0) = -(integral of V along the segment) = -x^2/3 + ...
  CHECK(doc.heat[1].coefficient(MultiIndex{2})(0, 0) == Rational(-1, 3));
}

TEST_CASE("verify: genuine results pass, corrupted results fail with a witness") {
  TempDir dir;
  const std::string problem = (kData / "curved_surface.json").string();
  const ResultDoc doc = compute_result(load_example("curved_surface.json"));
  const std::string genuine = dir.write("genuine.json", to_json(doc));

  Overrides full;
  full.verify = VerifyLevel::full;
  Captured r = capture([&](auto& out, auto& err) { return run_verify(problem, genuine, full, out, err); });
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("[PASS] falsifiability") != std::string::npos);

  r = capture([&](auto& out, auto& err) { return run_verify(problem, std::nullopt, full, out, err); });
  CHECK(r.code == kExitOk);

  // Nudge the x_1^2 coefficient of a_1; degree 2 is visible at mu = 2 on psi = id.
  ResultDoc bad = doc;
  const MultiIndex alpha{2, 0};
  JetPoly& a1 = bad.heat.a[1];
  a1.add_term(alpha, Matrix::scalar(Rational(1, 1000)));
  const std::string corrupted = dir.write("corrupted.json", to_json(bad));
  r = capture([&](auto& out, auto& err) {
    return run_verify(problem, corrupted, Overrides{}, out, err);
  });
  CHECK(r.code == kExitVerification);
  CHECK(r.err.find("verification failed: intertwining: mu=2 psi=x^(0,0) id") != std::string::npos);

  const std::string other = dir.write("other.json",
                                      to_json(compute_result(load_example("twisted_bundle.json"))));
  r = capture([&](auto& out, auto& err) { return run_verify(problem, other, Overrides{}, out, err); });
  CHECK(r.code == kExitValidation);
}

TEST_CASE("verify: flat passes fast, constant potential passes full") {
  Captured r = capture([&](auto& out, auto& err) {
    return run_verify((kData / "flat_r3.json").string(), std::nullopt, Overrides{}, out, err);
  });
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  CHECK(r.out.find("[PASS] intertwining") != std::string::npos);

  Overrides full;
  full.verify = VerifyLevel::full;
  r = capture([&](auto& out, auto& err) {
    return run_verify((kData / "constant_potential.json").string(), std::nullopt, full, out, err);
  });
  CHECK(r.code == kExitOk);
  CHECK(r.out.find("[FAIL]") == std::string::npos);
  CHECK(r.out.find("[PASS] dual_path") != std::string::npos);
  CHECK(r.out.find("[PASS] inversion_stability") != std::string::npos);
}

TEST_CASE("selftest report lists every flat-model identity") {
  const VerificationReport report = run_selftest();
  CHECK(report.passed());
  std::vector<std::string> names;
  for (const auto& c : report.checks) names.push_back(c.name);
  CHECK(names == std::vector<std::string>{"classical_formula", "binomial_inversion",
                                          "greens_identity", "lemma_mi", "sl2_commutator"});
}
