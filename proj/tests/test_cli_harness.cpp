#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gpfw/config.hpp"
#include "gpfw/harness.hpp"
#include "gpfw/trace_io.hpp"

namespace gpfw {
namespace {

namespace fs = std::filesystem;

fs::path temp_file(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "gpfw-tests";
  fs::create_directories(dir);
  return dir / name;
}

TEST(ParseConfig, MinimalWithDefaults) {
  const RunConfig cfg = parse_config("problem = lpl2d:p=0.5\nalgorithm = gpa2\n");
  EXPECT_EQ(cfg.problem, "lpl2d:p=0.5");
  EXPECT_EQ(cfg.algorithm, "gpa2");
  EXPECT_EQ(cfg.solver.max_iter, 100000);
  EXPECT_EQ(cfg.x0.kind, X0Spec::Kind::registry_default);
  // every unset key is recorded as defaulted
  EXPECT_NE(std::find(cfg.defaulted.begin(), cfg.defaulted.end(), "max_iter"),
            cfg.defaulted.end());
}

TEST(ParseConfig, SectionsAndCommentsIgnored) {
  const RunConfig cfg = parse_config(
      "# a comment\n[solver]\nproblem = e2\nalgorithm = ffw\nmax_iter = 50\nseed = 3\n");
  EXPECT_EQ(cfg.solver.max_iter, 50);
  EXPECT_EQ(cfg.solver.seed, 3u);
}

TEST(ParseConfig, UnknownKeyRejected) {
  EXPECT_THROW(parse_config("problem = e2\nalgorithm = ffw\nbogus = 1\n"), ValidationError);
}

TEST(ParseConfig, ParseErrorCarriesLineNumber) {
  try {
    parse_config("problem = e2\nalgorithm = ffw\nnot a key value line\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
}

TEST(ParseConfig, BadNumberRejected) {
  EXPECT_THROW(parse_config("problem = e2\nalgorithm = ffw\nt = abc\n"), ParseError);
  EXPECT_THROW(parse_config("problem = e2\nalgorithm = ffw\nt = 1.0x\n"), ParseError);
}

TEST(ParseConfig, ExplicitX0Parsed) {
  const RunConfig cfg =
      parse_config("problem = e2\nalgorithm = ffw\nx0 = 0.1, 0.2\n");
  ASSERT_EQ(cfg.x0.kind, X0Spec::Kind::explicit_vector);
  ASSERT_EQ(cfg.x0.value.size(), 2);
  EXPECT_DOUBLE_EQ(cfg.x0.value(1), 0.2);
}

TEST(ValidateConfig, Gpa3RequiresHessian) {
  const RunConfig cfg = parse_config("problem = minstat:r=2\nalgorithm = gpa3\n");
  EXPECT_THROW(validate_config(cfg, lookup_problem(cfg.problem)), ValidationError);
}

TEST(ValidateConfig, Gpa2StepWindow) {
  const RunConfig cfg = parse_config("problem = lpl2d:p=0.5\nalgorithm = gpa2\nt = 0.5\n");
  // 2 t0 = 2/(1 + 2 sqrt(1.25)/0.5) ~ 0.35 < 0.5
  EXPECT_THROW(validate_config(cfg, lookup_problem(cfg.problem)), ValidationError);
  const RunConfig ok = parse_config("problem = lpl2d:p=0.5\nalgorithm = gpa2\nt = 0.1\n");
  EXPECT_NO_THROW(validate_config(ok, lookup_problem(ok.problem)));
}

TEST(EmitTrace, JsonlHeaderPlusRecords) {
  const Problem pr = lookup_problem("sphere-linear");
  SolverConfig cfg;
  const Trace tr = ffw_run(pr.surface, pr.obj, cfg, pr.default_x0);
  std::ostringstream out;
  TraceHeaderInfo info;
  info.problem = pr.id;
  info.algorithm = "ffw";
  emit_trace_jsonl(tr, out, info);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) {
    const auto j = nlohmann::json::parse(line);
    if (lines == 0) {
      EXPECT_EQ(j.at("record"), "header");
      EXPECT_EQ(j.at("problem"), "sphere-linear");
    } else {
      EXPECT_TRUE(j.contains("k"));
      EXPECT_TRUE(j.contains("proj_grad_norm"));
    }
    ++lines;
  }
  EXPECT_EQ(lines, 1 + static_cast<int>(tr.records.size()));
}

TEST(EmitTrace, CsvRoundTripBitExact) {
  const Problem pr = lookup_problem("quad:1,2,10");
  SolverConfig cfg;
  const Trace tr = sphere_gpa_run(pr.obj, cfg, pr.default_x0);
  std::ostringstream out;
  emit_trace_csv(tr, out);
  std::istringstream in(out.str());
  std::string header, line;
  std::getline(in, header);
  EXPECT_EQ(header, "k,f,proj_grad_norm,step_norm,residual_z,phase");
  std::size_t idx = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string field;
    std::getline(ls, field, ',');
    EXPECT_EQ(std::stoi(field), tr.records[idx].k);
    std::getline(ls, field, ',');
    EXPECT_EQ(std::strtod(field.c_str(), nullptr), tr.records[idx].f);  // bit-exact at 17 digits
    std::getline(ls, field, ',');
    EXPECT_EQ(std::strtod(field.c_str(), nullptr), tr.records[idx].proj_grad_norm);
    ++idx;
  }
  EXPECT_EQ(idx, tr.records.size());
}

TEST(EmitTrace, ImmediateConvergenceIsHeaderPlusOneRecord) {
  const Problem pr = lookup_problem("sphere-linear");
  SolverConfig cfg;
  // start at the minimizer: the projected gradient is already ~0
  const Trace tr = ffw_run(pr.surface, pr.obj, cfg, *pr.minimizer);
  std::ostringstream out;
  emit_trace_jsonl(tr, out);
  int lines = 0;
  std::istringstream in(out.str());
  for (std::string line; std::getline(in, line);) ++lines;
  EXPECT_EQ(lines, 2);
}

TEST(RunCommand, EigminExitZeroAndOracleAgreement) {
  const fs::path mat = temp_file("mat3.txt");
  std::ofstream(mat) << "1 0 0\n0 2 0\n0 0 10\n";
  RunConfig cfg = parse_config("problem = " + mat.string() + "\nalgorithm = eigmin\n");
  std::ostringstream out, err;
  EXPECT_EQ(run_command(cfg, out, err), 0);
  EXPECT_NE(out.str().find("termination=converged"), std::string::npos);
}

TEST(RunCommand, FfwOnDegenerateCircleHitsIterationCap) {
  RunConfig cfg = parse_config(
      "problem = e2\nalgorithm = ffw\nmax_iter = 1000\nx0 = 0.1, 0.010102051443364424\n");
  std::ostringstream out, err;
  EXPECT_EQ(run_command(cfg, out, err), 2);
}

TEST(RunCommand, MalformedMatrixExitsThree) {
  const fs::path mat = temp_file("bad.txt");
  std::ofstream(mat) << "1 2\n3 4\n";  // not symmetric
  RunConfig cfg = parse_config("problem = " + mat.string() + "\nalgorithm = eigmin\n");
  std::ostringstream out, err;
  EXPECT_EQ(run_command(cfg, out, err), 3);
  EXPECT_NE(err.str().find("symmetric"), std::string::npos);
}

TEST(RunCommand, WritesRequestedTraceFile) {
  const fs::path trace = temp_file("run-trace.jsonl");
  fs::remove(trace);
  RunConfig cfg = parse_config("problem = lpl2d:p=0.5\nalgorithm = gpa2\noutput = " +
                               trace.string() + "\nformat = jsonl\n");
  std::ostringstream out, err;
  EXPECT_EQ(run_command(cfg, out, err), 0);
  EXPECT_TRUE(fs::exists(trace));
}

TEST(Determinism, SameConfigSameBytes) {
  std::string bytes[2];
  for (int rep = 0; rep < 2; ++rep) {
    const fs::path trace = temp_file("det-" + std::to_string(rep) + ".csv");
    RunConfig cfg = parse_config(
        "problem = quad:1,2,10\nalgorithm = sphere-gpa\nx0 = random:5\noutput = " +
        trace.string() + "\nformat = csv\n");
    std::ostringstream out, err;
    ASSERT_EQ(run_command(cfg, out, err), 0);
    std::ifstream in(trace, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    bytes[rep] = ss.str();
  }
  EXPECT_FALSE(bytes[0].empty());
  EXPECT_EQ(bytes[0], bytes[1]);
}

TEST(HeaderConstants, MatchIndependentRecomputation) {
  // every constant printed for an eigmin run recomputes from the spectrum
  Matrix A = Matrix::Zero(3, 3);
  A(0, 0) = 1.0;
  A(1, 1) = 2.0;
  A(2, 2) = 10.0;
  SolverConfig cfg;
  Vector x0(3);
  x0 << 0.5, std::sqrt(0.375), std::sqrt(0.375);
  const EigminResult res = eigmin_run(A, x0, cfg);
  const double tau = 0.5;
  const double q = 1.0 - tau * tau * (2.0 - 1.0) / (10.0 - 1.0);
  const double q1 = (10.0 - 2.0) / (10.0 - 1.0);
  EXPECT_LE(std::abs(res.trace.constants.at("q") - q), 1e-12 * q);
  EXPECT_LE(std::abs(res.trace.constants.at("q1") - q1), 1e-12 * q1);
  EXPECT_LE(std::abs(res.trace.constants.at("tau") - tau), 1e-12);
}

}  // namespace
}  // namespace gpfw
