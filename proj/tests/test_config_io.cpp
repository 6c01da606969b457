#include "lleei/config.hpp"
#include "lleei/io.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using lleei::Complex;
using lleei::ConfigError;
using nlohmann::json;

namespace {

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string line; std::getline(is, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST(Config, BuiltinByName) {
  const auto spec = lleei::parse_problem(json::parse(R"({"name": "example2-E3", "epsilon": 0.125})"));
  ASSERT_TRUE(spec.builtin.has_value());
  EXPECT_EQ(*spec.builtin, "example2-E3");
  const auto sys = lleei::make_system(spec);
  EXPECT_EQ(sys.name(), "example2-E3");
  EXPECT_DOUBLE_EQ(sys.epsilon(), 0.125);
  EXPECT_DOUBLE_EQ(lleei::make_system(spec, 0.5).epsilon(), 0.5);

  const auto alias = lleei::parse_problem(json::parse(R"({"builtin": "example1"})"));
  EXPECT_DOUBLE_EQ(alias.epsilon, 0.25);
  EXPECT_THROW((void)lleei::parse_problem(json::parse(R"({"name": "nope"})")), ConfigError);
  EXPECT_THROW((void)lleei::parse_problem(json::parse(R"({"name": 3})")), ConfigError);
}

TEST(Config, GenericProblem) {
  const auto spec = lleei::parse_problem(json::parse(R"({
    "d": 2, "A": [[0, 1], [-1, 0]], "epsilon": 0.1, "nu": 0, "u_in": [1, [0, 2]], "T": 2,
    "poly_F": [{"row": 2, "alpha": [1, 1], "coeff": [0.5, -1]}]})"));
  EXPECT_EQ(spec.d, 2u);
  EXPECT_EQ(spec.A(0, 1), Complex(1.0));
  EXPECT_EQ(spec.A(1, 0), Complex(-1.0));
  EXPECT_EQ(spec.u_in(1), Complex(0, 2));
  ASSERT_EQ(spec.poly_f.size(), 1u);
  EXPECT_EQ(spec.poly_f[0].coeff, Complex(0.5, -1));

  const auto sys = lleei::make_system(spec);
  lleei::ComplexVector u(2);
  u << 2.0, 0.0;
  const auto f = sys.oracle().value(u, 0.0);
  EXPECT_EQ(f(0), Complex{});
  EXPECT_EQ(f(1), Complex(2.0, -4.0));
  EXPECT_DOUBLE_EQ(sys.final_time(), 2.0);
}

TEST(Config, FlatMatrixIsRowMajor) {
  const auto spec = lleei::parse_problem(
      json::parse(R"({"d": 2, "A": [0, 1, -1, 0], "epsilon": 1, "u_in": [1, 0], "T": 1})"));
  EXPECT_EQ(spec.A(0, 1), Complex(1.0));
  EXPECT_EQ(spec.A(1, 0), Complex(-1.0));
}

TEST(Config, ScalarComplexMatrix) {
  const auto spec =
      lleei::parse_problem(json::parse(R"({"d": 1, "A": [[[0, 1]]], "epsilon": 1, "u_in": [1], "T": 1})"));
  EXPECT_EQ(spec.A(0, 0), Complex(0, 1));
}

TEST(Config, Errors) {
  const char* bad[] = {
      R"([1, 2])",
      R"({"d": 0, "A": [], "epsilon": 1, "u_in": [], "T": 1})",
      R"({"d": 2, "A": [1, 2, 3], "epsilon": 1, "u_in": [1, 0], "T": 1})",
      R"({"d": 2, "A": [[1, 2], [3]], "epsilon": 1, "u_in": [1, 0], "T": 1})",
      R"({"d": 1, "A": [1], "epsilon": -1, "u_in": [1], "T": 1})",
      R"({"d": 1, "A": [1], "epsilon": 1, "u_in": [1, 2], "T": 1})",
      R"({"d": 1, "A": [1], "epsilon": 1, "u_in": [1]})",
      R"({"d": 1, "A": ["x"], "epsilon": 1, "u_in": [1], "T": 1})",
      R"({"d": 1, "A": [1], "epsilon": 1, "u_in": [1], "T": 1, "poly_F": [{"row": 2, "alpha": [], "coeff": 1}]})",
      R"({"d": 1, "A": [1], "epsilon": 1, "u_in": [1], "T": 1, "poly_F": [{"row": 1, "alpha": [3], "coeff": 1}]})",
      R"({"d": 1, "A": [1], "epsilon": 1, "u_in": [1], "T": 1, "position_dim": 1})",
  };
  for (const char* text : bad) EXPECT_THROW((void)lleei::parse_problem(json::parse(text)), ConfigError) << text;
}

TEST(RunConfig, RunSection) {
  const auto rc = lleei::parse_run_config(json::parse(
      R"({"name": "example1", "run": {"k": 3, "h": 0.5, "h_grid": [0.1, 0.05], "reference_max_step": 0.001,
          "seed": 9, "ci": true}})"));
  EXPECT_EQ(rc.k, 3);
  EXPECT_DOUBLE_EQ(*rc.h, 0.5);
  EXPECT_EQ(rc.h_grid, (std::vector<double>{0.1, 0.05}));
  EXPECT_DOUBLE_EQ(rc.reference.max_step, 0.001);
  EXPECT_EQ(rc.seed, 9u);
  EXPECT_TRUE(rc.ci);

  const auto bare = lleei::parse_run_config(json::parse(R"({"name": "example1"})"));
  EXPECT_FALSE(bare.k.has_value());
  EXPECT_TRUE(bare.h_grid.empty());

  EXPECT_THROW((void)lleei::parse_run_config(
                   json::parse(R"({"name": "example1", "run": {"h_grid": [0.1], "eps_grid": [0.1]}})")),
               ConfigError);
  EXPECT_THROW((void)lleei::parse_run_config(json::parse(R"({"name": "example1", "run": {"h": 0}})")), ConfigError);
  EXPECT_THROW((void)lleei::parse_run_config(json::parse(R"({"name": "example1", "run": 5})")), ConfigError);
}

TEST(RunConfig, LoadFromFile) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "lleei_test_good.json";
  const auto broken = dir / "lleei_test_broken.json";
  const auto wrong_type = dir / "lleei_test_type.json";
  std::ofstream(good) << R"({"name": "example1", "run": {"k": 2}})";
  std::ofstream(broken) << R"({"name": )";
  std::ofstream(wrong_type) << R"({"name": "example1", "run": {"k": "two"}})";
  EXPECT_EQ(lleei::load_run_config(good.string()).k, 2);
  EXPECT_THROW((void)lleei::load_run_config(broken.string()), ConfigError);
  EXPECT_THROW((void)lleei::load_run_config(wrong_type.string()), ConfigError);
  EXPECT_THROW((void)lleei::load_run_config((dir / "lleei_no_such_file.json").string()), ConfigError);
  std::filesystem::remove(good);
  std::filesystem::remove(broken);
  std::filesystem::remove(wrong_type);
}

TEST(Io, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-17, 6.02214076e23, 0.0}) {
    std::ostringstream os;
    os << lleei::io::num(v);
    EXPECT_EQ(std::stod(os.str()), v) << os.str();
  }
}

TEST(Io, TrajectoryCsv) {
  lleei::Trajectory t;
  t.times = {0.0, 0.1};
  lleei::ComplexVector a(2);
  a << Complex(1, 2), Complex(3, 4);
  t.states = {a, a * 0.5};
  std::ostringstream os;
  lleei::io::write_trajectory(os, t);
  const auto lines = lines_of(os.str());
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "t,re_u1,im_u1,re_u2,im_u2");
  EXPECT_EQ(lines[1], "0,1,2,3,4");
  const auto comma = lines[2].find(',');
  EXPECT_EQ(std::stod(lines[2].substr(0, comma)), 0.1);
  EXPECT_EQ(lines[2].substr(comma), ",0.5,1,1.5,2");
}

TEST(Io, ReportCsv) {
  lleei::ErrorReport r;
  r.axis = "h";
  r.problem = "example1";
  r.k = 2;
  r.fixed = 0.25;
  r.threshold_small = 0.5;
  lleei::SweepPoint ok;
  ok.param = 0.1;
  ok.error = lleei::ErrorMetrics{1e-3, 2e-4, 3e-3};
  ok.regime = lleei::Regime::small_step;
  lleei::SweepPoint failed;
  failed.param = 0.05;
  failed.failure = "boom";
  r.points = {ok, failed};
  r.second_order = true;
  std::ostringstream os;
  lleei::io::write_report(os, r);
  const auto lines = lines_of(os.str());
  ASSERT_GE(lines.size(), 4u);
  EXPECT_EQ(lines[0], "param,error_u,error_y,error_ydot,regime");
  EXPECT_EQ(lines[1], "0.10000000000000001,0.001,0.00020000000000000001,0.0030000000000000001,small");
  EXPECT_NE(lines[2].find("boom"), std::string::npos);
  EXPECT_NE(os.str().find("# axis,h"), std::string::npos);
  EXPECT_NE(os.str().find("# slope_small_ydot"), std::string::npos);
}
