#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "lpmhd/error.hpp"
#include "lpmhd/io_config.hpp"
#include "lpmhd/random_fields.hpp"

using namespace lpmhd;
namespace fs = std::filesystem;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            ("lpmhd_io_" + std::string(info->test_suite_name()) + "_" + info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string expect_format_error(const std::string& text) {
  try {
    parse_config(text);
  } catch (const FormatError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no FormatError for:\n" << text;
  return {};
}

}  // namespace

TEST(Config, EmptyTextGivesDefaults) {
  const RunConfig c = parse_config("");
  EXPECT_EQ(c.iteration.dim, 2);
  EXPECT_EQ(c.iteration.points_per_axis, 64);
  EXPECT_DOUBLE_EQ(c.iteration.box_length, kTwoPi);
  EXPECT_DOUBLE_EQ(c.iteration.p, 2.0);
  EXPECT_DOUBLE_EQ(c.iteration.dt, 2e-3);
  EXPECT_DOUBLE_EQ(c.iteration.T_max, 0.5);
  EXPECT_DOUBLE_EQ(c.iteration.eta, 0.1);
  EXPECT_DOUBLE_EQ(c.iteration.C0, 16.0);
  EXPECT_EQ(c.iteration.max_iterations, 12);
  EXPECT_FALSE(c.iteration.horizon.has_value());
  EXPECT_DOUBLE_EQ(c.amplitude, 0.05);
  EXPECT_EQ(c.samples, 100);
  EXPECT_EQ(c.output_dir, fs::path("."));
  EXPECT_NO_THROW(c.validate());
}

TEST(Config, GrammarFeatures) {
  const RunConfig c = parse_config(
      "# comment line\n"
      "\n"
      "  N = 32   # trailing comment\n"
      "L = 2pi\n"
      "horizon = 0.01\n"
      "output_dir = \"out dir/run\"\n"
      "p=3\n");
  EXPECT_EQ(c.iteration.points_per_axis, 32);
  EXPECT_DOUBLE_EQ(c.iteration.box_length, kTwoPi);
  ASSERT_TRUE(c.iteration.horizon.has_value());
  EXPECT_DOUBLE_EQ(*c.iteration.horizon, 0.01);
  EXPECT_EQ(c.output_dir, fs::path("out dir/run"));
  EXPECT_DOUBLE_EQ(c.iteration.p, 3.0);
  EXPECT_FALSE(parse_config("horizon = auto\n").iteration.horizon.has_value());
}

TEST(Config, ErrorsCarryLineNumbers) {
  auto msg = expect_format_error("N = 32\n# ok\nbogus = 1\n");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("unknown key 'bogus'"), std::string::npos) << msg;
  msg = expect_format_error("N = 32\ndt = 0.001\nN = 64\n");
  EXPECT_NE(msg.find("line 3"), std::string::npos) << msg;
  EXPECT_NE(msg.find("duplicate key 'N'"), std::string::npos) << msg;
  msg = expect_format_error("N 32\n");
  EXPECT_NE(msg.find("line 1"), std::string::npos) << msg;
  msg = expect_format_error("dt = fast\n");
  EXPECT_NE(msg.find("expects a number"), std::string::npos) << msg;
  msg = expect_format_error("N = 32.5\n");
  EXPECT_NE(msg.find("integer"), std::string::npos) << msg;
  expect_format_error("N =\n");
}

TEST(Config, ValidationNamesFieldAndBound) {
  try {
    load_config("p = 5\n");
    FAIL() << "expected InvalidArgument";
  } catch (const InvalidArgument& e) {
    const std::string msg = e.what();
    EXPECT_NE(msg.find("p"), std::string::npos);
    EXPECT_NE(msg.find("[1, 2d]"), std::string::npos) << msg;
  }
  EXPECT_THROW(load_config("samples = 0\n"), InvalidArgument);
  EXPECT_THROW(load_config("r = 0.5\n"), InvalidArgument);
  EXPECT_THROW(load_config("amplitude = -1\n"), InvalidArgument);
  EXPECT_NO_THROW(load_config("dim = 3\np = 6\nN = 16\n"));
}

TEST(Config, OutputDirMustBeWritable) {
  TempDir tmp;
  const fs::path file = tmp.path() / "plain_file";
  std::ofstream(file) << "x";
  RunConfig c;
  c.output_dir = file / "sub";
  EXPECT_THROW(c.validate(), InvalidArgument);
  c.output_dir = tmp.path() / "not" / "yet" / "created";
  EXPECT_NO_THROW(c.validate());
  EXPECT_FALSE(fs::exists(c.output_dir));
}

TEST(Config, TextRoundTrip) {
  RunConfig c;
  c.iteration.points_per_axis = 32;
  c.iteration.dt = 1e-3;
  c.iteration.horizon = 0.05;
  c.iteration.seed = 42;
  c.output_dir = "results/a b";
  c.s1 = -0.25;
  c.r = std::numeric_limits<double>::infinity();
  const std::string text = to_config_text(c);
  const RunConfig back = parse_config(text);
  EXPECT_EQ(to_config_text(back), text);
  EXPECT_EQ(back.iteration.seed, 42u);
  EXPECT_TRUE(std::isinf(back.r));
  EXPECT_EQ(back.output_dir, c.output_dir);
  for (const auto& key : kConfigKeys) EXPECT_NE(text.find(key + " = "), std::string::npos) << key;
}

TEST(FieldIo, RoundTripIsBitExact) {
  TempDir tmp;
  for (int d : {2, 3}) {
    const auto g = make_grid(d, 16, kTwoPi);
    Rng rng(d);
    const Field f = random_band_limited(g, d, 1.0, 5.0, rng);
    const fs::path path = tmp.path() / ("f" + std::to_string(d) + ".lpf");
    write_field(path, f);
    EXPECT_EQ(fs::file_size(path), 28u + f.samples().size() * 8u);
    const Field back = read_field(path, g);
    EXPECT_EQ(back.grid(), g);
    EXPECT_EQ(back.components(), d);
    EXPECT_EQ(back.samples(), f.samples());
  }
}

TEST(FieldIo, HeaderLayout) {
  TempDir tmp;
  const auto g = make_grid(2, 8, 3.5);
  Field f(g, 1);
  f.samples()[0] = 1.0;
  write_field(tmp.path() / "h.lpf", f);
  const std::string bytes = read_text_file(tmp.path() / "h.lpf");
  EXPECT_EQ(bytes.substr(0, 8), "LPMHD001");
  std::uint32_t d = 0, n = 0, c = 0;
  double L = 0.0, first = 0.0;
  std::memcpy(&d, bytes.data() + 8, 4);
  std::memcpy(&n, bytes.data() + 12, 4);
  std::memcpy(&L, bytes.data() + 16, 8);
  std::memcpy(&c, bytes.data() + 24, 4);
  std::memcpy(&first, bytes.data() + 28, 8);
  EXPECT_EQ(d, 2u);
  EXPECT_EQ(n, 8u);
  EXPECT_EQ(L, 3.5);
  EXPECT_EQ(c, 1u);
  EXPECT_EQ(first, 1.0);
}

TEST(FieldIo, CorruptFilesRejected) {
  TempDir tmp;
  const auto g = make_grid(2, 16, kTwoPi);
  const Field f = single_mode(g, {1, 2, 0});
  const fs::path good = tmp.path() / "good.lpf";
  write_field(good, f);
  const std::string bytes = read_text_file(good);

  write_text_file(tmp.path() / "trunc.lpf", bytes.substr(0, bytes.size() - 8));
  EXPECT_THROW(read_field(tmp.path() / "trunc.lpf"), FormatError);
  write_text_file(tmp.path() / "short.lpf", bytes.substr(0, 12));
  EXPECT_THROW(read_field(tmp.path() / "short.lpf"), FormatError);
  write_text_file(tmp.path() / "trail.lpf", bytes + "x");
  EXPECT_THROW(read_field(tmp.path() / "trail.lpf"), FormatError);
  std::string bad = bytes;
  bad[5] = 'X';
  write_text_file(tmp.path() / "magic.lpf", bad);
  EXPECT_THROW(read_field(tmp.path() / "magic.lpf"), FormatError);
  EXPECT_THROW(read_field(good, make_grid(2, 32, kTwoPi)), InvalidArgument);
  EXPECT_THROW(read_field(tmp.path() / "missing.lpf"), Error);
}

namespace {

IterationDiagnostics sample_diagnostics() {
  IterationDiagnostics d;
  d.status = "converged";
  d.converged = true;
  d.horizon = {0.058, 0.00998, false};
  IterationRecord r0;
  r0.T = 0.058;
  r0.E0 = 0.0725;
  r0.bounds = {0.01, 1.16, 0.002, 0.1};
  r0.D = std::numeric_limits<double>::quiet_NaN();
  r0.wallclock_s = 0.5;
  IterationRecord r1 = r0;
  r1.n = 1;
  r1.D = 0.054;
  d.records = {r0, r1};
  d.fit = fit_geometric_decay({r0.D, r1.D});
  return d;
}

}  // namespace

TEST(Diagnostics, CsvShapes) {
  IterationDiagnostics empty;
  EXPECT_EQ(diagnostics_csv(empty), "n,T,E0,H1_lhs,H1_rhs,H2_lhs,H2_rhs,D_n\n");
  const auto d = sample_diagnostics();
  const std::string csv = diagnostics_csv(d);
  EXPECT_EQ(csv,
            "n,T,E0,H1_lhs,H1_rhs,H2_lhs,H2_rhs,D_n\n"
            "0,0.058,0.0725,0.01,1.16,0.002,0.1,nan\n"
            "1,0.058,0.0725,0.01,1.16,0.002,0.1,0.054\n");
  EXPECT_EQ(wallclock_csv(d), "n,wallclock_s\n0,0.5\n1,0.5\n");
  IterationDiagnostics one = d;
  one.records.resize(1);
  const std::string header_and_row = diagnostics_csv(one);
  EXPECT_EQ(std::count(header_and_row.begin(), header_and_row.end(), '\n'), 2);
}

TEST(Diagnostics, SummaryJsonAndFiles) {
  TempDir tmp;
  const auto d = sample_diagnostics();
  const auto j = nlohmann::json::parse(diagnostics_summary_json(d));
  EXPECT_EQ(j.at("status"), "converged");
  EXPECT_EQ(j.at("iterations"), 1);
  EXPECT_EQ(j.at("geometric_fit").at("points"), 1);
  EXPECT_EQ(j.at("geometric_fit").at("ratio"), "nan");
  EXPECT_TRUE(j.at("margins_positive").get<bool>());
  write_diagnostics(tmp.path() / "nested", d);
  EXPECT_TRUE(fs::exists(tmp.path() / "nested" / "diagnostics.csv"));
  EXPECT_TRUE(fs::exists(tmp.path() / "nested" / "diagnostics.wallclock.csv"));
  EXPECT_TRUE(fs::exists(tmp.path() / "nested" / "summary.json"));
  EXPECT_EQ(read_text_file(tmp.path() / "nested" / "diagnostics.csv"), diagnostics_csv(d));
}

TEST(Diagnostics, UniquenessJsonRoundTrip) {
  UniquenessReport r;
  r.perturbation_size = 1e-4;
  r.seed = 3;
  r.T = 0.058;
  r.times = {0.0, 0.029, 0.058};
  r.rho = {0.0, 1.0 / 3.0, 7.37e-6};
  r.delta_B = {8.4e-6, 8.5e-6, 8.6e-6};
  r.A_T = 0.0028;
  r.C_T = 1e-5;
  r.offset = 1.119e-3;
  r.bridge_ratio = 0.933;
  r.solution_scale = 0.0353553;
  r.verdict = true;
  r.worst_margin = 1e-3;
  EXPECT_EQ(uniqueness_report_from_json(to_json(r)), r);
  r.C_T = std::numeric_limits<double>::infinity();
  const auto back = uniqueness_report_from_json(to_json(r));
  EXPECT_TRUE(std::isinf(back.C_T));
  EXPECT_THROW(uniqueness_report_from_json("{\"seed\": 1}"), FormatError);
  EXPECT_THROW(uniqueness_report_from_json("not json"), FormatError);
}

TEST(Diagnostics, OtherSerializers) {
  const auto rep = make_estimate_report("T", {{"s1", 0.5}}, 1.0, {{"f", 2.0}}, 1);
  EXPECT_EQ(estimate_reports_csv({rep}), EstimateReport::csv_header() + "\n" + rep.to_csv_row() + "\n");
  SystemResidual res{{0.0, 0.5}, {1e-6, 2e-6}, {0.0, 3e-7}};
  EXPECT_EQ(residual_csv(res), "t,velocity,magnetic\n0,1e-06,0\n0.5,2e-06,3e-07\n");
  const auto manifest = nlohmann::json::parse(run_manifest_json("heat", RunConfig{}, 0.25));
  EXPECT_EQ(manifest.at("problem"), "heat");
  EXPECT_EQ(manifest.at("grid").at("N"), 64);
  EXPECT_EQ(manifest.at("T"), 0.25);
  EXPECT_EQ(manifest.at("seed"), 0);
}
