#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace vicsim::cli {
namespace {

const std::string kRootTwo = "1.4142135623730951";

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json invoke_json(const std::vector<std::string>& args) {
  const auto r = invoke(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return nlohmann::json::parse(r.out);
}

std::vector<std::vector<double>> parse_csv(const std::string& text, std::string* header = nullptr) {
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(is, line)) {
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  return rows;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("vicsim_test_" + name);
}

TEST(Curve, HeaderRowCountAndFirstRow) {
  const auto r = invoke({"curve", "--eta", kRootTwo, "--steps", "50"});
  ASSERT_EQ(r.code, 0);
  std::string header;
  const auto rows = parse_csv(r.out, &header);
  EXPECT_EQ(header, "gamma_t,concurrence,rho14_abs,rho23_abs,rho22,rho33,pre_norm_trace");
  EXPECT_EQ(rows.size(), 50u);
  EXPECT_EQ(r.out.substr(header.size() + 1, r.out.find('\n', header.size() + 1) - header.size() - 1),
            "0.000000000000e+00,1.000000000000e+00,5.000000000000e-01,0.000000000000e+00,"
            "0.000000000000e+00,0.000000000000e+00,1.000000000000e+00");
}

TEST(Curve, LongTimeTails) {
  const auto psi = parse_csv(invoke({"curve", "--eta", kRootTwo, "--bell", "psi", "--t-max", "10"}).out);
  EXPECT_EQ(psi.size(), 1000u);
  EXPECT_NEAR(psi.back()[1], 24.0 / 65.0, 1e-9);
  const auto phi = parse_csv(invoke({"curve", "--eta", kRootTwo, "--bell", "phi"}).out);
  EXPECT_NEAR(phi.back()[1], 4.0 / 7.0, 1e-9);
  const auto none = parse_csv(invoke({"curve", "--p", "0", "--bell", "psi"}).out);
  EXPECT_LE(none.back()[1], 1e-6);
}

TEST(Curve, RecomputedConcurrenceRoundTrips) {
  for (const std::string bell : {"psi", "phi"}) {
    for (const std::string method : {"oracle", "paper"}) {
      for (const std::string eta : {std::string("1"), kRootTwo}) {
        const auto rows =
            parse_csv(invoke({"curve", "--eta", eta, "--bell", bell, "--method", method, "--steps", "200"}).out);
        for (const auto& row : rows) {
          const double branch14 = row[2] - std::sqrt(row[4] * row[5]);
          // rho11 rho44 vanishes for the single-excitation Phi state.
          const double branch23 = bell == "phi" ? row[3] : -1.0;
          EXPECT_NEAR(2.0 * std::max({0.0, branch14, branch23}), row[1], 1e-9) << bell << ' ' << method;
        }
      }
    }
  }
}

TEST(Curve, Deterministic) {
  const std::vector<std::string> args{"curve", "--eta", "0.7", "--p", "0.6", "--bell", "phi", "--steps", "300"};
  EXPECT_EQ(invoke(args).out, invoke(args).out);
}

TEST(Curve, JsonFormat) {
  const auto doc = invoke_json({"curve", "--format", "json", "--steps", "5"});
  ASSERT_EQ(doc["points"].size(), 5u);
  EXPECT_DOUBLE_EQ(doc["points"][0]["concurrence"].get<double>(), 1.0);
}

TEST(Single, DecayWithoutVic) {
  const auto rows = parse_csv(invoke({"single", "--p", "0", "--initial", "excited", "--steps", "101"}).out);
  ASSERT_EQ(rows.size(), 101u);
  for (const auto& row : rows) EXPECT_NEAR(row[1], std::exp(-2.0 * row[0]), 1e-10);
}

TEST(Single, TrappingAndGround) {
  std::string header;
  const auto rows = parse_csv(invoke({"single", "--t-max", "50"}).out, &header);
  EXPECT_EQ(header, "gamma_t,rho11,rho22,rho33,rho13_re,rho13_im");
  EXPECT_NEAR(rows.back()[1], 0.25, 1e-12);
  const auto ground = parse_csv(invoke({"single", "--initial", "ground", "--steps", "10"}).out);
  for (const auto& row : ground) {
    EXPECT_EQ(row[1], 0.0);
    EXPECT_EQ(row[3], 1.0);
  }
}

TEST(Single, SuperpositionCoherence) {
  const auto rows = parse_csv(invoke({"single", "--initial", "superposition", "--p", "0", "--steps", "11"}).out);
  for (const auto& row : rows) EXPECT_NEAR(row[4], 0.5 * std::exp(-row[0]), 1e-10);
}

TEST(Steady, PsiRatios) {
  const auto one = invoke_json({"steady", "--eta", "1"});
  EXPECT_NEAR(one["ratio_rho14_over_sqrt_rho22_rho33"].get<double>(), 2.0, 1e-10);
  EXPECT_NEAR(one["ratio_published"].get<double>(), 2.0, 1e-15);
  const auto root2 = invoke_json({"steady", "--eta", kRootTwo});
  EXPECT_NEAR(root2["ratio_rho14_over_sqrt_rho22_rho33"].get<double>(), 3.0, 1e-10);
  EXPECT_NEAR(root2["ratio_published"].get<double>(), 8.0 / 3.0, 1e-12);
  EXPECT_NEAR(root2["pre_norm_trace_infinity"].get<double>(), 65.0 / 81.0, 1e-12);
}

TEST(Steady, PhiAndKeyOrder) {
  const auto r = invoke({"steady", "--bell", "phi"});
  const auto doc = nlohmann::ordered_json::parse(r.out);
  EXPECT_NEAR(doc["concurrence_infinity"].get<double>(), 1.0 / 3.0, 1e-10);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"eta", "p", "bell", "concurrence_infinity", "pre_norm_trace_infinity",
                                            "rho_infinity"}));
  EXPECT_EQ(doc["rho_infinity"].size(), 4u);
  EXPECT_EQ(doc["rho_infinity"][1][2].size(), 2u);
}

TEST(Steady, NoVicRatioIsNull) {
  const auto doc = invoke_json({"steady", "--p", "0"});
  EXPECT_TRUE(doc["ratio_rho14_over_sqrt_rho22_rho33"].is_null());
  EXPECT_EQ(doc["concurrence_infinity"].get<double>(), 0.0);
}

TEST(Compare, EtaOne) {
  const auto doc = invoke_json({"compare", "--eta", "1", "--steps", "101"});
  for (const char* init : {"excited", "ground", "superposition"}) {
    for (const auto& [k, v] : doc["single_atom"][init].items()) EXPECT_LE(v.get<double>(), 1e-8) << init << k;
  }
  EXPECT_LE(doc["single_atom"]["rho11_infinity"]["deviation"].get<double>(), 1e-8);
  const auto& psi = doc["two_qubit"]["psi"];
  EXPECT_NEAR(psi["rho11"].get<double>(), 0.5, 1e-8);
  EXPECT_LE(psi["rho22"].get<double>(), 1e-8);
  EXPECT_LE(psi["rho33"].get<double>(), 1e-8);
  EXPECT_LE(psi["rho14"].get<double>(), 1e-8);
  EXPECT_LE(doc["two_qubit"]["phi"]["rho23"].get<double>(), 1e-8);
}

TEST(Compare, RootTwoAndHalf) {
  const auto doc = invoke_json({"compare", "--eta", kRootTwo, "--t-max", "50", "--steps", "101"});
  EXPECT_NEAR(doc["single_atom"]["rho11_infinity"]["deviation"].get<double>(), 1.0 / 9.0, 1e-10);
  for (const std::string eta : {kRootTwo, std::string("0.5")}) {
    const auto d = invoke_json({"compare", "--eta", eta, "--steps", "101"});
    const auto& psi = d["two_qubit"]["psi"];
    EXPECT_GT(psi["rho11"].get<double>(), 1e-3);
    EXPECT_GT(psi["rho22"].get<double>(), 1e-3);
    EXPECT_GT(psi["rho33"].get<double>(), 1e-3);
    EXPECT_LE(psi["rho14"].get<double>(), 1e-8);
  }
}

TEST(Compare, RequiresMaximalInterference) {
  const auto r = invoke({"compare", "--p", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "");
}

TEST(Esd, Reports) {
  const auto psi = invoke_json({"esd", "--eta", kRootTwo});
  EXPECT_EQ(psi["kind"], "asymptotic_positive");
  EXPECT_NEAR(psi["concurrence_limit"].get<double>(), 24.0 / 65.0, 1e-8);
  EXPECT_EQ(invoke_json({"esd", "--bell", "phi", "--p", "0"})["kind"], "asymptotic_zero");
  const auto product = invoke_json({"esd", "--product-initial"});
  EXPECT_EQ(product["kind"], "vanishes_at");
  EXPECT_EQ(product["gamma_t_death"].get<double>(), 0.0);
}

class InvalidUsage : public ::testing::TestWithParam<std::vector<std::string>> {};

TEST_P(InvalidUsage, ExitsTwoWithOneLine) {
  const auto r = invoke(GetParam());
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.out, "");
  ASSERT_FALSE(r.err.empty());
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1) << r.err;
}

INSTANTIATE_TEST_SUITE_P(
    Cases, InvalidUsage,
    ::testing::Values(std::vector<std::string>{}, std::vector<std::string>{"plot"},
                      std::vector<std::string>{"curve", "--bell", "omega"},
                      std::vector<std::string>{"single", "--initial", "dark"},
                      std::vector<std::string>{"single", "--method", "paper"},
                      std::vector<std::string>{"curve", "--steps", "1"},
                      std::vector<std::string>{"curve", "--t-max", "0"},
                      std::vector<std::string>{"curve", "--gamma", "-1"},
                      std::vector<std::string>{"curve", "--p", "1.5"},
                      std::vector<std::string>{"curve", "--eta", "-0.1"},
                      std::vector<std::string>{"curve", "--eta", "abc"},
                      std::vector<std::string>{"curve", "--method", "paper", "--p", "0.5"},
                      std::vector<std::string>{"steady", "--format", "csv"},
                      std::vector<std::string>{"curve", "--unknown"},
                      std::vector<std::string>{"curve", "--config", "/nonexistent/vicsim.conf"},
                      std::vector<std::string>{"curve", "--output", "/nonexistent/dir/out.csv"}));

TEST(Usage, HelpExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("curve"), std::string::npos);
}

TEST(Config, FileValuesAndFlagPrecedence) {
  const auto path = temp_file("config.ini");
  {
    std::ofstream f(path);
    f << "# steady Phi run\neta = 2\nbell = phi\n";
  }
  const auto from_file = invoke_json({"steady", "--config", path.string()});
  EXPECT_EQ(from_file["eta"].get<double>(), 2.0);
  EXPECT_EQ(from_file["bell"], "phi");
  EXPECT_NEAR(from_file["concurrence_infinity"].get<double>(), 0.7619047619047619, 1e-10);
  const auto overridden = invoke_json({"steady", "--config", path.string(), "--eta", "1"});
  EXPECT_EQ(overridden["eta"].get<double>(), 1.0);
  EXPECT_EQ(overridden["bell"], "phi");
  std::filesystem::remove(path);
}

TEST(Config, UnknownKeyRejected) {
  const auto path = temp_file("bad.ini");
  {
    std::ofstream f(path);
    f << "colour = blue\n";
  }
  EXPECT_EQ(invoke({"steady", "--config", path.string()}).code, 2);
  std::filesystem::remove(path);
}

TEST(Output, FileMatchesStdout) {
  const auto path = temp_file("curve.csv");
  const std::vector<std::string> args{"curve", "--steps", "20"};
  auto with_file = args;
  with_file.insert(with_file.end(), {"--output", path.string()});
  const auto r = invoke(with_file);
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "");
  std::ifstream f(path, std::ios::binary);
  const std::string written((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  EXPECT_EQ(written, invoke(args).out);
  std::filesystem::remove(path);
}

TEST(Format, Scientific) {
  EXPECT_EQ(format_scientific(0.25), "2.500000000000e-01");
  EXPECT_EQ(format_scientific(-0.0), "0.000000000000e+00");
  EXPECT_EQ(format_scientific(24.0 / 65.0), "3.692307692308e-01");
}

}  // namespace
}  // namespace vicsim::cli
