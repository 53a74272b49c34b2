#include "app.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

namespace cli = loqc::cli;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string field;
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

std::string write_temp_config(const std::string& body) {
  const std::string path =
      ::testing::TempDir() + "/loqc_cli_config_test.json";
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST(cli, config_file_defaults_and_precedence) {
  cli::RunConfig cfg;
  cli::merge_config_file(cfg, write_temp_config("{}"), {});
  EXPECT_EQ(cfg.seed, 1u);

  cli::merge_config_file(cfg, write_temp_config("{\"seed\": 42}"), {});
  EXPECT_EQ(cfg.seed, 42u);

  cfg.seed = 7;  // value set on the command line
  cli::merge_config_file(cfg, write_temp_config("{\"seed\": 42}"), {"seed"});
  EXPECT_EQ(cfg.seed, 7u);
}

TEST(cli, config_file_rejects_unknown_and_mistyped_keys) {
  cli::RunConfig cfg;
  try {
    cli::merge_config_file(cfg, write_temp_config("{\"bogus\": 1}"), {});
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("bogus"), std::string::npos);
  }
  try {
    cli::merge_config_file(cfg, write_temp_config("{\"seed\": \"abc\"}"), {});
    FAIL() << "expected an error";
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find("seed"), std::string::npos);
  }
}

TEST(cli, figscale_header_and_monotonicity) {
  cli::RunConfig cfg;
  cfg.command = "figscale";
  cfg.ptot = 0.99;
  std::ostringstream os;
  EXPECT_EQ(cli::run_figscale(cfg, os), cli::kOk);
  const auto lines = lines_of(os.str());

  std::size_t header = 0;
  while (header < lines.size() && lines[header].rfind("#", 0) == 0) ++header;
  ASSERT_LT(header, lines.size());
  EXPECT_EQ(lines[header], "n_a,n_r,n_t,w,gate_budget");

  // Budgets by (na, nr, nt, w).
  std::map<std::array<int, 4>, double> budget;
  for (std::size_t i = header + 1; i < lines.size(); ++i) {
    const auto f = split_csv(lines[i]);
    ASSERT_EQ(f.size(), 5u);
    budget[{std::stoi(f[0]), std::stoi(f[1]), std::stoi(f[2]),
            std::stoi(f[3])}] = std::stod(f[4]);
  }
  for (int w = 2; w <= 30; ++w)
    EXPECT_LT(budget.at({1, 1, 1, w}), budget.at({1, 1, 1, w - 1}));
  for (int w : {4, 10, 20}) {
    EXPECT_GT(budget.at({3, 2, 1, w}), budget.at({2, 2, 1, w}));
    EXPECT_GT(budget.at({4, 2, 1, w}), budget.at({3, 2, 1, w}));
  }
}

TEST(cli, resources_reports_reference_values) {
  cli::RunConfig cfg;
  cfg.command = "resources";
  std::ostringstream os;
  EXPECT_EQ(cli::run_resources(cfg, os), cli::kOk);
  const std::string text = os.str();
  EXPECT_NE(text.find("t_g,7.5,formula"), std::string::npos);
  EXPECT_NE(text.find("e_add,16.0024793"), std::string::npos);
  EXPECT_NE(text.find("e_re,6.375,formula"), std::string::npos);
  EXPECT_NE(text.find("e_re_reference,5.7,paper-reference"),
            std::string::npos);
  EXPECT_NE(text.find("n_cs_reference,90,paper-reference"),
            std::string::npos);
  EXPECT_NE(text.find("quantity,value,provenance"), std::string::npos);
  EXPECT_NE(text.find("# config="), std::string::npos);
}

TEST(cli, resources_json_format) {
  cli::RunConfig cfg;
  cfg.command = "resources";
  cfg.format = "json";
  std::ostringstream os;
  EXPECT_EQ(cli::run_resources(cfg, os), cli::kOk);
  EXPECT_NE(os.str().find("\"version\""), std::string::npos);
  EXPECT_NE(os.str().find("\"provenance\": \"paper-reference\""),
            std::string::npos);
}

TEST(cli, factory_grid_output) {
  cli::RunConfig cfg;
  cfg.command = "factory";
  std::ostringstream os;
  EXPECT_EQ(cli::run_factory(cfg, os), cli::kOk);
  const auto lines = lines_of(os.str());
  std::size_t header = 0;
  while (header < lines.size() && lines[header].rfind("#", 0) == 0) ++header;
  ASSERT_LT(header, lines.size());
  EXPECT_EQ(lines[header], "n_a,n_r,w,bell_states,elim_states");
  int rows = 0;
  for (std::size_t i = header + 1; i < lines.size(); ++i)
    if (lines[i].rfind("#", 0) != 0) ++rows;
  EXPECT_EQ(rows, 16);
  EXPECT_NE(os.str().find("# minimum: n_a=2 n_r=2"), std::string::npos);
}

TEST(cli, verify_passes) {
  cli::RunConfig cfg;
  cfg.command = "verify";
  std::ostringstream os;
  EXPECT_EQ(cli::run_verify(cfg, os), cli::kOk);
  EXPECT_NE(os.str().find("ok elimination-resource probability 12/441"),
            std::string::npos);
  EXPECT_EQ(os.str().find("FAIL"), std::string::npos);
}

TEST(cli, klm_compare_bounds) {
  cli::RunConfig cfg;
  cfg.command = "klm-compare";
  std::ostringstream os;
  EXPECT_EQ(cli::run_klm_compare(cfg, os), cli::kOk);
  EXPECT_NE(os.str().find("elim_bound,1000,formula"), std::string::npos);
  EXPECT_NE(os.str().find("cs_bound,2250,formula"), std::string::npos);
  EXPECT_NE(os.str().find("cs_success_0,0.5625,formula"), std::string::npos);
}

TEST(cli, mc_outputs_are_deterministic) {
  cli::RunConfig cfg;
  cfg.command = "mc";
  cfg.trials = 5000;
  cfg.seed = 9;
  cfg.format = "json";
  std::ostringstream a, b;
  EXPECT_EQ(cli::run_mc(cfg, a), cli::kOk);
  EXPECT_EQ(cli::run_mc(cfg, b), cli::kOk);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(a.str().find("\"oracle_backed\""), std::string::npos);
}

TEST(cli, run_command_dispatch_and_exit_codes) {
  const std::string out_path = ::testing::TempDir() + "/loqc_cli_out.csv";
  {
    const char* argv[] = {"loqc",   "resources", "--na",
                          "3",      "--out",     out_path.c_str()};
    EXPECT_EQ(cli::run_command(6, argv), cli::kOk);
    std::ifstream in(out_path);
    ASSERT_TRUE(in.good());
  }
  {
    const char* argv[] = {"loqc", "bogus-subcommand"};
    EXPECT_EQ(cli::run_command(2, argv), cli::kConfigError);
  }
  {
    const std::string cfg_path = write_temp_config("{\"bogus\": 1}");
    const char* argv[] = {"loqc", "resources", "--config", cfg_path.c_str()};
    EXPECT_EQ(cli::run_command(4, argv), cli::kConfigError);
  }
  std::remove(out_path.c_str());
}
