#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "pivotboot/report.hpp"

using namespace pivotboot;

TEST(FormatNumber, ShortestRoundTrip) {
  EXPECT_EQ(format_number(0.95), "0.95");
  EXPECT_EQ(format_number(1.0), "1");
  EXPECT_EQ(format_number(0.0), "0");
  for (double v : {0.1, 1.0 / 3, 0.9000169, 1e-300, -2.5e17, std::numeric_limits<double>::denorm_min()}) {
    const auto s = format_number(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    EXPECT_EQ(back, v) << s;
  }
}

TEST(ReportJson, RoundTripIsByteIdentical) {
  auto cfg = table1_config(Model::Lognormal01, 20, 77);
  cfg.outer = 6;
  cfg.inner = 37;
  const auto report = run_table1(cfg);
  const auto text = to_json(report).dump();
  EXPECT_EQ(Json::parse(text).dump(), text);
  const auto j = Json::parse(text);
  EXPECT_EQ(j.at("experiment"), "table1");
  EXPECT_EQ(j.at("seed").get<std::uint64_t>(), 77u);
  ASSERT_EQ(j.at("records").size(), report.records.size());
  for (std::size_t i = 0; i < report.records.size(); ++i) {
    EXPECT_EQ(j["records"][i]["frequency"].get<double>(), report.records[i].frequency);
    EXPECT_EQ(j["records"][i]["hits"].get<std::int64_t>(), report.records[i].hits);
  }
}

TEST(ReportJson, ConfigsCarryEveryField) {
  const auto j = to_json(table2_config(Model::Exponential1, 30, 5));
  for (const char* key : {"model", "n", "m", "outer", "inner", "threshold", "nominal", "band", "B", "seed"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  EXPECT_EQ(j["m"].get<std::int64_t>(), 30);
  EXPECT_EQ(j["model"], "Exponential1");
  CoverageConfig c;
  c.recipe = CoverageRecipe::Ecdf;
  EXPECT_TRUE(to_json(c).contains("x"));
  c.recipe = CoverageRecipe::SampleMean;
  EXPECT_FALSE(to_json(c).contains("x"));
}

TEST(RenderTable, CarriesTheSameNumbers) {
  CoverageReport r;
  r.experiment = "table2";
  const char* stats[] = {"emp_G_star", "emp_T", "emp_Boot"};
  const double freqs[2][3] = {{0.946, 0.872, 0.31}, {0.95, 0.9, 0.125}};
  const std::int64_t ns[] = {20, 30};
  for (int row = 0; row < 2; ++row) {
    for (int k = 0; k < 3; ++k) {
      CoverageRecord rec;
      rec.distribution = "Poisson1";
      rec.n = ns[row];
      rec.statistic = stats[k];
      rec.frequency = freqs[row][k];
      r.records.push_back(rec);
    }
  }
  const auto text = render_table(r);
  std::istringstream in(text);
  std::string header, rule, line;
  std::getline(in, header);
  std::getline(in, rule);
  EXPECT_NE(header.find("emp_G_star"), std::string::npos);
  EXPECT_EQ(rule.find_first_not_of('-'), std::string::npos);
  for (int row = 0; row < 2; ++row) {
    ASSERT_TRUE(std::getline(in, line));
    std::vector<std::string> fields;
    std::stringstream ls(line);
    std::string f;
    while (std::getline(ls, f, '|')) {
      f.erase(0, f.find_first_not_of(' '));
      f.erase(f.find_last_not_of(' ') + 1);
      fields.push_back(f);
    }
    ASSERT_EQ(fields.size(), 5u);
    EXPECT_EQ(fields[0], "Poisson1");
    EXPECT_EQ(std::stoll(fields[1]), ns[row]);
    for (int k = 0; k < 3; ++k) EXPECT_EQ(std::stod(fields[2 + k]), freqs[row][k]);
  }
  EXPECT_FALSE(std::getline(in, line));
}
