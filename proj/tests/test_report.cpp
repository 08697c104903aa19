#include <gtest/gtest.h>

#include "hermlab/report.hpp"

using namespace hermlab;

namespace {

TEST(Report, CsvQuoting) {
  EXPECT_EQ(csv_field("plain"), "plain");
  EXPECT_EQ(csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(csv_field("two\nlines"), "\"two\nlines\"");
  EXPECT_EQ(csv_row({"x", "1,2;3,4", ""}), "x,\"1,2;3,4\",\r\n");
}

TEST(Report, DoublesRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.0, 1e22, -0.0}) {
    const std::string s = format_double(v);
    EXPECT_EQ(std::stod(s), v) << s;
  }
  EXPECT_EQ(format_double(6.0), "6");
  EXPECT_EQ(format_double(std::nan("")), "nan");
  EXPECT_EQ(format_double(-HUGE_VAL), "-inf");
}

TEST(Report, Formats) {
  EXPECT_EQ(parse_format("csv"), Format::csv);
  EXPECT_THROW(parse_format("xml"), ConfigError);
}

TEST(Report, GridParsing) {
  const GridSpec g = parse_grid("2:0:1.5:4:0.5", 3);
  EXPECT_EQ(g.coordinate, 1);
  EXPECT_EQ(g.steps, 4);
  EXPECT_DOUBLE_EQ(g.hi, 1.5);
  EXPECT_DOUBLE_EQ(g.angle, 0.5);
  for (const char* bad : {"", "1:0:1", "0:0:1:3", "4:0:1:3", "1:1:0:3", "1:0:1:2.5", "1:x:1:3", "1:-1:1:3"})
    EXPECT_THROW(parse_grid(bad, 3), ConfigError) << bad;
}

TEST(Report, GridPoints) {
  const Point base{cplx(0.1, 0.2), cplx(0.3), cplx(0)};
  const auto pts = grid_points(parse_grid("1:0:2:5", 3), base);
  ASSERT_EQ(pts.size(), 5u);
  EXPECT_EQ(pts[0][0], cplx(0));
  EXPECT_EQ(pts[4][0], cplx(2));
  EXPECT_EQ(pts[2][1], cplx(0.3));
  const auto one = grid_points(parse_grid("3:0.4:0.4:1:1.5707963267948966", 3), base);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0][2].imag(), 0.4, 1e-15);
  EXPECT_NEAR(one[0][2].real(), 0.0, 1e-15);
}

TEST(Report, PointSummaryFubiniStudy) {
  const MetricSpec fs = make_metric("fubini_study", 2);
  const PointSummary p = summarize_point(fs, {cplx(0), cplx(0)}, SummaryOptions{});
  EXPECT_NEAR(p.s, 6.0, 1e-12);
  EXPECT_NEAR(p.s_hat, 6.0, 1e-12);
  EXPECT_NEAR(p.H.H_min, 2.0, 1e-12);
  EXPECT_NEAR(p.H.H_max, 2.0, 1e-12);
  EXPECT_TRUE(p.H.is_constant);
  const ordered_json j = to_json(p);
  EXPECT_EQ(j["point"], ordered_json::parse("[[0.0,0.0],[0.0,0.0]]"));
  EXPECT_EQ(j["jet"], "analytic");
  const std::string csv = render_summary(p, Format::csv);
  EXPECT_EQ(csv.substr(0, csv.find("\r\n")),
            "index,re_z1,im_z1,re_z2,im_z2,s,s_hat,tau_norm2,H_min,H_max,constant_H,c,lck_residual,max_abs_R,"
            "max_abs_K");
}

TEST(Report, SuiteJsonShape) {
  const MetricSpec ex = make_metric("example31", 2);
  SuiteOptions o;
  o.checks = {"lee", "tau1"};
  const SuiteReport r = run_suite(ex, sample_points(ex, 3, 1), o);
  const ordered_json j = to_json(r);
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"metric", "n", "tol", "jet", "points", "checks", "pass", "lck_gate",
                                            "errors"}));
  EXPECT_EQ(j["points"].size(), 3u);
  EXPECT_EQ(j["points"][0].size(), 2u);
  EXPECT_EQ(j["checks"]["lee"]["applicable"], true);
  EXPECT_FALSE(j.contains("wall_time"));
  EXPECT_EQ(render_suite(r, Format::json), render_suite(run_suite(ex, sample_points(ex, 3, 1), o), Format::json));
  const std::string csv = render_suite(r, Format::csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 1 + 3 * 2);
}

TEST(Report, ScanKeepsOrderAndErrors) {
  const MetricSpec b = make_metric("bergman", 2);
  const std::vector<Point> pts{{cplx(0.1), cplx(0)}, {cplx(1.2), cplx(0)}, {cplx(0.2), cplx(0.1)}};
  const ScanResult s = run_scan(b, pts, SummaryOptions{}, 3);
  ASSERT_EQ(s.errors.size(), 1u);
  EXPECT_EQ(s.errors[0].index, 1u);
  EXPECT_TRUE(s.rows[0] && s.rows[2]);
  const std::string csv = render_scan(s, Format::csv);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 3);
  EXPECT_NE(csv.find("\r\n2,"), std::string::npos);
}

}  // namespace
