#include <gtest/gtest.h>

#include <sstream>

#include "fracprox/trace_io.hpp"
#include "test_util.hpp"

using namespace fracprox;

namespace {

std::vector<TraceRow> sample_rows() {
  std::vector<TraceRow> rows;
  for (std::size_t k = 0; k < 5; ++k) {
    TraceRow r;
    r.k = k;
    r.F = 1.0 / (3.0 + static_cast<double>(k));
    r.c = 0.1 * std::sqrt(2.0 + static_cast<double>(k));
    r.eps = std::pow(0.5, static_cast<double>(k));
    r.gamma = 1.0 / std::sqrt(k + 1.0);
    r.step_norm = 1e-300 * static_cast<double>(k);
    r.inner_iters = static_cast<int>(k) * 3;
    r.cert_lhs = 1e-17;
    r.cert_rhs = 2.5e-3;
    r.feas_viol = -0.123456789012345678;
    r.time_s = 0.001 * static_cast<double>(k);
    rows.push_back(r);
  }
  rows[2].F = kInfeasible;
  return rows;
}

}  // namespace

TEST(TraceIo, RoundTrip) {
  const auto rows = sample_rows();
  std::stringstream ss;
  write_trace_csv(ss, rows);
  const std::string text = ss.str();
  EXPECT_EQ(text.substr(0, text.find('\n')), kTraceHeader);
  EXPECT_NE(text.find(",inf,"), std::string::npos);
  const auto back = read_trace_csv(ss);
  ASSERT_EQ(back.size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(back[i].k, rows[i].k);
    EXPECT_EQ(back[i].F, rows[i].F);
    EXPECT_EQ(back[i].c, rows[i].c);
    EXPECT_EQ(back[i].eps, rows[i].eps);
    EXPECT_EQ(back[i].gamma, rows[i].gamma);
    EXPECT_EQ(back[i].step_norm, rows[i].step_norm);
    EXPECT_EQ(back[i].inner_iters, rows[i].inner_iters);
    EXPECT_EQ(back[i].cert_lhs, rows[i].cert_lhs);
    EXPECT_EQ(back[i].cert_rhs, rows[i].cert_rhs);
    EXPECT_EQ(back[i].feas_viol, rows[i].feas_viol);
    EXPECT_EQ(back[i].time_s, rows[i].time_s);
  }
}

TEST(TraceIo, RejectsBadHeader) {
  std::stringstream ss("k,F,c\n0,1,2\n");
  try {
    read_trace_csv(ss, "t.csv");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
    EXPECT_NE(std::string(e.what()).find("t.csv:1:"), std::string::npos) << e.what();
  }
}

TEST(TraceIo, RejectsWrongFieldCountAndBadNumbers) {
  {
    std::stringstream ss(std::string(kTraceHeader) + "\n0,1,2,3\n");
    EXPECT_EQ(fracprox::testing::error_code_of([&] { read_trace_csv(ss); }), ErrorCode::ParseError);
  }
  {
    std::stringstream ss(std::string(kTraceHeader) + "\n0,1,2,3,4,5,6,7,8,9,10\n1,1,2,x3,4,5,6,7,8,9,10\n");
    try {
      read_trace_csv(ss, "t.csv");
      FAIL();
    } catch (const Error& e) {
      EXPECT_NE(std::string(e.what()).find("t.csv:3:"), std::string::npos) << e.what();
    }
  }
}

TEST(TraceIo, MissingFileIsIoError) {
  EXPECT_EQ(fracprox::testing::error_code_of([] { read_trace_csv(std::filesystem::path("/nonexistent/t.csv")); }),
            ErrorCode::IoError);
}
