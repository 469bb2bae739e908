#include "fracprox/trace_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "fracprox/error.hpp"
#include "fracprox/types.hpp"

namespace fracprox {

namespace {

constexpr int kColumns = 11;

std::string fmt(double v) {
  if (is_infeasible(v)) return "inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

[[noreturn]] void parse_error(const std::string& name, std::size_t line, std::size_t col,
                              const std::string& msg) {
  throw Error(ErrorCode::ParseError,
              name + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
}

double parse_double(const std::string& tok, const std::string& name, std::size_t line, std::size_t col) {
  if (tok == "inf") return kInfeasible;
  double v = 0.0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    parse_error(name, line, col, "expected a number, got '" + tok + "'");
  return v;
}

long long parse_int(const std::string& tok, const std::string& name, std::size_t line, std::size_t col) {
  long long v = 0;
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size() || v < 0)
    parse_error(name, line, col, "expected a nonnegative integer, got '" + tok + "'");
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows) {
  os << kTraceHeader << '\n';
  for (const auto& r : rows) {
    os << r.k << ',' << fmt(r.F) << ',' << fmt(r.c) << ',' << fmt(r.eps) << ',' << fmt(r.gamma) << ','
       << fmt(r.step_norm) << ',' << r.inner_iters << ',' << fmt(r.cert_lhs) << ',' << fmt(r.cert_rhs)
       << ',' << fmt(r.feas_viol) << ',' << fmt(r.time_s) << '\n';
  }
}

void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  write_trace_csv(os, rows);
  if (!os) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

std::vector<TraceRow> read_trace_csv(std::istream& is, const std::string& name) {
  std::vector<TraceRow> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header = false;
  while (std::getline(is, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header) {
      if (line != kTraceHeader) parse_error(name, lineno, 1, "unexpected header");
      header = true;
      continue;
    }
    std::vector<std::string> toks;
    std::vector<std::size_t> cols;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      toks.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
      cols.push_back(start + 1);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(toks.size()) != kColumns)
      parse_error(name, lineno, 1,
                  "expected " + std::to_string(kColumns) + " fields, got " + std::to_string(toks.size()));
    TraceRow r;
    r.k = static_cast<std::size_t>(parse_int(toks[0], name, lineno, cols[0]));
    r.F = parse_double(toks[1], name, lineno, cols[1]);
    r.c = parse_double(toks[2], name, lineno, cols[2]);
    r.eps = parse_double(toks[3], name, lineno, cols[3]);
    r.gamma = parse_double(toks[4], name, lineno, cols[4]);
    r.step_norm = parse_double(toks[5], name, lineno, cols[5]);
    r.inner_iters = static_cast<int>(parse_int(toks[6], name, lineno, cols[6]));
    r.cert_lhs = parse_double(toks[7], name, lineno, cols[7]);
    r.cert_rhs = parse_double(toks[8], name, lineno, cols[8]);
    r.feas_viol = parse_double(toks[9], name, lineno, cols[9]);
    r.time_s = parse_double(toks[10], name, lineno, cols[10]);
    rows.push_back(r);
  }
  if (!header) parse_error(name, lineno + 1, 1, "missing header");
  return rows;
}

std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  return read_trace_csv(is, path.string());
}

}  // namespace fracprox
