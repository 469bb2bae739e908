#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "fracprox/ivpgsa.hpp"

namespace fracprox {

inline constexpr const char* kTraceHeader =
    "k,F,c,eps,gamma,step_norm,inner_iters,cert_lhs,cert_rhs,feas_viol,time_s";

// Values equal to kInfeasible are written as "inf". Numbers use shortest round-trip form.
void write_trace_csv(std::ostream& os, const std::vector<TraceRow>& rows);
void write_trace_csv(const std::filesystem::path& path, const std::vector<TraceRow>& rows);

// Throws ParseError ("file:line:col: msg") on malformed input, IoError if unreadable.
std::vector<TraceRow> read_trace_csv(std::istream& is, const std::string& name = "<stream>");
std::vector<TraceRow> read_trace_csv(const std::filesystem::path& path);

}  // namespace fracprox
