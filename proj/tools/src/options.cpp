#include "options.hpp"

#include <charconv>

#include "fracprox/error.hpp"

namespace fracprox::cli {

namespace {

double to_double(const std::string& tok, const std::string& what) {
  double v = 0.0;
  const char* end = tok.data() + tok.size();
  auto res = std::from_chars(tok.data(), end, v);
  if (tok.empty() || res.ec != std::errc() || res.ptr != end)
    throw UsageError("bad number '" + tok + "' in " + what);
  return v;
}

}  // namespace

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    out.push_back(to_double(text.substr(start, comma == std::string::npos ? std::string::npos : comma - start), text));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

ToleranceSchedule parse_schedule(const std::string& text, double tau) {
  if (text == "paper") return ToleranceSchedule::paper_default(tau);
  if (text == "exact") return ToleranceSchedule::constant(0.0, tau);
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw UsageError("unknown schedule '" + text + "'");
  const std::string head = text.substr(0, colon);
  const auto vals = parse_list(text.substr(colon + 1));
  if (vals.size() != 2) throw UsageError("schedule '" + text + "' needs eps0,q");
  if (head == "exp") return ToleranceSchedule::exponential(vals[0], vals[1], tau);
  if (head == "poly") return ToleranceSchedule::polynomial(vals[0], vals[1], tau);
  throw UsageError("unknown schedule '" + text + "'");
}

bool is_exact(const ToleranceSchedule& s) {
  return s.rule == ToleranceSchedule::Rule::Constant && s.eps0 == 0.0;
}

GammaRule parse_gamma(const std::string& text) {
  if (text == "paper") return GammaRule::paper_default();
  if (text.rfind("const:", 0) == 0) {
    const double v = to_double(text.substr(6), text);
    if (!(v > 0.0)) throw UsageError("gamma must be positive");
    return GammaRule::constant(v);
  }
  throw UsageError("unknown gamma rule '" + text + "'");
}

MetricKind parse_metric(const std::string& text) {
  if (text == "id") return MetricKind::ScaledIdentity;
  if (text == "gram") return MetricKind::ScaledGram;
  throw UsageError("unknown metric '" + text + "'");
}

VariantKind parse_variant(const std::string& text) {
  if (text == "box_lasso" || text == "lasso" || text == "box") return VariantKind::BoxLasso;
  if (text == "ball_constrained" || text == "ball" || text == "constrained")
    return VariantKind::BallConstrained;
  throw UsageError("unknown variant '" + text + "'");
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return kUsage;
  const auto* err = dynamic_cast<const Error*>(&e);
  if (!err) return kSolverFailure;
  switch (err->code()) {
    case ErrorCode::InvariantViolation:
    case ErrorCode::NegativeDelta1:
      return kInvariantFailure;
    case ErrorCode::BadBounds:
    case ErrorCode::BadShape:
    case ErrorCode::ParseError:
    case ErrorCode::UnsupportedSchedule:
    case ErrorCode::UnsupportedMetric:
    case ErrorCode::InvalidArgument:
    case ErrorCode::IoError:
    case ErrorCode::DomainError:
    case ErrorCode::TooShort:
      return kUsage;
    default:
      return kSolverFailure;
  }
}

}  // namespace fracprox::cli
