#include "elearn/fuzzy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elearn/error.hpp"

namespace elearn {

namespace {

void validate(const FuzzyConfig& cfg) {
  const auto& p = cfg.peaks;
  if (!(p[0] >= 0.0 && p[0] < p[1] && p[1] < p[2] && p[2] <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "fuzzy peaks must be strictly increasing within [0,1]");
  }
}

void check_input(double s) {
  if (!(s >= 0.0 && s <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "similarity " + std::to_string(s) + " outside [0,1]");
  }
}

// Same triangles, no range check; also used on the output axis.
MembershipTriple evaluate(double x, const std::array<double, 3>& p) {
  MembershipTriple m;
  if (x <= p[0]) {
    m.low = 1.0;
  } else if (x < p[1]) {
    m.low = (p[1] - x) / (p[1] - p[0]);
    m.medium = (x - p[0]) / (p[1] - p[0]);
  } else if (x == p[1]) {
    m.medium = 1.0;
  } else if (x < p[2]) {
    m.medium = (p[2] - x) / (p[2] - p[1]);
    m.high = (x - p[1]) / (p[2] - p[1]);
  } else {
    m.high = 1.0;
  }
  return m;
}

}  // namespace

std::string_view to_string(Level level) {
  switch (level) {
    case Level::Low: return "low";
    case Level::Medium: return "medium";
    case Level::High: return "high";
  }
  return "low";
}

std::optional<Level> parse_level(std::string_view name) {
  if (name == "low") return Level::Low;
  if (name == "medium") return Level::Medium;
  if (name == "high") return Level::High;
  return std::nullopt;
}

MembershipTriple memberships(double s, const FuzzyConfig& cfg) {
  validate(cfg);
  check_input(s);
  return evaluate(s, cfg.peaks);
}

LevelAssignment classify(double s, const FuzzyConfig& cfg) {
  LevelAssignment out;
  out.memberships = memberships(s, cfg);
  const auto& m = out.memberships;
  if (m.high >= m.medium && m.high >= m.low) {
    out.level = Level::High;
  } else if (m.medium >= m.low) {
    out.level = Level::Medium;
  } else {
    out.level = Level::Low;
  }
  out.support = defuzzify_centroid(s, cfg);
  return out;
}

double defuzzify_centroid(double s, const FuzzyConfig& cfg) {
  const MembershipTriple strength = memberships(s, cfg);
  constexpr int n = kCentroidSamples;
  const double h = 1.0 / (n - 1);
  double area = 0.0;
  double moment = 0.0;
  for (int i = 0; i < n; ++i) {
    const double y = static_cast<double>(i) / (n - 1);
    const MembershipTriple out = evaluate(y, cfg.peaks);
    const double mu = std::max({std::min(strength.low, out.low), std::min(strength.medium, out.medium),
                                std::min(strength.high, out.high)});
    const double wgt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    area += wgt * mu;
    moment += wgt * mu * y;
  }
  area *= h;
  moment *= h;
  if (area <= 0.0) return cfg.peaks[1];
  return moment / area;
}

}  // namespace elearn
