#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace elearn {

enum class Level { Low, Medium, High };

std::string_view to_string(Level level);
std::optional<Level> parse_level(std::string_view name);

struct MembershipTriple {
  double low = 0.0;
  double medium = 0.0;
  double high = 0.0;

  friend bool operator==(const MembershipTriple&, const MembershipTriple&) = default;
};

/// Peaks of the low, medium and high triangles, on both the similarity axis
/// and the defuzzification axis. Must be strictly increasing inside [0, 1].
struct FuzzyConfig {
  std::array<double, 3> peaks{0.0, 0.5, 1.0};
};

struct LevelAssignment {
  Level level = Level::Low;
  MembershipTriple memberships;
  double support = 0.0;  // centroid of the aggregated output set

  friend bool operator==(const LevelAssignment&, const LevelAssignment&) = default;
};

/// Number of samples the centroid integration uses over [0, 1].
inline constexpr int kCentroidSamples = 1001;

MembershipTriple memberships(double s, const FuzzyConfig& cfg = {});

/// Argmax of the memberships; an exact tie goes to the higher level.
LevelAssignment classify(double s, const FuzzyConfig& cfg = {});

/// Mamdani inference: each output triangle is clipped (min) at its rule
/// strength, the clipped sets are merged (max), and the centroid of the
/// result is taken by the trapezoid rule.
double defuzzify_centroid(double s, const FuzzyConfig& cfg = {});

}  // namespace elearn
