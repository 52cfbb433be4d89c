#pragma once

#include <Eigen/Core>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elearn/clustering.hpp"
#include "elearn/fuzzy.hpp"

namespace elearn {

enum class Action { Reteach, Elaborate, DeliverAndStore };

std::string_view to_string(Action action);
std::optional<Action> parse_action(std::string_view name);

struct Recommendation {
  Action action = Action::Reteach;
  std::optional<Eigen::Index> deliver_group;  // set iff action is DeliverAndStore
  std::vector<std::string> rationale;         // names of the rules that fired

  friend bool operator==(const Recommendation&, const Recommendation&) = default;
};

/// Similarity must be strictly above this for material to be delivered.
inline constexpr double kDeliveryGate = 0.75;

struct DecisionInput {
  Level level;
  double similarity;
  const DifficultyLabels* labels;
};

struct DecisionRule {
  std::string name;
  std::function<bool(const DecisionInput&)> condition;
  Action action;
};

/// The rule table. Exactly one rule holds for any level and similarity.
const std::vector<DecisionRule>& decision_rules();

Recommendation recommend(const LevelAssignment& assignment, double similarity,
                         const DifficultyLabels& labels, Eigen::Index learner_cluster);

}  // namespace elearn
