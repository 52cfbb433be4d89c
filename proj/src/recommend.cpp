#include "elearn/recommend.hpp"

#include "elearn/error.hpp"

namespace elearn {

std::string_view to_string(Action action) {
  switch (action) {
    case Action::Reteach: return "reteach";
    case Action::Elaborate: return "elaborate";
    case Action::DeliverAndStore: return "deliver_and_store";
  }
  return "reteach";
}

std::optional<Action> parse_action(std::string_view name) {
  for (auto a : {Action::Reteach, Action::Elaborate, Action::DeliverAndStore}) {
    if (to_string(a) == name) return a;
  }
  return std::nullopt;
}

const std::vector<DecisionRule>& decision_rules() {
  static const std::vector<DecisionRule> rules = {
      {"low_level_reteach", [](const DecisionInput& in) { return in.level == Level::Low; }, Action::Reteach},
      {"medium_level_elaborate", [](const DecisionInput& in) { return in.level == Level::Medium; },
       Action::Elaborate},
      {"high_level_above_gate_deliver",
       [](const DecisionInput& in) { return in.level == Level::High && in.similarity > kDeliveryGate; },
       Action::DeliverAndStore},
      {"high_level_below_gate_elaborate",
       [](const DecisionInput& in) { return in.level == Level::High && in.similarity <= kDeliveryGate; },
       Action::Elaborate},
  };
  return rules;
}

Recommendation recommend(const LevelAssignment& assignment, double similarity,
                         const DifficultyLabels& labels, Eigen::Index learner_cluster) {
  if (!(similarity >= 0.0 && similarity <= 1.0)) {
    throw Error(ErrorCode::OutOfRange, "similarity " + std::to_string(similarity) + " outside [0,1]");
  }
  const DecisionInput input{assignment.level, similarity, &labels};
  Recommendation rec;
  const DecisionRule* fired = nullptr;
  for (const auto& rule : decision_rules()) {
    if (!rule.condition(input)) continue;
    rec.rationale.push_back(rule.name);
    if (!fired) fired = &rule;
  }
  // The table is total and disjoint, so exactly one rule fires.
  rec.action = fired->action;
  if (rec.action == Action::DeliverAndStore) {
    if (!labels.empty() && !labels.count(learner_cluster)) {
      throw Error(ErrorCode::InvalidArgument, "cluster " + std::to_string(learner_cluster) + " has no label");
    }
    rec.deliver_group = learner_cluster;
  }
  return rec;
}

}  // namespace elearn
