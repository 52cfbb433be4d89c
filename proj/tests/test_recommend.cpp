#include <doctest.h>

#include "elearn/error.hpp"
#include "elearn/recommend.hpp"

using namespace elearn;

namespace {

LevelAssignment at(Level level) {
  LevelAssignment a;
  a.level = level;
  return a;
}

const DifficultyLabels kLabels{{0, "simple"}, {1, "medium"}};

}  // namespace

TEST_CASE("delivery gate is strict") {
  const auto deliver = recommend(at(Level::High), 0.80, kLabels, 1);
  CHECK(deliver.action == Action::DeliverAndStore);
  CHECK(deliver.deliver_group == 1);
  CHECK(deliver.rationale == std::vector<std::string>{"high_level_above_gate_deliver"});

  const auto boundary = recommend(at(Level::High), 0.75, kLabels, 1);
  CHECK(boundary.action == Action::Elaborate);
  CHECK_FALSE(boundary.deliver_group.has_value());

  CHECK(recommend(at(Level::Low), 0.10, kLabels, 0).action == Action::Reteach);
  // The level rule still applies to a medium learner above the gate.
  CHECK(recommend(at(Level::Medium), 0.9, kLabels, 0).action == Action::Elaborate);
}

TEST_CASE("every input fires exactly one rule") {
  for (auto level : {Level::Low, Level::Medium, Level::High}) {
    bool delivered = false;
    for (int i = 0; i <= 1000; ++i) {
      const double s = i / 1000.0;
      const DecisionInput input{level, s, &kLabels};
      std::vector<std::string> holding;
      for (const auto& rule : decision_rules()) {
        if (rule.condition(input)) holding.push_back(rule.name);
      }
      CHECK(holding.size() == 1);
      const auto rec = recommend(at(level), s, kLabels, 0);
      CHECK(rec.rationale == holding);
      CHECK(rec.deliver_group.has_value() == (rec.action == Action::DeliverAndStore));
      if (level == Level::High) {
        // Once delivered, a higher similarity never downgrades.
        if (delivered) CHECK(rec.action == Action::DeliverAndStore);
        delivered = rec.action == Action::DeliverAndStore;
      }
    }
  }
}

TEST_CASE("recommend input errors") {
  CHECK_THROWS_AS(recommend(at(Level::High), 1.2, kLabels, 0), Error);
  CHECK_THROWS_AS(recommend(at(Level::High), -0.1, kLabels, 0), Error);
  CHECK_THROWS_AS(recommend(at(Level::High), 0.9, kLabels, 7), Error);
  CHECK(recommend(at(Level::High), 0.9, {}, 7).deliver_group == 7);
}

TEST_CASE("action names round-trip") {
  for (auto a : {Action::Reteach, Action::Elaborate, Action::DeliverAndStore}) CHECK(parse_action(to_string(a)) == a);
  CHECK(to_string(Action::DeliverAndStore) == "deliver_and_store");
  CHECK_FALSE(parse_action("ignore").has_value());
}
