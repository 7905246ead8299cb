#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "medsolve/errors.hpp"

namespace medsolve {

/// A point of the probability simplex over the game states, stored as a
/// full-length coordinate vector. Coordinates must sum to 1 within 1e-12.
struct Belief {
  std::vector<double> coords;

  Belief() = default;
  explicit Belief(std::vector<double> c) : coords(std::move(c)) {}

  int dim() const { return static_cast<int>(coords.size()); }
  double operator[](int i) const { return coords[static_cast<size_t>(i)]; }
  double& operator[](int i) { return coords[static_cast<size_t>(i)]; }
};

/// Finite sender-receiver game. The sender's payoff depends on the action
/// only, the receiver's on state and action.
struct FiniteGame {
  std::vector<std::string> states;
  std::vector<std::string> actions;
  std::vector<double> prior;                        // strictly positive, sums to 1
  std::vector<double> senderUtility;                // indexed by action
  std::vector<std::vector<double>> receiverUtility; // [state][action]

  int numStates() const { return static_cast<int>(states.size()); }
  int numActions() const { return static_cast<int>(actions.size()); }
};

/// Closed interval of sender payoffs attainable from optimal receiver
/// (possibly mixed) responses at a belief, plus the optimal action set.
struct ValueInterval {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<int> bestActions;  // ascending indices
};

/// Named family with parameters, kept so games can be serialized and listed.
struct FamilyTag {
  std::string name;
  std::map<std::string, double> scalarParams;
  std::map<std::string, std::vector<double>> vectorParams;
};

/// Game whose sender value depends on the belief only through finitely many
/// moments. `states` holds the embedding of each degenerate belief in R^k;
/// the embedding must have full rank k <= numStates - 1.
struct MomentGame {
  std::vector<std::vector<double>> states;  // T(delta_omega), one row per state
  std::vector<double> prior;
  std::function<double(const std::vector<double>&)> senderMomentValue;
  std::optional<std::function<double(const std::vector<double>&)>> receiverMomentValue;
  FamilyTag familyTag;

  int numStates() const { return static_cast<int>(states.size()); }
  int momentDim() const { return states.empty() ? 0 : static_cast<int>(states.front().size()); }
};

using Game = std::variant<FiniteGame, MomentGame>;

/// One atom of a belief distribution: a posterior, its probability, and the
/// sender payoff selected from the value interval at that posterior.
struct PlanAtom {
  Belief belief;
  double weight = 0.0;     // > 0, atom weights sum to 1 within 1e-10
  double selection = 0.0;  // in [V_lo, V_hi] at the belief within 1e-9
};

/// Finite-support distribution over posteriors with attached selections.
struct BeliefPlan {
  std::vector<PlanAtom> atoms;
};

/// Joint distribution over states and actions. Rows are states.
struct OutcomeDistribution {
  std::vector<std::vector<double>> table;  // nonnegative, sums to 1
};

/// Throws if the game data violates shape or probability invariants.
void validateGame(const FiniteGame& game);
void validateGame(const MomentGame& game);
void validateBelief(const Belief& belief);

/// Optimal receiver actions at `mu` with relative tie tolerance 1e-9, and the
/// min/max sender payoff over them.
ValueInterval valueCorrespondence(const FiniteGame& game, const Belief& mu);

/// Sender value v(T(mu)) of a moment game at a belief.
double momentValue(const MomentGame& game, const Belief& mu);

/// Value interval at a belief for either game kind. Moment games yield a
/// degenerate interval and an empty action set.
ValueInterval valueAt(const Game& game, const Belief& mu);

int numStates(const Game& game);
const std::vector<double>& gamePrior(const Game& game);
Game withPrior(const Game& game, const std::vector<double>& prior);

/// Expected selection of a plan.
double planValue(const BeliefPlan& plan);
/// Barycenter of a plan's posteriors.
std::vector<double> planBarycenter(const BeliefPlan& plan);

/// Converts a plan into the state-action distribution obtained by decomposing
/// each selection as a two-point mixture between a lowest-index action
/// attaining V_lo and one attaining V_hi at the atom's belief. Throws
/// ObedienceViolation if a selection leaves its interval by more than 1e-9.
OutcomeDistribution planToOutcome(const FiniteGame& game, const BeliefPlan& plan);

/// Groups equal posteriors (within 1e-10) of an outcome's action messages
/// into plan atoms with conditional sender payoffs as selections. Throws
/// InconsistentPrior if row sums deviate from the prior by more than 1e-9.
BeliefPlan outcomeToPlan(const FiniteGame& game, const OutcomeDistribution& pi);

}  // namespace medsolve
