#include "medsolve/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace medsolve {

namespace {

constexpr double kProbSumTol = 1e-12;
constexpr double kTieRelTol = 1e-9;
constexpr double kRowSumTol = 1e-9;
constexpr double kGroupTol = 1e-10;
constexpr double kSelectionTol = 1e-9;
// Marginals below this are float-solver noise; conditioning on them would
// manufacture meaningless posteriors.
constexpr double kMarginalDropTol = 1e-12;

double sum(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0);
}

}  // namespace

void validateBelief(const Belief& belief) {
  if (belief.coords.empty()) throw DimensionMismatch("belief has no coordinates");
  double s = sum(belief.coords);
  if (std::fabs(s - 1.0) > kProbSumTol)
    throw Error("belief coordinates sum to " + std::to_string(s) + ", expected 1");
  for (double c : belief.coords)
    if (c < -kProbSumTol) throw Error("belief coordinate below zero");
}

void validateGame(const FiniteGame& game) {
  const int n = game.numStates();
  const int m = game.numActions();
  if (n < 2) throw DimensionMismatch("finite game needs at least 2 states");
  if (m < 1) throw DimensionMismatch("finite game needs at least 1 action");
  if (static_cast<int>(game.prior.size()) != n)
    throw DimensionMismatch("prior length does not match state count");
  if (static_cast<int>(game.senderUtility.size()) != m)
    throw DimensionMismatch("sender utility length does not match action count");
  if (static_cast<int>(game.receiverUtility.size()) != n)
    throw DimensionMismatch("receiver utility row count does not match state count");
  for (const auto& row : game.receiverUtility)
    if (static_cast<int>(row.size()) != m)
      throw DimensionMismatch("receiver utility column count does not match action count");
  double s = sum(game.prior);
  if (std::fabs(s - 1.0) > kProbSumTol)
    throw Error("prior sums to " + std::to_string(s) + ", expected 1");
  for (double p : game.prior)
    if (p <= 0.0) throw Error("prior must be strictly positive in every state");
}

void validateGame(const MomentGame& game) {
  const int n = game.numStates();
  if (n < 2) throw DimensionMismatch("moment game needs at least 2 states");
  if (static_cast<int>(game.prior.size()) != n)
    throw DimensionMismatch("prior length does not match state count");
  const int k = game.momentDim();
  if (k < 1 || k > n - 1) throw DimensionMismatch("moment dimension must lie in [1, numStates-1]");
  for (const auto& row : game.states)
    if (static_cast<int>(row.size()) != k)
      throw DimensionMismatch("state embedding rows have inconsistent lengths");
  if (!game.senderMomentValue) throw Error("moment game is missing its sender value");
  double s = sum(game.prior);
  if (std::fabs(s - 1.0) > kProbSumTol)
    throw Error("prior sums to " + std::to_string(s) + ", expected 1");
  for (double p : game.prior)
    if (p <= 0.0) throw Error("prior must be strictly positive in every state");
}

ValueInterval valueCorrespondence(const FiniteGame& game, const Belief& mu) {
  const int n = game.numStates();
  const int m = game.numActions();
  if (mu.dim() != n) throw DimensionMismatch("belief dimension does not match state count");

  double best = -std::numeric_limits<double>::infinity();
  std::vector<double> expected(static_cast<size_t>(m), 0.0);
  for (int a = 0; a < m; ++a) {
    double e = 0.0;
    for (int w = 0; w < n; ++w) e += mu[w] * game.receiverUtility[static_cast<size_t>(w)][static_cast<size_t>(a)];
    expected[static_cast<size_t>(a)] = e;
    best = std::max(best, e);
  }
  const double tol = kTieRelTol * std::max(1.0, std::fabs(best));

  ValueInterval out;
  out.lo = std::numeric_limits<double>::infinity();
  out.hi = -std::numeric_limits<double>::infinity();
  for (int a = 0; a < m; ++a) {
    if (expected[static_cast<size_t>(a)] >= best - tol) {
      out.bestActions.push_back(a);
      out.lo = std::min(out.lo, game.senderUtility[static_cast<size_t>(a)]);
      out.hi = std::max(out.hi, game.senderUtility[static_cast<size_t>(a)]);
    }
  }
  return out;
}

double momentValue(const MomentGame& game, const Belief& mu) {
  const int n = game.numStates();
  if (mu.dim() != n) throw DimensionMismatch("belief dimension does not match state count");
  const int k = game.momentDim();
  std::vector<double> x(static_cast<size_t>(k), 0.0);
  for (int w = 0; w < n; ++w)
    for (int j = 0; j < k; ++j)
      x[static_cast<size_t>(j)] += mu[w] * game.states[static_cast<size_t>(w)][static_cast<size_t>(j)];
  return game.senderMomentValue(x);
}

ValueInterval valueAt(const Game& game, const Belief& mu) {
  if (const auto* fg = std::get_if<FiniteGame>(&game)) return valueCorrespondence(*fg, mu);
  const auto& mg = std::get<MomentGame>(game);
  double v = momentValue(mg, mu);
  return ValueInterval{v, v, {}};
}

int numStates(const Game& game) {
  return std::visit([](const auto& g) { return g.numStates(); }, game);
}

const std::vector<double>& gamePrior(const Game& game) {
  return std::visit([](const auto& g) -> const std::vector<double>& { return g.prior; }, game);
}

Game withPrior(const Game& game, const std::vector<double>& prior) {
  Game copy = game;
  std::visit([&](auto& g) { g.prior = prior; }, copy);
  return copy;
}

double planValue(const BeliefPlan& plan) {
  double v = 0.0;
  for (const auto& atom : plan.atoms) v += atom.weight * atom.selection;
  return v;
}

std::vector<double> planBarycenter(const BeliefPlan& plan) {
  if (plan.atoms.empty()) return {};
  std::vector<double> b(plan.atoms.front().belief.coords.size(), 0.0);
  for (const auto& atom : plan.atoms)
    for (size_t i = 0; i < b.size(); ++i) b[i] += atom.weight * atom.belief.coords[i];
  return b;
}

OutcomeDistribution planToOutcome(const FiniteGame& game, const BeliefPlan& plan) {
  const int n = game.numStates();
  const int m = game.numActions();
  OutcomeDistribution pi;
  pi.table.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(m), 0.0));

  for (const auto& atom : plan.atoms) {
    ValueInterval iv = valueCorrespondence(game, atom.belief);
    if (atom.selection < iv.lo - kSelectionTol || atom.selection > iv.hi + kSelectionTol)
      throw ObedienceViolation("plan selection outside the value interval at an atom");

    // Lowest-index attaining actions for each endpoint.
    int aLo = -1, aHi = -1;
    for (int a : iv.bestActions) {
      double u = game.senderUtility[static_cast<size_t>(a)];
      if (aLo < 0 && std::fabs(u - iv.lo) <= kSelectionTol) aLo = a;
      if (aHi < 0 && std::fabs(u - iv.hi) <= kSelectionTol) aHi = a;
    }
    if (aLo < 0 || aHi < 0) throw InternalError("value interval endpoints lost their actions");

    double uLo = game.senderUtility[static_cast<size_t>(aLo)];
    double uHi = game.senderUtility[static_cast<size_t>(aHi)];
    double theta = (uHi - uLo > kSelectionTol)
                       ? std::clamp((atom.selection - uLo) / (uHi - uLo), 0.0, 1.0)
                       : 1.0;
    for (int w = 0; w < n; ++w) {
      double mass = atom.weight * atom.belief[w];
      pi.table[static_cast<size_t>(w)][static_cast<size_t>(aHi)] += mass * theta;
      pi.table[static_cast<size_t>(w)][static_cast<size_t>(aLo)] += mass * (1.0 - theta);
    }
  }
  return pi;
}

BeliefPlan outcomeToPlan(const FiniteGame& game, const OutcomeDistribution& pi) {
  const int n = game.numStates();
  const int m = game.numActions();
  if (static_cast<int>(pi.table.size()) != n)
    throw DimensionMismatch("outcome row count does not match state count");
  for (const auto& row : pi.table)
    if (static_cast<int>(row.size()) != m)
      throw DimensionMismatch("outcome column count does not match action count");

  for (int w = 0; w < n; ++w) {
    double rowSum = sum(pi.table[static_cast<size_t>(w)]);
    if (std::fabs(rowSum - game.prior[static_cast<size_t>(w)]) > kRowSumTol)
      throw InconsistentPrior("outcome row sums deviate from the prior");
  }

  struct Message {
    Belief posterior;
    double weight;
    double payoff;  // weight-conditional sender payoff
  };
  std::vector<Message> groups;

  for (int a = 0; a < m; ++a) {
    double marg = 0.0;
    for (int w = 0; w < n; ++w) marg += pi.table[static_cast<size_t>(w)][static_cast<size_t>(a)];
    if (marg <= kMarginalDropTol) continue;
    Belief post;
    post.coords.resize(static_cast<size_t>(n));
    for (int w = 0; w < n; ++w) post[w] = pi.table[static_cast<size_t>(w)][static_cast<size_t>(a)] / marg;
    double payoff = game.senderUtility[static_cast<size_t>(a)];

    bool merged = false;
    for (auto& g : groups) {
      double dist = 0.0;
      for (int w = 0; w < n; ++w) dist = std::max(dist, std::fabs(g.posterior[w] - post[w]));
      if (dist <= kGroupTol) {
        double total = g.weight + marg;
        for (int w = 0; w < n; ++w)
          g.posterior[w] = (g.weight * g.posterior[w] + marg * post[w]) / total;
        g.payoff = (g.weight * g.payoff + marg * payoff) / total;
        g.weight = total;
        merged = true;
        break;
      }
    }
    if (!merged) groups.push_back({post, marg, payoff});
  }

  BeliefPlan plan;
  for (auto& g : groups) plan.atoms.push_back({std::move(g.posterior), g.weight, g.payoff});
  return plan;
}

}  // namespace medsolve
