#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "medsolve/geom.hpp"
#include "medsolve/linprog.hpp"
#include "medsolve/model.hpp"

namespace medsolve {

enum class Protocol { Bp, Md, CtMax, CtMin, Nd };

enum class SolveMethod { OutcomeLp, BeliefGridLp, LevelSet, Concavification };

/// Dual certificate from an LP-based solve: an affine map mu -> <f, mu> that
/// dominates the tilted value (1 + <g, mu - p>) * V(mu) on every candidate
/// posterior and meets the solve value at the prior.
struct DualData {
  std::vector<double> f;
  std::vector<double> g;
};

struct SolveReport {
  Protocol protocol = Protocol::Bp;
  double value = 0.0;
  BeliefPlan plan;
  SolveMethod method = SolveMethod::Concavification;
  std::optional<int> gridResolution;
  std::optional<DualData> dualData;
};

/// Result of probing the mediation dual at one tilt vector g.
struct DualProbe {
  std::vector<double> g;
  double cavValue = 0.0;
};

/// Hyperplane <normal, mu> = offset, used to refine vertex enumeration.
using HyperplaneCut = std::pair<std::vector<double>, double>;

/// Vertices of the polyhedral complex cut out of the belief simplex by the
/// receiver's pairwise indifference hyperplanes, the simplex facets and any
/// `extraCuts`. Supports up to 4 states; throws beyond that. Vertices are
/// deduplicated within 1e-10 and returned in lexicographic order.
std::vector<Belief> regionVertices(const FiniteGame& game,
                                   const std::vector<HyperplaneCut>& extraCuts = {});

/// Sender-optimal mediated value through the exact LP over joint state-action
/// distributions: rows sum to the prior, every recommended action is a best
/// response against its own conditional, and the sender's conditional payoff
/// is the same in every positive-prior state. Ground truth for finite games;
/// pass LpMode::Rational for exact arithmetic.
SolveReport solveMdOutcome(const FiniteGame& game, LpMode mode = LpMode::Float);

/// Mediated value restricted to candidate posteriors (grid points, exact
/// best-response region vertices for finite games with at most 4 states, and
/// the prior itself). Always a lower bound on the exact mediated value.
SolveReport solveMdBeliefGrid(const Game& game, const BeliefGrid& grid);

/// Commitment value: concavification of the upper value over the candidate
/// posteriors. Exact for finite games with at most 4 states.
SolveReport solveBp(const Game& game, const BeliefGrid& grid);

/// Sender-best cheap talk value at p: the largest constant payoff s such that
/// p lies in the convex hull of beliefs whose value interval reaches s. Exact
/// for finite games with at most 4 states; grid level-set search otherwise.
SolveReport solveCtMax(const Game& game, const Belief& p, const BeliefGrid& grid);

/// Sender-worst cheap talk value at p; mirror of solveCtMax on the lower
/// envelope.
SolveReport solveCtMin(const Game& game, const Belief& p, const BeliefGrid& grid);

/// No-disclosure benchmark: the single-atom plan at the prior with the
/// sender-preferred response.
SolveReport solveNd(const Game& game);

/// cav of mu -> (1 + <g, mu - p>) V_sel(mu) at p, where V_sel picks the upper
/// value when the multiplier is nonnegative and the lower value otherwise.
/// Upper bound on the mediated value for every g.
DualProbe dualProbe(const Game& game, const Belief& p, const std::vector<double>& g,
                    const BeliefGrid& grid);

}  // namespace medsolve
