#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "medsolve/geom.hpp"
#include "medsolve/model.hpp"
#include "medsolve/solve.hpp"

namespace medsolve {

/// One plan atom whose selection leaves the obedient payoff interval.
struct SelectionBreach {
  int atom = 0;
  double amount = 0.0;  // distance outside [lo, hi]
};

/// Feasibility audit of a plan against the three protocols. The BP verdict
/// needs consistency and obedient selections; MD additionally needs zero
/// covariance between selection and posterior; CT additionally needs the
/// selection to be constant across atoms.
struct ImplementabilityReport {
  std::vector<double> consistencyResidual;  // sum_i w_i mu_i - p
  std::vector<double> covarianceResidual;   // Cov[s, mu(w)] per state
  std::vector<SelectionBreach> obedienceViolations;
  double selectionVariance = 0.0;
  bool bpOk = false;
  bool mdOk = false;
  bool ctOk = false;
};

ImplementabilityReport checkImplementable(const Game& game, const Belief& p,
                                          const BeliefPlan& plan);

/// Beliefs that can carry mass in some cheap-talk distribution attaining
/// level `s` at the prior, together with the dimension of their affine hull.
struct HullReport {
  double level = 0.0;
  std::vector<Belief> atomsInPlay;
  int hullDimension = 0;
  bool fullDimensional = false;
  /// Equal mixture of the per-atom mass witnesses: a single cheap-talk plan
  /// at the prior whose support spans every atom in play.
  BeliefPlan spanningPlan;
};

HullReport cheapTalkHull(const Game& game, const Belief& p, double s, const BeliefGrid& grid);

/// Primary full-dimensionality test (hull dimension at the best cheap-talk
/// level) with a corroborating local-constancy check on lattice neighbours.
struct DimensionalityEvidence {
  bool fullDimensional = false;
  HullReport hull;
  bool neighborsConstant = false;
};

DimensionalityEvidence isFullDimensional(const Game& game, const Belief& p,
                                         const BeliefGrid& grid);

/// A belief `mu` and mixing weight `lambda` certifying that level `s` can be
/// strictly improved: some posterior between mu and the prior supports a
/// higher value while mu itself supports a lower one.
struct ImprovementWitness {
  Belief mu;
  double lambda = 0.0;
};

struct ImprovabilityReport {
  bool improvable = false;
  std::optional<ImprovementWitness> witness;
};

ImprovabilityReport isImprovable(const Game& game, const Belief& p, double s,
                                 const BeliefGrid& grid, bool local);

/// Three-plan mixture raising the mediation value strictly above level `s`.
struct ImprovementCertificate {
  double s = 0.0;
  Belief muMinus;
  double lambda = 0.0;
  BeliefPlan tauPlus;
  BeliefPlan tauMinus;
  BeliefPlan tauZero;
  double xi = 0.0;
  double alpha = 1.0;
  BeliefPlan mixedPlan;
  double valueGain = 0.0;
};

ImprovementCertificate constructImprovingPlan(const Game& game, const Belief& p, double s,
                                              const ImprovementWitness& witness,
                                              const BeliefGrid& grid);

enum class TrichotomyClass { AllEqual, BpGtMdEqCt, BpGtMdGtCt };

struct TrichotomyReport {
  TrichotomyClass kind = TrichotomyClass::AllEqual;
  double bp = 0.0;
  double md = 0.0;
  double ct = 0.0;
};

/// Exact three-way comparison of commitment, mediation and cheap talk for a
/// finite game with at most 4 states. Commitment equals mediation only when
/// mediation equals cheap talk; any other outcome raises InternalError.
TrichotomyReport classifyTrichotomy(const FiniteGame& game, const BeliefGrid& grid);

enum class CrossingPattern { FromBelow, FromAbove, Both, No };

/// Crossing pattern of the shifted value correspondence on a binary game:
/// from below means the upper value going above `s` at some belief forces
/// the lower value to stay at or above `s` from there on.
CrossingPattern monoCrossing(const Game& game, double s, const BeliefGrid& grid);

/// True when the value passes through `s` exactly at `pHat` and the sign of
/// the difference changes at most once over the grid, at that point.
bool singleCrossingAt(const Game& game, double s, double pHat, const BeliefGrid& grid);

/// Whether splitting into the state vertices with a common selection level
/// at or above the no-disclosure value survives the improvability test.
bool fullDisclosureOptimal(const Game& game, const Belief& p, const BeliefGrid& grid);

/// Expected receiver payoff of a plan: best-response utility per posterior,
/// weighted by the plan.
double receiverValue(const Game& game, const BeliefPlan& plan);

/// Honesty residuals for a state-dependent selection payoff: entry (w, w')
/// integrates payoff(mu, w) against the difference of the conditional
/// densities of states w and w'. All entries >= -1e-8 means no state prefers
/// another state's message distribution.
std::vector<std::vector<double>> checkHonestyStateDependent(
    const std::function<double(const Belief&, int)>& payoff, const Belief& p,
    const BeliefPlan& plan);

}  // namespace medsolve
