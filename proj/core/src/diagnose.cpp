#include "medsolve/diagnose.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "medsolve/linprog.hpp"

namespace medsolve {

namespace {

constexpr double kResidualTol = 1e-7;
constexpr double kSelectionTol = 1e-9;
constexpr double kVarianceTol = 1e-12;
constexpr double kStrictMargin = 1e-9;
constexpr double kMassTol = 1e-9;
constexpr int kLambdaGrid = 256;

double maxAbs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

// Grid points plus arrangement vertices for finite games with few states,
// plus the prior, deduplicated against the lattice.
std::vector<Belief> candidateBeliefs(const Game& game, const BeliefGrid& grid,
                                     const Belief& p) {
  std::vector<Belief> out = grid.points;
  auto addOffGrid = [&](const Belief& mu) {
    if (grid.indexOf(mu) >= 0) return;
    for (size_t i = grid.points.size(); i < out.size(); ++i) {
      double d = 0.0;
      for (size_t w = 0; w < mu.coords.size(); ++w)
        d = std::max(d, std::fabs(out[i].coords[w] - mu.coords[w]));
      if (d <= 1e-10) return;
    }
    out.push_back(mu);
  };
  if (const auto* fg = std::get_if<FiniteGame>(&game)) {
    if (fg->numStates() <= 4)
      for (const auto& v : regionVertices(*fg)) addOffGrid(v);
  }
  addOffGrid(p);
  return out;
}

std::vector<std::vector<double>> rawCoords(const std::vector<Belief>& beliefs) {
  std::vector<std::vector<double>> out;
  out.reserve(beliefs.size());
  for (const auto& b : beliefs) out.push_back(b.coords);
  return out;
}

// Distance from x to the affine hull described by `basis`.
double affineDistance(const AffineBasis& basis, const std::vector<double>& x) {
  std::vector<double> d(x.size());
  for (size_t i = 0; i < x.size(); ++i) d[i] = x[i] - basis.base[i];
  std::vector<double> proj(x.size(), 0.0);
  for (const auto& dir : basis.directions) {
    double c = 0.0;
    for (size_t i = 0; i < x.size(); ++i) c += d[i] * dir[i];
    for (size_t i = 0; i < x.size(); ++i) proj[i] += c * dir[i];
  }
  double worst = 0.0;
  for (size_t i = 0; i < x.size(); ++i) worst = std::max(worst, std::fabs(d[i] - proj[i]));
  return worst;
}

// Feasibility of x = lambda*y + (1-lambda)*p with x in co(plus), y in
// co(minus); on success fills `witness` with the barycenter of the y-part,
// snapped to a single minus-side point when one works on its own. A single
// point always supports a cheap-talk level below s; a barycenter may not.
bool mixtureFeasible(const std::vector<Belief>& plus, const std::vector<Belief>& minus,
                     const std::vector<double>& p, double lambda,
                     std::vector<double>* witness) {
  const int n = static_cast<int>(p.size());
  const size_t np = plus.size(), nm = minus.size();
  LinearProgram lp;
  lp.sense = ObjectiveSense::Maximize;
  lp.objective.assign(np + nm, 0.0);
  lp.constraintMatrix.assign(static_cast<size_t>(n) + 2,
                             std::vector<double>(np + nm, 0.0));
  for (int w = 0; w < n; ++w) {
    auto& row = lp.constraintMatrix[static_cast<size_t>(w)];
    for (size_t i = 0; i < np; ++i) row[i] = plus[i][w];
    for (size_t j = 0; j < nm; ++j) row[np + j] = -lambda * minus[j][w];
  }
  for (size_t i = 0; i < np; ++i) lp.constraintMatrix[static_cast<size_t>(n)][i] = 1.0;
  for (size_t j = 0; j < nm; ++j) lp.constraintMatrix[static_cast<size_t>(n) + 1][np + j] = 1.0;
  lp.constraintSense.assign(static_cast<size_t>(n) + 2, ConstraintSense::Eq);
  lp.rhs.assign(static_cast<size_t>(n) + 2, 0.0);
  for (int w = 0; w < n; ++w) lp.rhs[static_cast<size_t>(w)] = (1.0 - lambda) * p[static_cast<size_t>(w)];
  lp.rhs[static_cast<size_t>(n)] = 1.0;
  lp.rhs[static_cast<size_t>(n) + 1] = 1.0;
  LpSolution sol = solveLp(lp);
  if (sol.status != LpStatus::Optimal) return false;
  if (witness) {
    std::vector<std::vector<double>> plusRaw = rawCoords(plus);
    for (size_t j = 0; j < nm; ++j) {
      if (sol.primal[np + j] <= kMassTol) continue;
      std::vector<double> x(p.size());
      for (int w = 0; w < n; ++w)
        x[static_cast<size_t>(w)] = lambda * minus[j][w] + (1.0 - lambda) * p[static_cast<size_t>(w)];
      if (hullMembership(plusRaw, x).member) {
        *witness = minus[j].coords;
        return true;
      }
    }
    witness->assign(p.size(), 0.0);
    for (size_t j = 0; j < nm; ++j)
      for (int w = 0; w < n; ++w)
        (*witness)[static_cast<size_t>(w)] += sol.primal[np + j] * minus[j][w];
  }
  return true;
}

// Scaled plan atoms appended onto `out`.
void appendScaled(std::vector<PlanAtom>& out, const BeliefPlan& plan, double factor) {
  if (factor <= 0.0) return;
  for (const auto& a : plan.atoms) out.push_back({a.belief, factor * a.weight, a.selection});
}

struct BinaryProfile {
  std::vector<double> xs;
  std::vector<double> lo;
  std::vector<double> hi;
};

BinaryProfile binaryProfile(const Game& game, const BeliefGrid& grid) {
  if (numStates(game) != 2) throw NotBinary("crossing tests need a binary state space");
  std::vector<Belief> pts = grid.points;
  if (const auto* fg = std::get_if<FiniteGame>(&game))
    for (const auto& v : regionVertices(*fg)) pts.push_back(v);
  std::sort(pts.begin(), pts.end(),
            [](const Belief& a, const Belief& b) { return a[1] < b[1]; });
  BinaryProfile prof;
  for (const auto& b : pts) {
    if (!prof.xs.empty() && std::fabs(b[1] - prof.xs.back()) <= 1e-12) continue;
    auto iv = valueAt(game, b);
    prof.xs.push_back(b[1]);
    prof.lo.push_back(iv.lo);
    prof.hi.push_back(iv.hi);
  }
  return prof;
}

std::vector<double> momentPoint(const MomentGame& game, const Belief& mu) {
  std::vector<double> x(static_cast<size_t>(game.momentDim()), 0.0);
  for (int w = 0; w < game.numStates(); ++w)
    for (int j = 0; j < game.momentDim(); ++j)
      x[static_cast<size_t>(j)] += mu[w] * game.states[static_cast<size_t>(w)][static_cast<size_t>(j)];
  return x;
}

}  // namespace

ImplementabilityReport checkImplementable(const Game& game, const Belief& p,
                                          const BeliefPlan& plan) {
  const size_t n = p.coords.size();
  if (plan.atoms.empty()) throw Error("cannot audit an empty plan");
  ImplementabilityReport rep;
  rep.consistencyResidual.assign(n, 0.0);
  rep.covarianceResidual.assign(n, 0.0);

  double meanSel = 0.0;
  std::vector<double> meanMu(n, 0.0);
  for (const auto& a : plan.atoms) {
    if (a.belief.coords.size() != n) throw DimensionMismatch("plan atom has wrong state count");
    meanSel += a.weight * a.selection;
    for (size_t w = 0; w < n; ++w) meanMu[w] += a.weight * a.belief[static_cast<int>(w)];
  }
  for (size_t w = 0; w < n; ++w) rep.consistencyResidual[w] = meanMu[w] - p[static_cast<int>(w)];

  for (size_t w = 0; w < n; ++w) {
    double cross = 0.0;
    for (const auto& a : plan.atoms)
      cross += a.weight * a.selection * a.belief[static_cast<int>(w)];
    rep.covarianceResidual[w] = cross - meanSel * meanMu[w];
  }

  double second = 0.0;
  for (const auto& a : plan.atoms) second += a.weight * a.selection * a.selection;
  rep.selectionVariance = std::max(0.0, second - meanSel * meanSel);

  for (size_t i = 0; i < plan.atoms.size(); ++i) {
    const auto& a = plan.atoms[i];
    auto iv = valueAt(game, a.belief);
    double out = std::max(iv.lo - a.selection, a.selection - iv.hi);
    if (out > kSelectionTol) rep.obedienceViolations.push_back({static_cast<int>(i), out});
  }

  rep.bpOk = maxAbs(rep.consistencyResidual) <= kResidualTol && rep.obedienceViolations.empty();
  rep.mdOk = rep.bpOk && maxAbs(rep.covarianceResidual) <= kResidualTol;
  rep.ctOk = rep.mdOk && rep.selectionVariance <= kVarianceTol;
  return rep;
}

HullReport cheapTalkHull(const Game& game, const Belief& p, double s, const BeliefGrid& grid) {
  std::vector<Belief> cands = candidateBeliefs(game, grid, p);
  std::vector<Belief> feas;
  for (const auto& mu : cands) {
    auto iv = valueAt(game, mu);
    if (iv.lo <= s + kSelectionTol && iv.hi >= s - kSelectionTol) feas.push_back(mu);
  }
  HullMembership base = hullMembership(rawCoords(feas), p.coords);
  if (!base.member)
    throw LevelNotAttainable("level is not supportable by a cheap-talk split at this prior");

  const int n = static_cast<int>(p.coords.size());
  const size_t cols = feas.size();
  LinearProgram lp;
  lp.sense = ObjectiveSense::Maximize;
  lp.objective.assign(cols, 0.0);
  lp.constraintMatrix.assign(static_cast<size_t>(n) + 1, std::vector<double>(cols, 0.0));
  for (size_t c = 0; c < cols; ++c) {
    for (int w = 0; w < n; ++w) lp.constraintMatrix[static_cast<size_t>(w)][c] = feas[c][w];
    lp.constraintMatrix[static_cast<size_t>(n)][c] = 1.0;
  }
  lp.constraintSense.assign(static_cast<size_t>(n) + 1, ConstraintSense::Eq);
  lp.rhs = p.coords;
  lp.rhs.push_back(1.0);

  std::vector<double> spanning(cols, 0.0);
  int witnesses = 0;
  auto absorb = [&](const std::vector<double>& w) {
    for (size_t c = 0; c < cols; ++c) spanning[c] += w[c];
    ++witnesses;
  };
  HullReport rep;
  rep.level = s;
  for (size_t c = 0; c < cols; ++c) {
    if (base.weights[c] > kMassTol) {
      rep.atomsInPlay.push_back(feas[c]);
      absorb(base.weights);
      continue;
    }
    lp.objective[c] = 1.0;
    LpSolution sol = solveLp(lp);
    lp.objective[c] = 0.0;
    if (sol.status != LpStatus::Optimal)
      throw InternalError("per-atom mass LP lost a feasible point it was given");
    if (sol.value > kMassTol) {
      rep.atomsInPlay.push_back(feas[c]);
      absorb(sol.primal);
    }
  }

  for (size_t c = 0; c < cols; ++c) {
    double w = spanning[c] / witnesses;
    if (w > 1e-12) rep.spanningPlan.atoms.push_back({feas[c], w, s});
  }
  double total = 0.0;
  for (const auto& a : rep.spanningPlan.atoms) total += a.weight;
  for (auto& a : rep.spanningPlan.atoms) a.weight /= total;

  std::vector<Belief> hullPts = rep.atomsInPlay;
  hullPts.push_back(p);
  rep.hullDimension = affineHull(hullPts).dimension;
  rep.fullDimensional = rep.hullDimension == n - 1;
  return rep;
}

DimensionalityEvidence isFullDimensional(const Game& game, const Belief& p,
                                         const BeliefGrid& grid) {
  for (double x : p.coords)
    if (x <= 0.0) throw Error("full-dimensionality test needs an interior prior");
  DimensionalityEvidence ev;
  auto ct = solveCtMax(game, p, grid);
  ev.hull = cheapTalkHull(game, p, ct.value, grid);
  ev.fullDimensional = ev.hull.fullDimensional;

  // Nearest lattice composition by largest remainders.
  const int n = static_cast<int>(p.coords.size());
  const int k = grid.resolution;
  std::vector<int> comp(static_cast<size_t>(n), 0);
  std::vector<std::pair<double, int>> rem;
  int used = 0;
  for (int w = 0; w < n; ++w) {
    double scaled = p[w] * k;
    comp[static_cast<size_t>(w)] = static_cast<int>(std::floor(scaled));
    used += comp[static_cast<size_t>(w)];
    rem.push_back({scaled - std::floor(scaled), w});
  }
  std::sort(rem.begin(), rem.end(), [](auto& a, auto& b) { return a.first > b.first; });
  for (int t = 0; t < k - used; ++t) ++comp[static_cast<size_t>(rem[static_cast<size_t>(t % n)].second)];

  ev.neighborsConstant = true;
  for (int i = 0; i < n && ev.neighborsConstant; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j || comp[static_cast<size_t>(i)] == 0) continue;
      std::vector<double> q(static_cast<size_t>(n));
      for (int w = 0; w < n; ++w) q[static_cast<size_t>(w)] = static_cast<double>(comp[static_cast<size_t>(w)]) / k;
      q[static_cast<size_t>(i)] -= 1.0 / k;
      q[static_cast<size_t>(j)] += 1.0 / k;
      double v = solveCtMax(game, Belief(q), grid).value;
      if (std::fabs(v - ct.value) > 1e-6) {
        ev.neighborsConstant = false;
        break;
      }
    }
  }
  return ev;
}

ImprovabilityReport isImprovable(const Game& game, const Belief& p, double s,
                                 const BeliefGrid& grid, bool local) {
  std::vector<Belief> cands = candidateBeliefs(game, grid, p);
  std::vector<Belief> plus, minus;
  for (const auto& mu : cands) {
    auto iv = valueAt(game, mu);
    if (iv.hi > s + kStrictMargin) plus.push_back(mu);
    if (iv.lo < s - kStrictMargin) minus.push_back(mu);
  }
  if (local && !minus.empty()) {
    HullReport hull = cheapTalkHull(game, p, s, grid);
    std::vector<Belief> hullPts = hull.atomsInPlay;
    hullPts.push_back(p);
    AffineBasis basis = affineHull(hullPts);
    std::vector<Belief> kept;
    for (const auto& mu : minus)
      if (affineDistance(basis, mu.coords) <= 1e-9) kept.push_back(mu);
    minus = std::move(kept);
  }
  if (plus.empty() || minus.empty()) return {};

  for (int j = 0; j < kLambdaGrid; ++j) {
    double lambda = static_cast<double>(j) / kLambdaGrid;
    std::vector<double> mu;
    if (!mixtureFeasible(plus, minus, p.coords, lambda, &mu)) continue;
    if (j > 0) {
      // One refinement pass: scan below the first coarse hit for an earlier
      // feasible mixing weight.
      double lo = static_cast<double>(j - 1) / kLambdaGrid;
      for (int t = 1; t < kLambdaGrid; ++t) {
        double fine = lo + static_cast<double>(t) / (kLambdaGrid * kLambdaGrid);
        std::vector<double> muFine;
        if (mixtureFeasible(plus, minus, p.coords, fine, &muFine)) {
          lambda = fine;
          mu = std::move(muFine);
          break;
        }
      }
    }
    return {true, ImprovementWitness{Belief(std::move(mu)), lambda}};
  }
  return {};
}

ImprovementCertificate constructImprovingPlan(const Game& game, const Belief& p, double s,
                                              const ImprovementWitness& witness,
                                              const BeliefGrid& grid) {
  const size_t n = p.coords.size();
  const double lambda = witness.lambda;
  std::vector<double> qPlus(n);
  for (size_t w = 0; w < n; ++w)
    qPlus[w] = lambda * witness.mu[static_cast<int>(w)] + (1.0 - lambda) * p[static_cast<int>(w)];

  ImprovementCertificate cert;
  cert.s = s;
  cert.muMinus = witness.mu;
  cert.lambda = lambda;

  const bool degenerate = lambda < 1e-9;
  auto plusRep = solveCtMax(game, Belief(qPlus), grid);
  double vPlus = plusRep.value - s;
  auto minusRep = solveCtMin(game, witness.mu, grid);
  double vMinus = s - minusRep.value;
  if (vPlus <= 1e-12 || (!degenerate && vMinus <= 1e-12))
    throw ConstructionFailed("witness does not separate the level; refine the grid");
  cert.tauPlus = plusRep.plan;
  cert.tauMinus = minusRep.plan;

  HullReport hull = cheapTalkHull(game, p, s, grid);
  cert.tauZero = hull.spanningPlan;

  cert.xi = degenerate ? 1.0 : (vMinus / lambda) / (vPlus + vMinus / lambda);
  std::vector<double> muStar(n);
  for (size_t w = 0; w < n; ++w)
    muStar[w] = cert.xi * qPlus[w] + (1.0 - cert.xi) * witness.mu[static_cast<int>(w)];

  // Stretch factor: how far the hull extends past the prior along the ray
  // from muStar, solved together with the convex decomposition of the far
  // point over the atoms in play.
  const auto& atoms = hull.atomsInPlay;
  const size_t cols = atoms.size();
  constexpr double kAlphaCap = 1e9;
  LinearProgram lp;
  lp.sense = ObjectiveSense::Maximize;
  lp.objective.assign(cols + 1, 0.0);
  lp.objective[cols] = 1.0;
  lp.constraintMatrix.assign(n + 1, std::vector<double>(cols + 1, 0.0));
  for (size_t w = 0; w < n; ++w) {
    for (size_t c = 0; c < cols; ++c) lp.constraintMatrix[w][c] = atoms[c][static_cast<int>(w)];
    lp.constraintMatrix[w][cols] = muStar[w] - p[static_cast<int>(w)];
  }
  for (size_t c = 0; c < cols; ++c) lp.constraintMatrix[n][c] = 1.0;
  lp.constraintSense.assign(n + 1, ConstraintSense::Eq);
  lp.rhs = muStar;
  lp.rhs.push_back(1.0);
  lp.variableBounds.assign(cols + 1, {0.0, std::numeric_limits<double>::infinity()});
  lp.variableBounds[cols] = {0.0, kAlphaCap};
  LpSolution sol = solveLp(lp);
  if (sol.status != LpStatus::Optimal)
    throw ConstructionFailed("stretch LP infeasible although the prior lies in the hull");
  cert.alpha = sol.primal[cols];
  if (cert.alpha <= 1.0 + 1e-9)
    throw ConstructionFailed("witness ray exits the spanning hull too close to the prior");

  std::vector<PlanAtom> mixed;
  BeliefPlan shifted;
  for (size_t c = 0; c < cols; ++c)
    if (sol.primal[c] > 1e-12) shifted.atoms.push_back({atoms[c], sol.primal[c], s});
  appendScaled(mixed, shifted, 1.0 / cert.alpha);
  double sharePlus = (cert.alpha - 1.0) * cert.xi / cert.alpha;
  double shareMinus = (cert.alpha - 1.0) * (1.0 - cert.xi) / cert.alpha;
  appendScaled(mixed, cert.tauPlus, sharePlus);
  appendScaled(mixed, cert.tauMinus, shareMinus);
  double total = 0.0;
  for (const auto& a : mixed) total += a.weight;
  for (auto& a : mixed) a.weight /= total;
  cert.mixedPlan = BeliefPlan{std::move(mixed)};

  double frac = (cert.alpha - 1.0) / cert.alpha;
  cert.valueGain = degenerate
                       ? frac * vPlus
                       : (1.0 / lambda - 1.0) * frac * vPlus * vMinus / (vPlus + vMinus / lambda);
  return cert;
}

TrichotomyReport classifyTrichotomy(const FiniteGame& game, const BeliefGrid& grid) {
  TrichotomyReport rep;
  Game wrapped{game};
  rep.bp = solveBp(wrapped, grid).value;
  rep.md = solveMdOutcome(game).value;
  rep.ct = solveCtMax(wrapped, Belief(game.prior), grid).value;
  const double tol = 1e-6;
  const bool commitmentExtra = rep.bp - rep.md > tol;
  const bool elicitationExtra = rep.md - rep.ct > tol;
  if (!commitmentExtra && elicitationExtra)
    throw InternalError("commitment matched mediation while mediation beat cheap talk");
  rep.kind = !commitmentExtra ? TrichotomyClass::AllEqual
             : elicitationExtra ? TrichotomyClass::BpGtMdGtCt
                                : TrichotomyClass::BpGtMdEqCt;
  return rep;
}

CrossingPattern monoCrossing(const Game& game, double s, const BeliefGrid& grid) {
  BinaryProfile prof = binaryProfile(game, grid);
  const size_t m = prof.xs.size();
  bool below = true, above = true;
  // from below: upper > s at x forbids lower < s at any later x'
  double minLoAfter = std::numeric_limits<double>::infinity();
  for (size_t i = m; i-- > 1;) {
    minLoAfter = std::min(minLoAfter, prof.lo[i] - s);
    if (prof.hi[i - 1] - s > kStrictMargin && minLoAfter < -kStrictMargin) {
      below = false;
      break;
    }
  }
  // from above: lower < s at x forbids upper > s at any later x'
  double maxHiAfter = -std::numeric_limits<double>::infinity();
  for (size_t i = m; i-- > 1;) {
    maxHiAfter = std::max(maxHiAfter, prof.hi[i] - s);
    if (prof.lo[i - 1] - s < -kStrictMargin && maxHiAfter > kStrictMargin) {
      above = false;
      break;
    }
  }
  if (below && above) return CrossingPattern::Both;
  if (below) return CrossingPattern::FromBelow;
  if (above) return CrossingPattern::FromAbove;
  return CrossingPattern::No;
}

bool singleCrossingAt(const Game& game, double s, double pHat, const BeliefGrid& grid) {
  BinaryProfile prof = binaryProfile(game, grid);
  for (size_t i = 0; i < prof.xs.size(); ++i)
    if (prof.hi[i] - prof.lo[i] > kSelectionTol)
      throw NotSingletonValued("single-crossing needs a unique value at every belief");
  if (std::fabs(valueAt(game, Belief({1.0 - pHat, pHat})).hi - s) > 1e-8) return false;

  // Standard single-crossing: once the difference is nonnegative it may
  // never turn negative again (from below), or the mirror image.
  const size_t m = prof.xs.size();
  bool below = true, above = true;
  bool seenNonNeg = false, seenPos = false;
  for (size_t i = 0; i < m; ++i) {
    double d = prof.hi[i] - s;
    if (seenPos && d <= kStrictMargin) below = false;
    if (seenNonNeg && d < -kStrictMargin) below = false;
    if (d > kStrictMargin) seenPos = true;
    if (d >= -kStrictMargin) seenNonNeg = true;
  }
  bool seenNonPos = false, seenNeg = false;
  for (size_t i = 0; i < m; ++i) {
    double d = prof.hi[i] - s;
    if (seenNeg && d >= -kStrictMargin) above = false;
    if (seenNonPos && d > kStrictMargin) above = false;
    if (d < -kStrictMargin) seenNeg = true;
    if (d <= kStrictMargin) seenNonPos = true;
  }
  return below || above;
}

bool fullDisclosureOptimal(const Game& game, const Belief& p, const BeliefGrid& grid) {
  const int n = numStates(game);
  double loCap = -std::numeric_limits<double>::infinity();
  double hiCap = std::numeric_limits<double>::infinity();
  for (int w = 0; w < n; ++w) {
    std::vector<double> vertex(static_cast<size_t>(n), 0.0);
    vertex[static_cast<size_t>(w)] = 1.0;
    auto iv = valueAt(game, Belief(vertex));
    loCap = std::max(loCap, iv.lo);
    hiCap = std::min(hiCap, iv.hi);
  }
  loCap = std::max(loCap, valueAt(game, p).hi - kStrictMargin);
  if (loCap > hiCap + 1e-12) return false;

  std::vector<double> levels = {loCap, hiCap};
  for (int j = 1; j <= 64; ++j) levels.push_back(loCap + j * (hiCap - loCap) / 65.0);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end(),
                           [](double a, double b) { return std::fabs(a - b) <= 1e-12; }),
               levels.end());
  for (double s : levels)
    if (!isImprovable(game, p, s, grid, false).improvable) return true;
  return false;
}

double receiverValue(const Game& game, const BeliefPlan& plan) {
  if (plan.atoms.empty()) throw Error("cannot price an empty plan");
  if (const auto* fg = std::get_if<FiniteGame>(&game)) {
    double total = 0.0;
    for (const auto& a : plan.atoms) {
      double best = -std::numeric_limits<double>::infinity();
      for (int act = 0; act < fg->numActions(); ++act) {
        double u = 0.0;
        for (int w = 0; w < fg->numStates(); ++w)
          u += a.belief[w] * fg->receiverUtility[static_cast<size_t>(w)][static_cast<size_t>(act)];
        best = std::max(best, u);
      }
      total += a.weight * best;
    }
    return total;
  }
  const auto& mg = std::get<MomentGame>(game);
  if (!mg.receiverMomentValue.has_value())
    throw MissingReceiverValue("moment game carries no receiver payoff");
  double total = 0.0;
  for (const auto& a : plan.atoms)
    total += a.weight * (*mg.receiverMomentValue)(momentPoint(mg, a.belief));
  return total;
}

std::vector<std::vector<double>> checkHonestyStateDependent(
    const std::function<double(const Belief&, int)>& payoff, const Belief& p,
    const BeliefPlan& plan) {
  const size_t n = p.coords.size();
  for (double x : p.coords)
    if (x <= 0.0) throw Error("state-dependent honesty needs a strictly positive prior");
  std::vector<std::vector<double>> residual(n, std::vector<double>(n, 0.0));
  for (size_t w = 0; w < n; ++w) {
    for (size_t v = 0; v < n; ++v) {
      if (v == w) continue;
      double r = 0.0;
      for (const auto& a : plan.atoms) {
        double dens = a.belief[static_cast<int>(w)] / p[static_cast<int>(w)] -
                      a.belief[static_cast<int>(v)] / p[static_cast<int>(v)];
        r += a.weight * payoff(a.belief, static_cast<int>(w)) * dens;
      }
      residual[w][v] = r;
    }
  }
  return residual;
}

}  // namespace medsolve
