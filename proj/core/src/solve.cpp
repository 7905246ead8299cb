#include "medsolve/solve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace medsolve {

namespace {

constexpr double kAtomDropTol = 1e-12;
constexpr double kVertexDedupeTol = 1e-10;
constexpr double kLevelTol = 1e-12;

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Shape check for priors fed to the solvers. Unlike validateGame this allows
// degenerate priors, so vertex priors solve to the trivial answer.
void checkSolverPrior(const std::vector<double>& p, int n) {
  if (static_cast<int>(p.size()) != n)
    throw DimensionMismatch("prior length does not match state count");
  double s = 0.0;
  for (double x : p) {
    if (x < -1e-12) throw Error("prior has a negative coordinate");
    s += x;
  }
  if (std::fabs(s - 1.0) > 1e-9) throw Error("prior does not sum to 1");
}

void checkFiniteShapes(const FiniteGame& game) {
  const int n = game.numStates();
  const int m = game.numActions();
  if (n < 2) throw DimensionMismatch("finite game needs at least 2 states");
  if (m < 1) throw DimensionMismatch("finite game needs at least 1 action");
  if (static_cast<int>(game.senderUtility.size()) != m)
    throw DimensionMismatch("sender utility length does not match action count");
  if (static_cast<int>(game.receiverUtility.size()) != n)
    throw DimensionMismatch("receiver utility row count does not match state count");
  for (const auto& row : game.receiverUtility)
    if (static_cast<int>(row.size()) != m)
      throw DimensionMismatch("receiver utility column count does not match action count");
  checkSolverPrior(game.prior, n);
}

// Solves a dense square system by Gaussian elimination with partial
// pivoting. Returns false when the system is numerically singular.
bool solveSquare(std::vector<std::vector<double>> a, std::vector<double> b,
                 std::vector<double>& out) {
  const int n = static_cast<int>(b.size());
  double scale = 1.0;
  for (const auto& row : a)
    for (double v : row) scale = std::max(scale, std::fabs(v));
  for (int k = 0; k < n; ++k) {
    int piv = k;
    for (int i = k + 1; i < n; ++i)
      if (std::fabs(a[static_cast<size_t>(i)][static_cast<size_t>(k)]) >
          std::fabs(a[static_cast<size_t>(piv)][static_cast<size_t>(k)]))
        piv = i;
    if (std::fabs(a[static_cast<size_t>(piv)][static_cast<size_t>(k)]) <= 1e-11 * scale)
      return false;
    std::swap(a[static_cast<size_t>(k)], a[static_cast<size_t>(piv)]);
    std::swap(b[static_cast<size_t>(k)], b[static_cast<size_t>(piv)]);
    for (int i = k + 1; i < n; ++i) {
      double f = a[static_cast<size_t>(i)][static_cast<size_t>(k)] /
                 a[static_cast<size_t>(k)][static_cast<size_t>(k)];
      if (f == 0.0) continue;
      for (int j = k; j < n; ++j)
        a[static_cast<size_t>(i)][static_cast<size_t>(j)] -=
            f * a[static_cast<size_t>(k)][static_cast<size_t>(j)];
      b[static_cast<size_t>(i)] -= f * b[static_cast<size_t>(k)];
    }
  }
  out.assign(static_cast<size_t>(n), 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[static_cast<size_t>(i)];
    for (int j = i + 1; j < n; ++j)
      s -= a[static_cast<size_t>(i)][static_cast<size_t>(j)] * out[static_cast<size_t>(j)];
    out[static_cast<size_t>(i)] = s / a[static_cast<size_t>(i)][static_cast<size_t>(i)];
  }
  return true;
}

double maxAbsDiff(const Belief& a, const Belief& b) {
  double d = 0.0;
  for (int i = 0; i < a.dim(); ++i) d = std::max(d, std::fabs(a[i] - b[i]));
  return d;
}

struct CandidateSet {
  std::vector<Belief> beliefs;
  std::vector<ValueInterval> values;
};

// Appends mu unless it is a lattice point or duplicates an earlier off-grid
// candidate. Grid points occupy [0, gridCount) and are covered by indexOf.
void appendOffGrid(std::vector<Belief>& out, size_t gridCount, const BeliefGrid& grid,
                   const Belief& mu) {
  if (grid.indexOf(mu) >= 0) return;
  for (size_t i = gridCount; i < out.size(); ++i)
    if (maxAbsDiff(out[i], mu) <= kVertexDedupeTol) return;
  out.push_back(mu);
}

// Candidate posteriors for the grid-based solvers: every lattice point, the
// exact region vertices when the game is finite with at most 4 states, and
// the prior itself (which keeps no-disclosure representable off-grid).
CandidateSet gatherCandidates(const Game& game, const BeliefGrid& grid,
                              const std::vector<double>& prior,
                              const std::vector<HyperplaneCut>& extraCuts) {
  const int n = numStates(game);
  if (grid.numStates != n) throw DimensionMismatch("grid state count does not match the game");
  checkSolverPrior(prior, n);

  CandidateSet cs;
  cs.beliefs = grid.points;
  const size_t gridCount = cs.beliefs.size();
  if (const auto* fg = std::get_if<FiniteGame>(&game); fg != nullptr && n <= 4)
    for (const Belief& v : regionVertices(*fg, extraCuts))
      appendOffGrid(cs.beliefs, gridCount, grid, v);
  appendOffGrid(cs.beliefs, gridCount, grid, Belief(prior));

  cs.values.reserve(cs.beliefs.size());
  for (const Belief& mu : cs.beliefs) cs.values.push_back(valueAt(game, mu));
  return cs;
}

struct CavResult {
  double value = 0.0;
  std::vector<double> weights;
  std::vector<double> dualF;
};

// max sum w_i coeff_i over mixtures of the candidates with barycenter p.
// Feasible because p is always a candidate; the duals give the touching
// affine majorant of coeff over the candidate set.
CavResult cavOverCandidates(const CandidateSet& cs, const std::vector<double>& coeff,
                            const std::vector<double>& prior) {
  const int n = static_cast<int>(prior.size());
  const int cols = static_cast<int>(cs.beliefs.size());
  LinearProgram lp;
  lp.sense = ObjectiveSense::Maximize;
  lp.objective = coeff;
  lp.constraintMatrix.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(cols), 0.0));
  for (int c = 0; c < cols; ++c)
    for (int w = 0; w < n; ++w)
      lp.constraintMatrix[static_cast<size_t>(w)][static_cast<size_t>(c)] = cs.beliefs[static_cast<size_t>(c)][w];
  lp.constraintSense.assign(static_cast<size_t>(n), ConstraintSense::Eq);
  lp.rhs = prior;
  LpSolution sol = solveLp(lp);
  if (sol.status != LpStatus::Optimal)
    throw InternalError("posterior mixture LP failed although the prior is a candidate");
  return CavResult{sol.value, std::move(sol.primal), std::move(sol.dual)};
}

BeliefPlan normalizedPlan(std::vector<PlanAtom> atoms) {
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  if (atoms.empty() || total <= 0.0) throw InternalError("plan support came out empty");
  for (auto& a : atoms) a.weight /= total;
  return BeliefPlan{std::move(atoms)};
}

Game negateSender(const Game& game) {
  if (const auto* fg = std::get_if<FiniteGame>(&game)) {
    FiniteGame g = *fg;
    for (double& u : g.senderUtility) u = -u;
    return g;
  }
  MomentGame g = std::get<MomentGame>(game);
  auto inner = g.senderMomentValue;
  g.senderMomentValue = [inner](const std::vector<double>& x) { return -inner(x); };
  return g;
}

Belief blendToward(const Belief& p, const Belief& mu, double t) {
  std::vector<double> c(p.coords.size());
  for (size_t i = 0; i < c.size(); ++i) c[i] = (1.0 - t) * p.coords[i] + t * mu.coords[i];
  return Belief(std::move(c));
}

// Shared worker for both cheap talk directions; the min side negates the
// sender payoff and mirrors the result.
SolveReport solveCtUpper(const Game& game, const Belief& p, const BeliefGrid& grid) {
  const int n = numStates(game);
  validateBelief(p);
  if (p.dim() != n) throw DimensionMismatch("prior dimension does not match the game");
  const bool finite = std::holds_alternative<FiniteGame>(game);
  CandidateSet cs = gatherCandidates(game, grid, p.coords, {});
  const ValueInterval atPrior = valueAt(game, p);

  // Candidate constant payoffs. Babbling makes the level V_hi(p) attainable,
  // so anything below it never needs to be searched.
  std::vector<double> levels;
  if (finite) {
    levels = std::get<FiniteGame>(game).senderUtility;
  } else {
    levels.reserve(cs.values.size());
    for (const auto& v : cs.values) levels.push_back(v.hi);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  levels.erase(std::remove_if(levels.begin(), levels.end(),
                              [&](double l) { return l < atPrior.hi - kLevelTol; }),
               levels.end());
  if (levels.empty()) levels.push_back(atPrior.hi);

  auto memberAt = [&](double s, std::vector<int>* keepIdx,
                      std::vector<double>* keepWeights) -> bool {
    std::vector<std::vector<double>> gens;
    std::vector<int> idx;
    for (size_t i = 0; i < cs.beliefs.size(); ++i) {
      if (cs.values[i].hi >= s - kLevelTol) {
        gens.push_back(cs.beliefs[i].coords);
        idx.push_back(static_cast<int>(i));
      }
    }
    if (gens.empty()) return false;
    HullMembership hm = hullMembership(gens, p.coords);
    if (!hm.member) return false;
    if (keepIdx != nullptr) {
      *keepIdx = std::move(idx);
      *keepWeights = std::move(hm.weights);
    }
    return true;
  };

  // The level-set hulls shrink as the level rises, so membership is monotone
  // and the largest attainable level is found by bisecting the sorted levels.
  if (!memberAt(levels.front(), nullptr, nullptr))
    throw InternalError("the babbling level must be attainable");
  size_t lo = 0;
  size_t hi = levels.size() - 1;
  while (lo < hi) {
    size_t mid = (lo + hi + 1) / 2;
    if (memberAt(levels[mid], nullptr, nullptr))
      lo = mid;
    else
      hi = mid - 1;
  }
  const double level = levels[lo];

  SolveReport rep;
  rep.protocol = Protocol::CtMax;
  rep.method = SolveMethod::LevelSet;
  std::vector<PlanAtom> atoms;

  if (finite) {
    // Atoms that can hold the receiver to the constant payoff: the level must
    // sit inside their value intervals. Boundary beliefs widen intervals, so
    // this hull still contains the prior at the optimal level.
    std::vector<std::vector<double>> gens;
    std::vector<int> idx;
    for (size_t i = 0; i < cs.beliefs.size(); ++i) {
      if (cs.values[i].lo <= level + 1e-9 && cs.values[i].hi >= level - 1e-9) {
        gens.push_back(cs.beliefs[i].coords);
        idx.push_back(static_cast<int>(i));
      }
    }
    HullMembership hm = hullMembership(gens, p.coords);
    if (!hm.member)
      throw InternalError("constant-payoff support lost the prior at the optimal level");
    for (size_t j = 0; j < idx.size(); ++j) {
      if (hm.weights[j] <= kAtomDropTol) continue;
      const auto& iv = cs.values[static_cast<size_t>(idx[j])];
      atoms.push_back({cs.beliefs[static_cast<size_t>(idx[j])], hm.weights[j],
                       std::clamp(level, iv.lo, iv.hi)});
    }
  } else {
    std::vector<int> idx;
    std::vector<double> w;
    memberAt(level, &idx, &w);
    // Slide every atom along its ray toward the prior until the value meets
    // the level, rebalancing weights so the barycenter stays at p.
    bool babble = false;
    for (size_t j = 0; j < idx.size() && !babble; ++j) {
      if (w[j] <= kAtomDropTol) continue;
      const Belief& target = cs.beliefs[static_cast<size_t>(idx[j])];
      double t = 1.0;
      if (cs.values[static_cast<size_t>(idx[j])].hi > level + 1e-9) {
        double tLo = 0.0;
        double tHi = 1.0;
        for (int it = 0; it < 200 && tHi - tLo > 1e-13; ++it) {
          double mid = 0.5 * (tLo + tHi);
          if (valueAt(game, blendToward(p, target, mid)).hi > level)
            tHi = mid;
          else
            tLo = mid;
        }
        t = 0.5 * (tLo + tHi);
        if (t < 1e-9) babble = true;
      }
      if (babble) break;
      Belief slid = blendToward(p, target, t);
      atoms.push_back({slid, w[j] / t, valueAt(game, slid).hi});
    }
    if (babble || atoms.empty()) {
      atoms.clear();
      atoms.push_back({p, 1.0, atPrior.hi});
    }
    rep.gridResolution = grid.resolution;
  }

  rep.plan = normalizedPlan(std::move(atoms));
  rep.value = planValue(rep.plan);
  return rep;
}

}  // namespace

std::vector<Belief> regionVertices(const FiniteGame& game,
                                   const std::vector<HyperplaneCut>& extraCuts) {
  checkFiniteShapes(game);
  const int n = game.numStates();
  const int m = game.numActions();
  if (n > 4) throw Error("region vertex enumeration is limited to 4 states");

  std::vector<HyperplaneCut> pool;
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      std::vector<double> d(static_cast<size_t>(n), 0.0);
      double mx = 0.0;
      for (int w = 0; w < n; ++w) {
        d[static_cast<size_t>(w)] = game.receiverUtility[static_cast<size_t>(w)][static_cast<size_t>(a)] -
                                    game.receiverUtility[static_cast<size_t>(w)][static_cast<size_t>(b)];
        mx = std::max(mx, std::fabs(d[static_cast<size_t>(w)]));
      }
      if (mx > 1e-12) pool.emplace_back(std::move(d), 0.0);
    }
  }
  for (int w = 0; w < n; ++w) {
    std::vector<double> facet(static_cast<size_t>(n), 0.0);
    facet[static_cast<size_t>(w)] = 1.0;
    pool.emplace_back(std::move(facet), 0.0);
  }
  for (const auto& cut : extraCuts) {
    if (static_cast<int>(cut.first.size()) != n)
      throw DimensionMismatch("hyperplane cut dimension does not match state count");
    pool.push_back(cut);
  }

  std::vector<Belief> out;
  auto tryVertex = [&](const std::vector<int>& pick) {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int idx : pick) {
      a.push_back(pool[static_cast<size_t>(idx)].first);
      b.push_back(pool[static_cast<size_t>(idx)].second);
    }
    a.emplace_back(static_cast<size_t>(n), 1.0);
    b.push_back(1.0);
    std::vector<double> mu;
    if (!solveSquare(std::move(a), std::move(b), mu)) return;
    double total = 0.0;
    for (double& x : mu) {
      if (x < -1e-9 || x > 1.0 + 1e-9) return;
      x = std::clamp(x, 0.0, 1.0);
      total += x;
    }
    for (double& x : mu) x /= total;
    Belief cand(std::move(mu));
    for (const Belief& seen : out)
      if (maxAbsDiff(seen, cand) <= kVertexDedupeTol) return;
    out.push_back(std::move(cand));
  };

  const int r = n - 1;
  const int poolSize = static_cast<int>(pool.size());
  std::vector<int> pick(static_cast<size_t>(r));
  std::iota(pick.begin(), pick.end(), 0);
  while (true) {
    tryVertex(pick);
    int i = r - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == poolSize - r + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < r; ++j) pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }

  std::sort(out.begin(), out.end(),
            [](const Belief& x, const Belief& y) { return x.coords < y.coords; });
  return out;
}

SolveReport solveMdOutcome(const FiniteGame& game, LpMode mode) {
  checkFiniteShapes(game);
  const int n = game.numStates();
  const int m = game.numActions();
  const auto& p = game.prior;
  auto col = [m](int w, int a) { return static_cast<size_t>(w * m + a); };
  // One extra free variable holds the common conditional sender payoff.
  const size_t payoffVar = static_cast<size_t>(n * m);
  const size_t cols = payoffVar + 1;

  LinearProgram lp;
  lp.sense = ObjectiveSense::Maximize;
  lp.objective.assign(cols, 0.0);
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < m; ++a) lp.objective[col(w, a)] = game.senderUtility[static_cast<size_t>(a)];

  for (int w = 0; w < n; ++w) {
    std::vector<double> row(cols, 0.0);
    for (int a = 0; a < m; ++a) row[col(w, a)] = 1.0;
    lp.constraintMatrix.push_back(std::move(row));
    lp.constraintSense.push_back(ConstraintSense::Eq);
    lp.rhs.push_back(p[static_cast<size_t>(w)]);
  }
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      if (b == a) continue;
      std::vector<double> row(cols, 0.0);
      for (int w = 0; w < n; ++w)
        row[col(w, a)] = game.receiverUtility[static_cast<size_t>(w)][static_cast<size_t>(a)] -
                         game.receiverUtility[static_cast<size_t>(w)][static_cast<size_t>(b)];
      lp.constraintMatrix.push_back(std::move(row));
      lp.constraintSense.push_back(ConstraintSense::Ge);
      lp.rhs.push_back(0.0);
    }
  }
  // Equal conditional sender payoffs across states that carry prior mass.
  // The shared level enters as a free variable so every coefficient is a raw
  // input value; divided or multiplied coefficients would round and can make
  // the exact-arithmetic system inconsistent.
  for (int w = 0; w < n; ++w) {
    if (p[static_cast<size_t>(w)] <= 0.0) continue;
    std::vector<double> row(cols, 0.0);
    for (int a = 0; a < m; ++a) row[col(w, a)] = game.senderUtility[static_cast<size_t>(a)];
    row[payoffVar] = -p[static_cast<size_t>(w)];
    lp.constraintMatrix.push_back(std::move(row));
    lp.constraintSense.push_back(ConstraintSense::Eq);
    lp.rhs.push_back(0.0);
  }
  constexpr double kInf = std::numeric_limits<double>::infinity();
  lp.variableBounds.assign(cols, {0.0, kInf});
  lp.variableBounds[payoffVar] = {-kInf, kInf};

  LpSolution sol = solveLp(lp, mode);
  if (sol.status != LpStatus::Optimal)
    throw InternalError("mediation outcome LP must solve; no disclosure is always feasible");

  OutcomeDistribution pi;
  pi.table.assign(static_cast<size_t>(n), std::vector<double>(static_cast<size_t>(m), 0.0));
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < m; ++a)
      pi.table[static_cast<size_t>(w)][static_cast<size_t>(a)] = std::max(0.0, sol.primal[col(w, a)]);

  SolveReport rep;
  rep.protocol = Protocol::Md;
  rep.method = SolveMethod::OutcomeLp;
  rep.plan = outcomeToPlan(game, pi);
  rep.value = planValue(rep.plan);
  return rep;
}

SolveReport solveMdBeliefGrid(const Game& game, const BeliefGrid& grid) {
  const auto& prior = gamePrior(game);
  const int n = numStates(game);
  // Full lattices contain every simplex vertex, so their hull is the whole
  // simplex and the membership test reduces to the prior being a belief.
  for (double x : prior)
    if (x < -1e-9) throw PriorOffGridHull("prior lies outside the hull of the grid");
  CandidateSet cs = gatherCandidates(game, grid, prior, {});

  // Each atom's mass-weighted payoff m_i ranges over [w_i V_lo, w_i V_hi];
  // splitting it into two columns priced at the interval ends makes the
  // bilinear objective linear while keeping the same feasible set.
  struct ColDef {
    int cand;
    double val;
  };
  std::vector<ColDef> defs;
  defs.reserve(2 * cs.beliefs.size());
  for (size_t i = 0; i < cs.beliefs.size(); ++i) {
    const auto& iv = cs.values[i];
    if (iv.hi - iv.lo <= 1e-14) {
      defs.push_back({static_cast<int>(i), iv.hi});
    } else {
      defs.push_back({static_cast<int>(i), iv.lo});
      defs.push_back({static_cast<int>(i), iv.hi});
    }
  }
  const size_t cols = defs.size();
  const size_t rows = static_cast<size_t>(2 * n + 1);

  LinearProgram lp;
  lp.sense = ObjectiveSense::Maximize;
  lp.objective.assign(cols, 0.0);
  lp.constraintMatrix.assign(rows, std::vector<double>(cols, 0.0));
  lp.constraintSense.assign(rows, ConstraintSense::Eq);
  lp.rhs.assign(rows, 0.0);
  for (int w = 0; w < n; ++w) lp.rhs[static_cast<size_t>(w)] = prior[static_cast<size_t>(w)];
  lp.rhs[static_cast<size_t>(n)] = 1.0;
  for (size_t c = 0; c < cols; ++c) {
    const Belief& mu = cs.beliefs[static_cast<size_t>(defs[c].cand)];
    lp.objective[c] = defs[c].val;
    for (int w = 0; w < n; ++w) {
      lp.constraintMatrix[static_cast<size_t>(w)][c] = mu[w];
      lp.constraintMatrix[static_cast<size_t>(n + 1 + w)][c] =
          defs[c].val * (mu[w] - prior[static_cast<size_t>(w)]);
    }
    lp.constraintMatrix[static_cast<size_t>(n)][c] = 1.0;
  }

  LpSolution sol = solveLp(lp);
  if (sol.status != LpStatus::Optimal)
    throw InternalError("mediation grid LP must solve; no disclosure is always feasible");

  std::vector<double> w(cs.beliefs.size(), 0.0);
  std::vector<double> mMass(cs.beliefs.size(), 0.0);
  for (size_t c = 0; c < cols; ++c) {
    w[static_cast<size_t>(defs[c].cand)] += sol.primal[c];
    mMass[static_cast<size_t>(defs[c].cand)] += sol.primal[c] * defs[c].val;
  }
  std::vector<PlanAtom> atoms;
  for (size_t i = 0; i < cs.beliefs.size(); ++i) {
    if (w[i] <= kAtomDropTol) continue;
    const auto& iv = cs.values[i];
    atoms.push_back({cs.beliefs[i], w[i], std::clamp(mMass[i] / w[i], iv.lo, iv.hi)});
  }

  SolveReport rep;
  rep.protocol = Protocol::Md;
  rep.method = SolveMethod::BeliefGridLp;
  rep.plan = normalizedPlan(std::move(atoms));
  rep.value = planValue(rep.plan);
  rep.gridResolution = grid.resolution;
  DualData dual;
  dual.f.assign(static_cast<size_t>(n), 0.0);
  dual.g.assign(static_cast<size_t>(n), 0.0);
  for (int i = 0; i < n; ++i) {
    dual.f[static_cast<size_t>(i)] = sol.dual[static_cast<size_t>(i)] + sol.dual[static_cast<size_t>(n)];
    dual.g[static_cast<size_t>(i)] = -sol.dual[static_cast<size_t>(n + 1 + i)];
  }
  rep.dualData = std::move(dual);
  return rep;
}

SolveReport solveBp(const Game& game, const BeliefGrid& grid) {
  const auto& prior = gamePrior(game);
  CandidateSet cs = gatherCandidates(game, grid, prior, {});
  std::vector<double> coeff(cs.values.size(), 0.0);
  for (size_t i = 0; i < cs.values.size(); ++i) coeff[i] = cs.values[i].hi;
  CavResult cav = cavOverCandidates(cs, coeff, prior);

  std::vector<PlanAtom> atoms;
  for (size_t i = 0; i < cs.beliefs.size(); ++i)
    if (cav.weights[i] > kAtomDropTol)
      atoms.push_back({cs.beliefs[i], cav.weights[i], cs.values[i].hi});

  SolveReport rep;
  rep.protocol = Protocol::Bp;
  rep.method = SolveMethod::Concavification;
  rep.plan = normalizedPlan(std::move(atoms));
  rep.value = planValue(rep.plan);
  rep.gridResolution = grid.resolution;
  rep.dualData = DualData{std::move(cav.dualF), std::vector<double>(prior.size(), 0.0)};
  return rep;
}

SolveReport solveCtMax(const Game& game, const Belief& p, const BeliefGrid& grid) {
  return solveCtUpper(game, p, grid);
}

SolveReport solveCtMin(const Game& game, const Belief& p, const BeliefGrid& grid) {
  SolveReport rep = solveCtUpper(negateSender(game), p, grid);
  rep.protocol = Protocol::CtMin;
  rep.value = -rep.value;
  for (auto& a : rep.plan.atoms) a.selection = -a.selection;
  return rep;
}

SolveReport solveNd(const Game& game) {
  const auto& prior = gamePrior(game);
  checkSolverPrior(prior, numStates(game));
  Belief p(prior);
  const ValueInterval v = valueAt(game, p);
  SolveReport rep;
  rep.protocol = Protocol::Nd;
  rep.method = SolveMethod::Concavification;
  rep.plan.atoms.push_back({std::move(p), 1.0, v.hi});
  rep.value = v.hi;
  return rep;
}

DualProbe dualProbe(const Game& game, const Belief& p, const std::vector<double>& g,
                    const BeliefGrid& grid) {
  const int n = numStates(game);
  validateBelief(p);
  if (p.dim() != n) throw DimensionMismatch("prior dimension does not match the game");
  if (static_cast<int>(g.size()) != n)
    throw DimensionMismatch("tilt vector length does not match state count");

  // The tilted value is affine times the plateau value on each region, so for
  // small finite games the sign-change hyperplane joins the vertex cuts and
  // keeps the concavification exact.
  std::vector<HyperplaneCut> cuts;
  double gMax = 0.0;
  for (double x : g) gMax = std::max(gMax, std::fabs(x));
  if (gMax > 1e-14) cuts.emplace_back(g, dot(g, p.coords) - 1.0);
  CandidateSet cs = gatherCandidates(game, grid, p.coords, cuts);

  const double gp = dot(g, p.coords);
  std::vector<double> coeff(cs.beliefs.size(), 0.0);
  for (size_t i = 0; i < cs.beliefs.size(); ++i) {
    const double tilt = 1.0 + dot(g, cs.beliefs[i].coords) - gp;
    coeff[i] = tilt >= 0.0 ? tilt * cs.values[i].hi : tilt * cs.values[i].lo;
  }
  CavResult cav = cavOverCandidates(cs, coeff, p.coords);
  return DualProbe{g, cav.value};
}

}  // namespace medsolve
