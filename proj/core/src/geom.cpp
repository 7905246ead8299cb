#include "medsolve/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "medsolve/linprog.hpp"

namespace medsolve {

namespace {

constexpr double kGridSnapTol = 1e-9;
constexpr double kMarginTol = 1e-9;

void enumerateCompositions(int remaining, int slots, std::vector<int>& prefix,
                           std::vector<std::vector<int>>& out) {
  if (slots == 1) {
    prefix.push_back(remaining);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    prefix.push_back(c);
    enumerateCompositions(remaining - c, slots - 1, prefix, out);
    prefix.pop_back();
  }
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace

int BeliefGrid::indexOf(const Belief& mu) const {
  if (mu.dim() != numStates) return -1;
  std::vector<int> comp(static_cast<size_t>(numStates));
  for (int i = 0; i < numStates; ++i) {
    double scaled = mu[i] * resolution;
    long long c = std::llround(scaled);
    if (c < 0 || std::fabs(scaled - static_cast<double>(c)) > kGridSnapTol * resolution)
      return -1;
    comp[static_cast<size_t>(i)] = static_cast<int>(c);
  }
  auto it = indexMap.find(comp);
  return it == indexMap.end() ? -1 : it->second;
}

BeliefGrid makeBeliefGrid(int numStates, int resolution) {
  if (numStates < 2) throw DimensionMismatch("belief grid needs at least 2 states");
  if (resolution < 1) throw DimensionMismatch("belief grid resolution must be positive");

  BeliefGrid grid;
  grid.numStates = numStates;
  grid.resolution = resolution;

  std::vector<std::vector<int>> comps;
  std::vector<int> prefix;
  enumerateCompositions(resolution, numStates, prefix, comps);

  grid.points.reserve(comps.size());
  for (size_t idx = 0; idx < comps.size(); ++idx) {
    const auto& comp = comps[idx];
    Belief mu;
    mu.coords.resize(static_cast<size_t>(numStates));
    double partial = 0.0;
    for (int i = 0; i + 1 < numStates; ++i) {
      mu[i] = static_cast<double>(comp[static_cast<size_t>(i)]) / resolution;
      partial += mu[i];
    }
    // Pin the last coordinate so the lattice point sums to exactly 1.
    mu[numStates - 1] = std::max(0.0, 1.0 - partial);
    grid.points.push_back(std::move(mu));
    grid.indexMap.emplace(comp, static_cast<int>(idx));
  }
  return grid;
}

HullMembership hullMembership(const std::vector<std::vector<double>>& generators,
                              const std::vector<double>& target) {
  if (generators.empty()) throw DimensionMismatch("hull query needs at least one generator");
  const int d = static_cast<int>(target.size());
  const int g = static_cast<int>(generators.size());
  for (const auto& gen : generators)
    if (static_cast<int>(gen.size()) != d)
      throw DimensionMismatch("hull generator dimension does not match target");

  LinearProgram lp;
  lp.sense = ObjectiveSense::Maximize;
  lp.objective.assign(static_cast<size_t>(g), 0.0);
  lp.constraintMatrix.assign(static_cast<size_t>(d) + 1,
                             std::vector<double>(static_cast<size_t>(g), 0.0));
  for (int i = 0; i < g; ++i) {
    for (int r = 0; r < d; ++r)
      lp.constraintMatrix[static_cast<size_t>(r)][static_cast<size_t>(i)] =
          generators[static_cast<size_t>(i)][static_cast<size_t>(r)];
    lp.constraintMatrix[static_cast<size_t>(d)][static_cast<size_t>(i)] = 1.0;
  }
  lp.constraintSense.assign(static_cast<size_t>(d) + 1, ConstraintSense::Eq);
  lp.rhs = target;
  lp.rhs.push_back(1.0);

  auto sol = solveLp(lp);
  HullMembership out;
  if (sol.status == LpStatus::Optimal) {
    out.member = true;
    out.weights = sol.primal;
    return out;
  }

  // Build a separator, preferring the Farkas ray from the failed membership
  // program; fall back to an explicit separation program when the ray is too
  // blunt to certify a positive margin.
  auto finishSeparator = [&](std::vector<double> h) -> bool {
    double norm = std::sqrt(dot(h, h));
    if (norm < 1e-14) return false;
    for (auto& v : h) v /= norm;
    double offset = -std::numeric_limits<double>::infinity();
    for (const auto& gen : generators) offset = std::max(offset, dot(h, gen));
    double margin = dot(h, target) - offset;
    if (margin <= kMarginTol) return false;
    out.separator = std::move(h);
    out.separatorOffset = offset;
    out.margin = margin;
    return true;
  };

  bool done = false;
  if (sol.infeasibilityRay.size() == static_cast<size_t>(d) + 1) {
    std::vector<double> h(sol.infeasibilityRay.begin(), sol.infeasibilityRay.begin() + d);
    done = finishSeparator(std::move(h));
  }
  if (!done) {
    // max t  s.t.  <h, gen> - c <= 0 for all generators,
    //              <h, target> - c - t >= 0,  h in [-1, 1]^d.
    LinearProgram sep;
    sep.sense = ObjectiveSense::Maximize;
    sep.objective.assign(static_cast<size_t>(d) + 2, 0.0);
    sep.objective.back() = 1.0;
    sep.variableBounds.assign(static_cast<size_t>(d), {-1.0, 1.0});
    const double inf = std::numeric_limits<double>::infinity();
    sep.variableBounds.push_back({-inf, inf});  // c
    sep.variableBounds.push_back({-inf, inf});  // t
    for (const auto& gen : generators) {
      std::vector<double> row(gen);
      row.push_back(-1.0);
      row.push_back(0.0);
      sep.constraintMatrix.push_back(std::move(row));
      sep.constraintSense.push_back(ConstraintSense::Le);
      sep.rhs.push_back(0.0);
    }
    {
      std::vector<double> row(target);
      row.push_back(-1.0);
      row.push_back(-1.0);
      sep.constraintMatrix.push_back(std::move(row));
      sep.constraintSense.push_back(ConstraintSense::Ge);
      sep.rhs.push_back(0.0);
    }
    auto sepSol = solveLp(sep);
    if (sepSol.status == LpStatus::Optimal && sepSol.value > kMarginTol) {
      std::vector<double> h(sepSol.primal.begin(), sepSol.primal.begin() + d);
      done = finishSeparator(std::move(h));
    }
  }
  out.member = false;
  return out;
}

HullMembership inConvexHull(const HullQuery& query) {
  std::vector<std::vector<double>> gens;
  gens.reserve(query.generators.size());
  for (const auto& g : query.generators) gens.push_back(g.coords);
  return hullMembership(gens, query.target.coords);
}

AffineBasis affineHull(const std::vector<std::vector<double>>& points) {
  if (points.empty()) throw DimensionMismatch("affine hull of an empty point set");
  AffineBasis basis;
  basis.base = points.front();
  const int d = static_cast<int>(basis.base.size());
  const int m = static_cast<int>(points.size());
  if (m == 1) return basis;

  Eigen::MatrixXd diffs(m - 1, d);
  for (int i = 1; i < m; ++i)
    for (int j = 0; j < d; ++j)
      diffs(i - 1, j) = points[static_cast<size_t>(i)][static_cast<size_t>(j)] -
                        basis.base[static_cast<size_t>(j)];

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(diffs, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return basis;
  const double cutoff = 1e-9 * sv(0);
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cutoff) ++rank;

  basis.dimension = rank;
  basis.directions.resize(static_cast<size_t>(rank));
  for (int r = 0; r < rank; ++r) {
    basis.directions[static_cast<size_t>(r)].resize(static_cast<size_t>(d));
    for (int j = 0; j < d; ++j)
      basis.directions[static_cast<size_t>(r)][static_cast<size_t>(j)] = svd.matrixV()(j, r);
  }
  return basis;
}

AffineBasis affineHull(const std::vector<Belief>& points) {
  std::vector<std::vector<double>> raw;
  raw.reserve(points.size());
  for (const auto& p : points) raw.push_back(p.coords);
  return affineHull(raw);
}

SegmentHit segmentHullIntersect(const Belief& p, const Belief& mu,
                                const std::vector<Belief>& generators,
                                int lambdaGrid) {
  if (lambdaGrid < 1) throw DimensionMismatch("lambda grid must be positive");
  if (p.dim() != mu.dim()) throw DimensionMismatch("segment endpoints disagree in dimension");

  std::vector<std::vector<double>> gens;
  gens.reserve(generators.size());
  for (const auto& g : generators) gens.push_back(g.coords);

  std::vector<double> x(static_cast<size_t>(p.dim()));
  for (int step = 0; step < lambdaGrid; ++step) {
    double lambda = static_cast<double>(step) / lambdaGrid;
    for (int i = 0; i < p.dim(); ++i) x[static_cast<size_t>(i)] = lambda * mu[i] + (1.0 - lambda) * p[i];
    if (hullMembership(gens, x).member) return {true, lambda};
  }
  return {false, 0.0};
}

}  // namespace medsolve
