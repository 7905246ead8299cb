#pragma once

#include <map>
#include <vector>

#include "medsolve/model.hpp"

namespace medsolve {

/// Lattice of beliefs with coordinates in {0, 1/k, ..., 1}. Contains every
/// vertex of the simplex; the point count is C(k+n-1, n-1).
struct BeliefGrid {
  int numStates = 0;
  int resolution = 0;
  std::vector<Belief> points;
  /// Maps the integer composition (coord * k) of a lattice point to its index.
  std::map<std::vector<int>, int> indexMap;

  int size() const { return static_cast<int>(points.size()); }

  /// Index of a lattice belief, or -1 when `mu` is off the lattice (any
  /// coordinate further than 1e-9 from a multiple of 1/k).
  int indexOf(const Belief& mu) const;
};

BeliefGrid makeBeliefGrid(int numStates, int resolution);

struct HullQuery {
  std::vector<Belief> generators;
  Belief target;
};

/// Certified hull membership answer. Exactly one of the two certificates is
/// populated: convex weights over the generators reproducing the target
/// within 1e-9, or a unit-norm separating functional with a positive margin
/// <h, target> - max_g <h, g>.
struct HullMembership {
  bool member = false;
  std::vector<double> weights;
  std::vector<double> separator;
  double separatorOffset = 0.0;  // max over generators of <h, g>
  double margin = 0.0;
};

HullMembership inConvexHull(const HullQuery& query);

/// Raw-coordinate variant, also used for point sets outside the simplex.
HullMembership hullMembership(const std::vector<std::vector<double>>& generators,
                              const std::vector<double>& target);

/// Affine hull as a base point plus an orthonormal direction basis. Rank is
/// decided by a singular-value cutoff of 1e-9 relative to the largest one.
struct AffineBasis {
  std::vector<double> base;
  std::vector<std::vector<double>> directions;
  int dimension = 0;
};

AffineBasis affineHull(const std::vector<std::vector<double>>& points);
AffineBasis affineHull(const std::vector<Belief>& points);

struct SegmentHit {
  bool found = false;
  double lambda = 0.0;
};

/// Sweeps lambda over {0, 1/L, ..., (L-1)/L} and reports the first point of
/// the half-open segment [p, mu) that lies in the generators' convex hull.
/// The endpoint mu itself is deliberately excluded.
SegmentHit segmentHullIntersect(const Belief& p, const Belief& mu,
                                const std::vector<Belief>& generators,
                                int lambdaGrid = 256);

}  // namespace medsolve
