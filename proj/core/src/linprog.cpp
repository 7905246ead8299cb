#include "medsolve/linprog.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace medsolve {

namespace {

using Rational = boost::multiprecision::cpp_rational;

constexpr double kInf = std::numeric_limits<double>::infinity();

template <class T>
struct Scalar;

template <>
struct Scalar<double> {
  static constexpr bool exact = false;
  static double fromDouble(double x) { return x; }
  static double toDouble(double x) { return x; }
  static bool isZero(double x) { return std::fabs(x) < 1e-13; }
  static constexpr double enterTol = 1e-9;
  static constexpr double ratioPivotTol = 1e-9;
  static constexpr double tinyPivotTol = 1e-13;
  static constexpr double feasTol = 1e-9;
};

template <>
struct Scalar<Rational> {
  static constexpr bool exact = true;
  // Conversion from double is exact (doubles are dyadic rationals).
  static Rational fromDouble(double x) { return Rational(x); }
  static double toDouble(const Rational& x) { return static_cast<double>(x); }
  static bool isZero(const Rational& x) { return x == 0; }
};

enum class VarKind { Shift, Mirror, Split };

struct VarMap {
  VarKind kind;
  int col = -1;      // primary standard-form column
  int colNeg = -1;   // negative part for Split
  double offset = 0; // lower bound for Shift, upper bound for Mirror
};

// Dense two-phase primal simplex with Bland's rule. Column layout:
// [structural | slacks | artificials]. Artificials are banned from entering
// once they leave the basis and throughout phase 2.
template <class T>
class Simplex {
 public:
  int rows = 0;
  int cols = 0;      // total including artificials
  int artStart = 0;  // first artificial column
  std::vector<std::vector<T>> a;
  std::vector<T> b;
  std::vector<T> cost;
  T obj{};
  std::vector<int> basis;
  std::vector<char> banned;
  long iterations = 0;

  void pivot(int leave, int enter) {
    T p = a[leave][enter];
    if constexpr (!Scalar<T>::exact) {
      if (std::fabs(p) < Scalar<T>::tinyPivotTol)
        throw NumericalBreakdown("simplex pivot below 1e-13");
    }
    T t = b[leave] / p;
    obj += cost[enter] * t;

    auto& prow = a[leave];
    T invp = T(1) / p;
    for (int j = 0; j < cols; ++j) prow[j] *= invp;
    prow[enter] = T(1);
    b[leave] = t;

    for (int i = 0; i < rows; ++i) {
      if (i == leave) continue;
      T f = a[i][enter];
      if (Scalar<T>::isZero(f)) {
        a[i][enter] = T(0);
        continue;
      }
      auto& row = a[i];
      for (int j = 0; j < cols; ++j) row[j] -= f * prow[j];
      row[enter] = T(0);
      b[i] -= f * b[leave];
    }
    {
      T f = cost[enter];
      if (!Scalar<T>::isZero(f)) {
        for (int j = 0; j < cols; ++j) cost[j] -= f * prow[j];
      }
      cost[enter] = T(0);
    }
    if (basis[leave] >= artStart) banned[basis[leave]] = 1;
    basis[leave] = enter;
  }

  // Returns true when optimal, false when the objective is unbounded below.
  // Entering rule: most negative reduced cost while the objective keeps
  // falling; after stallLimit degenerate pivots switch to lowest-index
  // selection until progress resumes.  Strict decreases visit a finite set
  // of basic objective values, so any infinite pivot sequence would have an
  // improvement-free tail running the lowest-index rule, which terminates.
  bool run() {
    const long cap = 400000L + 40L * cols;
    const long stallLimit = 64 + rows;
    T lastObj = obj;
    long stalled = 0;
    bool lowestIndexMode = false;
    while (true) {
      if (++iterations > cap) throw InternalError("simplex iteration cap exceeded");
      int enter = -1;
      for (int j = 0; j < cols; ++j) {
        if (banned[j]) continue;
        bool negative;
        if constexpr (Scalar<T>::exact)
          negative = cost[j] < 0;
        else
          negative = cost[j] < -Scalar<T>::enterTol;
        if (!negative) continue;
        if (lowestIndexMode) {
          enter = j;
          break;
        }
        if (enter < 0 || cost[j] < cost[enter]) enter = j;
      }
      if (enter < 0) return true;

      int leave = -1;
      T bestRatio{};
      for (int i = 0; i < rows; ++i) {
        const T& aij = a[i][enter];
        bool usable;
        if constexpr (Scalar<T>::exact)
          usable = aij > 0;
        else
          usable = aij > Scalar<T>::ratioPivotTol;
        if (!usable) continue;
        T r = b[i] / aij;
        if (leave < 0) {
          leave = i;
          bestRatio = r;
          continue;
        }
        bool smaller, tie;
        if constexpr (Scalar<T>::exact) {
          smaller = r < bestRatio;
          tie = r == bestRatio;
        } else {
          double tol = 1e-12 * (1.0 + std::fabs(Scalar<T>::toDouble(bestRatio)));
          smaller = Scalar<T>::toDouble(r) < Scalar<T>::toDouble(bestRatio) - tol;
          tie = !smaller && Scalar<T>::toDouble(r) <= Scalar<T>::toDouble(bestRatio) + tol;
        }
        if (smaller) {
          leave = i;
          bestRatio = r;
        } else if (tie && basis[i] < basis[leave]) {
          leave = i;  // Bland tie break on the leaving variable index
        }
      }
      if (leave < 0) {
        if constexpr (!Scalar<T>::exact) {
          for (int i = 0; i < rows; ++i)
            if (a[i][enter] > Scalar<T>::tinyPivotTol)
              throw NumericalBreakdown("only tiny pivots available in ratio test");
        }
        return false;
      }
      pivot(leave, enter);

      bool improved;
      if constexpr (Scalar<T>::exact)
        improved = obj < lastObj;
      else
        improved = Scalar<T>::toDouble(obj) <
                   Scalar<T>::toDouble(lastObj) -
                       1e-12 * (1.0 + std::fabs(Scalar<T>::toDouble(lastObj)));
      if (improved) {
        lastObj = obj;
        stalled = 0;
        lowestIndexMode = false;
      } else if (!lowestIndexMode && ++stalled >= stallLimit) {
        lowestIndexMode = true;
      }
    }
  }
};

template <class T>
LpSolution solveImpl(const LinearProgram& lp) {
  const int nOrigRows = lp.numRows();
  const int nOrigVars = lp.numCols();
  if (static_cast<int>(lp.constraintSense.size()) != nOrigRows ||
      static_cast<int>(lp.rhs.size()) != nOrigRows)
    throw DimensionMismatch("constraint row metadata lengths disagree");
  for (const auto& row : lp.constraintMatrix)
    if (static_cast<int>(row.size()) != nOrigVars)
      throw DimensionMismatch("constraint row width does not match objective length");
  if (!lp.variableBounds.empty() && static_cast<int>(lp.variableBounds.size()) != nOrigVars)
    throw DimensionMismatch("variable bound count does not match objective length");
  for (double r : lp.rhs)
    if (!std::isfinite(r)) throw Error("right-hand sides must be finite");

  auto boundsOf = [&](int j) -> std::pair<double, double> {
    if (lp.variableBounds.empty()) return {0.0, kInf};
    return lp.variableBounds[static_cast<size_t>(j)];
  };

  // Assemble variable mappings and count standard-form columns.
  std::vector<VarMap> vmap(static_cast<size_t>(nOrigVars));
  int nStruct = 0;
  std::vector<int> boundedRowsVar;  // vars contributing an upper-bound row
  for (int j = 0; j < nOrigVars; ++j) {
    auto [l, u] = boundsOf(j);
    if (l > u) return LpSolution{LpStatus::Infeasible, {}, {}, 0.0, 0, {}};
    VarMap& m = vmap[static_cast<size_t>(j)];
    if (l == -kInf && u == kInf) {
      m.kind = VarKind::Split;
      m.col = nStruct++;
      m.colNeg = nStruct++;
    } else if (l == -kInf) {
      m.kind = VarKind::Mirror;
      m.offset = u;
      m.col = nStruct++;
    } else {
      m.kind = VarKind::Shift;
      m.offset = l;
      m.col = nStruct++;
      if (u < kInf) boundedRowsVar.push_back(j);
    }
  }

  const int nBoundRows = static_cast<int>(boundedRowsVar.size());
  const int rows = nOrigRows + nBoundRows;

  // Count slacks.
  int nSlack = nBoundRows;  // each bound row is Le
  for (auto s : lp.constraintSense)
    if (s != ConstraintSense::Eq) ++nSlack;

  Simplex<T> sx;
  sx.rows = rows;
  sx.artStart = nStruct + nSlack;
  sx.cols = sx.artStart + rows;
  sx.a.assign(static_cast<size_t>(rows), std::vector<T>(static_cast<size_t>(sx.cols), T(0)));
  sx.b.assign(static_cast<size_t>(rows), T(0));
  sx.cost.assign(static_cast<size_t>(sx.cols), T(0));
  sx.basis.assign(static_cast<size_t>(rows), -1);
  sx.banned.assign(static_cast<size_t>(sx.cols), 0);

  const bool maximize = lp.sense == ObjectiveSense::Maximize;

  // Structural entries and adjusted right-hand sides.
  for (int i = 0; i < nOrigRows; ++i) {
    T rhs = Scalar<T>::fromDouble(lp.rhs[static_cast<size_t>(i)]);
    for (int j = 0; j < nOrigVars; ++j) {
      double aij = lp.constraintMatrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
      if (aij == 0.0) continue;
      const VarMap& m = vmap[static_cast<size_t>(j)];
      T v = Scalar<T>::fromDouble(aij);
      switch (m.kind) {
        case VarKind::Shift:
          sx.a[i][m.col] += v;
          rhs -= v * Scalar<T>::fromDouble(m.offset);
          break;
        case VarKind::Mirror:
          sx.a[i][m.col] -= v;
          rhs -= v * Scalar<T>::fromDouble(m.offset);
          break;
        case VarKind::Split:
          sx.a[i][m.col] += v;
          sx.a[i][m.colNeg] -= v;
          break;
      }
    }
    sx.b[i] = rhs;
  }
  for (int r = 0; r < nBoundRows; ++r) {
    int j = boundedRowsVar[static_cast<size_t>(r)];
    auto [l, u] = boundsOf(j);
    int i = nOrigRows + r;
    sx.a[i][vmap[static_cast<size_t>(j)].col] = T(1);
    sx.b[i] = Scalar<T>::fromDouble(u - l);
  }

  // Objective on standard-form columns; the internal problem is a minimization.
  std::vector<T> cInt(static_cast<size_t>(sx.cols), T(0));
  for (int j = 0; j < nOrigVars; ++j) {
    double cj = lp.objective[static_cast<size_t>(j)];
    if (cj == 0.0) continue;
    T v = Scalar<T>::fromDouble(maximize ? -cj : cj);
    const VarMap& m = vmap[static_cast<size_t>(j)];
    switch (m.kind) {
      case VarKind::Shift:
        cInt[m.col] += v;
        break;
      case VarKind::Mirror:
        cInt[m.col] -= v;
        break;
      case VarKind::Split:
        cInt[m.col] += v;
        cInt[m.colNeg] -= v;
        break;
    }
  }

  // Slacks.
  {
    int sc = nStruct;
    for (int i = 0; i < nOrigRows; ++i) {
      if (lp.constraintSense[static_cast<size_t>(i)] == ConstraintSense::Le)
        sx.a[i][sc++] = T(1);
      else if (lp.constraintSense[static_cast<size_t>(i)] == ConstraintSense::Ge)
        sx.a[i][sc++] = T(-1);
    }
    for (int r = 0; r < nBoundRows; ++r) sx.a[nOrigRows + r][sc++] = T(1);
  }

  // Row equilibration (float only), then sign flips for nonnegative rhs.
  std::vector<double> rowScale(static_cast<size_t>(rows), 1.0);
  std::vector<double> rowFlip(static_cast<size_t>(rows), 1.0);
  if constexpr (!Scalar<T>::exact) {
    for (int i = 0; i < rows; ++i) {
      double mx = 0.0;
      for (int j = 0; j < sx.artStart; ++j) mx = std::max(mx, std::fabs(sx.a[i][j]));
      if (mx > 0.0) {
        double s = 1.0 / mx;
        rowScale[static_cast<size_t>(i)] = s;
        for (int j = 0; j < sx.artStart; ++j) sx.a[i][j] *= s;
        sx.b[i] *= s;
      }
    }
  }
  for (int i = 0; i < rows; ++i) {
    if (sx.b[i] < 0) {
      rowFlip[static_cast<size_t>(i)] = -1.0;
      for (int j = 0; j < sx.artStart; ++j) sx.a[i][j] = -sx.a[i][j];
      sx.b[i] = -sx.b[i];
    }
  }

  // Artificial columns and phase-1 costs.
  for (int i = 0; i < rows; ++i) {
    sx.a[i][sx.artStart + i] = T(1);
    sx.basis[i] = sx.artStart + i;
  }
  sx.obj = T(0);
  for (int j = 0; j < sx.cols; ++j) sx.cost[j] = j >= sx.artStart ? T(1) : T(0);
  for (int i = 0; i < rows; ++i) {
    // Price out the basic artificial of row i.
    for (int j = 0; j < sx.cols; ++j) sx.cost[j] -= sx.a[i][j];
    sx.obj += sx.b[i];
  }
  double initialInfeas = Scalar<T>::toDouble(sx.obj);

  if (!sx.run()) throw InternalError("phase 1 reported an unbounded objective");

  LpSolution sol;
  T phase1 = sx.obj;
  bool feasible;
  if constexpr (Scalar<T>::exact)
    feasible = phase1 == 0;
  else
    feasible = Scalar<T>::toDouble(phase1) <= 1e-9 * (1.0 + std::fabs(initialInfeas));
  if (!feasible) {
    sol.status = LpStatus::Infeasible;
    // Farkas certificate. Artificial i carries phase-1 cost 1, so its reduced
    // cost is 1 - y_i; invert and map back through flips and scaling.
    sol.infeasibilityRay.assign(static_cast<size_t>(nOrigRows), 0.0);
    for (int i = 0; i < nOrigRows; ++i) {
      double yi = 1.0 - Scalar<T>::toDouble(sx.cost[sx.artStart + i]);
      sol.infeasibilityRay[static_cast<size_t>(i)] =
          yi * rowFlip[static_cast<size_t>(i)] * rowScale[static_cast<size_t>(i)];
    }
    return sol;
  }

  // Drive artificials out of the basis; neutralize redundant rows.
  for (int i = 0; i < rows; ++i) {
    if (sx.basis[i] < sx.artStart) continue;
    int piv = -1;
    for (int j = 0; j < sx.artStart; ++j) {
      if (sx.banned[j]) continue;
      bool ok;
      if constexpr (Scalar<T>::exact)
        ok = sx.a[i][j] != 0;
      else
        ok = std::fabs(Scalar<T>::toDouble(sx.a[i][j])) > 1e-11;
      if (ok) {
        piv = j;
        break;
      }
    }
    if (piv >= 0) {
      sx.pivot(i, piv);
    } else {
      // Redundant row: keep only the basic artificial so the row stays inert.
      for (int j = 0; j < sx.cols; ++j) sx.a[i][j] = T(0);
      sx.a[i][sx.basis[i]] = T(1);
      sx.b[i] = T(0);
    }
  }

  // Phase 2.
  for (int j = sx.artStart; j < sx.cols; ++j) sx.banned[j] = 1;
  sx.cost = cInt;
  sx.obj = T(0);
  for (int i = 0; i < rows; ++i) {
    int jb = sx.basis[i];
    T cb = jb < sx.artStart ? cInt[static_cast<size_t>(jb)] : T(0);
    if (Scalar<T>::isZero(cb)) continue;
    for (int j = 0; j < sx.cols; ++j) sx.cost[j] -= cb * sx.a[i][j];
    sx.obj += cb * sx.b[i];
  }
  for (int i = 0; i < rows; ++i) sx.cost[sx.basis[i]] = T(0);

  if (!sx.run()) {
    sol.status = LpStatus::Unbounded;
    return sol;
  }

  // Primal extraction back to original variables.
  std::vector<T> xStd(static_cast<size_t>(sx.artStart), T(0));
  for (int i = 0; i < rows; ++i)
    if (sx.basis[i] < sx.artStart) xStd[static_cast<size_t>(sx.basis[i])] = sx.b[i];

  sol.status = LpStatus::Optimal;
  sol.primal.assign(static_cast<size_t>(nOrigVars), 0.0);
  for (int j = 0; j < nOrigVars; ++j) {
    const VarMap& m = vmap[static_cast<size_t>(j)];
    double v = 0.0;
    switch (m.kind) {
      case VarKind::Shift:
        v = m.offset + Scalar<T>::toDouble(xStd[static_cast<size_t>(m.col)]);
        break;
      case VarKind::Mirror:
        v = m.offset - Scalar<T>::toDouble(xStd[static_cast<size_t>(m.col)]);
        break;
      case VarKind::Split:
        v = Scalar<T>::toDouble(xStd[static_cast<size_t>(m.col)]) -
            Scalar<T>::toDouble(xStd[static_cast<size_t>(m.colNeg)]);
        break;
    }
    sol.primal[static_cast<size_t>(j)] = v;
  }

  double value = 0.0;
  for (int j = 0; j < nOrigVars; ++j)
    value += lp.objective[static_cast<size_t>(j)] * sol.primal[static_cast<size_t>(j)];
  sol.value = value;

  sol.dual.assign(static_cast<size_t>(nOrigRows), 0.0);
  for (int i = 0; i < nOrigRows; ++i) {
    double yi = -Scalar<T>::toDouble(sx.cost[sx.artStart + i]);
    yi *= rowFlip[static_cast<size_t>(i)] * rowScale[static_cast<size_t>(i)];
    sol.dual[static_cast<size_t>(i)] = maximize ? -yi : yi;
  }

  sol.basisSize = 0;
  for (double v : sol.primal)
    if (v > 1e-9) ++sol.basisSize;
  return sol;
}

}  // namespace

LpSolution solveLp(const LinearProgram& lp, LpMode mode) {
  if (mode == LpMode::Rational) return solveImpl<Rational>(lp);
  return solveImpl<double>(lp);
}

LpSolution vertexSolution(const LinearProgram& lp, LpMode mode) {
  // The two-phase tableau method always terminates at a basic feasible point.
  return solveLp(lp, mode);
}

double dualObjective(const LinearProgram& lp, const LpSolution& sol) {
  const int nRows = lp.numRows();
  const int nVars = lp.numCols();
  if (static_cast<int>(sol.dual.size()) != nRows)
    throw DimensionMismatch("solution dual length does not match row count");
  const bool maximize = lp.sense == ObjectiveSense::Maximize;
  double g = 0.0;
  for (int i = 0; i < nRows; ++i)
    g += sol.dual[static_cast<size_t>(i)] * lp.rhs[static_cast<size_t>(i)];
  for (int j = 0; j < nVars; ++j) {
    double rc = lp.objective[static_cast<size_t>(j)];
    for (int i = 0; i < nRows; ++i)
      rc -= sol.dual[static_cast<size_t>(i)] *
            lp.constraintMatrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
    double l = 0.0, u = kInf;
    if (!lp.variableBounds.empty()) {
      l = lp.variableBounds[static_cast<size_t>(j)].first;
      u = lp.variableBounds[static_cast<size_t>(j)].second;
    }
    double bound = maximize ? (rc >= 0 ? u : l) : (rc >= 0 ? l : u);
    if (std::isinf(bound)) {
      if (std::fabs(rc) <= 1e-7) continue;
      return maximize ? kInf : -kInf;
    }
    g += rc * bound;
  }
  return g;
}

}  // namespace medsolve
