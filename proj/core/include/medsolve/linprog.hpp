#pragma once

#include <utility>
#include <vector>

#include "medsolve/errors.hpp"

namespace medsolve {

enum class ConstraintSense { Eq, Le, Ge };
enum class ObjectiveSense { Maximize, Minimize };
enum class LpStatus { Optimal, Infeasible, Unbounded };
enum class LpMode { Float, Rational };

/// Dense linear program. Variable bounds default to [0, +inf); either side
/// may be infinite. All right-hand sides must be finite.
struct LinearProgram {
  ObjectiveSense sense = ObjectiveSense::Maximize;
  std::vector<double> objective;
  std::vector<std::vector<double>> constraintMatrix;
  std::vector<ConstraintSense> constraintSense;
  std::vector<double> rhs;
  std::vector<std::pair<double, double>> variableBounds;  // empty means all [0, inf)

  int numRows() const { return static_cast<int>(constraintMatrix.size()); }
  int numCols() const { return static_cast<int>(objective.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> primal;
  std::vector<double> dual;  // one multiplier per constraint row
  double value = 0.0;
  int basisSize = 0;  // strictly positive primal entries
  /// Farkas-style certificate row when status == Infeasible: y with
  /// y*A dominating y*b, used by hull queries to build separators.
  std::vector<double> infeasibilityRay;
};

/// Two-phase dense primal simplex with Bland's rule. Float mode equilibrates
/// rows before solving; rational mode runs exact arbitrary-precision
/// arithmetic (intended for at most ~200 variables) with exact conversion of
/// double inputs. Throws NumericalBreakdown when a float pivot falls below
/// 1e-13; callers may retry in rational mode.
LpSolution solveLp(const LinearProgram& lp, LpMode mode = LpMode::Float);

/// Optimal basic feasible point. The returned support never exceeds the row
/// rank of the constraint system; degenerate ties resolve to lowest index.
LpSolution vertexSolution(const LinearProgram& lp, LpMode mode = LpMode::Float);

/// Lagrangian dual objective evaluated at the solution's row multipliers,
/// with variable-bound terms recovered from reduced-cost signs. Equals the
/// primal value (up to roundoff) when the solution is optimal.
double dualObjective(const LinearProgram& lp, const LpSolution& sol);

}  // namespace medsolve
