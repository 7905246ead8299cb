#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "medsolve/linprog.hpp"

using namespace medsolve;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

LinearProgram makeLp(ObjectiveSense sense, std::vector<double> c,
                     std::vector<std::vector<double>> a,
                     std::vector<ConstraintSense> senses, std::vector<double> b,
                     std::vector<std::pair<double, double>> bounds = {}) {
  LinearProgram lp;
  lp.sense = sense;
  lp.objective = std::move(c);
  lp.constraintMatrix = std::move(a);
  lp.constraintSense = std::move(senses);
  lp.rhs = std::move(b);
  lp.variableBounds = std::move(bounds);
  return lp;
}

}  // namespace

TEST_CASE("bounded maximization with known duals") {
  auto lp = makeLp(ObjectiveSense::Maximize, {3, 2},
                   {{1, 1}, {1, 0}},
                   {ConstraintSense::Le, ConstraintSense::Le}, {4, 2});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(10.0).epsilon(1e-9));
  CHECK(sol.primal[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.primal[1] == doctest::Approx(2.0).epsilon(1e-9));
  REQUIRE(sol.dual.size() == 2);
  CHECK(sol.dual[0] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sol.dual[1] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(dualObjective(lp, sol) == doctest::Approx(10.0).epsilon(1e-9));
}

TEST_CASE("minimization with a covering constraint") {
  auto lp = makeLp(ObjectiveSense::Minimize, {2, 3}, {{1, 1}},
                   {ConstraintSense::Ge}, {2});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(4.0));
  CHECK(sol.primal[0] == doctest::Approx(2.0));
  CHECK(sol.primal[1] == doctest::Approx(0.0));
  CHECK(dualObjective(lp, sol) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("free variable pinned by an equality") {
  auto lp = makeLp(ObjectiveSense::Minimize, {1, 1}, {{1, -1}},
                   {ConstraintSense::Eq}, {1},
                   {{0.0, kInf}, {-kInf, kInf}});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(-1.0));
  CHECK(sol.primal[0] == doctest::Approx(0.0));
  CHECK(sol.primal[1] == doctest::Approx(-1.0));
}

TEST_CASE("box bounds with no rows") {
  auto lp = makeLp(ObjectiveSense::Maximize, {1}, {}, {}, {}, {{-3.0, 5.0}});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(5.0));

  lp.sense = ObjectiveSense::Minimize;
  sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(-3.0));
}

TEST_CASE("upper-bounded-only variable mirrors correctly") {
  auto lp = makeLp(ObjectiveSense::Maximize, {1}, {}, {}, {}, {{-kInf, 2.0}});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(2.0));

  lp.sense = ObjectiveSense::Minimize;
  sol = solveLp(lp);
  CHECK(sol.status == LpStatus::Unbounded);
}

TEST_CASE("fixed variable via equal bounds") {
  auto lp = makeLp(ObjectiveSense::Maximize, {2}, {}, {}, {}, {{1.5, 1.5}});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(3.0));
  CHECK(sol.primal[0] == doctest::Approx(1.5));
}

TEST_CASE("crossed bounds are infeasible") {
  auto lp = makeLp(ObjectiveSense::Maximize, {1}, {}, {}, {}, {{2.0, 1.0}});
  CHECK(solveLp(lp).status == LpStatus::Infeasible);
}

TEST_CASE("inconsistent equalities yield a separating certificate") {
  auto lp = makeLp(ObjectiveSense::Maximize, {0, 0},
                   {{1, 1}, {1, 1}},
                   {ConstraintSense::Eq, ConstraintSense::Eq}, {1, 2});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Infeasible);
  REQUIRE(sol.infeasibilityRay.size() == 2);
  const auto& y = sol.infeasibilityRay;
  double yb = y[0] * 1 + y[1] * 2;
  double ycol = y[0] + y[1];  // both columns are (1, 1)
  CHECK(yb > 1e-6);
  CHECK(ycol <= 1e-6 * std::fabs(yb));
}

TEST_CASE("unbounded ray detected") {
  auto lp = makeLp(ObjectiveSense::Maximize, {1, 0}, {{0, 1}},
                   {ConstraintSense::Le}, {1});
  CHECK(solveLp(lp).status == LpStatus::Unbounded);
}

TEST_CASE("duplicated equality rows are tolerated") {
  auto lp = makeLp(ObjectiveSense::Maximize, {1, 0},
                   {{1, 1}, {1, 1}},
                   {ConstraintSense::Eq, ConstraintSense::Eq}, {1, 1});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(1.0));
  sol = solveLp(lp, LpMode::Rational);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(1.0));
}

TEST_CASE("degenerate pivots terminate under the anticycling rule") {
  // A classic cycling instance for steepest-decrease pivoting.
  auto lp = makeLp(ObjectiveSense::Minimize,
                   {-0.75, 150.0, -0.02, 6.0},
                   {{0.25, -60.0, -0.04, 9.0},
                    {0.5, -90.0, -0.02, 3.0},
                    {0.0, 0.0, 1.0, 0.0}},
                   {ConstraintSense::Le, ConstraintSense::Le, ConstraintSense::Le},
                   {0.0, 0.0, 1.0});
  auto sol = solveLp(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(-0.05).epsilon(1e-9));
  auto exact = solveLp(lp, LpMode::Rational);
  REQUIRE(exact.status == LpStatus::Optimal);
  CHECK(exact.value == doctest::Approx(-0.05).epsilon(1e-12));
}

TEST_CASE("mixture weights solve to a sparse vertex") {
  // Five collinear points, two equality rows: any optimal basic point uses at
  // most two of them.
  LinearProgram lp;
  lp.sense = ObjectiveSense::Maximize;
  lp.objective = {0.0, 0.3, 1.0, 0.2, 0.0};
  std::vector<double> xs = {0.0, 0.25, 0.5, 0.75, 1.0};
  lp.constraintMatrix = {xs, {1, 1, 1, 1, 1}};
  lp.constraintSense = {ConstraintSense::Eq, ConstraintSense::Eq};
  lp.rhs = {0.5, 1.0};
  auto sol = vertexSolution(lp);
  REQUIRE(sol.status == LpStatus::Optimal);
  CHECK(sol.value == doctest::Approx(1.0));
  CHECK(sol.basisSize <= 2);
  CHECK(sol.primal[2] == doctest::Approx(1.0));
}

TEST_CASE("shape mismatches are rejected") {
  LinearProgram lp;
  lp.objective = {1.0, 2.0};
  lp.constraintMatrix = {{1.0}};
  lp.constraintSense = {ConstraintSense::Le};
  lp.rhs = {1.0};
  CHECK_THROWS_AS(solveLp(lp), DimensionMismatch);

  lp.constraintMatrix = {{1.0, 2.0}};
  lp.rhs = {1.0, 2.0};
  CHECK_THROWS_AS(solveLp(lp), DimensionMismatch);
}

TEST_CASE("repeat solves are byte deterministic") {
  auto lp = makeLp(ObjectiveSense::Maximize, {3, 2, 1},
                   {{1, 1, 1}, {2, 1, 0}},
                   {ConstraintSense::Le, ConstraintSense::Le}, {4, 3});
  auto a = solveLp(lp);
  auto b = solveLp(lp);
  REQUIRE(a.status == b.status);
  REQUIRE(a.primal.size() == b.primal.size());
  for (size_t i = 0; i < a.primal.size(); ++i) CHECK(a.primal[i] == b.primal[i]);
  CHECK(a.value == b.value);
}

TEST_CASE("random instances agree across modes and close the duality gap") {
  std::mt19937 rng(20240817u);
  // Dyadic data keeps every product and partial sum exact in double, so the
  // float and rational solvers see literally the same problem.
  std::uniform_int_distribution<int> coefGrid(-128, 128), posGrid(0, 96);
  auto coef = [&](std::mt19937& r) { return coefGrid(r) / 64.0; };
  auto pos = [&](std::mt19937& r) { return posGrid(r) / 64.0; };
  std::uniform_int_distribution<int> nv(2, 6), nr(1, 5), senseDie(0, 2);

  int optimalCount = 0;
  for (int rep = 0; rep < 100; ++rep) {
    int n = nv(rng), m = nr(rng);
    LinearProgram lp;
    lp.sense = rep % 2 == 0 ? ObjectiveSense::Maximize : ObjectiveSense::Minimize;
    lp.objective.resize(static_cast<size_t>(n));
    for (auto& c : lp.objective) c = coef(rng);
    std::vector<double> x0(static_cast<size_t>(n));
    for (auto& v : x0) v = pos(rng);
    lp.constraintMatrix.assign(static_cast<size_t>(m), std::vector<double>(static_cast<size_t>(n)));
    lp.constraintSense.resize(static_cast<size_t>(m));
    lp.rhs.resize(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      double ax = 0.0;
      for (int j = 0; j < n; ++j) {
        double a = coef(rng);
        lp.constraintMatrix[static_cast<size_t>(i)][static_cast<size_t>(j)] = a;
        ax += a * x0[static_cast<size_t>(j)];
      }
      int s = senseDie(rng);
      if (s == 0) {
        lp.constraintSense[static_cast<size_t>(i)] = ConstraintSense::Eq;
        lp.rhs[static_cast<size_t>(i)] = ax;
      } else if (s == 1) {
        lp.constraintSense[static_cast<size_t>(i)] = ConstraintSense::Le;
        lp.rhs[static_cast<size_t>(i)] = ax + pos(rng);
      } else {
        lp.constraintSense[static_cast<size_t>(i)] = ConstraintSense::Ge;
        lp.rhs[static_cast<size_t>(i)] = ax - pos(rng);
      }
    }

    auto flt = solveLp(lp, LpMode::Float);
    auto rat = solveLp(lp, LpMode::Rational);
    REQUIRE(flt.status == rat.status);
    REQUIRE(flt.status != LpStatus::Infeasible);  // built around x0
    if (flt.status == LpStatus::Optimal) {
      ++optimalCount;
      double scale = 1.0 + std::fabs(flt.value);
      CHECK(std::fabs(flt.value - rat.value) <= 1e-6 * scale);
      double gap = std::fabs(dualObjective(lp, flt) - flt.value);
      CHECK(gap <= 1e-7 * scale);
      // Primal feasibility of the reported point.
      for (int i = 0; i < m; ++i) {
        double ax = 0.0;
        for (int j = 0; j < n; ++j)
          ax += lp.constraintMatrix[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                flt.primal[static_cast<size_t>(j)];
        double resid = ax - lp.rhs[static_cast<size_t>(i)];
        switch (lp.constraintSense[static_cast<size_t>(i)]) {
          case ConstraintSense::Eq: CHECK(std::fabs(resid) <= 1e-8 * scale); break;
          case ConstraintSense::Le: CHECK(resid <= 1e-8 * scale); break;
          case ConstraintSense::Ge: CHECK(resid >= -1e-8 * scale); break;
        }
      }
      for (double v : flt.primal) CHECK(v >= -1e-9);
    }
  }
  CHECK(optimalCount >= 30);  // the generator should not degenerate
}
