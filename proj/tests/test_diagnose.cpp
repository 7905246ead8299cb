#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "medsolve/diagnose.hpp"
#include "medsolve/families.hpp"
#include "medsolve/geom.hpp"
#include "medsolve/solve.hpp"

using namespace medsolve;

namespace {

FiniteGame randomGame(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nPick(2, 4);
  std::uniform_int_distribution<int> mPick(2, 6);
  std::uniform_int_distribution<int> util(-128, 128);
  std::uniform_int_distribution<int> mass(1, 32);
  const int n = nPick(rng);
  const int m = mPick(rng);
  FiniteGame g;
  g.states.resize(n);
  g.actions.resize(m);
  for (int w = 0; w < n; ++w) g.states[w] = "s" + std::to_string(w);
  for (int a = 0; a < m; ++a) g.actions[a] = "a" + std::to_string(a);
  g.senderUtility.resize(m);
  for (int a = 0; a < m; ++a) g.senderUtility[a] = util(rng) / 64.0;
  g.receiverUtility.assign(n, std::vector<double>(m, 0.0));
  for (int w = 0; w < n; ++w)
    for (int a = 0; a < m; ++a) g.receiverUtility[w][a] = util(rng) / 64.0;
  std::vector<int> masses(n);
  int total = 0;
  for (int w = 0; w < n; ++w) {
    masses[w] = mass(rng);
    total += masses[w];
  }
  g.prior.resize(n);
  for (int w = 0; w < n; ++w) g.prior[w] = static_cast<double>(masses[w]) / total;
  return g;
}

FiniteGame stepGame(std::vector<double> prior) {
  FiniteGame g;
  g.states = {"low", "high"};
  g.actions = {"reject", "accept"};
  g.senderUtility = {0.0, 1.0};
  g.receiverUtility = {{0.0, -0.55}, {0.0, 0.45}};
  g.prior = std::move(prior);
  return g;
}

// Mediation plan for the rotated-S game at prior 0.3: mass 49/75 at belief 0,
// 14/75 at 3/4 and 12/75 at 1, each selecting its own sender value. The
// selection covariance vanishes by construction.
BeliefPlan rotatedSMdPlan() {
  BeliefPlan plan;
  plan.atoms.push_back({Belief({1.0, 0.0}), 49.0 / 75.0, 0.0});
  plan.atoms.push_back({Belief({0.25, 0.75}), 14.0 / 75.0, 12.0 / 409.0});
  plan.atoms.push_back({Belief({0.0, 1.0}), 12.0 / 75.0, -9.0 / 409.0});
  return plan;
}

// Piecewise-linear tent with peaks of height 1 at 1/4 and 3/4.
double tent(double x) {
  if (x < 0.25) return 4.0 * x;
  if (x < 0.5) return -2.0 * x + 1.5;
  if (x < 0.75) return 2.0 * x - 0.5;
  return -4.0 * x + 4.0;
}

}  // namespace

TEST_CASE("implementability audit separates the three protocols") {
  Game game{rotatedSGame({0.7, 0.3})};
  Belief p({0.7, 0.3});

  SUBCASE("covariance-free mediation plan") {
    auto rep = checkImplementable(game, p, rotatedSMdPlan());
    CHECK(rep.bpOk);
    CHECK(rep.mdOk);
    CHECK_FALSE(rep.ctOk);
    CHECK(rep.obedienceViolations.empty());
    for (double r : rep.consistencyResidual) CHECK(std::fabs(r) <= 1e-12);
    for (double r : rep.covarianceResidual) CHECK(std::fabs(r) <= 1e-12);
    CHECK(rep.selectionVariance > 1e-6);
  }

  SUBCASE("persuasion split fails the covariance audit") {
    BeliefPlan plan;
    plan.atoms.push_back({Belief({1.0, 0.0}), 0.6, 0.0});
    plan.atoms.push_back({Belief({0.25, 0.75}), 0.4, 12.0 / 409.0});
    auto rep = checkImplementable(game, p, plan);
    CHECK(rep.bpOk);
    CHECK_FALSE(rep.mdOk);
    CHECK(std::fabs(rep.covarianceResidual[1] - (12.0 / 409.0) * 0.18) <= 1e-12);
  }

  SUBCASE("no disclosure passes everything") {
    auto rep = checkImplementable(game, p, solveNd(game).plan);
    CHECK(rep.bpOk);
    CHECK(rep.mdOk);
    CHECK(rep.ctOk);
    CHECK(rep.selectionVariance <= 1e-15);
  }

  SUBCASE("off-interval selection is flagged with its distance") {
    BeliefPlan plan;
    plan.atoms.push_back({Belief({0.7, 0.3}), 1.0, 0.2});
    auto rep = checkImplementable(game, p, plan);
    REQUIRE(rep.obedienceViolations.size() == 1);
    CHECK(rep.obedienceViolations[0].atom == 0);
    double v = momentValue(std::get<MomentGame>(game), Belief({0.7, 0.3}));
    CHECK(rep.obedienceViolations[0].amount == doctest::Approx(0.2 - v).epsilon(1e-9));
    CHECK_FALSE(rep.bpOk);
  }

  SUBCASE("broken barycenter is reported per state") {
    BeliefPlan plan;
    plan.atoms.push_back({Belief({0.5, 0.5}), 1.0, momentValue(std::get<MomentGame>(game), Belief({0.5, 0.5}))});
    auto rep = checkImplementable(game, p, plan);
    CHECK(rep.consistencyResidual[0] == doctest::Approx(-0.2).epsilon(1e-12));
    CHECK(rep.consistencyResidual[1] == doctest::Approx(0.2).epsilon(1e-12));
    CHECK_FALSE(rep.bpOk);
  }
}

TEST_CASE("cheap talk hull reports level geometry") {
  auto grid3 = makeBeliefGrid(3, 24);

  SUBCASE("interior think-tank prior spans the full simplex") {
    Game game{thinkTankGame({0.5, 0.2, 0.3})};
    Belief p({0.5, 0.2, 0.3});
    auto hull = cheapTalkHull(game, p, 1.0, grid3);
    CHECK(hull.fullDimensional);
    CHECK(hull.hullDimension == 2);
    auto audit = checkImplementable(game, p, hull.spanningPlan);
    CHECK(audit.ctOk);
    for (const auto& a : hull.spanningPlan.atoms) CHECK(a.selection == 1.0);
  }

  SUBCASE("knife-edge prior collapses onto one face") {
    Game game{thinkTankGame({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0})};
    Belief p({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    auto hull = cheapTalkHull(game, p, 2.0, grid3);
    CHECK_FALSE(hull.fullDimensional);
    CHECK(hull.hullDimension == 1);
    REQUIRE(hull.atomsInPlay.size() >= 2);
    for (const auto& mu : hull.atomsInPlay) CHECK(std::fabs(mu[0] - 1.0 / 3.0) <= 1e-8);
    auto audit = checkImplementable(game, p, hull.spanningPlan);
    CHECK(audit.ctOk);
  }

  SUBCASE("degenerate prior gives a point hull") {
    FiniteGame g = thinkTankGame({0.2, 0.2, 0.6});
    g.prior = {0.0, 0.0, 1.0};
    auto hull = cheapTalkHull(Game{g}, Belief({0.0, 0.0, 1.0}), 3.0, grid3);
    CHECK(hull.hullDimension == 0);
    CHECK(hull.atomsInPlay.size() == 1);
    CHECK_FALSE(hull.fullDimensional);
  }

  SUBCASE("binary level-0 set keeps its isolated zero at 0.95") {
    Game game{rotatedSGame({0.7, 0.3})};
    auto hull = cheapTalkHull(game, Belief({0.7, 0.3}), 0.0, makeBeliefGrid(2, 80));
    CHECK(hull.fullDimensional);
    CHECK(hull.hullDimension == 1);
    bool sawFarZero = false;
    for (const auto& mu : hull.atomsInPlay) {
      auto iv = valueAt(game, mu);
      CHECK(iv.lo <= 1e-9);
      CHECK(iv.hi >= -1e-9);
      if (std::fabs(mu[1] - 0.95) <= 1e-9) sawFarZero = true;
      if (mu[1] > 0.551 && !(std::fabs(mu[1] - 0.95) <= 1e-9)) CHECK(false);
    }
    CHECK(sawFarZero);
  }

  SUBCASE("unreachable level throws") {
    Game game{thinkTankGame({0.5, 0.2, 0.3})};
    CHECK_THROWS_AS(cheapTalkHull(game, Belief({0.5, 0.2, 0.3}), 3.0, grid3),
                    LevelNotAttainable);
  }
}

TEST_CASE("full dimensionality test flags knife edge priors") {
  SUBCASE("generic think-tank prior") {
    Game game{thinkTankGame({0.5, 0.2, 0.3})};
    auto ev = isFullDimensional(game, Belief({0.5, 0.2, 0.3}), makeBeliefGrid(3, 20));
    CHECK(ev.fullDimensional);
    CHECK(ev.neighborsConstant);
  }

  SUBCASE("uniform think-tank prior sits on the boundary") {
    Game game{thinkTankGame({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0})};
    auto ev = isFullDimensional(game, Belief({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}),
                                makeBeliefGrid(3, 24));
    CHECK_FALSE(ev.fullDimensional);
    CHECK_FALSE(ev.neighborsConstant);
  }

  SUBCASE("binary rotated-S prior is interior") {
    Game game{rotatedSGame({0.7, 0.3})};
    auto ev = isFullDimensional(game, Belief({0.7, 0.3}), makeBeliefGrid(2, 40));
    CHECK(ev.fullDimensional);
    CHECK(ev.neighborsConstant);
  }

  SUBCASE("boundary prior is rejected") {
    FiniteGame g = thinkTankGame({0.2, 0.2, 0.6});
    g.prior = {0.0, 0.0, 1.0};
    CHECK_THROWS_AS(isFullDimensional(Game{g}, Belief({0.0, 0.0, 1.0}), makeBeliefGrid(3, 20)),
                    Error);
  }
}

TEST_CASE("improvability separates the think-tank regions") {
  auto grid3 = makeBeliefGrid(3, 24);

  SUBCASE("large first coordinate leaves room to improve on talk") {
    Game game{thinkTankGame({0.5, 0.2, 0.3})};
    Belief p({0.5, 0.2, 0.3});
    auto rep = isImprovable(game, p, 1.0, grid3, true);
    REQUIRE(rep.improvable);
    REQUIRE(rep.witness.has_value());
    CHECK(rep.witness->lambda >= 0.0);
    CHECK(rep.witness->lambda < 1.0);
    auto iv = valueAt(game, rep.witness->mu);
    CHECK(iv.lo < 1.0 - 1e-9);
    CHECK(isImprovable(game, p, 1.0, grid3, false).improvable);
  }

  SUBCASE("small first coordinate cannot improve on the level-2 equilibrium") {
    Game game{thinkTankGame({0.2, 0.5, 0.3})};
    Belief p({0.2, 0.5, 0.3});
    CHECK_FALSE(isImprovable(game, p, 2.0, grid3, true).improvable);
    CHECK_FALSE(isImprovable(game, p, 2.0, grid3, false).improvable);
  }

  SUBCASE("quasiconvex value admits no mixture witness") {
    Game game{quadraticGame({0.5, 0.5})};
    CHECK_FALSE(isImprovable(game, Belief({0.5, 0.5}), 0.25, makeBeliefGrid(2, 64), false)
                    .improvable);
  }

  SUBCASE("rotated-S babbling level is improvable") {
    Game game{rotatedSGame({0.7, 0.3})};
    auto rep = isImprovable(game, Belief({0.7, 0.3}), 0.0, makeBeliefGrid(2, 80), false);
    CHECK(rep.improvable);
  }
}

TEST_CASE("improvement certificate matches its closed form gain") {
  SUBCASE("think-tank construction stays below the outcome oracle") {
    FiniteGame g = thinkTankGame({0.5, 0.25, 0.25});
    Game game{g};
    Belief p({0.5, 0.25, 0.25});
    auto grid = makeBeliefGrid(3, 24);
    auto rep = isImprovable(game, p, 1.0, grid, true);
    REQUIRE(rep.improvable);
    auto cert = constructImprovingPlan(game, p, 1.0, *rep.witness, grid);
    CHECK(cert.alpha > 1.0 + 1e-9);
    CHECK(cert.valueGain > 1e-9);
    CHECK(std::fabs(planValue(cert.mixedPlan) - 1.0 - cert.valueGain) <= 1e-8);
    auto audit = checkImplementable(game, p, cert.mixedPlan);
    CHECK(audit.mdOk);
    CHECK(planValue(cert.mixedPlan) <= solveMdOutcome(g).value + 1e-7);
  }

  SUBCASE("rotated-S construction is honest and strictly profitable") {
    Game game{rotatedSGame({0.7, 0.3})};
    Belief p({0.7, 0.3});
    auto grid = makeBeliefGrid(2, 80);
    auto rep = isImprovable(game, p, 0.0, grid, false);
    REQUIRE(rep.improvable);
    auto cert = constructImprovingPlan(game, p, 0.0, *rep.witness, grid);
    CHECK(cert.valueGain > 1e-9);
    CHECK(std::fabs(planValue(cert.mixedPlan) - cert.valueGain) <= 1e-8);
    CHECK(cert.xi >= 0.0);
    CHECK(cert.xi <= 1.0);
    auto audit = checkImplementable(game, p, cert.mixedPlan);
    CHECK(audit.mdOk);
  }
}

TEST_CASE("trichotomy classification covers the published regions") {
  auto grid = makeBeliefGrid(3, 24);

  SUBCASE("acceptance region near the best vertex") {
    auto rep = classifyTrichotomy(thinkTankGame({0.1, 0.15, 0.75}), grid);
    CHECK(rep.kind == TrichotomyClass::AllEqual);
    CHECK(rep.ct == doctest::Approx(3.0).epsilon(1e-9));
  }

  SUBCASE("talk already extracts all mediation value") {
    auto rep = classifyTrichotomy(thinkTankGame({0.2, 0.5, 0.3}), grid);
    CHECK(rep.kind == TrichotomyClass::BpGtMdEqCt);
    CHECK(rep.ct == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(rep.bp > rep.md + 1e-6);
  }

  SUBCASE("mediation strictly between commitment and talk") {
    auto rep = classifyTrichotomy(thinkTankGame({0.5, 0.25, 0.25}), grid);
    CHECK(rep.kind == TrichotomyClass::BpGtMdGtCt);
    CHECK(rep.md == doctest::Approx(24.0 / 17.0).epsilon(1e-9));
    CHECK(rep.ct == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.bp > rep.md + 1e-6);
  }
}

TEST_CASE("crossing patterns match the catalogued families") {
  auto grid2 = makeBeliefGrid(2, 120);

  SUBCASE("monotone step value crosses from below at interior levels") {
    Game game{stepGame({0.7, 0.3})};
    CHECK(monoCrossing(game, 0.5, grid2) == CrossingPattern::FromBelow);
  }

  SUBCASE("sine value wiggles") {
    Game game{sineGame({0.8, 0.2})};
    CHECK(monoCrossing(game, 0.0, grid2) == CrossingPattern::No);
  }

  SUBCASE("rotated-S value wiggles") {
    Game game{rotatedSGame({0.7, 0.3})};
    CHECK(monoCrossing(game, 0.0, grid2) == CrossingPattern::No);
  }

  SUBCASE("quadratic value at its trough") {
    Game game{quadraticGame({0.5, 0.5})};
    CHECK(monoCrossing(game, 0.25, grid2) == CrossingPattern::FromBelow);
  }

  SUBCASE("constant value crosses both ways vacuously") {
    MomentGame g;
    g.states = {{0.0}, {1.0}};
    g.prior = {0.5, 0.5};
    g.senderMomentValue = [](const std::vector<double>&) { return 0.7; };
    CHECK(monoCrossing(Game{g}, 0.7, grid2) == CrossingPattern::Both);
  }

  SUBCASE("ternary games are rejected") {
    Game game{thinkTankGame({0.5, 0.2, 0.3})};
    CHECK_THROWS_AS(monoCrossing(game, 1.0, makeBeliefGrid(3, 12)), NotBinary);
  }
}

TEST_CASE("single crossing certification is strict about zeros") {
  auto grid2 = makeBeliefGrid(2, 120);

  SUBCASE("increasing value certifies at its own level") {
    MomentGame g;
    g.states = {{0.0}, {1.0}};
    g.prior = {0.7, 0.3};
    g.senderMomentValue = [](const std::vector<double>& x) { return x[0]; };
    CHECK(singleCrossingAt(Game{g}, 0.3, 0.3, grid2));
  }

  SUBCASE("decreasing value certifies through the mirrored branch") {
    MomentGame g;
    g.states = {{0.0}, {1.0}};
    g.prior = {0.7, 0.3};
    g.senderMomentValue = [](const std::vector<double>& x) { return -x[0]; };
    CHECK(singleCrossingAt(Game{g}, -0.3, 0.3, grid2));
  }

  SUBCASE("quadratic value fails: the difference re-enters negative territory") {
    Game game{quadraticGame({0.5, 0.5})};
    CHECK_FALSE(singleCrossingAt(game, 0.25, 0.5, grid2));
  }

  SUBCASE("level mismatch fails immediately") {
    Game game{rotatedSGame({0.7, 0.3})};
    CHECK_FALSE(singleCrossingAt(game, 0.0, 0.3, grid2));
  }

  SUBCASE("interval-valued profiles are rejected") {
    Game game{stepGame({0.7, 0.3})};
    CHECK_THROWS_AS(singleCrossingAt(game, 0.5, 0.55, grid2), NotSingletonValued);
  }

  SUBCASE("ternary games are rejected") {
    Game game{thinkTankGame({0.5, 0.2, 0.3})};
    CHECK_THROWS_AS(singleCrossingAt(game, 1.0, 0.5, makeBeliefGrid(3, 12)), NotBinary);
  }
}

TEST_CASE("full disclosure test separates flat and wavy values") {
  SUBCASE("indifferent sender can settle on any vertex level") {
    FiniteGame g;
    g.states = {"a", "b"};
    g.actions = {"l", "r"};
    g.senderUtility = {0.8, 0.8};
    g.receiverUtility = {{1.0, 0.0}, {0.0, 1.0}};
    g.prior = {0.4, 0.6};
    CHECK(fullDisclosureOptimal(Game{g}, Belief({0.4, 0.6}), makeBeliefGrid(2, 40)));
  }

  SUBCASE("sine vertices agree on zero but zero is improvable") {
    Game game{sineGame({0.8, 0.2})};
    CHECK_FALSE(fullDisclosureOptimal(game, Belief({0.8, 0.2}), makeBeliefGrid(2, 120)));
  }

  SUBCASE("think-tank vertices disagree") {
    Game game{thinkTankGame({0.5, 0.2, 0.3})};
    CHECK_FALSE(fullDisclosureOptimal(game, Belief({0.5, 0.2, 0.3}), makeBeliefGrid(3, 12)));
  }
}

TEST_CASE("receiver welfare accounting") {
  SUBCASE("no disclosure prices the prior's best response") {
    Game game{thinkTankGame({0.8, 0.1, 0.1})};
    double v = receiverValue(game, solveNd(game).plan);
    CHECK(v == doctest::Approx(0.4).epsilon(1e-12));
  }

  SUBCASE("uniform think-tank talk leaves the receiver indifferent") {
    Game game{thinkTankGame({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0})};
    auto ct = solveCtMax(game, Belief({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}), makeBeliefGrid(3, 24));
    CHECK(std::fabs(receiverValue(game, ct.plan)) <= 1e-9);
  }

  SUBCASE("rotated-S receiver gains from information") {
    Game game{rotatedSGame({0.7, 0.3})};
    BeliefPlan full;
    full.atoms.push_back({Belief({1.0, 0.0}), 0.7, 0.0});
    full.atoms.push_back({Belief({0.0, 1.0}), 0.3, -9.0 / 409.0});
    CHECK(receiverValue(game, full) == doctest::Approx(0.65).epsilon(1e-12));
    double nd = receiverValue(game, solveNd(game).plan);
    CHECK(nd == doctest::Approx(0.5 + 0.027 - 0.0081 / 2.0).epsilon(1e-12));
    CHECK(receiverValue(game, full) > nd);
  }

  SUBCASE("missing receiver payoff throws") {
    Game game{quadraticGame({0.5, 0.5})};
    CHECK_THROWS_AS(receiverValue(game, solveNd(game).plan), MissingReceiverValue);
  }
}

TEST_CASE("state dependent honesty audit replicates the tent example") {
  Belief p({0.5, 0.5});
  BeliefPlan plan;
  plan.atoms.push_back({Belief({0.75, 0.25}), 0.5, 1.0});
  plan.atoms.push_back({Belief({0.25, 0.75}), 0.5, 1.0});
  auto payoff = [](const Belief& mu, int w) {
    return tent(mu[1]) - static_cast<double>(w) / mu[1];
  };

  SUBCASE("the two-peak split is honest in both directions") {
    auto r = checkHonestyStateDependent(payoff, p, plan);
    CHECK(r[1][0] == doctest::Approx(4.0 / 3.0).epsilon(1e-9));
    CHECK(std::fabs(r[0][1]) <= 1e-9);
  }

  SUBCASE("conditional inverse-belief means split as 10/3 versus 2") {
    double mean0 = 0.0, mean1 = 0.0;
    for (const auto& a : plan.atoms) {
      mean0 += a.weight * (a.belief[0] / p[0]) / a.belief[1];
      mean1 += a.weight * (a.belief[1] / p[1]) / a.belief[1];
    }
    CHECK(mean0 == doctest::Approx(10.0 / 3.0).epsilon(1e-9));
    CHECK(mean1 == doctest::Approx(2.0).epsilon(1e-9));
  }

  SUBCASE("swapping the state roles breaks honesty") {
    auto flipped = [](const Belief& mu, int w) {
      return tent(mu[1]) - static_cast<double>(1 - w) / mu[1];
    };
    auto r = checkHonestyStateDependent(flipped, p, plan);
    CHECK(r[0][1] < -1e-8);
  }

  SUBCASE("talk would need equal payoffs on the support and has none") {
    CHECK(payoff(Belief({0.75, 0.25}), 1) == doctest::Approx(-3.0).epsilon(1e-12));
    CHECK(payoff(Belief({0.25, 0.75}), 1) == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  }

  SUBCASE("state-independent payoffs reduce to the covariance audit") {
    MomentGame rs = rotatedSGame({0.7, 0.3});
    auto flat = [&rs](const Belief& mu, int) { return momentValue(rs, mu); };
    auto r = checkHonestyStateDependent(flat, Belief({0.7, 0.3}), rotatedSMdPlan());
    CHECK(std::fabs(r[0][1]) <= 1e-9);
    CHECK(std::fabs(r[1][0]) <= 1e-9);
  }

  SUBCASE("boundary prior is rejected") {
    CHECK_THROWS_AS(checkHonestyStateDependent(payoff, Belief({1.0, 0.0}), plan), Error);
  }
}

TEST_CASE("diagnose invariants hold on random games") {
  std::mt19937_64 rng(771311);
  for (int trial = 0; trial < 10; ++trial) {
    FiniteGame g = randomGame(rng);
    CAPTURE(trial);
    Game game{g};
    Belief p(g.prior);
    auto grid = makeBeliefGrid(g.numStates(), g.numStates() == 4 ? 16 : 24);

    auto md = solveMdOutcome(g);
    CHECK(checkImplementable(game, p, md.plan).mdOk);
    auto bp = solveBp(game, grid);
    CHECK(checkImplementable(game, p, bp.plan).bpOk);
    auto ct = solveCtMax(game, p, grid);
    CHECK(checkImplementable(game, p, ct.plan).ctOk);
    CHECK(checkImplementable(game, p, solveNd(game).plan).ctOk);

    const double s = ct.value;
    auto local = isImprovable(game, p, s, grid, true);
    auto global = isImprovable(game, p, s, grid, false);
    if (local.improvable) CHECK(global.improvable);
    if (!global.improvable) CHECK(std::fabs(md.value - ct.value) <= 1e-6);
    auto hull = cheapTalkHull(game, p, s, grid);
    if (hull.fullDimensional) CHECK(local.improvable == global.improvable);

    if (local.improvable) {
      auto cert = constructImprovingPlan(game, p, s, *local.witness, grid);
      CHECK(cert.valueGain > 1e-9);
      CHECK(std::fabs(planValue(cert.mixedPlan) - s - cert.valueGain) <= 1e-8);
      auto audit = checkImplementable(game, p, cert.mixedPlan);
      CHECK(audit.mdOk);
      CHECK(planValue(cert.mixedPlan) <= md.value + 1e-7);
    }
  }
}

TEST_CASE("grid mediation plans pass their own audit") {
  Game game{rotatedSGame({0.7, 0.3})};
  Belief p({0.7, 0.3});
  auto rep = solveMdBeliefGrid(game, makeBeliefGrid(2, 400));
  auto audit = checkImplementable(game, p, rep.plan);
  CHECK(audit.mdOk);
  CHECK_FALSE(audit.ctOk);
}
