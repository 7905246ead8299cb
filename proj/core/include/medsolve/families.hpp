#pragma once

#include <vector>

#include "medsolve/model.hpp"

namespace medsolve {

/// Binary reputation game. Sender value (1-delta)*G(mu) - delta*mu where mu
/// is the probability of the high state and G(mu) = 3mu^2 - 2mu^3; receiver
/// value mu*G(mu) + int_mu^1 e dG(e) = 1/2 + mu^3 - mu^4/2.
MomentGame rotatedSGame(const std::vector<double>& prior, double delta = 209.0 / 409.0);

/// Three states, four actions. Action a0 is a safe status quo worth 0 to the
/// receiver; risky action a_i pays 1 in state i and -c otherwise. Sender
/// utilities (0, v1, v2, v3).
FiniteGame thinkTankGame(const std::vector<double>& prior, double c = 2.0,
                         double v1 = 1.0, double v2 = 2.0, double v3 = 3.0);

/// Binary game with sender value sin(3*pi*mu - pi).
MomentGame sineGame(const std::vector<double>& prior);

/// Binary game with sender value 4*mu*(mu - 1/2) + 1/4.
MomentGame quadraticGame(const std::vector<double>& prior);

/// Multi-attribute sale. States are {0,1}^k in lexicographic order, embedded
/// as their own attribute vectors. Sender value <y,x>^n - <rho,x>; receiver
/// value n/(n+1) + <y,x>^(n+1)/(n+1).
MomentGame salesmanGame(const std::vector<double>& prior, const std::vector<double>& y,
                        const std::vector<double>& rho, int outsideExponent = 2);

/// Scalar asset with returns `stateValues`, embedded as (omega, omega^2).
/// Sender value gamma*x1^2 + x1 - gamma*x2 (the probability the investor
/// invests); receiver value (1 + R(x)^2)/2.
MomentGame meanVarianceGame(const std::vector<double>& prior, double gamma,
                            const std::vector<double>& stateValues);

/// Builds a built-in family from its serialized tag. Known names:
/// "rotated-s", "think-tank", "sine", "quadratic", "salesman",
/// "mean-variance". Throws Error for unknown names or malformed parameters.
Game makeFamilyGame(const FamilyTag& tag, const std::vector<double>& prior);

}  // namespace medsolve
