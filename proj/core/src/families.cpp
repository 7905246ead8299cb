#include "medsolve/families.hpp"

#include <cmath>
#include <string>

namespace medsolve {

namespace {

void requireBinary(const std::vector<double>& prior, const char* family) {
  if (prior.size() != 2)
    throw NotBinary(std::string(family) + " needs a binary prior, got length " +
                    std::to_string(prior.size()));
}

double getScalar(const FamilyTag& tag, const std::string& key, double fallback) {
  auto it = tag.scalarParams.find(key);
  return it == tag.scalarParams.end() ? fallback : it->second;
}

}  // namespace

MomentGame rotatedSGame(const std::vector<double>& prior, double delta) {
  requireBinary(prior, "rotated-s");
  MomentGame g;
  g.states = {{0.0}, {1.0}};
  g.prior = prior;
  g.senderMomentValue = [delta](const std::vector<double>& x) {
    double mu = x[0];
    double cdf = 3.0 * mu * mu - 2.0 * mu * mu * mu;
    return (1.0 - delta) * cdf - delta * mu;
  };
  g.receiverMomentValue = [](const std::vector<double>& x) {
    double mu = x[0];
    return 0.5 + mu * mu * mu - 0.5 * mu * mu * mu * mu;
  };
  g.familyTag.name = "rotated-s";
  g.familyTag.scalarParams["delta"] = delta;
  validateGame(g);
  return g;
}

FiniteGame thinkTankGame(const std::vector<double>& prior, double c, double v1,
                         double v2, double v3) {
  FiniteGame g;
  g.states = {"w1", "w2", "w3"};
  g.actions = {"a0", "a1", "a2", "a3"};
  g.prior = prior;
  g.senderUtility = {0.0, v1, v2, v3};
  g.receiverUtility.assign(3, std::vector<double>(4, 0.0));
  for (int w = 0; w < 3; ++w)
    for (int a = 1; a <= 3; ++a)
      g.receiverUtility[static_cast<size_t>(w)][static_cast<size_t>(a)] =
          (a == w + 1) ? 1.0 : -c;
  validateGame(g);
  return g;
}

MomentGame sineGame(const std::vector<double>& prior) {
  requireBinary(prior, "sine");
  MomentGame g;
  g.states = {{0.0}, {1.0}};
  g.prior = prior;
  g.senderMomentValue = [](const std::vector<double>& x) {
    return std::sin(3.0 * M_PI * x[0] - M_PI);
  };
  g.familyTag.name = "sine";
  validateGame(g);
  return g;
}

MomentGame quadraticGame(const std::vector<double>& prior) {
  requireBinary(prior, "quadratic");
  MomentGame g;
  g.states = {{0.0}, {1.0}};
  g.prior = prior;
  g.senderMomentValue = [](const std::vector<double>& x) {
    return 4.0 * x[0] * (x[0] - 0.5) + 0.25;
  };
  g.familyTag.name = "quadratic";
  validateGame(g);
  return g;
}

MomentGame salesmanGame(const std::vector<double>& prior, const std::vector<double>& y,
                        const std::vector<double>& rho, int outsideExponent) {
  const int k = static_cast<int>(y.size());
  if (k < 1 || rho.size() != y.size())
    throw DimensionMismatch("salesman attribute weight vectors disagree in length");
  if (outsideExponent < 2)
    throw Error("salesman outside-option exponent must be at least 2");
  const int numStates = 1 << k;
  if (static_cast<int>(prior.size()) != numStates)
    throw DimensionMismatch("salesman prior length must be 2^k");

  MomentGame g;
  g.states.reserve(static_cast<size_t>(numStates));
  for (int s = 0; s < numStates; ++s) {
    std::vector<double> attr(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i)
      attr[static_cast<size_t>(i)] = (s >> (k - 1 - i)) & 1 ? 1.0 : 0.0;
    g.states.push_back(std::move(attr));
  }
  g.prior = prior;
  const int n = outsideExponent;
  auto sale = [y, n](const std::vector<double>& x) {
    double r = 0.0;
    for (size_t i = 0; i < y.size(); ++i) r += y[i] * x[i];
    return std::pow(r, n);
  };
  g.senderMomentValue = [sale, rho](const std::vector<double>& x) {
    double concern = 0.0;
    for (size_t i = 0; i < rho.size(); ++i) concern += rho[i] * x[i];
    return sale(x) - concern;
  };
  g.receiverMomentValue = [y, n](const std::vector<double>& x) {
    double r = 0.0;
    for (size_t i = 0; i < y.size(); ++i) r += y[i] * x[i];
    return static_cast<double>(n) / (n + 1) + std::pow(r, n + 1) / (n + 1);
  };
  g.familyTag.name = "salesman";
  g.familyTag.scalarParams["n"] = n;
  g.familyTag.vectorParams["y"] = y;
  g.familyTag.vectorParams["rho"] = rho;
  validateGame(g);
  return g;
}

MomentGame meanVarianceGame(const std::vector<double>& prior, double gamma,
                            const std::vector<double>& stateValues) {
  if (prior.size() != stateValues.size())
    throw DimensionMismatch("mean-variance prior and state value lengths disagree");
  for (size_t i = 0; i + 1 < stateValues.size(); ++i)
    if (stateValues[i] >= stateValues[i + 1])
      throw Error("mean-variance state values must be strictly increasing");

  MomentGame g;
  g.states.reserve(stateValues.size());
  for (double w : stateValues) g.states.push_back({w, w * w});
  g.prior = prior;
  auto invest = [gamma](const std::vector<double>& x) {
    return gamma * x[0] * x[0] + x[0] - gamma * x[1];
  };
  g.senderMomentValue = invest;
  g.receiverMomentValue = [invest](const std::vector<double>& x) {
    double r = invest(x);
    return 0.5 * (1.0 + r * r);
  };
  g.familyTag.name = "mean-variance";
  g.familyTag.scalarParams["gamma"] = gamma;
  g.familyTag.vectorParams["states"] = stateValues;
  validateGame(g);
  return g;
}

Game makeFamilyGame(const FamilyTag& tag, const std::vector<double>& prior) {
  const std::string& name = tag.name;
  if (name == "rotated-s") return rotatedSGame(prior, getScalar(tag, "delta", 209.0 / 409.0));
  if (name == "think-tank")
    return thinkTankGame(prior, getScalar(tag, "c", 2.0), getScalar(tag, "v1", 1.0),
                         getScalar(tag, "v2", 2.0), getScalar(tag, "v3", 3.0));
  if (name == "sine") return sineGame(prior);
  if (name == "quadratic") return quadraticGame(prior);
  if (name == "salesman") {
    auto yIt = tag.vectorParams.find("y");
    auto rIt = tag.vectorParams.find("rho");
    if (yIt == tag.vectorParams.end() || rIt == tag.vectorParams.end())
      throw Error("salesman family needs vector parameters y and rho");
    return salesmanGame(prior, yIt->second, rIt->second,
                        static_cast<int>(getScalar(tag, "n", 2.0)));
  }
  if (name == "mean-variance") {
    auto sIt = tag.vectorParams.find("states");
    if (sIt == tag.vectorParams.end())
      throw Error("mean-variance family needs the vector parameter states");
    return meanVarianceGame(prior, getScalar(tag, "gamma", 4.0), sIt->second);
  }
  throw Error("unknown game family: " + name);
}

}  // namespace medsolve
