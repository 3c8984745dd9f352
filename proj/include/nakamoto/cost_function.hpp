#pragma once

#include <variant>

namespace nakamoto {

// Cost per unit time of running `h` hash power at a constant per-hash price.
struct LinearCost {
  double c = 1.0;
};

// Blend of inside power at price c and outside power at price kappa*c.
// `alpha` is the inside share of the deployed power.
struct LinearPremiumCost {
  double c = 1.0;
  double kappa = 1.0;
  double alpha = 0.0;
};

// gamma * h^p, strictly convex for p > 1.
struct PowerCost {
  double gamma = 1.0;
  double p = 2.0;
};

class CostFunction {
 public:
  using Variant = std::variant<LinearCost, LinearPremiumCost, PowerCost>;

  // Throws DomainError on invalid parameters.
  CostFunction(LinearCost v);
  CostFunction(LinearPremiumCost v);
  CostFunction(PowerCost v);

  static CostFunction linear(double c) { return LinearCost{c}; }
  static CostFunction premium(double c, double kappa, double alpha) {
    return LinearPremiumCost{c, kappa, alpha};
  }
  static CostFunction power(double gamma, double p) { return PowerCost{gamma, p}; }

  const Variant& variant() const { return v_; }
  bool is_linear() const { return !std::holds_alternative<PowerCost>(v_); }

  // Slope of a linear variant (blended for LinearPremium). Throws for Power.
  double linear_slope() const;

  // Cost the miner pays for power it already runs on the chain: a premium
  // cost reduces to its inside price, other variants are unchanged.
  CostFunction inside() const;

  double operator()(double h) const { return eval(h); }
  double eval(double h) const;
  double marginal(double h) const;

 private:
  Variant v_;
};

inline double cost_eval(const CostFunction& f, double h) { return f.eval(h); }
inline double cost_marginal(const CostFunction& f, double h) { return f.marginal(h); }

}  // namespace nakamoto
