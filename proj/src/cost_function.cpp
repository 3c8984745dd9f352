#include "nakamoto/cost_function.hpp"

#include <cmath>
#include <string>

#include "nakamoto/errors.hpp"

namespace nakamoto {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_h(double h) {
  if (!(h >= 0.0)) throw DomainError("hash power must be non-negative, got " + std::to_string(h));
}

}  // namespace

CostFunction::CostFunction(LinearCost v) : v_(v) {
  require(std::isfinite(v.c) && v.c >= 0.0, "linear cost requires c >= 0");
}

CostFunction::CostFunction(LinearPremiumCost v) : v_(v) {
  require(std::isfinite(v.c) && v.c >= 0.0, "premium cost requires c >= 0");
  require(std::isfinite(v.kappa) && v.kappa >= 1.0, "premium cost requires kappa >= 1");
  require(v.alpha >= 0.0 && v.alpha <= 1.0, "premium cost requires alpha in [0, 1]");
}

CostFunction::CostFunction(PowerCost v) : v_(v) {
  require(std::isfinite(v.gamma) && v.gamma > 0.0, "power cost requires gamma > 0");
  require(std::isfinite(v.p) && v.p > 1.0, "power cost requires exponent p > 1");
}

double CostFunction::linear_slope() const {
  return std::visit(overloaded{
                        [](const LinearCost& f) { return f.c; },
                        [](const LinearPremiumCost& f) {
                          return f.c * (f.alpha + f.kappa * (1.0 - f.alpha));
                        },
                        [](const PowerCost&) -> double {
                          throw DomainError("power cost has no constant slope");
                        },
                    },
                    v_);
}

CostFunction CostFunction::inside() const {
  if (const auto* f = std::get_if<LinearPremiumCost>(&v_)) return LinearCost{f->c};
  return *this;
}

double CostFunction::eval(double h) const {
  check_h(h);
  if (const auto* f = std::get_if<PowerCost>(&v_)) return f->gamma * std::pow(h, f->p);
  return linear_slope() * h;
}

double CostFunction::marginal(double h) const {
  check_h(h);
  if (const auto* f = std::get_if<PowerCost>(&v_)) {
    return f->gamma * f->p * std::pow(h, f->p - 1.0);
  }
  return linear_slope();
}

}  // namespace nakamoto
