#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "coulstat/jets.hpp"

namespace coulstat {

// Highest derivative order the library hands out. Order 12 jets cover the
// operator route for cumulants up to q = 13 (it needs jets of f and U to
// order q-1 at the droplet edge).
inline constexpr int kMaxJetOrder = 12;

// Marker for built-ins whose derivatives exist to every order.
inline constexpr int kUnboundedSmoothness = std::numeric_limits<int>::max();

// A radial function r >= 0 -> f(r) with exact derivative access. The
// evaluator must be deterministic: identical (r, order) yield identical
// jets. Instances are immutable and safe to share across threads.
class RadialFunction {
public:
  using Evaluator = std::function<Jet(double r, int order)>;

  RadialFunction(std::string descriptor, Evaluator evaluator,
                 int smoothness_order = kUnboundedSmoothness);

  // Derivatives (f(r), f'(r), ..., f^(order)(r)). Throws OrderUnavailable
  // for order > kMaxJetOrder or beyond the function's smoothness at r.
  Jet jet(double r, int order) const;

  double value(double r) const { return jet(r, 0).value(); }
  double deriv(double r, int k) const { return jet(r, k).deriv(k); }

  const std::string& descriptor() const { return descriptor_; }
  // Smoothness at the worst point of the domain (r = 0 for fractional
  // powers); kUnboundedSmoothness when derivatives exist to every order.
  int smoothness_order() const { return smoothness_order_; }

private:
  std::string descriptor_;
  Evaluator evaluator_;
  int smoothness_order_;
};

// U(x) = (mu/2) x^2, mu > 0.
RadialFunction make_harmonic(double mu);

// f(x) = x^q_exp, q_exp > 0. Fractional exponents have finite smoothness
// at 0; jet requests at r = 0 beyond floor(q_exp) are refused.
RadialFunction make_monomial(double q_exp);

// f(x) = sum_k coeffs[k] x^k.
RadialFunction make_polynomial(std::vector<double> coeffs);

// f identically zero (polynomial shorthand used by tests and the CLI).
RadialFunction make_zero();

// Parses the CLI spelling of a built-in family:
//   "harmonic:mu=<v>"  "monomial:q=<v>"  "poly:c0,c1,..."  "zero"
RadialFunction parse_radial_function(const std::string& id);

} // namespace coulstat
