#pragma once

#include <vector>

namespace coulstat {

// Value and derivatives of a scalar function at a point,
//   derivs = (f(c), f'(c), ..., f^(K)(c)),
// propagated exactly through arithmetic. Sums, products, quotients and
// compositions of jets reproduce the derivatives of the composite function
// up to floating-point rounding. Immutable after construction.
class Jet {
public:
  Jet(double center, std::vector<double> derivs);

  // f(x) = value (all derivatives zero)
  static Jet constant(double center, double value, int order);
  // f(x) = x
  static Jet variable(double center, int order);
  // f(x) = x^p for real p, derivatives in closed form:
  //   f^(k)(c) = p(p-1)...(p-k+1) c^(p-k).
  // Requires c > 0 when p - k < 0 or p non-integer.
  static Jet monomial(double center, double exponent, int order);

  double center() const { return center_; }
  int order() const { return static_cast<int>(derivs_.size()) - 1; }
  double value() const { return derivs_[0]; }
  double deriv(int k) const;
  const std::vector<double>& derivs() const { return derivs_; }

  // jet of f' at the same center; order decreases by one
  Jet derivative() const;
  Jet truncated(int order) const;

  Jet operator-() const;

  // jet of g(f(x)) where `outer` is the jet of g at f(center) and `inner`
  // the jet of f; result order = min of the two orders
  static Jet compose(const Jet& outer, const Jet& inner);

private:
  double center_;
  std::vector<double> derivs_;
};

// Arithmetic truncates to the smaller of the two orders. Operands must share
// the same center.
Jet operator+(const Jet& a, const Jet& b);
Jet operator-(const Jet& a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b); // requires b.value() != 0

Jet operator+(const Jet& a, double c);
Jet operator+(double c, const Jet& a);
Jet operator-(const Jet& a, double c);
Jet operator-(double c, const Jet& a);
Jet operator*(const Jet& a, double c);
Jet operator*(double c, const Jet& a);
Jet operator/(const Jet& a, double c);

double binomial(int n, int k);
double factorial(int n);

} // namespace coulstat
