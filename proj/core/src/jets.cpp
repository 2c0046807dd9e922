#include "coulstat/jets.hpp"

#include <cmath>
#include <stdexcept>

namespace coulstat {

namespace {

constexpr int kBinomialMax = 40;

const double* binomial_row(int n) {
  // Pascal's triangle, exact in double up to n = 40 (C(40,20) < 2^53).
  static const auto table = [] {
    static double rows[kBinomialMax + 1][kBinomialMax + 1] = {};
    for (int i = 0; i <= kBinomialMax; ++i) {
      rows[i][0] = 1.0;
      for (int j = 1; j <= i; ++j)
        rows[i][j] = rows[i - 1][j - 1] + (j <= i - 1 ? rows[i - 1][j] : 0.0);
    }
    return &rows;
  }();
  return (*table)[n];
}

void check_same_center(const Jet& a, const Jet& b) {
  if (a.center() != b.center())
    throw std::invalid_argument("Jet arithmetic requires a common center");
}

} // namespace

double binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n || n > kBinomialMax)
    throw std::invalid_argument("binomial: out of range");
  return binomial_row(n)[k];
}

double factorial(int n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Jet::Jet(double center, std::vector<double> derivs)
    : center_(center), derivs_(std::move(derivs)) {
  if (derivs_.empty())
    throw std::invalid_argument("Jet: needs at least the value");
  for (double d : derivs_)
    if (!std::isfinite(d))
      throw std::invalid_argument("Jet: non-finite derivative");
}

Jet Jet::constant(double center, double value, int order) {
  std::vector<double> d(static_cast<size_t>(order) + 1, 0.0);
  d[0] = value;
  return Jet(center, std::move(d));
}

Jet Jet::variable(double center, int order) {
  std::vector<double> d(static_cast<size_t>(order) + 1, 0.0);
  d[0] = center;
  if (order >= 1) d[1] = 1.0;
  return Jet(center, std::move(d));
}

Jet Jet::monomial(double center, double exponent, int order) {
  std::vector<double> d(static_cast<size_t>(order) + 1, 0.0);
  double coeff = 1.0; // p(p-1)...(p-k+1)
  for (int k = 0; k <= order; ++k) {
    if (k > 0) coeff *= exponent - (k - 1);
    if (coeff == 0.0) {
      d[k] = 0.0; // integer exponent, derivative order beyond the power
      continue;
    }
    double e = exponent - k;
    if (center == 0.0) {
      if (e > 0.0) {
        d[k] = 0.0;
      } else if (e == 0.0) {
        d[k] = coeff;
      } else {
        throw std::invalid_argument("Jet::monomial: singular derivative at 0");
      }
    } else {
      if (center < 0.0 && std::floor(exponent) != exponent)
        throw std::invalid_argument("Jet::monomial: negative base, fractional power");
      d[k] = coeff * std::pow(center, e);
    }
  }
  return Jet(center, std::move(d));
}

double Jet::deriv(int k) const {
  if (k < 0 || k > order())
    throw std::out_of_range("Jet::deriv: order out of range");
  return derivs_[static_cast<size_t>(k)];
}

Jet Jet::derivative() const {
  if (order() < 1)
    throw std::invalid_argument("Jet::derivative: order 0 jet");
  return Jet(center_, {derivs_.begin() + 1, derivs_.end()});
}

Jet Jet::truncated(int order) const {
  if (order < 0 || order > this->order())
    throw std::invalid_argument("Jet::truncated: bad order");
  return Jet(center_, {derivs_.begin(), derivs_.begin() + order + 1});
}

Jet Jet::operator-() const {
  std::vector<double> d(derivs_);
  for (double& x : d) x = -x;
  return Jet(center_, std::move(d));
}

Jet operator+(const Jet& a, const Jet& b) {
  check_same_center(a, b);
  int n = std::min(a.order(), b.order());
  std::vector<double> d(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) d[k] = a.deriv(k) + b.deriv(k);
  return Jet(a.center(), std::move(d));
}

Jet operator-(const Jet& a, const Jet& b) {
  check_same_center(a, b);
  int n = std::min(a.order(), b.order());
  std::vector<double> d(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) d[k] = a.deriv(k) - b.deriv(k);
  return Jet(a.center(), std::move(d));
}

Jet operator*(const Jet& a, const Jet& b) {
  check_same_center(a, b);
  int n = std::min(a.order(), b.order());
  std::vector<double> d(static_cast<size_t>(n) + 1, 0.0);
  // Leibniz: (fg)^(k) = sum_j C(k,j) f^(j) g^(k-j)
  for (int k = 0; k <= n; ++k) {
    const double* binom = binomial_row(k);
    double s = 0.0;
    for (int j = 0; j <= k; ++j) s += binom[j] * a.deriv(j) * b.deriv(k - j);
    d[k] = s;
  }
  return Jet(a.center(), std::move(d));
}

Jet operator/(const Jet& a, const Jet& b) {
  check_same_center(a, b);
  if (b.value() == 0.0)
    throw std::invalid_argument("Jet division by a jet with zero value");
  int n = std::min(a.order(), b.order());
  std::vector<double> h(static_cast<size_t>(n) + 1, 0.0);
  // solve a = h*b order by order:
  //   h^(k) = (a^(k) - sum_{j<k} C(k,j) h^(j) b^(k-j)) / b(c)
  for (int k = 0; k <= n; ++k) {
    const double* binom = binomial_row(k);
    double s = a.deriv(k);
    for (int j = 0; j < k; ++j) s -= binom[j] * h[j] * b.deriv(k - j);
    h[k] = s / b.value();
  }
  return Jet(a.center(), std::move(h));
}

Jet operator+(const Jet& a, double c) {
  std::vector<double> d(a.derivs());
  d[0] += c;
  return Jet(a.center(), std::move(d));
}
Jet operator+(double c, const Jet& a) { return a + c; }
Jet operator-(const Jet& a, double c) { return a + (-c); }
Jet operator-(double c, const Jet& a) { return (-a) + c; }

Jet operator*(const Jet& a, double c) {
  std::vector<double> d(a.derivs());
  for (double& x : d) x *= c;
  return Jet(a.center(), std::move(d));
}
Jet operator*(double c, const Jet& a) { return a * c; }
Jet operator/(const Jet& a, double c) { return a * (1.0 / c); }

Jet Jet::compose(const Jet& outer, const Jet& inner) {
  if (outer.center() != inner.value())
    throw std::invalid_argument("Jet::compose: outer center must equal inner value");
  int n = std::min(outer.order(), inner.order());
  // Work in Taylor form t_k = f^(k)/k! and compose truncated power series
  // by Horner in u = inner - inner(c), which has zero constant term.
  std::vector<double> u(static_cast<size_t>(n) + 1, 0.0);
  for (int k = 1; k <= n; ++k) u[k] = inner.deriv(k) / factorial(k);
  std::vector<double> r(static_cast<size_t>(n) + 1, 0.0);
  r[0] = outer.deriv(n) / factorial(n);
  for (int k = n - 1; k >= 0; --k) {
    // r <- r*u + g_k, truncated at order n
    std::vector<double> next(static_cast<size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) {
      if (r[i] == 0.0) continue;
      for (int j = 1; i + j <= n; ++j) next[i + j] += r[i] * u[j];
    }
    next[0] += outer.deriv(k) / factorial(k);
    r = std::move(next);
  }
  std::vector<double> d(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) d[k] = r[k] * factorial(k);
  return Jet(inner.center(), std::move(d));
}

} // namespace coulstat
