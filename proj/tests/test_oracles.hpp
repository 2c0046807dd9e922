#pragma once

// Test-only oracles, independent of the library code paths they check.

#include <cmath>
#include <cstdint>
#include <vector>

namespace oracles {

// Symbolic polynomial with exact coefficient arithmetic; the reference for
// jet products, quotients, compositions and derivatives.
struct Poly {
  std::vector<double> c; // c[k] x^k

  double eval(double x) const {
    double v = 0.0;
    for (size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
  }

  Poly derivative() const {
    if (c.size() <= 1) return Poly{{0.0}};
    Poly d;
    d.c.resize(c.size() - 1);
    for (size_t k = 1; k < c.size(); ++k) d.c[k - 1] = c[k] * k;
    return d;
  }

  // k-th derivative value at x
  double deriv_at(double x, int order) const {
    Poly p = *this;
    for (int i = 0; i < order; ++i) p = p.derivative();
    return p.eval(x);
  }

  Poly operator*(const Poly& other) const {
    Poly out;
    out.c.assign(c.size() + other.c.size() - 1, 0.0);
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < other.c.size(); ++j)
        out.c[i + j] += c[i] * other.c[j];
    return out;
  }

  Poly operator+(const Poly& other) const {
    Poly out;
    out.c.assign(std::max(c.size(), other.c.size()), 0.0);
    for (size_t i = 0; i < c.size(); ++i) out.c[i] += c[i];
    for (size_t i = 0; i < other.c.size(); ++i) out.c[i] += other.c[i];
    return out;
  }

  // composition this(other(x))
  Poly compose(const Poly& inner) const {
    Poly out{{0.0}};
    for (size_t k = c.size(); k-- > 0;) {
      out = out * inner;
      out.c[0] += c[k];
    }
    return out;
  }
};

// Deterministic 64-bit generator for reproducible random test cases
// (splitmix64 update).
struct TestRng {
  std::uint64_t state;
  explicit TestRng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

// Kolmogorov-Smirnov statistic of samples against a CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> samples, const Cdf& cdf) {
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  double worst = 0.0;
  for (size_t i = 0; i < samples.size(); ++i) {
    const double f = cdf(samples[i]);
    worst = std::max(worst, std::fabs((i + 1) / n - f));
    worst = std::max(worst, std::fabs(f - i / n));
  }
  return worst;
}

} // namespace oracles
