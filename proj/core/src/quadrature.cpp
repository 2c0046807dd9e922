#include "coulstat/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

#include "coulstat/errors.hpp"

namespace coulstat {

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  double tol;  // global budget, allocated to panels in proportion to length
  double span;
  long intervals_left;
};

double simpson_recurse(SimpsonState& st, double a, double m, double b,
                       double fa, double fm, double fb, double coarse,
                       int depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = st.f(lm), frm = st.f(rm);
  const double h = b - a;
  const double left = h / 12.0 * (fa + 4.0 * flm + fm);
  const double right = h / 12.0 * (fm + 4.0 * frm + fb);
  const double fine = left + right;
  const double err = (fine - coarse) / 15.0;
  if (std::fabs(err) <= st.tol * (h / st.span) || depth >= 48)
    return fine + err;
  if (st.intervals_left <= 0)
    throw QuadratureError("adaptive Simpson exceeded the interval budget");
  st.intervals_left -= 2;
  return simpson_recurse(st, a, lm, m, fa, flm, fm, left, depth + 1) +
         simpson_recurse(st, m, rm, b, fm, frm, fb, right, depth + 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, double rel_tol,
                        long max_intervals) {
  if (a == b) return 0.0;
  double sign = 1.0;
  if (a > b) { std::swap(a, b); sign = -1.0; }
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double coarse = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  SimpsonState st{f, std::max(abs_tol, rel_tol * std::fabs(coarse)),
                  b - a, max_intervals};
  return sign * simpson_recurse(st, a, m, b, fa, fm, fb, coarse, 0);
}

const GaussLegendreRule& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  static std::map<int, GaussLegendreRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;

  GaussLegendreRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int k = 0; k < half; ++k) {
    // Newton on P_n from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (k + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-15) break;
    }
    rule.nodes[k] = -x;
    rule.nodes[n - 1 - k] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[k] = w;
    rule.weights[n - 1 - k] = w;
  }
  auto [pos, inserted] = cache.emplace(n, std::move(rule));
  (void)inserted;
  return pos->second;
}

double gauss_legendre_integrate(const std::function<double(double)>& f,
                                double a, double b, int n) {
  const GaussLegendreRule& rule = gauss_legendre(n);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double sum = 0.0;
  for (int i = 0; i < n; ++i)
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * sum;
}

double composite_gauss(const std::function<double(double)>& f, double a,
                       double b, int panels, int nodes_per_panel) {
  if (panels < 1) throw std::invalid_argument("composite_gauss: panels < 1");
  double sum = 0.0;
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p)
    sum += gauss_legendre_integrate(f, a + p * h, a + (p + 1) * h,
                                    nodes_per_panel);
  return sum;
}

} // namespace coulstat
