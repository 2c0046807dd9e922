#include "coulstat/radial_function.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "coulstat/errors.hpp"

namespace coulstat {

RadialFunction::RadialFunction(std::string descriptor, Evaluator evaluator,
                               int smoothness_order)
    : descriptor_(std::move(descriptor)),
      evaluator_(std::move(evaluator)),
      smoothness_order_(smoothness_order) {
  if (!evaluator_)
    throw std::invalid_argument("RadialFunction: null evaluator");
}

Jet RadialFunction::jet(double r, int order) const {
  if (order < 0) throw std::invalid_argument("RadialFunction::jet: order < 0");
  if (order > kMaxJetOrder)
    throw OrderUnavailable(descriptor_ + " at order " +
                           std::to_string(order) + " (max " +
                           std::to_string(kMaxJetOrder) + ")");
  if (r < 0.0)
    throw std::invalid_argument("RadialFunction::jet: negative radius");
  return evaluator_(r, order);
}

RadialFunction make_harmonic(double mu) {
  if (!(mu > 0.0)) throw std::invalid_argument("make_harmonic: mu must be > 0");
  std::ostringstream name;
  name << "harmonic:mu=" << mu;
  return RadialFunction(name.str(), [mu](double r, int order) {
    std::vector<double> d(static_cast<size_t>(order) + 1, 0.0);
    d[0] = 0.5 * mu * r * r;
    if (order >= 1) d[1] = mu * r;
    if (order >= 2) d[2] = mu;
    return Jet(r, std::move(d));
  });
}

RadialFunction make_monomial(double q_exp) {
  if (!(q_exp > 0.0))
    throw std::invalid_argument("make_monomial: exponent must be > 0");
  std::ostringstream name;
  name << "monomial:q=" << q_exp;
  const bool integer_power = std::floor(q_exp) == q_exp;
  const int smooth_at_zero =
      integer_power ? kUnboundedSmoothness : static_cast<int>(std::floor(q_exp));
  auto eval = [q_exp, smooth_at_zero](double r, int order) {
    if (r == 0.0 && order > smooth_at_zero)
      throw OrderUnavailable("fractional monomial at r=0 beyond order " +
                             std::to_string(smooth_at_zero));
    return Jet::monomial(r, q_exp, order);
  };
  return RadialFunction(name.str(), eval, smooth_at_zero);
}

RadialFunction make_polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  std::ostringstream name;
  name << "poly:";
  for (size_t i = 0; i < coeffs.size(); ++i)
    name << (i ? "," : "") << coeffs[i];
  auto eval = [coeffs](double r, int order) {
    std::vector<double> d(static_cast<size_t>(order) + 1, 0.0);
    for (int k = 0; k <= order; ++k) {
      // k-th derivative: sum_{j>=k} c_j j!/(j-k)! r^(j-k), by Horner
      double v = 0.0;
      for (int j = static_cast<int>(coeffs.size()) - 1; j >= k; --j) {
        double fall = 1.0;
        for (int m = 0; m < k; ++m) fall *= j - m;
        v = v * r + coeffs[static_cast<size_t>(j)] * fall;
      }
      d[k] = v;
    }
    return Jet(r, std::move(d));
  };
  return RadialFunction(name.str(), eval);
}

RadialFunction make_zero() { return make_polynomial({0.0}); }

namespace {

double parse_number(const std::string& s, const std::string& context) {
  size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad number '" + s + "' in " + context);
  }
  if (pos != s.size())
    throw std::invalid_argument("bad number '" + s + "' in " + context);
  return v;
}

} // namespace

RadialFunction parse_radial_function(const std::string& id) {
  if (id == "zero") return make_zero();
  auto colon = id.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("bad radial function id '" + id +
                                "' (expect harmonic:mu=<v>, monomial:q=<v>, "
                                "poly:c0,c1,..., or zero)");
  const std::string family = id.substr(0, colon);
  const std::string args = id.substr(colon + 1);
  if (family == "harmonic") {
    if (args.rfind("mu=", 0) != 0)
      throw std::invalid_argument("harmonic expects mu=<v>, got '" + id + "'");
    return make_harmonic(parse_number(args.substr(3), id));
  }
  if (family == "monomial") {
    if (args.rfind("q=", 0) != 0)
      throw std::invalid_argument("monomial expects q=<v>, got '" + id + "'");
    return make_monomial(parse_number(args.substr(2), id));
  }
  if (family == "poly") {
    std::vector<double> coeffs;
    std::stringstream ss(args);
    std::string tok;
    while (std::getline(ss, tok, ','))
      coeffs.push_back(parse_number(tok, id));
    if (coeffs.empty())
      throw std::invalid_argument("poly needs at least one coefficient");
    return make_polynomial(std::move(coeffs));
  }
  throw std::invalid_argument("unknown radial function family '" + family + "'");
}

} // namespace coulstat
