#include "ptc/controller.hpp"

#include <cmath>
#include <sstream>

#include "ptc/combinatorics.hpp"
#include "ptc/error.hpp"

namespace ptc {

std::string_view to_string(StabilityMode mode) {
  return mode == StabilityMode::stable ? "stable" : "attractive";
}

namespace {

double factorial(std::size_t n) {
  double f = 1.0;
  for (std::size_t k = 2; k <= n; ++k) f *= static_cast<double>(k);
  return f;
}

}  // namespace

AlphaSelection select_alpha(const LyapunovSolution& lyap, std::size_t n, double tau, double phi, double phi0) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be positive");
  if (n == 0) throw ParameterError("order must be positive");
  if (!(phi >= 0.0) || !(phi0 >= 0.0)) throw ParameterError("phi and phi0 must be non-negative");
  const double lmin = lyap.lambda_min;
  const double lmax = lyap.lambda_max;
  if (!(lmin > 0.0) || !(lmax >= lmin)) throw InfeasibleDesign("Lyapunov solution P is not positive definite");

  const double nf = factorial(n);
  const double dn = static_cast<double>(n);

  AlphaSelection out;
  out.bound_attractive = std::min(lmin / (dn * lmax * lmin + nf * lmax * lmax), 1.0 / tau);
  const double attractive_alpha = out.bound_attractive * (1.0 - kAlphaStrictness);
  if (phi0 == 0.0) {
    out.bound_stable = lmin / (lmin + nf * lmax * lmax * (tau * phi + 1.0));
    out.alpha = std::min(attractive_alpha, *out.bound_stable);
    out.mode = StabilityMode::stable;
  } else {
    out.alpha = attractive_alpha;
    out.mode = StabilityMode::attractive;
  }
  return out;
}

ControllerDesign design_controller(const DesignRequest& request) {
  if (request.c.empty()) throw ParameterError("coefficient vector c is empty");
  if (request.c.size() > kMaxCombinatoricsOrder) throw CapacityError("controller order above capacity");
  if (!(request.tau > 0.0) || !std::isfinite(request.tau)) throw ParameterError("tau must be positive");
  if (!(request.gamma_min > 0.0)) throw ParameterError("gamma_min must be positive");
  if (!(request.epsilon_fraction > 0.0 && request.epsilon_fraction < 1.0))
    throw ParameterError("epsilon_fraction must lie in (0, 1)");

  ControllerDesign d;
  d.n = request.c.size();
  d.c = request.c;
  d.tau = request.tau;
  d.gamma_min = request.gamma_min;
  d.phi = request.phi;
  d.phi0 = request.phi0;
  d.epsilon_fraction = request.epsilon_fraction;
  d.lyap = solve_lyapunov(CompanionMatrix(request.c));

  const AlphaSelection sel = select_alpha(d.lyap, d.n, d.tau, d.phi, d.phi0);
  d.bound_attractive = sel.bound_attractive;
  d.bound_stable = sel.bound_stable;
  if (request.alpha) {
    const double a = *request.alpha;
    if (!(a > 0.0) || !std::isfinite(a)) throw ParameterError("alpha must be positive");
    if (!(a < sel.bound_attractive)) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "alpha = " << a << " violates the attractivity bound alpha < " << sel.bound_attractive;
      throw InfeasibleDesign(msg.str());
    }
    d.alpha = a;
    d.mode = (sel.bound_stable && a <= *sel.bound_stable) ? StabilityMode::stable : StabilityMode::attractive;
  } else {
    d.alpha = sel.alpha;
    d.mode = sel.mode;
  }
  return d;
}

double StateGain::coefficient(std::span<const double> c, double alpha) const {
  double acc = 0.0;
  for (const auto& term : terms) {
    double v = static_cast<double>(term.multiplier);
    if (term.c_index > 0) v *= c[term.c_index - 1];
    acc += v / std::pow(alpha, term.alpha_power);
  }
  return acc;
}

namespace {

std::string format_power(std::string_view base, int power) {
  std::string s(base);
  if (power != 1) s += "^" + std::to_string(power);
  return s;
}

std::string format_term_body(const GainTerm& term) {
  const std::int64_t mag = term.multiplier < 0 ? -term.multiplier : term.multiplier;
  std::string body;
  if (term.c_index == 0) return std::to_string(mag);
  if (mag != 1) body = std::to_string(mag) + "*";
  body += "c" + std::to_string(term.c_index);
  if (term.alpha_power > 0) body += "/" + format_power("alpha", term.alpha_power);
  return body;
}

}  // namespace

std::string StateGain::to_string() const {
  std::string out = "p" + std::to_string(state) + " = ";
  const std::string tail = format_power("(tau-t)", tau_power);
  if (terms.size() == 1 && terms[0].c_index > 0) {
    const GainTerm& t = terms[0];
    const std::int64_t mag = t.multiplier < 0 ? -t.multiplier : t.multiplier;
    if (t.multiplier < 0) out += "-";
    if (mag != 1) out += std::to_string(mag) + "*";
    out += "c" + std::to_string(t.c_index) + "/(";
    if (t.alpha_power > 0) out += format_power("alpha", t.alpha_power) + "*";
    out += tail + ")";
    return out;
  }
  std::string numerator;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const bool negative = terms[k].multiplier < 0;
    if (k == 0) numerator += negative ? "-" : "";
    else numerator += negative ? " - " : " + ";
    numerator += format_term_body(terms[k]);
  }
  out += "(" + numerator + ")/" + tail;
  return out;
}

std::vector<StateGain> symbolic_gains(std::size_t n) {
  if (n == 0 || n > kMaxCombinatoricsOrder) throw ParameterError("order must lie in [1, 20]");
  const auto& table = CombinatoricsTable::shared();
  std::vector<StateGain> rows(n);
  for (std::size_t i = 1; i <= n; ++i) {
    StateGain& row = rows[i - 1];
    row.state = i;
    row.tau_power = static_cast<int>(n - i + 1);
    // c-terms: {j-1, i-1} c_j / alpha^(n-j+1) (-1)^(j-i)
    for (std::size_t j = i; j <= n; ++j) {
      const std::int64_t s = to_int64(table.stirling_second(j - 1, i - 1));
      if (s == 0) continue;
      GainTerm term;
      term.multiplier = ((j - i) % 2 == 0) ? s : -s;
      term.c_index = j;
      term.alpha_power = static_cast<int>(n - j + 1);
      row.terms.push_back(term);
    }
    // constant: -{n, i-1} (-1)^(n-i+1), for i >= 2
    if (i >= 2) {
      const std::int64_t s = to_int64(table.stirling_second(n, i - 1));
      if (s != 0) {
        GainTerm term;
        term.multiplier = ((n - i + 1) % 2 == 0) ? -s : s;
        term.c_index = 0;
        term.alpha_power = 0;
        row.terms.push_back(term);
      }
    }
  }
  return rows;
}

GainSchedule::GainSchedule(const ControllerDesign& design)
    : rows_(symbolic_gains(design.n)), numerators_(design.n), tau_(design.tau) {
  if (design.c.size() != design.n) throw ShapeError("design coefficient vector does not match its order");
  for (std::size_t i = 0; i < rows_.size(); ++i) numerators_[i] = rows_[i].coefficient(design.c, design.alpha);
}

void GainSchedule::gains_at(double t, std::span<double> out) const {
  if (out.size() != rows_.size()) throw ShapeError("gain output size mismatch");
  const double r = tau_ - t;
  const double inv = 1.0 / r;
  // p_n carries (tau-t)^-1, p_1 carries (tau-t)^-n.
  double scale = inv;
  for (std::size_t k = rows_.size(); k-- > 0;) {
    out[k] = numerators_[k] * scale;
    scale *= inv;
  }
}

std::vector<double> GainSchedule::gains_at(double t) const {
  std::vector<double> p(rows_.size());
  gains_at(t, p);
  return p;
}

double GainSchedule::pi(std::span<const double> x, double t) const {
  if (x.size() != rows_.size()) throw ShapeError("state dimension does not match the controller order");
  const double inv = 1.0 / (tau_ - t);
  double scale = inv;
  double acc = 0.0;
  for (std::size_t k = rows_.size(); k-- > 0;) {
    acc += numerators_[k] * scale * x[k];
    scale *= inv;
  }
  return acc;
}

GainSchedule build_gain_schedule(const ControllerDesign& design) { return GainSchedule(design); }

double control_input(const ControllerDesign& design, const GainSchedule& schedule, std::span<const double> x,
                     double t, double g_t) {
  if (x.size() != design.n) throw ShapeError("state dimension does not match the controller order");
  if (t > design.guard_time() + 1e-12 * design.tau)
    throw SingularityError("control requested inside the guard band before tau");
  if (g_t == 0.0 || !std::isfinite(g_t)) throw InvalidPlant("input gain g(t) must be finite and nonzero");
  return schedule.pi(x, t) / (design.gamma_min * g_t);
}

}  // namespace ptc
