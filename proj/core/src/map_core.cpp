#include "chaoscode/map_core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "chaoscode/errors.hpp"

namespace chaoscode {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void validate_mu(double mu) {
  if (!(mu > 0.0 && mu <= 4.0)) {
    throw DomainError("mu must lie in (0, 4], got " + fmt(mu));
  }
}

void validate_x0(double x0) {
  if (!(x0 > 0.0 && x0 < 1.0)) {
    throw DomainError("x0 must lie in the open interval (0, 1), got " + fmt(x0));
  }
}

MapParams MapParams::make(double mu, double x0) {
  validate_mu(mu);
  validate_x0(x0);
  return MapParams{mu, x0};
}

double step(double mu, double x) {
  validate_mu(mu);
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("state must lie in [0, 1], got " + fmt(x));
  }
  return logistic(mu, x);
}

Orbit orbit(const MapParams& params, std::size_t n_transient, std::size_t n_keep) {
  validate_mu(params.mu);
  validate_x0(params.x0);
  if (n_keep == 0) throw DomainError("orbit: n_keep must be >= 1");

  const double mu = params.mu;
  double x = params.x0;
  for (std::size_t i = 0; i < n_transient; ++i) x = logistic(mu, x);

  Orbit out;
  out.params = params;
  out.n_transient = n_transient;
  out.states.resize(n_keep);
  // The first kept state is the iterate after the transient (x0 itself when
  // n_transient == 0).
  out.states[0] = x;
  for (std::size_t i = 1; i < n_keep; ++i) {
    x = logistic(mu, x);
    out.states[i] = x;
  }
  out.absorbed = (x == 0.0);
  return out;
}

bool is_self_consistent(const Orbit& o) {
  for (std::size_t k = 0; k + 1 < o.states.size(); ++k) {
    if (logistic(o.params.mu, o.states[k]) != o.states[k + 1]) return false;
  }
  return true;
}

double fixed_point(double mu) {
  validate_mu(mu);
  return mu < 1.0 ? 0.0 : 1.0 - 1.0 / mu;
}

PeriodReport detect_period(std::span<const double> states, double tol,
                           std::size_t max_period) {
  if (!(tol > 0.0)) throw DomainError("detect_period: tol must be > 0");
  if (max_period == 0) throw DomainError("detect_period: max_period must be >= 1");
  const std::size_t window = 2 * max_period;
  if (states.size() < window) {
    throw DomainError("detect_period: orbit has " + std::to_string(states.size()) +
                      " states, need at least " + std::to_string(window));
  }
  const auto tail = states.subspan(states.size() - window);

  PeriodReport report;
  report.residual = std::numeric_limits<double>::infinity();
  for (std::size_t p = 1; p <= max_period; ++p) {
    double worst = 0.0;
    for (std::size_t n = 0; n + p < window; ++n) {
      worst = std::max(worst, std::abs(tail[n + p] - tail[n]));
      if (worst > tol && worst >= report.residual) break;
    }
    if (worst <= tol) {
      report.period = p;
      report.residual = worst;
      report.cycle_values.assign(tail.end() - static_cast<std::ptrdiff_t>(p), tail.end());
      std::sort(report.cycle_values.begin(), report.cycle_values.end());
      return report;
    }
    report.residual = std::min(report.residual, worst);
  }
  return report;
}

PeriodReport detect_period(const Orbit& o, double tol, std::size_t max_period) {
  return detect_period(std::span<const double>(o.states), tol, max_period);
}

double closed_form_mu4(double x0, std::size_t n) {
  validate_x0(x0);
  const double theta = std::asin(std::sqrt(x0));
  const double s = std::sin(std::ldexp(theta, static_cast<int>(n)));
  return s * s;
}

std::vector<double> divergence_series(const MapParams& params, double delta0,
                                      std::size_t n) {
  validate_mu(params.mu);
  validate_x0(params.x0);
  if (!(delta0 >= 0.0) || !(params.x0 + delta0 < 1.0)) {
    throw DomainError("divergence_series: need delta0 >= 0 and x0 + delta0 < 1");
  }
  std::vector<double> out(n + 1);
  double a = params.x0;
  double b = params.x0 + delta0;
  out[0] = std::abs(b - a);
  for (std::size_t k = 1; k <= n; ++k) {
    a = logistic(params.mu, a);
    b = logistic(params.mu, b);
    out[k] = std::abs(b - a);
  }
  return out;
}

}  // namespace chaoscode
