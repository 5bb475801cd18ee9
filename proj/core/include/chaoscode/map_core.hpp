#pragma once

// Logistic map x -> mu * x * (1 - x) on [0, 1] and its elementary diagnostics.

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace chaoscode {

/// Control parameter and seed. Construct through make(), which enforces
/// 0 < mu <= 4 and 0 < x0 < 1.
struct MapParams {
  double mu = 4.0;
  double x0 = 0.3;

  static MapParams make(double mu, double x0);
  bool operator==(const MapParams&) const = default;
};

/// Throws DomainError unless 0 < mu <= 4.
void validate_mu(double mu);

/// Throws DomainError unless 0 < x0 < 1.
void validate_x0(double x0);

/// Unchecked map evaluation; the single place the update expression lives so
/// every caller reproduces orbits bit-for-bit.
[[nodiscard]] inline double logistic(double mu, double x) noexcept {
  return mu * x * (1.0 - x);
}

/// f'(x) = mu * (1 - 2x).
[[nodiscard]] inline double logistic_derivative(double mu, double x) noexcept {
  return mu * (1.0 - 2.0 * x);
}

/// One checked iteration. Requires 0 < mu <= 4 and 0 <= x <= 1.
double step(double mu, double x);

struct Orbit {
  MapParams params;
  std::size_t n_transient = 0;
  std::vector<double> states;
  // The orbit reached exactly 0 and stays there (e.g. mu = 4, x = 0.5 -> 1 -> 0,
  // or underflow for mu < 1). Analyses that assume an invariant measure must
  // check this.
  bool absorbed = false;

  std::size_t size() const { return states.size(); }
};

/// Iterates n_transient + n_keep times from params.x0 and keeps the last
/// n_keep states. Requires n_keep >= 1.
Orbit orbit(const MapParams& params, std::size_t n_transient, std::size_t n_keep);

/// Re-derives every consecutive pair of a stored orbit and returns true when
/// states[k+1] == logistic(mu, states[k]) holds exactly.
bool is_self_consistent(const Orbit& orbit);

/// 0 for mu < 1, otherwise 1 - 1/mu. Stability is not implied: the point
/// repels for mu > 3.
double fixed_point(double mu);

struct PeriodReport {
  std::optional<std::size_t> period;  // empty when aperiodic
  std::vector<double> cycle_values;   // sorted ascending, `period` entries
  // Max |x[n+p] - x[n]| over the inspected window for the reported period, or
  // for the best candidate when aperiodic.
  double residual = 0.0;

  bool periodic() const { return period.has_value(); }
};

/// Smallest p <= max_period such that |x[n+p] - x[n]| <= tol for every pair
/// inside the final 2 * max_period states. Requires states.size() >=
/// 2 * max_period, tol > 0 and max_period >= 1.
PeriodReport detect_period(std::span<const double> states, double tol,
                           std::size_t max_period);
PeriodReport detect_period(const Orbit& orbit, double tol, std::size_t max_period);

/// sin^2(2^n asin(sqrt(x0))): the exact mu = 4 orbit via conjugacy to the
/// doubling map. Matches orbit() to ~1e-6 for n <= 20; past n ~ 45 the two
/// disagree completely because the double-precision orbit has lost every bit
/// of the seed.
double closed_form_mu4(double x0, std::size_t n);

/// |f^k(x0 + delta0) - f^k(x0)| for k = 0..n (n + 1 values).
std::vector<double> divergence_series(const MapParams& params, double delta0,
                                      std::size_t n);

}  // namespace chaoscode
