#pragma once

// Lyapunov exponents, bifurcation diagrams, the period-doubling cascade and the
// mu = 4 invariant density.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "chaoscode/map_core.hpp"

namespace chaoscode {

/// |x - 1/2| below this makes ln|f'(x)| singular; such terms are clamped.
inline constexpr double kLnClampEpsilon = 1e-12;
/// More than this fraction of clamped terms marks a superstable orbit.
inline constexpr double kMaxClampedFraction = 0.01;

inline constexpr std::size_t kDefaultTransient = 300;
inline constexpr std::size_t kDefaultKeep = 1000;

struct LyapunovEstimate {
  double mu = 0.0;
  double x0 = 0.0;
  double lambda = 0.0;  // nats per iteration; -inf for superstable orbits
  std::size_t n_samples = 0;
  std::size_t n_transient = 0;
  std::size_t clamped_terms = 0;

  bool superstable() const;
};

/// Mean of ln|mu (1 - 2 x_i)| over n_samples post-transient states. Terms with
/// |x_i - 1/2| < kLnClampEpsilon contribute ln(eps * mu) and are counted; if
/// more than 1% are clamped, lambda is reported as -infinity.
LyapunovEstimate lyapunov(const MapParams& params, std::size_t n_transient,
                          std::size_t n_samples);

/// mu_start, mu_start + step, ... up to mu_end (inclusive within round-off).
std::vector<double> parameter_grid(double mu_start, double mu_end, double step);

/// One estimate per grid point, each from an x0 drawn out of the stream
/// derive_seed(seed, index). Output is independent of `jobs`.
std::vector<LyapunovEstimate> lyapunov_sweep(double mu_start, double mu_end,
                                             double step, std::size_t n_transient,
                                             std::size_t n_samples,
                                             std::uint64_t seed, unsigned jobs = 0);

struct BifurcationColumn {
  double mu = 0.0;
  std::vector<double> samples;
};

struct BifurcationDiagram {
  std::vector<BifurcationColumn> columns;  // mu strictly increasing
};

BifurcationDiagram bifurcation_diagram(double mu_start, double mu_end, double step,
                                       std::size_t n_transient, std::size_t n_keep,
                                       std::uint64_t seed, unsigned jobs = 0);

// Period-doubling cascade ---------------------------------------------------

struct CascadeOptions {
  double x0 = 0.3;
  // Iterations discarded before classifying. Convergence to a 2^(k-1) cycle
  // slows down as mu approaches mu_k from below, so the classification boundary
  // is biased low by roughly ln(1/period_tol) / n_transient.
  std::size_t n_transient = 2'000'000;
  double period_tol = 1e-8;
  // Search interval; the predicate "period is not a power of two <= 2^(k-1)"
  // is false at the lower end and true at the upper end for every k <= 7.
  double mu_lo = 2.9;
  double mu_hi = 3.57;
};

struct CascadeEstimate {
  std::vector<double> mu_k;     // onsets of period 2, 4, 8, ... (mu_1 .. mu_K)
  std::vector<double> delta_n;  // Feigenbaum ratios delta_2 .. delta_{K-1}
  double tol = 0.0;             // final bracket width bound
  // Cross-check: product of f'(x) around the stable 2^(k-1) cycle just below
  // each detected onset. Approaches -1 at a period-doubling.
  std::vector<double> multipliers;
};

/// Locates mu_1..mu_K by bisection on the period classification, refining each
/// bracket to width <= tol. Requires 2 <= K <= 7 and tol >= 1e-6. Throws
/// NumericalFailure if a final bracket's classification changes when the
/// transient is doubled.
CascadeEstimate find_cascade(std::size_t K, double tol, const CascadeOptions& opts = {});

/// delta_n = (mu_n - mu_{n-1}) / (mu_{n+1} - mu_n) for n = 2..K-1. Throws
/// NumericalFailure when two consecutive values are within `tol`.
std::vector<double> feigenbaum_ratios(std::span<const double> mu_k, double tol = 0.0);
std::vector<double> feigenbaum_ratios(const CascadeEstimate& cascade);

// Invariant density -----------------------------------------------------------

/// Arcsine law p(x) = 1 / (pi sqrt(x (1 - x))) and its CDF (2/pi) asin(sqrt x).
double arcsine_pdf(double x);
double arcsine_cdf(double x);

struct DensityHistogram {
  std::vector<double> bin_edges;           // n_bins + 1 edges, 0 .. 1
  std::vector<std::size_t> counts;         // n_bins
  std::vector<double> analytic_mass;       // exact CDF differences, sums to 1

  std::size_t n_bins() const { return counts.size(); }
  std::size_t sample_size() const;
};

/// Equal-width histogram of the orbit over [0, 1] with the arcsine mass of each
/// bin. Requires n_bins >= 10.
DensityHistogram invariant_density(const Orbit& orbit, std::size_t n_bins);

struct ChiSquareResult {
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
  double critical_value = 0.0;  // at the requested significance level
  bool passes() const { return statistic <= critical_value; }
};

/// Pearson chi-square of counts against n * analytic_mass, n_bins - 1 degrees
/// of freedom.
ChiSquareResult chi_square_fit(const DensityHistogram& hist, double alpha = 0.01);

}  // namespace chaoscode
