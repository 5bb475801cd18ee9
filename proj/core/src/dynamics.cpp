#include "chaoscode/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "chaoscode/errors.hpp"
#include "chaoscode/random.hpp"
#include "parallel.hpp"

namespace chaoscode {

bool LyapunovEstimate::superstable() const {
  return std::isinf(lambda) && lambda < 0.0;
}

LyapunovEstimate lyapunov(const MapParams& params, std::size_t n_transient,
                          std::size_t n_samples) {
  validate_mu(params.mu);
  validate_x0(params.x0);
  if (n_samples < 100) throw DomainError("lyapunov: n_samples must be >= 100");

  const double mu = params.mu;
  double x = params.x0;
  for (std::size_t i = 0; i < n_transient; ++i) x = logistic(mu, x);

  const double clamp_term = std::log(kLnClampEpsilon * mu);
  double sum = 0.0;
  std::size_t clamped = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    if (std::abs(x - 0.5) < kLnClampEpsilon) {
      sum += clamp_term;
      ++clamped;
    } else {
      sum += std::log(std::abs(logistic_derivative(mu, x)));
    }
    x = logistic(mu, x);
  }

  LyapunovEstimate est;
  est.mu = mu;
  est.x0 = params.x0;
  est.n_samples = n_samples;
  est.n_transient = n_transient;
  est.clamped_terms = clamped;
  if (static_cast<double>(clamped) > kMaxClampedFraction * static_cast<double>(n_samples)) {
    est.lambda = -std::numeric_limits<double>::infinity();
  } else {
    est.lambda = sum / static_cast<double>(n_samples);
  }
  return est;
}

std::vector<double> parameter_grid(double mu_start, double mu_end, double step) {
  validate_mu(mu_start);
  validate_mu(mu_end);
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw DomainError("parameter grid: step must be finite and > 0");
  }
  if (mu_end < mu_start) throw DomainError("parameter grid: mu_end < mu_start");

  // The 1e-7 slack keeps e.g. (4 - 3) / 1e-4 from losing its last point to
  // round-off.
  const auto n = static_cast<std::size_t>(std::floor((mu_end - mu_start) / step + 1e-7));
  std::vector<double> grid(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    grid[i] = std::min(mu_start + static_cast<double>(i) * step, mu_end);
  }
  return grid;
}

std::vector<LyapunovEstimate> lyapunov_sweep(double mu_start, double mu_end,
                                             double step, std::size_t n_transient,
                                             std::size_t n_samples,
                                             std::uint64_t seed, unsigned jobs) {
  const auto grid = parameter_grid(mu_start, mu_end, step);
  std::vector<LyapunovEstimate> out(grid.size());
  detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    out[i] = lyapunov(MapParams{grid[i], random_x0(rng)}, n_transient, n_samples);
  });
  return out;
}

BifurcationDiagram bifurcation_diagram(double mu_start, double mu_end, double step,
                                       std::size_t n_transient, std::size_t n_keep,
                                       std::uint64_t seed, unsigned jobs) {
  const auto grid = parameter_grid(mu_start, mu_end, step);
  BifurcationDiagram diagram;
  diagram.columns.resize(grid.size());
  detail::parallel_for(grid.size(), jobs, [&](std::size_t i) {
    Rng rng(derive_seed(seed, i));
    auto o = orbit(MapParams{grid[i], random_x0(rng)}, n_transient, n_keep);
    diagram.columns[i] = BifurcationColumn{grid[i], std::move(o.states)};
  });
  return diagram;
}

// ---------------------------------------------------------------------------

namespace {

// Final `window` states after `n_transient` iterations, without materializing
// the transient.
std::vector<double> tail_states(double mu, double x0, std::size_t n_transient,
                                std::size_t window) {
  double x = x0;
  for (std::size_t i = 0; i < n_transient; ++i) x = logistic(mu, x);
  std::vector<double> tail(window);
  for (auto& v : tail) {
    v = x;
    x = logistic(mu, x);
  }
  return tail;
}

// True when the attractor at mu is not a cycle of period <= 2^(k-1), i.e. mu is
// at or past the k-th period doubling.
bool past_onset(double mu, std::size_t k, double x0, std::size_t n_transient,
                double period_tol) {
  const std::size_t max_period = std::size_t{1} << (k - 1);
  const auto tail = tail_states(mu, x0, n_transient, 2 * max_period);
  return !detect_period(tail, period_tol, max_period).periodic();
}

double cycle_multiplier(double mu, std::size_t period, double x0,
                        std::size_t n_transient) {
  const auto tail = tail_states(mu, x0, n_transient, period);
  double product = 1.0;
  for (double x : tail) product *= logistic_derivative(mu, x);
  return product;
}

std::string bracket_text(std::size_t k, double lo, double hi) {
  std::ostringstream os;
  os.precision(17);
  os << "mu_" << k << " bracket [" << lo << ", " << hi << "]";
  return os.str();
}

constexpr int kMaxTransientDoublings = 3;

}  // namespace

CascadeEstimate find_cascade(std::size_t K, double tol, const CascadeOptions& opts) {
  if (K < 2 || K > 7) throw DomainError("find_cascade: K must be in [2, 7]");
  if (!(tol >= 1e-6)) throw DomainError("find_cascade: tol must be >= 1e-6");
  validate_x0(opts.x0);
  validate_mu(opts.mu_lo);
  validate_mu(opts.mu_hi);

  CascadeEstimate est;
  est.tol = tol;
  double search_lo = opts.mu_lo;

  for (std::size_t k = 1; k <= K; ++k) {
    std::size_t n_transient = opts.n_transient;
    bool settled = false;
    double lo = search_lo;
    double hi = opts.mu_hi;

    for (int attempt = 0; attempt <= kMaxTransientDoublings && !settled; ++attempt) {
      auto classify = [&](double mu, std::size_t n) {
        return past_onset(mu, k, opts.x0, n, opts.period_tol);
      };
      lo = search_lo;
      hi = opts.mu_hi;
      if (classify(lo, n_transient) || !classify(hi, n_transient)) {
        throw NumericalFailure("find_cascade: initial " + bracket_text(k, lo, hi) +
                               " does not straddle the onset");
      }
      while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        (classify(mid, n_transient) ? hi : lo) = mid;
      }
      // Slow convergence just below an onset masquerades as the doubled cycle,
      // biasing the boundary low by O(1/n_transient). Accept the bracket only if
      // doubling the transient moves the boundary by less than tol.
      settled = !classify(lo, 2 * n_transient) &&
                classify(std::min(hi + tol, opts.mu_hi), 2 * n_transient);
      if (!settled) n_transient *= 2;
    }
    if (!settled) {
      throw NumericalFailure("find_cascade: period classification unstable in " +
                             bracket_text(k, lo, hi));
    }

    const double mu_k = 0.5 * (lo + hi);
    if (!est.mu_k.empty() && !(mu_k > est.mu_k.back())) {
      throw NumericalFailure("find_cascade: non-increasing onset at " +
                             bracket_text(k, lo, hi));
    }
    est.mu_k.push_back(mu_k);
    est.multipliers.push_back(
        cycle_multiplier(lo, std::size_t{1} << (k - 1), opts.x0, n_transient));
    search_lo = lo;
  }

  if (K >= 3) est.delta_n = feigenbaum_ratios(est.mu_k, tol);
  return est;
}

std::vector<double> feigenbaum_ratios(std::span<const double> mu_k, double tol) {
  if (mu_k.size() < 3) throw DomainError("feigenbaum_ratios: need at least 3 values");
  std::vector<double> out;
  out.reserve(mu_k.size() - 2);
  for (std::size_t n = 1; n + 1 < mu_k.size(); ++n) {
    const double below = mu_k[n] - mu_k[n - 1];
    const double above = mu_k[n + 1] - mu_k[n];
    if (std::abs(above) <= tol || above == 0.0) {
      throw NumericalFailure("feigenbaum_ratios: consecutive onsets " +
                             std::to_string(n + 1) + " and " + std::to_string(n + 2) +
                             " coincide within tolerance");
    }
    out.push_back(below / above);
  }
  return out;
}

std::vector<double> feigenbaum_ratios(const CascadeEstimate& cascade) {
  return feigenbaum_ratios(cascade.mu_k, cascade.tol);
}

// ---------------------------------------------------------------------------

double arcsine_pdf(double x) {
  if (!(x > 0.0 && x < 1.0)) return x == 0.0 || x == 1.0
                                        ? std::numeric_limits<double>::infinity()
                                        : 0.0;
  return 1.0 / (std::numbers::pi * std::sqrt(x * (1.0 - x)));
}

double arcsine_cdf(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return 2.0 / std::numbers::pi * std::asin(std::sqrt(x));
}

std::size_t DensityHistogram::sample_size() const {
  return std::accumulate(counts.begin(), counts.end(), std::size_t{0});
}

DensityHistogram invariant_density(const Orbit& o, std::size_t n_bins) {
  if (n_bins < 10) throw DomainError("invariant_density: n_bins must be >= 10");

  DensityHistogram h;
  h.bin_edges.resize(n_bins + 1);
  for (std::size_t i = 0; i <= n_bins; ++i) {
    h.bin_edges[i] = static_cast<double>(i) / static_cast<double>(n_bins);
  }
  h.counts.assign(n_bins, 0);
  for (double x : o.states) {
    auto bin = static_cast<std::size_t>(x * static_cast<double>(n_bins));
    ++h.counts[std::min(bin, n_bins - 1)];
  }
  h.analytic_mass.resize(n_bins);
  for (std::size_t i = 0; i < n_bins; ++i) {
    h.analytic_mass[i] = arcsine_cdf(h.bin_edges[i + 1]) - arcsine_cdf(h.bin_edges[i]);
  }
  return h;
}

ChiSquareResult chi_square_fit(const DensityHistogram& hist, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("chi_square_fit: alpha in (0,1)");
  const auto n = static_cast<double>(hist.sample_size());
  if (n == 0.0) throw DomainError("chi_square_fit: empty histogram");

  ChiSquareResult r;
  for (std::size_t i = 0; i < hist.n_bins(); ++i) {
    const double expected = n * hist.analytic_mass[i];
    const double diff = static_cast<double>(hist.counts[i]) - expected;
    r.statistic += diff * diff / expected;
  }
  r.dof = hist.n_bins() - 1;
  const boost::math::chi_squared dist(static_cast<double>(r.dof));
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  r.critical_value = boost::math::quantile(boost::math::complement(dist, alpha));
  return r;
}

}  // namespace chaoscode
