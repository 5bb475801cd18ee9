#pragma once

// Normalized auto- and cross-correlation of bipolar (0 -> +1, 1 -> -1) codes.
// Every value is an exact integer chip sum divided by N, so results do not
// depend on evaluation order.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "chaoscode/seqgen.hpp"

namespace chaoscode {

enum class CorrelationMode {
  kPeriodic,   // circular shifts, lags 0 .. N-1
  kAperiodic,  // zero-padded, lags -(N-1) .. N-1
};

struct CorrelationSeries {
  std::vector<long> lags;
  std::vector<double> values;
  CorrelationMode mode = CorrelationMode::kPeriodic;
  std::size_t normalization = 0;  // N

  /// Value at a lag; throws std::out_of_range for lags outside the series.
  double at(long lag) const;
};

/// Raw chip sums sum_k s_k t_{k+lag}, indexed like CorrelationSeries::lags.
std::vector<std::int64_t> correlation_sums(std::span<const std::uint8_t> a,
                                           std::span<const std::uint8_t> b,
                                           CorrelationMode mode);

/// Requires length >= 2.
CorrelationSeries autocorrelation(const BinarySequence& seq,
                                  CorrelationMode mode = CorrelationMode::kPeriodic);

/// Throws DomainError on a length mismatch.
CorrelationSeries crosscorrelation(const BinarySequence& a, const BinarySequence& b,
                                   CorrelationMode mode = CorrelationMode::kPeriodic);

/// Largest |R(lag)| over lag != 0.
double max_offpeak(const CorrelationSeries& autocorr);
double max_abs(const CorrelationSeries& series);

struct CorrelationSummary {
  double max_offpeak_auto = 0.0;
  double max_cross = 0.0;
  std::size_t family_size = 0;
  std::size_t length = 0;
};

/// Peak off-peak autocorrelation over every member and peak |cross| over every
/// unordered pair and lag. Requires >= 2 sequences of equal length.
CorrelationSummary correlation_summary(std::span<const BinarySequence> family,
                                       CorrelationMode mode = CorrelationMode::kPeriodic);

/// {"max_offpeak_auto", "max_cross", "family_size", "length"}.
std::string summary_to_json(const CorrelationSummary& summary);

std::string_view mode_name(CorrelationMode mode);
CorrelationMode parse_mode(std::string_view name);

}  // namespace chaoscode
