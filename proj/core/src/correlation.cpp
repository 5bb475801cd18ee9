#include "chaoscode/correlation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "chaoscode/errors.hpp"

namespace chaoscode {

namespace {

// Bits packed little-endian into 64-bit words, with one spare zero word so
// unaligned 64-bit loads never run off the end.
class PackedBits {
 public:
  explicit PackedBits(std::span<const std::uint8_t> bits, std::size_t repeat = 1)
      : words_((bits.size() * repeat + 63) / 64 + 1, 0) {
    std::size_t pos = 0;
    for (std::size_t r = 0; r < repeat; ++r) {
      for (auto b : bits) {
        if (b) words_[pos / 64] |= std::uint64_t{1} << (pos % 64);
        ++pos;
      }
    }
  }

  std::uint64_t load(std::size_t bit) const {
    const std::size_t w = bit / 64;
    const unsigned off = bit % 64;
    if (off == 0) return words_[w];
    return (words_[w] >> off) | (words_[w + 1] << (64 - off));
  }

 private:
  std::vector<std::uint64_t> words_;
};

// Number of positions i < len where a[oa + i] != b[ob + i].
std::size_t mismatches(const PackedBits& a, std::size_t oa, const PackedBits& b,
                       std::size_t ob, std::size_t len) {
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 64 <= len; i += 64) count += std::popcount(a.load(oa + i) ^ b.load(ob + i));
  if (i < len) {
    const std::uint64_t mask = (std::uint64_t{1} << (len - i)) - 1;
    count += std::popcount((a.load(oa + i) ^ b.load(ob + i)) & mask);
  }
  return count;
}

CorrelationSeries make_series(std::span<const std::uint8_t> a,
                              std::span<const std::uint8_t> b, CorrelationMode mode) {
  const auto sums = correlation_sums(a, b, mode);
  CorrelationSeries out;
  out.mode = mode;
  out.normalization = a.size();
  const auto n = static_cast<long>(a.size());
  const long first = mode == CorrelationMode::kPeriodic ? 0 : -(n - 1);
  out.lags.resize(sums.size());
  out.values.resize(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    out.lags[i] = first + static_cast<long>(i);
    out.values[i] = static_cast<double>(sums[i]) / static_cast<double>(n);
  }
  return out;
}

}  // namespace

double CorrelationSeries::at(long lag) const {
  if (lags.empty() || lag < lags.front() || lag > lags.back()) {
    throw std::out_of_range("correlation lag out of range");
  }
  return values[static_cast<std::size_t>(lag - lags.front())];
}

std::vector<std::int64_t> correlation_sums(std::span<const std::uint8_t> a,
                                           std::span<const std::uint8_t> b,
                                           CorrelationMode mode) {
  if (a.size() != b.size()) throw DomainError("correlation: sequences differ in length");
  if (a.empty()) throw DomainError("correlation: empty sequence");
  const std::size_t n = a.size();
  const PackedBits pa(a);

  std::vector<std::int64_t> sums;
  if (mode == CorrelationMode::kPeriodic) {
    const PackedBits pb(b, 2);  // b followed by b covers every rotation
    sums.resize(n);
    for (std::size_t lag = 0; lag < n; ++lag) {
      sums[lag] = static_cast<std::int64_t>(n) -
                  2 * static_cast<std::int64_t>(mismatches(pa, 0, pb, lag, n));
    }
  } else {
    const PackedBits pb(b);
    sums.resize(2 * n - 1);
    for (std::size_t i = 0; i < sums.size(); ++i) {
      // lag = i - (n - 1); overlap pairs a[k] with b[k + lag].
      const bool negative = i < n - 1;
      const std::size_t shift = negative ? (n - 1 - i) : (i - (n - 1));
      const std::size_t len = n - shift;
      const std::size_t diff =
          negative ? mismatches(pa, shift, pb, 0, len) : mismatches(pa, 0, pb, shift, len);
      sums[i] = static_cast<std::int64_t>(len) - 2 * static_cast<std::int64_t>(diff);
    }
  }
  return sums;
}

CorrelationSeries autocorrelation(const BinarySequence& seq, CorrelationMode mode) {
  if (seq.size() < 2) throw DomainError("autocorrelation: length must be >= 2");
  return make_series(seq.bits, seq.bits, mode);
}

CorrelationSeries crosscorrelation(const BinarySequence& a, const BinarySequence& b,
                                   CorrelationMode mode) {
  if (a.size() != b.size()) throw DomainError("crosscorrelation: sequences differ in length");
  return make_series(a.bits, b.bits, mode);
}

double max_offpeak(const CorrelationSeries& autocorr) {
  double peak = 0.0;
  for (std::size_t i = 0; i < autocorr.lags.size(); ++i) {
    if (autocorr.lags[i] != 0) peak = std::max(peak, std::abs(autocorr.values[i]));
  }
  return peak;
}

double max_abs(const CorrelationSeries& series) {
  double peak = 0.0;
  for (double v : series.values) peak = std::max(peak, std::abs(v));
  return peak;
}

CorrelationSummary correlation_summary(std::span<const BinarySequence> family,
                                       CorrelationMode mode) {
  if (family.size() < 2) throw DomainError("correlation_summary: need at least 2 sequences");
  const std::size_t n = family.front().size();
  for (const auto& s : family) {
    if (s.size() != n) throw DomainError("correlation_summary: sequences differ in length");
  }

  CorrelationSummary summary;
  summary.family_size = family.size();
  summary.length = n;
  for (std::size_t i = 0; i < family.size(); ++i) {
    summary.max_offpeak_auto =
        std::max(summary.max_offpeak_auto, max_offpeak(autocorrelation(family[i], mode)));
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      summary.max_cross =
          std::max(summary.max_cross, max_abs(crosscorrelation(family[i], family[j], mode)));
    }
  }
  return summary;
}

std::string summary_to_json(const CorrelationSummary& s) {
  nlohmann::ordered_json j;
  j["max_offpeak_auto"] = s.max_offpeak_auto;
  j["max_cross"] = s.max_cross;
  j["family_size"] = s.family_size;
  j["length"] = s.length;
  return j.dump();
}

std::string_view mode_name(CorrelationMode mode) {
  return mode == CorrelationMode::kPeriodic ? "periodic" : "aperiodic";
}

CorrelationMode parse_mode(std::string_view name) {
  if (name == "periodic") return CorrelationMode::kPeriodic;
  if (name == "aperiodic") return CorrelationMode::kAperiodic;
  throw DomainError("unknown correlation mode '" + std::string(name) + "'");
}

}  // namespace chaoscode
