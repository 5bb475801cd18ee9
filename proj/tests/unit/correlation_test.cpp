#include "chaoscode/correlation.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include <json.hpp>

#include "../support/oracles.hpp"
#include "chaoscode/errors.hpp"
#include "chaoscode/random.hpp"

namespace chaoscode {
namespace {

// Off-peak threshold for 1000-bit mu = 4 mean-threshold codes. Calibrated over
// 100 seeds: median max |R| 0.104, p95 0.120, max 0.132 (cross-correlation of
// x0 vs x0 + 1e-6: median 0.108, max 0.132). The 0.12 value is the p95 level,
// so it bounds the median; single sequences are held to the observed max plus
// headroom.
constexpr double kChaoticOffpeakMedian = 0.12;
constexpr double kChaoticOffpeakCap = 0.15;

BinarySequence chaotic(double x0, std::size_t n) {
  return chaotic_sequence(MapParams{4.0, x0}, 0, n, ThresholdRule::kMean);
}

BinarySequence random_bits(Rng& rng, std::size_t n) {
  std::vector<std::uint8_t> bits(n);
  for (auto& b : bits) b = rng.bit();
  return make_literal(std::move(bits));
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

TEST(Autocorrelation, PeakIsExactlyOne) {
  Rng rng(4);
  for (std::size_t n : {2u, 3u, 63u, 64u, 65u, 1000u}) {
    const auto s = random_bits(rng, n);
    EXPECT_EQ(autocorrelation(s).at(0), 1.0);
    EXPECT_EQ(autocorrelation(s, CorrelationMode::kAperiodic).at(0), 1.0);
  }
  EXPECT_THROW(autocorrelation(make_literal({1})), DomainError);
}

TEST(Autocorrelation, MSequenceIsTwoValued) {
  const auto r = autocorrelation(m_sequence(primitive_lfsr(3)));
  ASSERT_EQ(r.lags.size(), 7u);
  EXPECT_EQ(r.values[0], 1.0);
  for (std::size_t k = 1; k < 7; ++k) EXPECT_EQ(r.values[k], -1.0 / 7.0) << k;
  EXPECT_EQ(r.normalization, 7u);
}

TEST(Autocorrelation, AperiodicLagLayout) {
  const auto r = autocorrelation(make_literal({0, 0, 1}), CorrelationMode::kAperiodic);
  EXPECT_EQ(r.lags, (std::vector<long>{-2, -1, 0, 1, 2}));
  // +1 +1 -1: lag 1 -> (1)(1) + (1)(-1) = 0, lag 2 -> (1)(-1) = -1.
  EXPECT_DOUBLE_EQ(r.at(1), 0.0);
  EXPECT_DOUBLE_EQ(r.at(2), -1.0 / 3.0);
  EXPECT_DOUBLE_EQ(r.at(-2), -1.0 / 3.0);
  EXPECT_THROW(r.at(3), std::out_of_range);
}

TEST(Autocorrelation, ChaoticOffPeakWithinCalibratedBound) {
  std::vector<double> peaks;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(derive_seed(1000, seed));
    const double p = max_offpeak(autocorrelation(chaotic(random_x0(rng), 1000)));
    EXPECT_LE(p, kChaoticOffpeakCap) << "seed " << seed;
    peaks.push_back(p);
  }
  EXPECT_LE(median(peaks), kChaoticOffpeakMedian);
}

TEST(Autocorrelation, PeriodicIsEvenInLag) {
  Rng rng(8);
  for (int t = 0; t < 50; ++t) {
    const auto s = random_bits(rng, 2 + static_cast<std::size_t>(rng.uniform(0, 200)));
    const auto r = autocorrelation(s);
    const std::size_t n = s.size();
    for (std::size_t k = 1; k < n; ++k) ASSERT_EQ(r.values[k], r.values[n - k]);
  }
}

TEST(Autocorrelation, LagSumEqualsSquaredChipSumExhaustively) {
  for (std::size_t n = 2; n <= 16; ++n) {
    for (std::uint32_t word = 0; word < (1u << n); ++word) {
      std::vector<std::uint8_t> bits(n);
      for (std::size_t i = 0; i < n; ++i) bits[i] = (word >> i) & 1u;
      const auto sums = correlation_sums(bits, bits, CorrelationMode::kPeriodic);
      const auto brute = oracle::periodic_sums(bits, bits);
      ASSERT_EQ(sums, brute);
      std::int64_t chip_sum = 0;
      for (auto b : bits) chip_sum += oracle::to_bipolar(b);
      ASSERT_EQ(std::accumulate(sums.begin(), sums.end(), std::int64_t{0}), chip_sum * chip_sum);
    }
  }
}

TEST(Correlation, MatchesBruteForceProperty) {
  Rng rng(2024);
  for (int t = 0; t < 1000; ++t) {
    const auto n = 1 + static_cast<std::size_t>(rng.next_u64() % 64);
    const auto a = random_bits(rng, n);
    const auto b = random_bits(rng, n);
    ASSERT_EQ(correlation_sums(a.bits, b.bits, CorrelationMode::kPeriodic),
              oracle::periodic_sums(a.bits, b.bits)) << "n=" << n;
    ASSERT_EQ(correlation_sums(a.bits, b.bits, CorrelationMode::kAperiodic),
              oracle::aperiodic_sums(a.bits, b.bits)) << "n=" << n;
  }
}

TEST(Correlation, LongInputsMatchBruteForce) {
  // Word-boundary and tail handling beyond a single 64-bit block.
  Rng rng(77);
  for (std::size_t n : {127u, 128u, 129u, 255u, 300u}) {
    const auto a = random_bits(rng, n);
    const auto b = random_bits(rng, n);
    EXPECT_EQ(correlation_sums(a.bits, b.bits, CorrelationMode::kPeriodic),
              oracle::periodic_sums(a.bits, b.bits));
    EXPECT_EQ(correlation_sums(a.bits, b.bits, CorrelationMode::kAperiodic),
              oracle::aperiodic_sums(a.bits, b.bits));
  }
}

TEST(Crosscorrelation, SelfAndNegation) {
  Rng rng(5);
  const auto a = random_bits(rng, 257);
  const auto self = crosscorrelation(a, a);
  const auto aa = autocorrelation(a);
  EXPECT_EQ(self.values, aa.values);
  EXPECT_EQ(self.lags, aa.lags);

  auto neg_bits = a.bits;
  for (auto& b : neg_bits) b ^= 1u;
  EXPECT_EQ(crosscorrelation(a, make_literal(neg_bits)).at(0), -1.0);

  EXPECT_THROW(crosscorrelation(a, random_bits(rng, 256)), DomainError);
}

TEST(Crosscorrelation, NearbyChaoticSeedsDecorrelate) {
  std::vector<double> peaks;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(derive_seed(2000, seed));
    const double x0 = random_x0(rng);
    const double p = max_abs(crosscorrelation(chaotic(x0, 1000), chaotic(x0 + 1e-6, 1000)));
    EXPECT_LE(p, kChaoticOffpeakCap) << "seed " << seed;
    peaks.push_back(p);
  }
  EXPECT_LE(median(peaks), kChaoticOffpeakMedian);
}

TEST(Crosscorrelation, OffPeakDecaysWithLength) {
  double previous = 1.0;
  for (std::size_t n : {256u, 1024u, 4096u}) {
    std::vector<double> peaks;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(derive_seed(n, seed));
      peaks.push_back(max_offpeak(autocorrelation(chaotic(random_x0(rng), n))));
    }
    const double m = median(peaks);
    EXPECT_LT(m, previous) << "N=" << n;
    previous = m;
  }
}

TEST(Summary, Examples) {
  Rng rng(9);
  const auto a = random_bits(rng, 100);
  const std::vector<BinarySequence> twins = {a, a};
  EXPECT_EQ(correlation_summary(twins).max_cross, 1.0);

  const auto gold = gold_family(preferred_pair_m5());
  const auto g = correlation_summary(gold);
  EXPECT_EQ(g.family_size, 33u);
  EXPECT_EQ(g.length, 31u);
  EXPECT_LE(g.max_cross, 9.0 / 31.0);

  std::vector<BinarySequence> family;
  for (int i = 0; i < 50; ++i) family.push_back(chaotic(random_x0(rng), 1000));
  const auto c = correlation_summary(family);
  EXPECT_EQ(c.family_size, 50u);
  EXPECT_GE(c.max_offpeak_auto, 0.0);
  EXPECT_LE(c.max_offpeak_auto, 1.0);
  EXPECT_GE(c.max_cross, 0.0);
  EXPECT_LE(c.max_cross, 1.0);

  EXPECT_THROW(correlation_summary(std::vector<BinarySequence>{a}), DomainError);
  const std::vector<BinarySequence> ragged = {a, random_bits(rng, 99)};
  EXPECT_THROW(correlation_summary(ragged), DomainError);
}

TEST(Summary, JsonFieldNames) {
  const auto j = nlohmann::json::parse(summary_to_json({0.25, 0.5, 3, 8}));
  EXPECT_EQ(j.at("max_offpeak_auto").get<double>(), 0.25);
  EXPECT_EQ(j.at("max_cross").get<double>(), 0.5);
  EXPECT_EQ(j.at("family_size").get<int>(), 3);
  EXPECT_EQ(j.at("length").get<int>(), 8);
}

TEST(Modes, NamesRoundTrip) {
  EXPECT_EQ(parse_mode(mode_name(CorrelationMode::kPeriodic)), CorrelationMode::kPeriodic);
  EXPECT_EQ(parse_mode(mode_name(CorrelationMode::kAperiodic)), CorrelationMode::kAperiodic);
  EXPECT_THROW(parse_mode("circular-ish"), DomainError);
}

}  // namespace
}  // namespace chaoscode
