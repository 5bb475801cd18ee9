#include "chaoscode/seqgen.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "../support/oracles.hpp"
#include "chaoscode/correlation.hpp"
#include "chaoscode/errors.hpp"
#include "chaoscode/random.hpp"

namespace chaoscode {
namespace {

Orbit literal_orbit(std::vector<double> states) {
  Orbit o;
  o.params = MapParams{4.0, 0.3};
  o.states = std::move(states);
  return o;
}

TEST(BinarizeFixed, ThresholdAtOneHalf) {
  const auto o = orbit(MapParams::make(4.0, 0.3), 0, 3);  // 0.3, 0.84, 0.5376
  EXPECT_NEAR(o.states[2], 0.5376, 1e-12);
  const auto s = binarize_fixed(o);
  EXPECT_EQ(s.bits, (std::vector<std::uint8_t>{0, 1, 1}));
  const auto& prov = std::get<ChaoticProvenance>(s.provenance);
  EXPECT_EQ(prov.rule, ThresholdRule::kFixed);
  EXPECT_EQ(prov.tau, 0.5);

  EXPECT_EQ(binarize_fixed(literal_orbit({0.6, 0.6, 0.6})).bits,
            (std::vector<std::uint8_t>{1, 1, 1}));
  // Ties go to 1.
  EXPECT_EQ(binarize_fixed(literal_orbit({0.5})).bits, (std::vector<std::uint8_t>{1}));
}

TEST(BinarizeFixed, PeriodTwoAttractorIsUnbalanced) {
  const auto s = binarize_fixed(orbit(MapParams::make(3.2, 0.3), 1000, 100));
  EXPECT_TRUE(std::all_of(s.bits.begin(), s.bits.end(), [](auto b) { return b == 1; }));
  EXPECT_EQ(balance(s), 1.0);
}

TEST(BinarizeMean, ThresholdAtRealizedMean) {
  const auto s = binarize_mean(literal_orbit({0.2, 0.4, 0.9}));
  EXPECT_EQ(s.bits, (std::vector<std::uint8_t>{0, 0, 1}));
  EXPECT_NEAR(std::get<ChaoticProvenance>(s.provenance).tau, 0.5, 1e-15);
}

TEST(BinarizeMean, PeriodTwoAttractorAlternates) {
  const auto o = orbit(MapParams::make(3.2, 0.3), 1000, 100);
  const auto s = binarize_mean(o);
  const double tau = std::get<ChaoticProvenance>(s.provenance).tau;
  EXPECT_NEAR(tau, 0.656, 1e-3);
  for (std::size_t k = 1; k < s.size(); ++k) EXPECT_NE(s.bits[k], s.bits[k - 1]);
  EXPECT_EQ(balance(s), 0.0);
}

TEST(BinarizeMean, MoreBalancedThanFixedThreshold) {
  double fixed = 0.0, mean = 0.0, worst_mean = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(derive_seed(99, seed));
    const auto o = orbit(MapParams{4.0, random_x0(rng)}, 300, 10000);
    fixed += std::abs(balance(binarize_fixed(o)));
    const double b = std::abs(balance(binarize_mean(o)));
    mean += b;
    worst_mean = std::max(worst_mean, b);
  }
  EXPECT_LT(mean, fixed);
  EXPECT_LE(mean / 100.0, 0.01);
  EXPECT_LE(worst_mean, 0.05);
}

TEST(Balance, Examples) {
  EXPECT_EQ(balance(make_literal({0, 1, 0, 1})), 0.0);
  EXPECT_EQ(balance(make_literal({1, 1, 1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(balance(make_literal({1, 1, 0})), 1.0 / 3.0);
  EXPECT_THROW(make_literal({}), DomainError);
  EXPECT_THROW(make_literal({0, 2}), DomainError);
}

TEST(ChaoticSequence, ProvenanceRegeneratesBits) {
  Rng rng(6);
  for (int i = 0; i < 20; ++i) {
    const auto rule = i % 2 ? ThresholdRule::kFixed : ThresholdRule::kMean;
    const auto s = chaotic_sequence(MapParams{3.6 + 0.4 * rng.uniform(), random_x0(rng)}, 300,
                                    2000, rule);
    EXPECT_EQ(regenerate(s.provenance, s.size()), s);
  }
}

TEST(ChaoticSequence, NearbySeedsGiveDistinctCodes) {
  std::size_t collisions = 0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    Rng rng(derive_seed(555, t));
    const double x0 = random_x0(rng);
    const auto a = chaotic_sequence(MapParams{4.0, x0}, 0, 1000, ThresholdRule::kMean);
    const auto b = chaotic_sequence(MapParams{4.0, x0 + 1e-9}, 0, 1000, ThresholdRule::kMean);
    collisions += a.bits == b.bits;
  }
  EXPECT_EQ(collisions, 0u);
}

TEST(MSequence, DegreeThreeExample) {
  const auto s = m_sequence(LfsrConfig{{3, 1}, 0b100});  // register "001"
  ASSERT_EQ(s.size(), 7u);
  EXPECT_EQ(std::count(s.bits.begin(), s.bits.end(), 1), 4);
  const auto windows = oracle::cyclic_windows(s.bits, 3);
  EXPECT_EQ(windows.size(), 7u);
  for (unsigned w = 1; w < 8; ++w) EXPECT_EQ(windows.count(w), 1u) << w;
  EXPECT_EQ(windows.count(0), 0u);
}

TEST(MSequence, ShippedTableIsMaximal) {
  for (unsigned m = 3; m <= 10; ++m) {
    const auto s = m_sequence(primitive_lfsr(m));
    const std::size_t n = (std::size_t{1} << m) - 1;
    ASSERT_EQ(s.size(), n) << "m=" << m;
    EXPECT_EQ(static_cast<std::size_t>(std::count(s.bits.begin(), s.bits.end(), 1)), n / 2 + 1);
    const auto windows = oracle::cyclic_windows(s.bits, m);
    EXPECT_EQ(std::set<unsigned>(windows.begin(), windows.end()).size(), n) << "m=" << m;
    EXPECT_EQ(windows.count(0), 0u);
  }
  EXPECT_THROW(primitive_taps(2), DomainError);
  EXPECT_THROW(primitive_taps(11), DomainError);
}

TEST(MSequence, Errors) {
  EXPECT_THROW(m_sequence(LfsrConfig{{3, 1}, 0}), DomainError);
  EXPECT_THROW(m_sequence(LfsrConfig{{3, 1}, 0b1000}), DomainError);
  EXPECT_THROW(m_sequence(LfsrConfig{{}, 1}), DomainError);
  EXPECT_THROW(m_sequence(LfsrConfig{{3, 3}, 1}), DomainError);
  // x^4 + x^2 + 1 = (x^2 + x + 1)^2 is not primitive.
  try {
    m_sequence(LfsrConfig{{4, 2}, 1});
    FAIL() << "expected DomainError";
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("period 6"), std::string::npos) << e.what();
  }
}

TEST(MSequence, ShiftAndAddProperty) {
  for (unsigned m = 3; m <= 5; ++m) {
    const auto s = m_sequence(primitive_lfsr(m));
    const std::size_t n = s.size();
    std::vector<std::vector<std::uint8_t>> shifts(n);
    for (std::size_t t = 0; t < n; ++t) {
      shifts[t].resize(n);
      for (std::size_t k = 0; k < n; ++k) shifts[t][k] = s.bits[(k + t) % n];
    }
    for (std::size_t t = 1; t < n; ++t) {
      std::vector<std::uint8_t> sum(n);
      for (std::size_t k = 0; k < n; ++k) sum[k] = s.bits[k] ^ shifts[t][k];
      EXPECT_NE(std::find(shifts.begin(), shifts.end(), sum), shifts.end())
          << "m=" << m << " shift=" << t;
    }
  }
}

TEST(GoldSequence, FamilyIsDistinctAndBounded) {
  const auto pair = preferred_pair_m5();
  const auto family = gold_family(pair);
  ASSERT_EQ(family.size(), 33u);
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      EXPECT_NE(family[i].bits, family[j].bits) << i << "," << j;
    }
  }
  // Exhaustive cross-correlation in chip units.
  std::int64_t worst = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      for (auto v : oracle::periodic_sums(family[i].bits, family[j].bits)) {
        worst = std::max<std::int64_t>(worst, std::abs(v));
      }
    }
  }
  EXPECT_LE(worst, 9);
}

TEST(GoldSequence, DefinitionAndProvenance) {
  const auto pair = preferred_pair_m5();
  const auto a = m_sequence(pair.a);
  const auto b = m_sequence(pair.b);
  const auto g = gold_sequence(a, b, 7);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(g.bits[k], a.bits[k] ^ b.bits[(k + 7) % 31]);
  const auto& prov = std::get<GoldProvenance>(g.provenance);
  EXPECT_EQ(prov.pair_id, pair.id);
  EXPECT_EQ(prov.shift, 7u);
  EXPECT_EQ(regenerate(g.provenance, 31), g);

  const auto self = gold_sequence(a, a, 0);
  EXPECT_TRUE(std::all_of(self.bits.begin(), self.bits.end(), [](auto v) { return v == 0; }));

  EXPECT_THROW(gold_sequence(a, m_sequence(primitive_lfsr(4)), 0), DomainError);
}

TEST(Bipolar, Convention) {
  EXPECT_EQ(bipolar(make_literal({0, 1})), (std::vector<int>{1, -1}));
  EXPECT_EQ(bipolar(make_literal({0, 0, 0})), (std::vector<int>{1, 1, 1}));
  const std::vector<int> chips = {1, -1, -1, 1};
  EXPECT_EQ(bipolar(make_literal(from_bipolar(chips))), chips);
  EXPECT_THROW(from_bipolar(std::vector<int>{0}), DomainError);
}

TEST(Regenerate, LiteralHasNoGenerator) {
  EXPECT_THROW(regenerate(LiteralProvenance{}, 4), DomainError);
  EXPECT_THROW(regenerate(MseqProvenance{primitive_lfsr(3)}, 8), DomainError);
}

TEST(Rules, NamesRoundTrip) {
  EXPECT_EQ(parse_rule(rule_name(ThresholdRule::kFixed)), ThresholdRule::kFixed);
  EXPECT_EQ(parse_rule(rule_name(ThresholdRule::kMean)), ThresholdRule::kMean);
  EXPECT_THROW(parse_rule("median"), DomainError);
}

}  // namespace
}  // namespace chaoscode
