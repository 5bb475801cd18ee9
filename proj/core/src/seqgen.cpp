#include "chaoscode/seqgen.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <string>

#include "chaoscode/errors.hpp"

namespace chaoscode {

namespace {

// Index m - 3. Each entry is primitive over GF(2); m_sequence() verifies the
// period, and the unit tests run every entry through it.
constexpr std::array<std::array<unsigned, 4>, 8> kPrimitiveTable = {{
    {3, 1, 0, 0},
    {4, 1, 0, 0},
    {5, 2, 0, 0},
    {6, 1, 0, 0},
    {7, 1, 0, 0},
    {8, 4, 3, 2},
    {9, 4, 0, 0},
    {10, 3, 0, 0},
}};
constexpr std::array<std::size_t, 8> kPrimitiveTapCount = {2, 2, 2, 2, 2, 4, 2, 2};

void validate_lfsr(const LfsrConfig& cfg) {
  if (cfg.taps.empty()) throw DomainError("LFSR: no feedback taps");
  const unsigned m = cfg.taps.front();
  if (m < 2 || m > 31) throw DomainError("LFSR: degree must be in [2, 31]");
  for (std::size_t i = 1; i < cfg.taps.size(); ++i) {
    if (cfg.taps[i] == 0 || cfg.taps[i] >= cfg.taps[i - 1]) {
      throw DomainError("LFSR: taps must be strictly decreasing exponents in (0, m]");
    }
  }
  if (cfg.state == 0) throw DomainError("LFSR: register state must be nonzero");
  if (cfg.state >> m) throw DomainError("LFSR: state has bits above degree m");
}

std::string taps_text(const std::vector<unsigned>& taps) {
  std::string s = "[";
  for (std::size_t i = 0; i < taps.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(taps[i]);
  }
  return s + "]";
}

std::string pair_id_for(const LfsrConfig& a, const LfsrConfig& b) {
  return "m" + std::to_string(a.degree()) + ":" + taps_text(a.taps) + "+" + taps_text(b.taps);
}

BinarySequence binarize(const Orbit& o, ThresholdRule rule, double tau) {
  if (o.states.empty()) throw DomainError("binarize: empty orbit");
  BinarySequence seq;
  seq.bits.resize(o.states.size());
  std::transform(o.states.begin(), o.states.end(), seq.bits.begin(),
                 [tau](double x) { return static_cast<std::uint8_t>(x >= tau); });
  seq.provenance = ChaoticProvenance{o.params, o.n_transient, rule, tau};
  return seq;
}

}  // namespace

unsigned LfsrConfig::degree() const { return taps.empty() ? 0 : taps.front(); }

BinarySequence make_literal(std::vector<std::uint8_t> bits) {
  if (bits.empty()) throw DomainError("binary sequence must be non-empty");
  if (std::any_of(bits.begin(), bits.end(), [](std::uint8_t b) { return b > 1; })) {
    throw DomainError("binary sequence values must be 0 or 1");
  }
  return BinarySequence{std::move(bits), LiteralProvenance{}};
}

BinarySequence binarize_fixed(const Orbit& o) { return binarize(o, ThresholdRule::kFixed, 0.5); }

BinarySequence binarize_mean(const Orbit& o) {
  if (o.states.empty()) throw DomainError("binarize: empty orbit");
  // Plain left-to-right summation so tau is reproducible everywhere.
  double sum = 0.0;
  for (double x : o.states) sum += x;
  return binarize(o, ThresholdRule::kMean, sum / static_cast<double>(o.states.size()));
}

BinarySequence chaotic_sequence(const MapParams& params, std::size_t n_transient,
                                std::size_t length, ThresholdRule rule) {
  const auto o = orbit(params, n_transient, length);
  return rule == ThresholdRule::kFixed ? binarize_fixed(o) : binarize_mean(o);
}

double balance(const BinarySequence& seq) {
  if (seq.bits.empty()) throw DomainError("balance: empty sequence");
  const auto ones = static_cast<double>(std::count(seq.bits.begin(), seq.bits.end(), 1));
  const auto n = static_cast<double>(seq.bits.size());
  return (ones - (n - ones)) / n;
}

std::span<const unsigned> primitive_taps(unsigned m) {
  if (m < 3 || m > 10) throw DomainError("no shipped primitive polynomial for m = " + std::to_string(m));
  return std::span<const unsigned>(kPrimitiveTable[m - 3].data(), kPrimitiveTapCount[m - 3]);
}

LfsrConfig primitive_lfsr(unsigned m) {
  const auto taps = primitive_taps(m);
  return LfsrConfig{{taps.begin(), taps.end()}, 1u};
}

BinarySequence m_sequence(const LfsrConfig& cfg) {
  validate_lfsr(cfg);
  const unsigned m = cfg.degree();
  const std::uint64_t full_period = (std::uint64_t{1} << m) - 1;

  // Recurrence a[k+m] = XOR of a[k+t] over the lower taps and t = 0.
  std::uint32_t feedback_mask = 1u;
  for (std::size_t i = 1; i < cfg.taps.size(); ++i) feedback_mask |= 1u << cfg.taps[i];

  BinarySequence seq;
  seq.bits.reserve(full_period);
  std::uint32_t s = cfg.state;
  std::uint64_t period = 0;
  do {
    seq.bits.push_back(static_cast<std::uint8_t>(s & 1u));
    const auto next = static_cast<std::uint32_t>(std::popcount(s & feedback_mask) & 1);
    s = (s >> 1) | (next << (m - 1));
    ++period;
  } while (s != cfg.state && period <= full_period);

  if (period != full_period) {
    throw DomainError("LFSR " + taps_text(cfg.taps) + " is not maximal: period " +
                      std::to_string(period) + " instead of " + std::to_string(full_period));
  }
  seq.provenance = MseqProvenance{cfg};
  return seq;
}

GoldPair preferred_pair_m5() {
  GoldPair pair{"", LfsrConfig{{5, 2}, 1u}, LfsrConfig{{5, 4, 3, 2}, 1u}};
  pair.id = pair_id_for(pair.a, pair.b);
  return pair;
}

BinarySequence gold_sequence(const BinarySequence& a, const BinarySequence& b,
                             std::size_t shift) {
  if (a.size() != b.size() || a.bits.empty()) {
    throw DomainError("gold_sequence: parents must be non-empty and of equal length");
  }
  const std::size_t n = a.size();
  shift %= n;
  BinarySequence out;
  out.bits.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    out.bits[k] = a.bits[k] ^ b.bits[(k + shift) % n];
  }
  const auto* pa = std::get_if<MseqProvenance>(&a.provenance);
  const auto* pb = std::get_if<MseqProvenance>(&b.provenance);
  if (pa && pb) {
    out.provenance = GoldProvenance{pair_id_for(pa->lfsr, pb->lfsr), pa->lfsr, pb->lfsr, shift};
  }
  return out;
}

std::vector<BinarySequence> gold_family(const GoldPair& pair) {
  const auto a = m_sequence(pair.a);
  const auto b = m_sequence(pair.b);
  std::vector<BinarySequence> family;
  family.reserve(a.size() + 2);
  family.push_back(a);
  family.push_back(b);
  for (std::size_t s = 0; s < a.size(); ++s) family.push_back(gold_sequence(a, b, s));
  return family;
}

std::vector<int> bipolar(const BinarySequence& seq) {
  if (seq.bits.empty()) throw DomainError("bipolar: empty sequence");
  std::vector<int> out(seq.bits.size());
  std::transform(seq.bits.begin(), seq.bits.end(), out.begin(),
                 [](std::uint8_t b) { return b ? -1 : 1; });
  return out;
}

std::vector<std::uint8_t> from_bipolar(std::span<const int> chips) {
  std::vector<std::uint8_t> out(chips.size());
  for (std::size_t i = 0; i < chips.size(); ++i) {
    if (chips[i] != 1 && chips[i] != -1) throw DomainError("from_bipolar: values must be +/-1");
    out[i] = chips[i] < 0 ? 1 : 0;
  }
  return out;
}

BinarySequence regenerate(const Provenance& provenance, std::size_t length) {
  if (length == 0) throw DomainError("regenerate: length must be >= 1");
  auto check_length = [length](BinarySequence seq) {
    if (seq.size() != length) {
      throw DomainError("regenerate: provenance yields " + std::to_string(seq.size()) +
                        " bits, expected " + std::to_string(length));
    }
    return seq;
  };
  return std::visit(
      [&](const auto& p) -> BinarySequence {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ChaoticProvenance>) {
          return chaotic_sequence(p.params, p.n_transient, length, p.rule);
        } else if constexpr (std::is_same_v<T, MseqProvenance>) {
          return check_length(m_sequence(p.lfsr));
        } else if constexpr (std::is_same_v<T, GoldProvenance>) {
          return check_length(gold_sequence(m_sequence(p.a), m_sequence(p.b), p.shift));
        } else {
          throw DomainError("regenerate: literal sequences carry no generator");
        }
      },
      provenance);
}

std::string_view rule_name(ThresholdRule rule) {
  return rule == ThresholdRule::kFixed ? "fixed" : "mean";
}

ThresholdRule parse_rule(std::string_view name) {
  if (name == "fixed") return ThresholdRule::kFixed;
  if (name == "mean") return ThresholdRule::kMean;
  throw DomainError("unknown threshold rule '" + std::string(name) + "' (fixed|mean)");
}

}  // namespace chaoscode
