#pragma once

// Binary spreading codes: binarized logistic-map orbits plus the classical
// LFSR baselines (m-sequences and Gold codes).

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "chaoscode/map_core.hpp"

namespace chaoscode {

enum class ThresholdRule {
  kFixed,  // bit = x >= 0.5
  kMean,   // bit = x >= mean of the orbit
};

struct ChaoticProvenance {
  MapParams params;
  std::size_t n_transient = 0;
  ThresholdRule rule = ThresholdRule::kMean;
  double tau = 0.5;  // realized threshold
  bool operator==(const ChaoticProvenance&) const = default;
};

/// Fibonacci LFSR. `taps` are the exponents of the feedback polynomial other
/// than the constant term, highest first, e.g. {3, 1} for x^3 + x + 1. Bit i
/// of `state` is output bit a_i, so the first m outputs are the state itself.
struct LfsrConfig {
  std::vector<unsigned> taps;
  std::uint32_t state = 1;

  unsigned degree() const;
  bool operator==(const LfsrConfig&) const = default;
};

struct MseqProvenance {
  LfsrConfig lfsr;
  bool operator==(const MseqProvenance&) const = default;
};

struct GoldProvenance {
  std::string pair_id;
  LfsrConfig a;
  LfsrConfig b;
  std::size_t shift = 0;
  bool operator==(const GoldProvenance&) const = default;
};

// Bits given verbatim (test vectors, externally supplied codes). The bits are
// their own provenance.
struct LiteralProvenance {
  bool operator==(const LiteralProvenance&) const = default;
};

using Provenance =
    std::variant<ChaoticProvenance, MseqProvenance, GoldProvenance, LiteralProvenance>;

struct BinarySequence {
  std::vector<std::uint8_t> bits;  // each 0 or 1, non-empty
  Provenance provenance = LiteralProvenance{};

  std::size_t size() const { return bits.size(); }
  bool operator==(const BinarySequence&) const = default;
};

/// Wraps literal bits; throws DomainError on empty input or values other than 0/1.
BinarySequence make_literal(std::vector<std::uint8_t> bits);

BinarySequence binarize_fixed(const Orbit& orbit);
BinarySequence binarize_mean(const Orbit& orbit);

/// orbit(params, n_transient, length) binarized with `rule`.
BinarySequence chaotic_sequence(const MapParams& params, std::size_t n_transient,
                                std::size_t length, ThresholdRule rule);

/// (#ones - #zeros) / length.
double balance(const BinarySequence& seq);

/// Primitive feedback polynomials shipped for m = 3..10.
std::span<const unsigned> primitive_taps(unsigned m);

/// LFSR from the shipped table with the register initialised to a_0 = 1.
LfsrConfig primitive_lfsr(unsigned m);

/// One full period (2^m - 1 bits). Throws DomainError for a zero or
/// oversized state, malformed taps, or a non-maximal period (the message names
/// the achieved period).
BinarySequence m_sequence(const LfsrConfig& cfg);

struct GoldPair {
  std::string id;
  LfsrConfig a;
  LfsrConfig b;
};

/// x^5 + x^2 + 1 and x^5 + x^4 + x^3 + x^2 + 1; three-valued cross-correlation
/// {-1, -9, 7} / 31.
GoldPair preferred_pair_m5();

/// bit k = a[k] XOR b[(k + shift) mod N]. Throws DomainError on length mismatch.
BinarySequence gold_sequence(const BinarySequence& a, const BinarySequence& b,
                             std::size_t shift);

/// The N + 2 codes {a, b, a ^ T^s b for s = 0..N-1}.
std::vector<BinarySequence> gold_family(const GoldPair& pair);

/// 0 -> +1, 1 -> -1.
std::vector<int> bipolar(const BinarySequence& seq);
std::vector<std::uint8_t> from_bipolar(std::span<const int> chips);

/// Rebuilds a sequence of `length` bits from its provenance. Literal
/// provenance cannot be regenerated and throws DomainError.
BinarySequence regenerate(const Provenance& provenance, std::size_t length);

std::string_view rule_name(ThresholdRule rule);
ThresholdRule parse_rule(std::string_view name);

}  // namespace chaoscode
