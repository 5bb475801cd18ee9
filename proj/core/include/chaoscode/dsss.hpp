#pragma once

// Baseband, chip-synchronous DS-SS link with BPSK data, AWGN and optional
// co-channel users, for measuring BER with a given family of spreading codes.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "chaoscode/seqgen.hpp"

namespace chaoscode {

/// Recorded in run metadata; changing any part changes every noisy output.
inline constexpr std::string_view kNoiseGenerator =
    "std::mt19937_64 seeded via splitmix64(seed, point, block); "
    "boost::random::normal_distribution (ziggurat)";

/// Each data bit (0 -> +1, 1 -> -1) multiplies one full period of the bipolar
/// code. Output length is data_bits.size() * code.size().
std::vector<double> spread(std::span<const std::uint8_t> data_bits, const BinarySequence& code);

/// Per-bit correlator against the bipolar code: positive -> 0, negative -> 1,
/// an exact zero -> 0. Throws DomainError unless chips.size() is a multiple of
/// the code length.
std::vector<std::uint8_t> despread(std::span<const double> chips, const BinarySequence& code);

/// Per-chip noise standard deviation for unit-amplitude chips:
/// sigma^2 = SF / (2 * 10^(ebn0_db / 10)). Zero for ebn0_db = +inf.
double awgn_sigma(double ebn0_db, std::size_t spreading_factor);

/// chips + N(0, sigma^2) per chip, deterministic in noise_seed. ebn0_db = +inf
/// returns the input unchanged; NaN and -inf are rejected.
std::vector<double> awgn(std::span<const double> chips, double ebn0_db,
                         std::size_t spreading_factor, std::uint64_t noise_seed);

struct LinkConfig {
  std::size_t spreading_factor = 0;
  std::vector<BinarySequence> code_family;  // user 0 is the one measured
  std::vector<double> ebn0_db;
  std::size_t n_bits = 0;
  std::uint64_t noise_seed = 0;

  /// Throws DomainError on empty families/grids, codes whose length differs
  /// from the spreading factor, or non-admissible Eb/N0 values.
  void validate() const;
};

struct BerPoint {
  double ebn0_db = 0.0;
  std::size_t errors = 0;
  std::size_t bits = 0;
  double ber = 0.0;

  bool operator==(const BerPoint&) const = default;
};

/// For every Eb/N0: random data per user, spread with that user's code, sum,
/// add AWGN, despread user 0 and count errors. Point i draws everything from
/// derive_seed(noise_seed, i), so the result is independent of `jobs`.
std::vector<BerPoint> ber_curve(const LinkConfig& cfg, unsigned jobs = 0);

/// Q(sqrt(2 Eb/N0)): coherent BPSK over AWGN.
double bpsk_ber(double ebn0_db);
double q_function(double x);

/// Parses a JSON document with the LinkConfig field names. code_family entries
/// are either {"bits": "0110..."} or a provenance object ("kind": "chaotic",
/// "mseq" or "gold") regenerated at spreading_factor bits. Eb/N0 entries may be
/// numbers or the string "inf".
LinkConfig parse_link_config(std::string_view json);

/// [{"ebn0_db", "errors", "bits", "ber"}, ...]
std::string ber_points_to_json(std::span<const BerPoint> points);

}  // namespace chaoscode
