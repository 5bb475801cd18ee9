#pragma once

// Sequence file format:
//
//   #prov=<single-line JSON provenance>\n
//   <bits as a contiguous run of '0'/'1'>\n
//
// Provenance objects carry a "kind" of "chaotic", "mseq", "gold" or "literal".
// Reals are written in shortest round-trip form so chaotic provenance
// regenerates the same bits. LFSR states are bit strings, character i being
// output bit a_i.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "chaoscode/seqgen.hpp"

namespace chaoscode {

std::string provenance_to_json(const Provenance& provenance);
Provenance provenance_from_json(std::string_view json);

void write_sequence(std::ostream& os, const BinarySequence& seq);
/// Throws DomainError on a malformed header or non-binary payload.
BinarySequence read_sequence(std::istream& is);

/// "101" <-> register state with bit i = character i.
std::string lfsr_state_text(const LfsrConfig& cfg);
std::uint32_t parse_lfsr_state(std::string_view bits);

std::string format_sequence(const BinarySequence& seq);
BinarySequence parse_sequence(std::string_view text);

}  // namespace chaoscode
