#include "chaoscode/sequence_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "chaoscode/errors.hpp"

namespace chaoscode {

using nlohmann::json;

namespace {

constexpr std::string_view kHeaderPrefix = "#prov=";

json lfsr_to_json(const LfsrConfig& cfg) {
  return json{{"taps", cfg.taps}, {"state", lfsr_state_text(cfg)}};
}

LfsrConfig lfsr_from_json(const json& j) {
  LfsrConfig cfg;
  cfg.taps = j.at("taps").get<std::vector<unsigned>>();
  cfg.state = parse_lfsr_state(j.at("state").get<std::string>());
  if (cfg.taps.empty() || j.at("state").get<std::string>().size() != cfg.taps.front()) {
    throw DomainError("LFSR state must have exactly m bits");
  }
  return cfg;
}

}  // namespace

std::string lfsr_state_text(const LfsrConfig& cfg) {
  std::string s(cfg.degree(), '0');
  for (unsigned i = 0; i < cfg.degree(); ++i) {
    if ((cfg.state >> i) & 1u) s[i] = '1';
  }
  return s;
}

std::uint32_t parse_lfsr_state(std::string_view bits) {
  if (bits.empty() || bits.size() > 31) throw DomainError("LFSR state must have 1..31 bits");
  std::uint32_t state = 0;
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      state |= 1u << i;
    } else if (bits[i] != '0') {
      throw DomainError("LFSR state must be a string of 0/1");
    }
  }
  return state;
}

std::string provenance_to_json(const Provenance& provenance) {
  json j = std::visit(
      [](const auto& p) -> json {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, ChaoticProvenance>) {
          return json{{"kind", "chaotic"},         {"mu", p.params.mu},
                      {"x0", p.params.x0},         {"n_transient", p.n_transient},
                      {"rule", rule_name(p.rule)}, {"tau", p.tau}};
        } else if constexpr (std::is_same_v<T, MseqProvenance>) {
          json out = lfsr_to_json(p.lfsr);
          out["kind"] = "mseq";
          return out;
        } else if constexpr (std::is_same_v<T, GoldProvenance>) {
          return json{{"kind", "gold"},
                      {"pair_id", p.pair_id},
                      {"a", lfsr_to_json(p.a)},
                      {"b", lfsr_to_json(p.b)},
                      {"shift", p.shift}};
        } else {
          return json{{"kind", "literal"}};
        }
      },
      provenance);
  return j.dump();
}

Provenance provenance_from_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "chaotic") {
      ChaoticProvenance p;
      p.params = MapParams::make(j.at("mu").get<double>(), j.at("x0").get<double>());
      p.n_transient = j.at("n_transient").get<std::size_t>();
      p.rule = parse_rule(j.at("rule").get<std::string>());
      p.tau = j.at("tau").get<double>();
      return p;
    }
    if (kind == "mseq") return MseqProvenance{lfsr_from_json(j)};
    if (kind == "gold") {
      return GoldProvenance{j.at("pair_id").get<std::string>(), lfsr_from_json(j.at("a")),
                            lfsr_from_json(j.at("b")), j.at("shift").get<std::size_t>()};
    }
    if (kind == "literal") return LiteralProvenance{};
    throw DomainError("unknown provenance kind '" + kind + "'");
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed provenance JSON: ") + e.what());
  }
}

void write_sequence(std::ostream& os, const BinarySequence& seq) {
  os << kHeaderPrefix << provenance_to_json(seq.provenance) << '\n';
  std::string bits(seq.bits.size(), '0');
  for (std::size_t i = 0; i < bits.size(); ++i) bits[i] = seq.bits[i] ? '1' : '0';
  os << bits << '\n';
}

BinarySequence read_sequence(std::istream& is) {
  std::string header;
  if (!std::getline(is, header) || header.rfind(kHeaderPrefix, 0) != 0) {
    throw DomainError("sequence file must start with '#prov=<json>'");
  }
  BinarySequence seq;
  seq.provenance = provenance_from_json(std::string_view(header).substr(kHeaderPrefix.size()));

  std::string body;
  if (!std::getline(is, body)) throw DomainError("sequence file has no bit line");
  if (!body.empty() && body.back() == '\r') body.pop_back();
  if (body.empty()) throw DomainError("sequence file has an empty bit line");
  seq.bits.resize(body.size());
  for (std::size_t i = 0; i < body.size(); ++i) {
    if (body[i] != '0' && body[i] != '1') {
      throw DomainError("sequence bits must be '0' or '1' (position " + std::to_string(i) + ")");
    }
    seq.bits[i] = body[i] == '1';
  }
  std::string rest;
  while (std::getline(is, rest)) {
    if (!rest.empty() && rest != "\r") throw DomainError("trailing content after sequence bits");
  }
  return seq;
}

std::string format_sequence(const BinarySequence& seq) {
  std::ostringstream os;
  write_sequence(os, seq);
  return os.str();
}

BinarySequence parse_sequence(std::string_view text) {
  std::istringstream is{std::string(text)};
  return read_sequence(is);
}

}  // namespace chaoscode
