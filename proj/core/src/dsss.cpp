#include "chaoscode/dsss.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <boost/random/normal_distribution.hpp>
#include <json.hpp>

#include "chaoscode/errors.hpp"
#include "chaoscode/random.hpp"
#include "chaoscode/sequence_io.hpp"
#include "parallel.hpp"

namespace chaoscode {

namespace {

constexpr std::size_t kBlockBits = 1024;

void check_ebn0(double ebn0_db) {
  if (std::isnan(ebn0_db) || ebn0_db == -std::numeric_limits<double>::infinity()) {
    throw DomainError("Eb/N0 must be finite or +inf");
  }
}

// In place; awgn() and ber_curve() share it so both draw the same stream.
void add_noise(std::span<double> chips, double sigma, std::uint64_t noise_seed) {
  if (sigma == 0.0) return;
  std::mt19937_64 engine(noise_seed);
  boost::random::normal_distribution<double> normal(0.0, sigma);
  for (auto& v : chips) v += normal(engine);
}

}  // namespace

std::vector<double> spread(std::span<const std::uint8_t> data_bits, const BinarySequence& code) {
  const auto c = bipolar(code);
  std::vector<double> chips;
  chips.reserve(data_bits.size() * c.size());
  for (auto bit : data_bits) {
    const int sign = bit ? -1 : 1;
    for (int v : c) chips.push_back(static_cast<double>(sign * v));
  }
  return chips;
}

std::vector<std::uint8_t> despread(std::span<const double> chips, const BinarySequence& code) {
  const auto c = bipolar(code);
  const std::size_t sf = c.size();
  if (chips.size() % sf != 0) {
    throw DomainError("despread: chip count " + std::to_string(chips.size()) +
                      " is not a multiple of the code length " + std::to_string(sf));
  }
  std::vector<std::uint8_t> bits(chips.size() / sf);
  for (std::size_t b = 0; b < bits.size(); ++b) {
    double acc = 0.0;
    for (std::size_t j = 0; j < sf; ++j) acc += chips[b * sf + j] * c[j];
    bits[b] = acc < 0.0 ? 1 : 0;
  }
  return bits;
}

double awgn_sigma(double ebn0_db, std::size_t spreading_factor) {
  check_ebn0(ebn0_db);
  if (spreading_factor == 0) throw DomainError("spreading factor must be >= 1");
  if (std::isinf(ebn0_db)) return 0.0;
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return std::sqrt(static_cast<double>(spreading_factor) / (2.0 * ebn0));
}

std::vector<double> awgn(std::span<const double> chips, double ebn0_db,
                         std::size_t spreading_factor, std::uint64_t noise_seed) {
  const double sigma = awgn_sigma(ebn0_db, spreading_factor);
  std::vector<double> out(chips.begin(), chips.end());
  add_noise(out, sigma, noise_seed);
  return out;
}

void LinkConfig::validate() const {
  if (spreading_factor == 0) throw DomainError("link: spreading_factor must be >= 1");
  if (code_family.empty()) throw DomainError("link: code_family must hold at least one code");
  for (std::size_t u = 0; u < code_family.size(); ++u) {
    if (code_family[u].size() != spreading_factor) {
      throw DomainError("link: code " + std::to_string(u) + " has length " +
                        std::to_string(code_family[u].size()) + ", spreading_factor is " +
                        std::to_string(spreading_factor));
    }
  }
  if (ebn0_db.empty()) throw DomainError("link: ebn0_db grid is empty");
  for (double e : ebn0_db) check_ebn0(e);
  if (n_bits == 0) throw DomainError("link: n_bits must be >= 1");
}

std::vector<BerPoint> ber_curve(const LinkConfig& cfg, unsigned jobs) {
  cfg.validate();
  const std::size_t sf = cfg.spreading_factor;
  std::vector<BerPoint> points(cfg.ebn0_db.size());

  std::vector<std::vector<double>> codes;
  for (const auto& c : cfg.code_family) {
    const auto b = bipolar(c);
    codes.emplace_back(b.begin(), b.end());
  }

  detail::parallel_for(points.size(), jobs, [&](std::size_t p) {
    const std::uint64_t point_seed = derive_seed(cfg.noise_seed, p);
    const double sigma = awgn_sigma(cfg.ebn0_db[p], sf);
    Rng data_rng(derive_seed(point_seed, 0));
    std::size_t errors = 0;
    std::vector<std::uint8_t> user0(kBlockBits);
    std::vector<double> received(kBlockBits * sf);

    for (std::size_t done = 0, block = 0; done < cfg.n_bits; done += kBlockBits, ++block) {
      const std::size_t n = std::min(kBlockBits, cfg.n_bits - done);
      std::fill_n(received.begin(), n * sf, 0.0);
      for (std::size_t u = 0; u < codes.size(); ++u) {
        const auto& code = codes[u];
        for (std::size_t b = 0; b < n; ++b) {
          const std::uint8_t bit = data_rng.bit();
          if (u == 0) user0[b] = bit;
          const double sign = bit ? -1.0 : 1.0;
          double* chip = received.data() + b * sf;
          for (std::size_t j = 0; j < sf; ++j) chip[j] += sign * code[j];
        }
      }
      add_noise(std::span<double>(received.data(), n * sf), sigma,
                derive_seed(point_seed, block + 1));
      const auto& code = codes.front();
      for (std::size_t b = 0; b < n; ++b) {
        const double* chip = received.data() + b * sf;
        double acc = 0.0;
        for (std::size_t j = 0; j < sf; ++j) acc += chip[j] * code[j];
        errors += static_cast<std::uint8_t>(acc < 0.0 ? 1 : 0) != user0[b];
      }
    }

    points[p] = BerPoint{cfg.ebn0_db[p], errors, cfg.n_bits,
                         static_cast<double>(errors) / static_cast<double>(cfg.n_bits)};
  });
  return points;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

double bpsk_ber(double ebn0_db) {
  check_ebn0(ebn0_db);
  if (std::isinf(ebn0_db)) return 0.0;
  return q_function(std::sqrt(2.0 * std::pow(10.0, ebn0_db / 10.0)));
}

LinkConfig parse_link_config(std::string_view text) {
  using nlohmann::json;
  try {
    const json j = json::parse(text);
    LinkConfig cfg;
    cfg.spreading_factor = j.at("spreading_factor").get<std::size_t>();
    cfg.n_bits = j.at("n_bits").get<std::size_t>();
    cfg.noise_seed = j.at("noise_seed").get<std::uint64_t>();
    for (const auto& e : j.at("ebn0_db")) {
      if (e.is_string()) {
        if (e.get<std::string>() != "inf") throw DomainError("ebn0_db strings must be \"inf\"");
        cfg.ebn0_db.push_back(std::numeric_limits<double>::infinity());
      } else {
        cfg.ebn0_db.push_back(e.get<double>());
      }
    }
    for (const auto& code : j.at("code_family")) {
      if (code.contains("bits")) {
        const auto bits = code.at("bits").get<std::string>();
        std::vector<std::uint8_t> v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
          if (bits[i] != '0' && bits[i] != '1') throw DomainError("code bits must be 0/1");
          v[i] = bits[i] == '1';
        }
        cfg.code_family.push_back(make_literal(std::move(v)));
      } else {
        cfg.code_family.push_back(
            regenerate(provenance_from_json(code.dump()), cfg.spreading_factor));
      }
    }
    cfg.validate();
    return cfg;
  } catch (const json::exception& e) {
    throw DomainError(std::string("malformed link config: ") + e.what());
  }
}

std::string ber_points_to_json(std::span<const BerPoint> points) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& p : points) {
    nlohmann::ordered_json o;
    if (std::isinf(p.ebn0_db)) {
      o["ebn0_db"] = "inf";
    } else {
      o["ebn0_db"] = p.ebn0_db;
    }
    o["errors"] = p.errors;
    o["bits"] = p.bits;
    o["ber"] = p.ber;
    arr.push_back(std::move(o));
  }
  return arr.dump();
}

}  // namespace chaoscode
