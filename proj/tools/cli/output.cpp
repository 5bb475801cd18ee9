#include "output.hpp"

#include <unistd.h>

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "chaoscode/errors.hpp"

namespace chaoscode::cli {

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto r = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                               std::chars_format::general, 17);
  return std::string(buf.data(), r.ptr);
}

std::size_t parse_count(std::string_view text, std::string_view what) {
  const auto fail = [&] {
    return DomainError(std::string(what) + ": expected a non-negative integer count, got '" +
                       std::string(text) + "'");
  };
  std::uint64_t n = 0;
  const char* end = text.data() + text.size();
  if (auto r = std::from_chars(text.data(), end, n); r.ec == std::errc() && r.ptr == end) {
    return static_cast<std::size_t>(n);
  }
  double d = 0.0;
  auto r = std::from_chars(text.data(), end, d);
  if (r.ec != std::errc() || r.ptr != end) throw fail();
  if (!(d >= 0.0) || d > 9007199254740992.0 || std::floor(d) != d) throw fail();
  return static_cast<std::size_t>(d);
}

std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("sha256: digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view data) {
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    os.write(data.data(), static_cast<std::streamsize>(data.size()));
    os.flush();
    if (!os) {
      std::filesystem::remove(tmp);
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace chaoscode::cli
