#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace chaoscode::cli {

/// 17 significant digits, locale independent; "inf", "-inf", "nan" otherwise.
std::string fmt(double v);

/// Accepts "100000" as well as "1e5"; rejects negatives, fractions and values
/// beyond 2^53.
std::size_t parse_count(std::string_view text, std::string_view what);

std::string sha256_hex(std::string_view data);

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view data);

}  // namespace chaoscode::cli
