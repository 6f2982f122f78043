#pragma once

// Byte-level helpers shared by the CLMS/CLMF/PNM readers and writers.

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <vector>

#include "clifford_mellin/errors.hpp"

namespace clifford_mellin::io {

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Writes to a sibling temporary and renames it into place, so a failed run
/// never leaves a partial file behind.
inline void write_atomic(const std::filesystem::path& path,
                         std::string_view bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + tmp.string() + "'");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("short write to '" + tmp.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename into '" + path.string() + "'");
  }
}

inline void append_f64_le(std::string& out, double value) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
  for (int i = 0; i < 8; ++i) {
    out.push_back(static_cast<char>(bits & 0xFFU));
    bits >>= 8;
  }
}

inline double load_f64_le(const std::uint8_t* p) {
  std::uint64_t bits = 0;
  for (int i = 7; i >= 0; --i) bits = (bits << 8) | p[i];
  return std::bit_cast<double>(bits);
}

inline std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

/// Line-oriented reader for the "key=value" headers that precede a binary
/// payload.
class HeaderCursor {
 public:
  explicit HeaderCursor(const std::vector<std::uint8_t>& bytes)
      : bytes_(bytes) {}

  std::size_t offset() const { return pos_; }

  std::string line() {
    const std::size_t start = pos_;
    while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
    if (pos_ >= bytes_.size()) {
      throw ParseError("unterminated header line", start);
    }
    std::string text(bytes_.begin() + static_cast<std::ptrdiff_t>(start),
                     bytes_.begin() + static_cast<std::ptrdiff_t>(pos_));
    ++pos_;
    return text;
  }

  void expect_line(std::string_view expected) {
    const std::size_t start = pos_;
    if (line() != expected) {
      throw ParseError("expected '" + std::string(expected) + "'", start);
    }
  }

  std::string value(std::string_view key) {
    const std::size_t start = pos_;
    const std::string text = line();
    if (text.size() <= key.size() || text.compare(0, key.size(), key) != 0 ||
        text[key.size()] != '=') {
      throw ParseError("expected header key '" + std::string(key) + "'",
                       start);
    }
    return text.substr(key.size() + 1);
  }

  std::size_t count(std::string_view key) {
    const std::size_t start = pos_;
    const std::string text = value(key);
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty() || text[0] == '-') {
      throw ParseError("bad integer for '" + std::string(key) + "'", start);
    }
    return static_cast<std::size_t>(v);
  }

  double real(std::string_view key) {
    const std::size_t start = pos_;
    const std::string text = value(key);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(text, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != text.size() || text.empty()) {
      throw ParseError("bad number for '" + std::string(key) + "'", start);
    }
    return v;
  }

  /// Reads n little-endian doubles.
  std::vector<double> payload(std::size_t n) {
    if (bytes_.size() - pos_ != n * 8) {
      throw ParseError("payload has " + std::to_string(bytes_.size() - pos_) +
                           " bytes, expected " + std::to_string(n * 8),
                       pos_);
    }
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
      values[i] = load_f64_le(bytes_.data() + pos_ + 8 * i);
    }
    pos_ = bytes_.size();
    return values;
  }

 private:
  const std::vector<std::uint8_t>& bytes_;
  std::size_t pos_ = 0;
};

}  // namespace clifford_mellin::io
