#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "setforge/error.hpp"

// Byte-string plumbing shared by every module. All multi-byte integers on
// disk and on the wire are big-endian; composite structures use
// [4-byte big-endian length][payload] fields.

namespace setforge {

using Bytes = std::vector<std::uint8_t>;
using BytesView = std::span<const std::uint8_t>;

inline Bytes to_bytes(std::string_view s) {
  return Bytes(s.begin(), s.end());
}

inline std::string to_string(BytesView b) {
  return std::string(b.begin(), b.end());
}

inline void put_u32_be(Bytes& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_u64_be(Bytes& out, std::uint64_t v) {
  for (int shift = 56; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

inline std::uint32_t get_u32_be(BytesView in) {
  return (static_cast<std::uint32_t>(in[0]) << 24) |
         (static_cast<std::uint32_t>(in[1]) << 16) |
         (static_cast<std::uint32_t>(in[2]) << 8) |
         static_cast<std::uint32_t>(in[3]);
}

inline std::uint64_t get_u64_be(BytesView in) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | in[i];
  return v;
}

inline void append(Bytes& out, BytesView payload) {
  out.insert(out.end(), payload.begin(), payload.end());
}

inline void put_field(Bytes& out, BytesView payload) {
  put_u32_be(out, static_cast<std::uint32_t>(payload.size()));
  append(out, payload);
}

inline void put_field(Bytes& out, std::string_view payload) {
  put_field(out, BytesView(reinterpret_cast<const std::uint8_t*>(payload.data()),
                           payload.size()));
}

// Cursor over a framed byte string; every malformed access throws the code
// the owning format reports (MalformedMessage by default).
class FieldReader {
 public:
  explicit FieldReader(BytesView data,
                       ErrorCode on_error = ErrorCode::MalformedMessage)
      : data_(data), on_error_(on_error) {}

  Bytes field() {
    require(4);
    const std::uint32_t len = get_u32_be(data_.subspan(pos_, 4));
    pos_ += 4;
    require(len);
    Bytes out(data_.begin() + pos_, data_.begin() + pos_ + len);
    pos_ += len;
    return out;
  }

  std::string text_field() { return to_string(field()); }

  std::uint64_t u64() {
    require(8);
    const std::uint64_t v = get_u64_be(data_.subspan(pos_, 8));
    pos_ += 8;
    return v;
  }

  Bytes raw(std::size_t n) {
    require(n);
    Bytes out(data_.begin() + pos_, data_.begin() + pos_ + n);
    pos_ += n;
    return out;
  }

  bool done() const { return pos_ == data_.size(); }

  void expect_done() const {
    if (!done()) throw Error(on_error_, "trailing bytes");
  }

 private:
  void require(std::size_t n) const {
    if (data_.size() - pos_ < n) throw Error(on_error_, "truncated field");
  }

  BytesView data_;
  std::size_t pos_ = 0;
  ErrorCode on_error_;
};

inline std::string to_hex(BytesView b) {
  static constexpr char digits[] = "0123456789abcdef";
  std::string out;
  out.reserve(b.size() * 2);
  for (std::uint8_t v : b) {
    out.push_back(digits[v >> 4]);
    out.push_back(digits[v & 0xF]);
  }
  return out;
}

inline Bytes from_hex(std::string_view s) {
  auto nibble = [](char c) -> int {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
  };
  if (s.size() % 2 != 0) throw Error(ErrorCode::BadParameters, "odd hex length");
  Bytes out;
  out.reserve(s.size() / 2);
  for (std::size_t i = 0; i < s.size(); i += 2) {
    const int hi = nibble(s[i]);
    const int lo = nibble(s[i + 1]);
    if (hi < 0 || lo < 0) throw Error(ErrorCode::BadParameters, "bad hex digit");
    out.push_back(static_cast<std::uint8_t>((hi << 4) | lo));
  }
  return out;
}

// True iff `needle` occurs as a contiguous byte substring of `haystack`.
inline bool contains(BytesView haystack, BytesView needle) {
  if (needle.empty()) return true;
  if (haystack.size() < needle.size()) return false;
  for (std::size_t i = 0; i + needle.size() <= haystack.size(); ++i) {
    bool hit = true;
    for (std::size_t j = 0; j < needle.size(); ++j) {
      if (haystack[i + j] != needle[j]) {
        hit = false;
        break;
      }
    }
    if (hit) return true;
  }
  return false;
}

}  // namespace setforge
