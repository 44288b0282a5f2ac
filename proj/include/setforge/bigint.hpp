#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "setforge/bytes.hpp"
#include "setforge/error.hpp"

namespace setforge {

// Arbitrary-precision non-negative integer. Stored as base-2^32 limbs,
// least significant first, with no trailing zero limbs; zero is the empty
// limb vector, so every value has exactly one representation.
//
// Schoolbook multiplication and Knuth Algorithm D division: at the 512-bit
// sizes this toolkit works with, the quadratic algorithms are milliseconds
// and leave nothing to get wrong.
class UnsignedBig {
 public:
  UnsignedBig() = default;

  UnsignedBig(std::uint64_t v) {  // NOLINT: implicit by design
    if (v != 0) limbs_.push_back(static_cast<std::uint32_t>(v));
    if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
  }

  static UnsignedBig from_bytes_be(BytesView bytes) {
    UnsignedBig out;
    out.limbs_.assign((bytes.size() + 3) / 4, 0);
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      const std::size_t bit = 8 * (bytes.size() - 1 - i);
      out.limbs_[bit / 32] |= static_cast<std::uint32_t>(bytes[i])
                              << (bit % 32);
    }
    out.trim();
    return out;
  }

  static UnsignedBig from_hex(std::string_view hex) {
    if (hex.empty()) throw Error(ErrorCode::BadParameters, "empty hex");
    if (hex.size() % 2 != 0) {
      std::string padded = "0";
      padded += hex;
      return from_bytes_be(setforge::from_hex(padded));
    }
    return from_bytes_be(setforge::from_hex(hex));
  }

  static UnsignedBig from_decimal(std::string_view dec) {
    if (dec.empty()) throw Error(ErrorCode::BadParameters, "empty decimal");
    UnsignedBig out;
    for (char c : dec) {
      if (c < '0' || c > '9')
        throw Error(ErrorCode::BadParameters, "bad decimal digit");
      out = out * UnsignedBig(10) + UnsignedBig(static_cast<std::uint64_t>(c - '0'));
    }
    return out;
  }

  static UnsignedBig pow2(std::size_t bit) {
    UnsignedBig out;
    out.limbs_.assign(bit / 32 + 1, 0);
    out.limbs_[bit / 32] = std::uint32_t{1} << (bit % 32);
    return out;
  }

  bool is_zero() const { return limbs_.empty(); }
  bool is_odd() const { return !limbs_.empty() && (limbs_[0] & 1); }

  // Number of significant bits; 0 for the value 0.
  std::size_t bit_length() const {
    if (limbs_.empty()) return 0;
    std::size_t bits = 32 * (limbs_.size() - 1);
    std::uint32_t top = limbs_.back();
    while (top != 0) {
      ++bits;
      top >>= 1;
    }
    return bits;
  }

  bool bit(std::size_t i) const {
    const std::size_t limb = i / 32;
    if (limb >= limbs_.size()) return false;
    return (limbs_[limb] >> (i % 32)) & 1;
  }

  // Minimal big-endian encoding; the value 0 encodes as the empty string.
  Bytes to_bytes_be() const {
    Bytes out((bit_length() + 7) / 8, 0);
    write_bytes_be(out);
    return out;
  }

  // Fixed-width big-endian encoding, zero-padded on the left.
  Bytes to_bytes_be_padded(std::size_t width) const {
    if ((bit_length() + 7) / 8 > width)
      throw Error(ErrorCode::BadParameters, "value wider than requested pad");
    Bytes out(width, 0);
    write_bytes_be(out);
    return out;
  }

  std::string to_hex() const {
    if (is_zero()) return "0";
    std::string s = setforge::to_hex(to_bytes_be());
    const std::size_t first = s.find_first_not_of('0');
    return s.substr(first);
  }

  std::string to_decimal() const {
    if (is_zero()) return "0";
    UnsignedBig v = *this;
    std::string out;
    while (!v.is_zero()) {
      auto [q, r] = divmod(v, UnsignedBig(1000000000u));
      std::uint64_t chunk = r.to_u64();
      for (int i = 0; i < 9; ++i) {
        out.push_back(static_cast<char>('0' + chunk % 10));
        chunk /= 10;
      }
      v = std::move(q);
    }
    while (out.size() > 1 && out.back() == '0') out.pop_back();
    std::reverse(out.begin(), out.end());
    return out;
  }

  std::uint64_t to_u64() const {
    if (bit_length() > 64)
      throw Error(ErrorCode::BadParameters, "value exceeds 64 bits");
    std::uint64_t v = 0;
    if (limbs_.size() > 1) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
    if (!limbs_.empty()) v |= limbs_[0];
    return v;
  }

  friend bool operator==(const UnsignedBig& a, const UnsignedBig& b) {
    return a.limbs_ == b.limbs_;
  }

  friend std::strong_ordering operator<=>(const UnsignedBig& a,
                                          const UnsignedBig& b) {
    if (a.limbs_.size() != b.limbs_.size())
      return a.limbs_.size() <=> b.limbs_.size();
    for (std::size_t i = a.limbs_.size(); i-- > 0;) {
      if (a.limbs_[i] != b.limbs_[i]) return a.limbs_[i] <=> b.limbs_[i];
    }
    return std::strong_ordering::equal;
  }

  friend UnsignedBig operator+(const UnsignedBig& a, const UnsignedBig& b) {
    UnsignedBig out;
    const std::size_t n = std::max(a.limbs_.size(), b.limbs_.size());
    out.limbs_.reserve(n + 1);
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      carry += a.limb(i);
      carry += b.limb(i);
      out.limbs_.push_back(static_cast<std::uint32_t>(carry));
      carry >>= 32;
    }
    if (carry) out.limbs_.push_back(static_cast<std::uint32_t>(carry));
    return out;
  }

  // Requires a >= b; callers own that invariant.
  friend UnsignedBig operator-(const UnsignedBig& a, const UnsignedBig& b) {
    if (a < b) throw Error(ErrorCode::BadParameters, "negative difference");
    UnsignedBig out;
    out.limbs_.reserve(a.limbs_.size());
    std::int64_t borrow = 0;
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::int64_t v = static_cast<std::int64_t>(a.limb(i)) - b.limb(i) - borrow;
      borrow = v < 0;
      if (v < 0) v += std::int64_t{1} << 32;
      out.limbs_.push_back(static_cast<std::uint32_t>(v));
    }
    out.trim();
    return out;
  }

  friend UnsignedBig operator*(const UnsignedBig& a, const UnsignedBig& b) {
    if (a.is_zero() || b.is_zero()) return {};
    UnsignedBig out;
    out.limbs_.assign(a.limbs_.size() + b.limbs_.size(), 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      std::uint64_t carry = 0;
      const std::uint64_t ai = a.limbs_[i];
      for (std::size_t j = 0; j < b.limbs_.size(); ++j) {
        carry += ai * b.limbs_[j] + out.limbs_[i + j];
        out.limbs_[i + j] = static_cast<std::uint32_t>(carry);
        carry >>= 32;
      }
      out.limbs_[i + b.limbs_.size()] = static_cast<std::uint32_t>(carry);
    }
    out.trim();
    return out;
  }

  friend UnsignedBig operator<<(const UnsignedBig& a, std::size_t bits) {
    if (a.is_zero()) return {};
    const std::size_t limb_shift = bits / 32;
    const std::size_t bit_shift = bits % 32;
    UnsignedBig out;
    out.limbs_.assign(a.limbs_.size() + limb_shift + 1, 0);
    for (std::size_t i = 0; i < a.limbs_.size(); ++i) {
      const std::uint64_t v = static_cast<std::uint64_t>(a.limbs_[i]) << bit_shift;
      out.limbs_[i + limb_shift] |= static_cast<std::uint32_t>(v);
      out.limbs_[i + limb_shift + 1] |= static_cast<std::uint32_t>(v >> 32);
    }
    out.trim();
    return out;
  }

  friend UnsignedBig operator>>(const UnsignedBig& a, std::size_t bits) {
    const std::size_t limb_shift = bits / 32;
    if (limb_shift >= a.limbs_.size()) return {};
    const std::size_t bit_shift = bits % 32;
    UnsignedBig out;
    out.limbs_.assign(a.limbs_.size() - limb_shift, 0);
    for (std::size_t i = 0; i < out.limbs_.size(); ++i) {
      std::uint64_t v = a.limbs_[i + limb_shift] >> bit_shift;
      if (bit_shift != 0 && i + limb_shift + 1 < a.limbs_.size()) {
        v |= static_cast<std::uint64_t>(a.limbs_[i + limb_shift + 1])
             << (32 - bit_shift);
      }
      out.limbs_[i] = static_cast<std::uint32_t>(v);
    }
    out.trim();
    return out;
  }

  // Knuth Algorithm D. Returns (quotient, remainder), remainder < divisor.
  static std::pair<UnsignedBig, UnsignedBig> divmod(const UnsignedBig& u,
                                                    const UnsignedBig& v) {
    if (v.is_zero()) throw Error(ErrorCode::ZeroModulus, "division by zero");
    if (u < v) return {UnsignedBig{}, u};
    if (v.limbs_.size() == 1) {
      UnsignedBig q;
      q.limbs_.assign(u.limbs_.size(), 0);
      const std::uint64_t d = v.limbs_[0];
      std::uint64_t rem = 0;
      for (std::size_t i = u.limbs_.size(); i-- > 0;) {
        const std::uint64_t cur = (rem << 32) | u.limbs_[i];
        q.limbs_[i] = static_cast<std::uint32_t>(cur / d);
        rem = cur % d;
      }
      q.trim();
      return {std::move(q), UnsignedBig(rem)};
    }

    // Normalize so the divisor's top limb has its high bit set. The divisor
    // keeps its limb count; the dividend gains one overflow limb.
    int shift = 0;
    for (std::uint32_t top = v.limbs_.back(); !(top & 0x80000000u); top <<= 1)
      ++shift;
    const UnsignedBig vn = v << static_cast<std::size_t>(shift);
    UnsignedBig un = u << static_cast<std::size_t>(shift);
    const std::size_t n = vn.limbs_.size();
    const std::size_t mu = u.limbs_.size();  // mu >= n since u >= v
    un.limbs_.resize(mu + 1, 0);

    UnsignedBig q;
    q.limbs_.assign(mu - n + 1, 0);
    constexpr std::uint64_t kBase = std::uint64_t{1} << 32;

    for (std::size_t j = mu - n + 1; j-- > 0;) {
      const std::uint64_t numer =
          (static_cast<std::uint64_t>(un.limbs_[j + n]) << 32) |
          un.limbs_[j + n - 1];
      std::uint64_t qhat = numer / vn.limbs_[n - 1];
      std::uint64_t rhat = numer % vn.limbs_[n - 1];
      while (qhat >= kBase ||
             qhat * vn.limbs_[n - 2] > ((rhat << 32) | un.limbs_[j + n - 2])) {
        --qhat;
        rhat += vn.limbs_[n - 1];
        if (rhat >= kBase) break;
      }

      // Multiply-subtract qhat * vn from un[j .. j+n].
      std::int64_t borrow = 0;
      std::uint64_t carry = 0;
      for (std::size_t i = 0; i < n; ++i) {
        carry += qhat * vn.limbs_[i];
        std::int64_t sub = static_cast<std::int64_t>(un.limbs_[i + j]) -
                           static_cast<std::int64_t>(carry & 0xFFFFFFFFu) -
                           borrow;
        carry >>= 32;
        borrow = sub < 0;
        if (sub < 0) sub += std::int64_t{1} << 32;
        un.limbs_[i + j] = static_cast<std::uint32_t>(sub);
      }
      const std::int64_t top = static_cast<std::int64_t>(un.limbs_[j + n]) -
                               static_cast<std::int64_t>(carry) - borrow;
      un.limbs_[j + n] = static_cast<std::uint32_t>(top);

      if (top < 0) {
        // qhat was one too large: add the divisor back.
        --qhat;
        std::uint64_t add_carry = 0;
        for (std::size_t i = 0; i < n; ++i) {
          add_carry +=
              static_cast<std::uint64_t>(un.limbs_[i + j]) + vn.limbs_[i];
          un.limbs_[i + j] = static_cast<std::uint32_t>(add_carry);
          add_carry >>= 32;
        }
        un.limbs_[j + n] =
            static_cast<std::uint32_t>(un.limbs_[j + n] + add_carry);
      }
      q.limbs_[j] = static_cast<std::uint32_t>(qhat);
    }

    q.trim();
    un.limbs_.resize(n);
    un.trim();
    return {std::move(q), un >> static_cast<std::size_t>(shift)};
  }

  friend UnsignedBig operator/(const UnsignedBig& a, const UnsignedBig& b) {
    return divmod(a, b).first;
  }

  friend UnsignedBig operator%(const UnsignedBig& a, const UnsignedBig& b) {
    return divmod(a, b).second;
  }

 private:
  std::uint32_t limb(std::size_t i) const {
    return i < limbs_.size() ? limbs_[i] : 0;
  }

  void trim() {
    while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  }

  void write_bytes_be(Bytes& out) const {
    for (std::size_t i = 0; i < out.size(); ++i) {
      const std::size_t bit = 8 * (out.size() - 1 - i);
      const std::size_t limb = bit / 32;
      if (limb < limbs_.size()) {
        out[i] = static_cast<std::uint8_t>(limbs_[limb] >> (bit % 32));
      }
    }
  }

  std::vector<std::uint32_t> limbs_;
};

}  // namespace setforge
