#pragma once

#include <cstdint>
#include <utility>

#include "setforge/bigint.hpp"
#include "setforge/error.hpp"
#include "setforge/rng.hpp"

namespace setforge::numtheory {

// base^exponent mod modulus by square-and-multiply, left-to-right over the
// exponent bits.
inline UnsignedBig mod_pow(const UnsignedBig& base, const UnsignedBig& exponent,
                           const UnsignedBig& modulus) {
  if (modulus.is_zero()) throw Error(ErrorCode::ZeroModulus);
  if (modulus == UnsignedBig(1)) return UnsignedBig{};
  UnsignedBig result(1);
  UnsignedBig acc = base % modulus;
  for (std::size_t i = 0; i < exponent.bit_length(); ++i) {
    if (exponent.bit(i)) result = (result * acc) % modulus;
    acc = (acc * acc) % modulus;
  }
  return result;
}

namespace detail {

// Minimal signed value for the extended-Euclid coefficient track.
struct Signed {
  UnsignedBig mag;
  bool neg = false;

  Signed minus(const Signed& other) const {
    if (neg == other.neg) {
      if (mag >= other.mag) return {mag - other.mag, neg};
      return {other.mag - mag, !neg};
    }
    return {mag + other.mag, neg};
  }

  Signed times(const UnsignedBig& k) const { return {mag * k, neg}; }
};

}  // namespace detail

// Multiplicative inverse of a modulo m via the extended Euclidean algorithm:
// the unique x in [1, m) with a*x = 1 (mod m).
inline UnsignedBig mod_inverse(const UnsignedBig& a, const UnsignedBig& m) {
  if (m < UnsignedBig(2)) throw Error(ErrorCode::BadParameters, "modulus < 2");
  UnsignedBig r0 = m;
  UnsignedBig r1 = a % m;
  detail::Signed t0{UnsignedBig{}, false};  // coefficient of a alongside r0
  detail::Signed t1{UnsignedBig(1), false};
  while (!r1.is_zero()) {
    auto [q, r2] = UnsignedBig::divmod(r0, r1);
    r0 = std::exchange(r1, std::move(r2));
    detail::Signed t2 = t0.minus(t1.times(q));
    t0 = std::exchange(t1, std::move(t2));
  }
  if (r0 != UnsignedBig(1)) throw Error(ErrorCode::NotInvertible);
  if (t0.neg) return m - (t0.mag % m);
  return t0.mag % m;
}

// Uniform draw from [0, bound) by rejection sampling on bound's bit width.
inline UnsignedBig random_below(SeededRng& rng, const UnsignedBig& bound) {
  if (bound.is_zero()) throw Error(ErrorCode::BadParameters, "zero bound");
  const std::size_t bits = bound.bit_length();
  const std::size_t nbytes = (bits + 7) / 8;
  const unsigned top_mask =
      bits % 8 == 0 ? 0xFF : ((1u << (bits % 8)) - 1);
  for (;;) {
    Bytes raw = rng.next_bytes(nbytes);
    raw[0] &= static_cast<std::uint8_t>(top_mask);
    UnsignedBig candidate = UnsignedBig::from_bytes_be(raw);
    if (candidate < bound) return candidate;
  }
}

// Miller-Rabin with uniformly random witnesses in [2, n-2]. A composite
// survives each round with probability at most 1/4, so `rounds` rounds push
// the error below 4^-rounds. Correctly rejects Carmichael numbers, which
// defeat the plain Fermat test.
inline bool is_probable_prime(const UnsignedBig& n, unsigned rounds,
                              SeededRng& rng) {
  if (rounds < 1) throw Error(ErrorCode::BadParameters, "rounds < 1");
  if (n < UnsignedBig(2)) return false;
  if (n == UnsignedBig(2) || n == UnsignedBig(3)) return true;
  if (!n.is_odd()) return false;

  const UnsignedBig n_minus_1 = n - UnsignedBig(1);
  UnsignedBig d = n_minus_1;
  std::size_t s = 0;
  while (!d.is_odd()) {
    d = d >> 1;
    ++s;
  }

  for (unsigned round = 0; round < rounds; ++round) {
    const UnsignedBig witness =
        UnsignedBig(2) + random_below(rng, n - UnsignedBig(3));
    UnsignedBig x = mod_pow(witness, d, n);
    if (x == UnsignedBig(1) || x == n_minus_1) continue;
    bool to_minus_1 = false;
    for (std::size_t i = 0; i + 1 < s; ++i) {
      x = (x * x) % n;
      if (x == n_minus_1) {
        to_minus_1 = true;
        break;
      }
    }
    if (!to_minus_1) return false;
  }
  return true;
}

// Random probable prime with exactly `bits` bits: draw an odd candidate with
// the top bit forced and retry until Miller-Rabin accepts. Deterministic for
// a fixed rng seed.
inline UnsignedBig gen_prime(std::size_t bits, SeededRng& rng) {
  if (bits < 4) throw Error(ErrorCode::BadParameters, "bits < 4");
  constexpr unsigned kRounds = 40;
  for (;;) {
    Bytes raw = rng.next_bytes((bits + 7) / 8);
    const std::size_t excess = raw.size() * 8 - bits;
    raw[0] &= static_cast<std::uint8_t>(0xFF >> excess);
    raw[0] |= static_cast<std::uint8_t>(0x80 >> excess);  // force top bit
    raw.back() |= 1;                                      // force odd
    UnsignedBig candidate = UnsignedBig::from_bytes_be(raw);
    if (is_probable_prime(candidate, kRounds, rng)) return candidate;
  }
}

}  // namespace setforge::numtheory
