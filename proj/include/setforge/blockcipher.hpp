#pragma once

#include <array>
#include <cstdint>

#include "setforge/bytes.hpp"
#include "setforge/error.hpp"

// DES and Triple-DES (TDEA), plus a CBC mode and a length-prefixed CBC-MAC
// built on them. Tables are from FIPS 46-3; table positions are 1-based with
// bit 1 the most significant bit of the input, as the standard writes them.

namespace setforge::blockcipher {

struct Block {
  std::uint64_t raw = 0;

  friend bool operator==(Block, Block) = default;
  friend Block operator^(Block a, Block b) { return {a.raw ^ b.raw}; }

  static Block from_bytes(BytesView b) {
    if (b.size() != 8) throw Error(ErrorCode::BadLength, "block needs 8 bytes");
    return {get_u64_be(b)};
  }

  std::array<std::uint8_t, 8> to_bytes() const {
    std::array<std::uint8_t, 8> out{};
    for (int i = 0; i < 8; ++i)
      out[i] = static_cast<std::uint8_t>(raw >> (56 - 8 * i));
    return out;
  }
};

namespace detail {

inline constexpr std::uint8_t kInitialPermutation[64] = {
    58, 50, 42, 34, 26, 18, 10, 2, 60, 52, 44, 36, 28, 20, 12, 4,
    62, 54, 46, 38, 30, 22, 14, 6, 64, 56, 48, 40, 32, 24, 16, 8,
    57, 49, 41, 33, 25, 17, 9,  1, 59, 51, 43, 35, 27, 19, 11, 3,
    61, 53, 45, 37, 29, 21, 13, 5, 63, 55, 47, 39, 31, 23, 15, 7};

inline constexpr std::uint8_t kFinalPermutation[64] = {
    40, 8, 48, 16, 56, 24, 64, 32, 39, 7, 47, 15, 55, 23, 63, 31,
    38, 6, 46, 14, 54, 22, 62, 30, 37, 5, 45, 13, 53, 21, 61, 29,
    36, 4, 44, 12, 52, 20, 60, 28, 35, 3, 43, 11, 51, 19, 59, 27,
    34, 2, 42, 10, 50, 18, 58, 26, 33, 1, 41, 9,  49, 17, 57, 25};

inline constexpr std::uint8_t kExpansion[48] = {
    32, 1,  2,  3,  4,  5,  4,  5,  6,  7,  8,  9,  8,  9,  10, 11,
    12, 13, 12, 13, 14, 15, 16, 17, 16, 17, 18, 19, 20, 21, 20, 21,
    22, 23, 24, 25, 24, 25, 26, 27, 28, 29, 28, 29, 30, 31, 32, 1};

inline constexpr std::uint8_t kRoundPermutation[32] = {
    16, 7,  20, 21, 29, 12, 28, 17, 1,  15, 23, 26, 5,  18, 31, 10,
    2,  8,  24, 14, 32, 27, 3,  9,  19, 13, 30, 6,  22, 11, 4,  25};

// PC-1 drops the eight parity positions 8, 16, ..., 64; only 56 key bits
// ever reach the schedule.
inline constexpr std::uint8_t kPermutedChoice1[56] = {
    57, 49, 41, 33, 25, 17, 9,  1,  58, 50, 42, 34, 26, 18,
    10, 2,  59, 51, 43, 35, 27, 19, 11, 3,  60, 52, 44, 36,
    63, 55, 47, 39, 31, 23, 15, 7,  62, 54, 46, 38, 30, 22,
    14, 6,  61, 53, 45, 37, 29, 21, 13, 5,  28, 20, 12, 4};

inline constexpr std::uint8_t kPermutedChoice2[48] = {
    14, 17, 11, 24, 1,  5,  3,  28, 15, 6,  21, 10, 23, 19, 12, 4,
    26, 8,  16, 7,  27, 20, 13, 2,  41, 52, 31, 37, 47, 55, 30, 40,
    51, 45, 33, 48, 44, 49, 39, 56, 34, 53, 46, 42, 50, 36, 29, 32};

inline constexpr std::uint8_t kRotations[16] = {1, 1, 2, 2, 2, 2, 2, 2,
                                                1, 2, 2, 2, 2, 2, 2, 1};

// S-boxes, flattened row-major: entry index = 16*row + column.
inline constexpr std::uint8_t kSBox[8][64] = {
    {14, 4,  13, 1, 2,  15, 11, 8,  3,  10, 6,  12, 5,  9,  0, 7,
     0,  15, 7,  4, 14, 2,  13, 1,  10, 6,  12, 11, 9,  5,  3, 8,
     4,  1,  14, 8, 13, 6,  2,  11, 15, 12, 9,  7,  3,  10, 5, 0,
     15, 12, 8,  2, 4,  9,  1,  7,  5,  11, 3,  14, 10, 0,  6, 13},
    {15, 1,  8,  14, 6,  11, 3,  4,  9,  7, 2,  13, 12, 0, 5,  10,
     3,  13, 4,  7,  15, 2,  8,  14, 12, 0, 1,  10, 6,  9, 11, 5,
     0,  14, 7,  11, 10, 4,  13, 1,  5,  8, 12, 6,  9,  3, 2,  15,
     13, 8,  10, 1,  3,  15, 4,  2,  11, 6, 7,  12, 0,  5, 14, 9},
    {10, 0,  9,  14, 6, 3,  15, 5,  1,  13, 12, 7,  11, 4,  2,  8,
     13, 7,  0,  9,  3, 4,  6,  10, 2,  8,  5,  14, 12, 11, 15, 1,
     13, 6,  4,  9,  8, 15, 3,  0,  11, 1,  2,  12, 5,  10, 14, 7,
     1,  10, 13, 0,  6, 9,  8,  7,  4,  15, 14, 3,  11, 5,  2,  12},
    {7,  13, 14, 3, 0,  6,  9,  10, 1,  2, 8, 5,  11, 12, 4,  15,
     13, 8,  11, 5, 6,  15, 0,  3,  4,  7, 2, 12, 1,  10, 14, 9,
     10, 6,  9,  0, 12, 11, 7,  13, 15, 1, 3, 14, 5,  2,  8,  4,
     3,  15, 0,  6, 10, 1,  13, 8,  9,  4, 5, 11, 12, 7,  2,  14},
    {2,  12, 4,  1,  7,  10, 11, 6,  8,  5,  3,  15, 13, 0, 14, 9,
     14, 11, 2,  12, 4,  7,  13, 1,  5,  0,  15, 10, 3,  9, 8,  6,
     4,  2,  1,  11, 10, 13, 7,  8,  15, 9,  12, 5,  6,  3, 0,  14,
     11, 8,  12, 7,  1,  14, 2,  13, 6,  15, 0,  9,  10, 4, 5,  3},
    {12, 1,  10, 15, 9, 2,  6,  8,  0,  13, 3,  4,  14, 7,  5,  11,
     10, 15, 4,  2,  7, 12, 9,  5,  6,  1,  13, 14, 0,  11, 3,  8,
     9,  14, 15, 5,  2, 8,  12, 3,  7,  0,  4,  10, 1,  13, 11, 6,
     4,  3,  2,  12, 9, 5,  15, 10, 11, 14, 1,  7,  6,  0,  8,  13},
    {4,  11, 2,  14, 15, 0, 8,  13, 3,  12, 9, 7,  5,  10, 6, 1,
     13, 0,  11, 7,  4,  9, 1,  10, 14, 3,  5, 12, 2,  15, 8, 6,
     1,  4,  11, 13, 12, 3, 7,  14, 10, 15, 6, 8,  0,  5,  9, 2,
     6,  11, 13, 8,  1,  4, 10, 7,  9,  5,  0, 15, 14, 2,  3, 12},
    {13, 2,  8,  4, 6,  15, 11, 1,  10, 9,  3,  14, 5,  0,  12, 7,
     1,  15, 13, 8, 10, 3,  7,  4,  12, 5,  6,  11, 0,  14, 9,  2,
     7,  11, 4,  1, 9,  12, 14, 2,  0,  6,  10, 13, 15, 3,  5,  8,
     2,  1,  14, 7, 4,  10, 8,  13, 15, 12, 9,  0,  3,  5,  6,  11}};

// Gather the bits named by a FIPS table: output bit k (counting from the MSB
// of an out_width-bit result) is input bit table[k] of an in_width-bit value.
inline constexpr std::uint64_t permute(std::uint64_t in, int in_width,
                                       const std::uint8_t* table,
                                       int out_width) {
  std::uint64_t out = 0;
  for (int k = 0; k < out_width; ++k) {
    out = (out << 1) | ((in >> (in_width - table[k])) & 1);
  }
  return out;
}

inline constexpr std::uint32_t rotate28(std::uint32_t half, int by) {
  return ((half << by) | (half >> (28 - by))) & 0x0FFFFFFFu;
}

inline std::uint32_t feistel(std::uint32_t right, std::uint64_t subkey) {
  const std::uint64_t expanded =
      permute(right, 32, kExpansion, 48) ^ subkey;
  std::uint32_t sbox_out = 0;
  for (int i = 0; i < 8; ++i) {
    const unsigned six = (expanded >> (42 - 6 * i)) & 0x3F;
    const unsigned row = ((six & 0x20) >> 4) | (six & 1);
    const unsigned col = (six >> 1) & 0xF;
    sbox_out = (sbox_out << 4) | kSBox[i][16 * row + col];
  }
  return static_cast<std::uint32_t>(
      permute(sbox_out, 32, kRoundPermutation, 32));
}

}  // namespace detail

// A DES key with its 16-round subkey schedule precomputed at construction.
// The schedule reads only the 56 non-parity bits, so keys differing in the
// parity positions are interchangeable.
class DesKey {
 public:
  explicit DesKey(std::uint64_t raw) : raw_(raw) {
    std::uint64_t cd = detail::permute(raw, 64, detail::kPermutedChoice1, 56);
    std::uint32_t c = static_cast<std::uint32_t>(cd >> 28);
    std::uint32_t d = static_cast<std::uint32_t>(cd & 0x0FFFFFFFu);
    for (int round = 0; round < 16; ++round) {
      c = detail::rotate28(c, detail::kRotations[round]);
      d = detail::rotate28(d, detail::kRotations[round]);
      const std::uint64_t merged = (static_cast<std::uint64_t>(c) << 28) | d;
      subkeys_[round] = detail::permute(merged, 56, detail::kPermutedChoice2, 48);
    }
  }

  static DesKey from_bytes(BytesView b) {
    if (b.size() != 8) throw Error(ErrorCode::BadLength, "key needs 8 bytes");
    return DesKey(get_u64_be(b));
  }

  std::uint64_t raw() const { return raw_; }
  const std::array<std::uint64_t, 16>& subkeys() const { return subkeys_; }

 private:
  std::uint64_t raw_;
  std::array<std::uint64_t, 16> subkeys_{};
};

// Ordered triple of DES keys (168 key bits total). Equal members are allowed;
// that is the single-DES compatibility case.
struct KeyBundle {
  DesKey k1, k2, k3;

  static KeyBundle from_bytes(BytesView b) {
    if (b.size() != 24) throw Error(ErrorCode::BadLength, "bundle needs 24 bytes");
    return {DesKey::from_bytes(b.subspan(0, 8)), DesKey::from_bytes(b.subspan(8, 8)),
            DesKey::from_bytes(b.subspan(16, 8))};
  }

  static KeyBundle all_zero() { return {DesKey(0), DesKey(0), DesKey(0)}; }

  Bytes to_bytes() const {
    Bytes out;
    for (const DesKey* k : {&k1, &k2, &k3}) {
      for (std::uint8_t byte : Block{k->raw()}.to_bytes()) out.push_back(byte);
    }
    return out;
  }
};

namespace detail {

inline Block des_rounds(Block in, const std::array<std::uint64_t, 16>& subkeys,
                        bool reverse) {
  const std::uint64_t permuted = permute(in.raw, 64, kInitialPermutation, 64);
  std::uint32_t left = static_cast<std::uint32_t>(permuted >> 32);
  std::uint32_t right = static_cast<std::uint32_t>(permuted);
  for (int round = 0; round < 16; ++round) {
    const std::uint64_t subkey = subkeys[reverse ? 15 - round : round];
    const std::uint32_t next = left ^ feistel(right, subkey);
    left = right;
    right = next;
  }
  // Halves swap once more before the final permutation.
  const std::uint64_t preoutput =
      (static_cast<std::uint64_t>(right) << 32) | left;
  return {permute(preoutput, 64, kFinalPermutation, 64)};
}

}  // namespace detail

inline Block des_encrypt_block(Block p, const DesKey& k) {
  return detail::des_rounds(p, k.subkeys(), /*reverse=*/false);
}

inline Block des_decrypt_block(Block c, const DesKey& k) {
  return detail::des_rounds(c, k.subkeys(), /*reverse=*/true);
}

// TDEA in encrypt-decrypt-encrypt order, k1 applied first. With
// k1 = k2 = k3 the middle decryption cancels and the result is single DES.
inline Block tdea_encrypt_block(Block p, const KeyBundle& b) {
  return des_encrypt_block(des_decrypt_block(des_encrypt_block(p, b.k1), b.k2),
                           b.k3);
}

inline Block tdea_decrypt_block(Block c, const KeyBundle& b) {
  return des_decrypt_block(des_encrypt_block(des_decrypt_block(c, b.k3), b.k2),
                           b.k1);
}

// Cipher-block chaining over TDEA. Padding appends k bytes of value k,
// 1 <= k <= 8, so at least one byte is always added and stripping is
// unambiguous.
inline Bytes cbc_seal(BytesView msg, const KeyBundle& bundle, Block iv) {
  const std::size_t pad = 8 - msg.size() % 8;
  Bytes buf(msg.begin(), msg.end());
  buf.insert(buf.end(), pad, static_cast<std::uint8_t>(pad));

  Bytes out;
  out.reserve(buf.size());
  Block prev = iv;
  for (std::size_t i = 0; i < buf.size(); i += 8) {
    const Block x = Block::from_bytes(BytesView(buf).subspan(i, 8)) ^ prev;
    prev = tdea_encrypt_block(x, bundle);
    for (std::uint8_t byte : prev.to_bytes()) out.push_back(byte);
  }
  return out;
}

inline Bytes cbc_open(BytesView ct, const KeyBundle& bundle, Block iv) {
  if (ct.empty() || ct.size() % 8 != 0)
    throw Error(ErrorCode::MalformedCiphertext, "ciphertext not block-aligned");

  Bytes out;
  out.reserve(ct.size());
  Block prev = iv;
  for (std::size_t i = 0; i < ct.size(); i += 8) {
    const Block c = Block::from_bytes(ct.subspan(i, 8));
    const Block p = tdea_decrypt_block(c, bundle) ^ prev;
    prev = c;
    for (std::uint8_t byte : p.to_bytes()) out.push_back(byte);
  }

  const std::uint8_t pad = out.back();
  if (pad < 1 || pad > 8) throw Error(ErrorCode::PaddingError);
  for (std::size_t i = out.size() - pad; i < out.size(); ++i) {
    if (out[i] != pad) throw Error(ErrorCode::PaddingError);
  }
  out.resize(out.size() - pad);
  return out;
}

// Length-prefixed CBC-MAC under a zero IV: the input is the 8-byte
// big-endian message length, then the message, zero-filled to a block
// boundary; the MAC is the final chaining block. The length prefix closes
// the classic extension forgery on variable-length CBC-MAC.
inline Block cbc_mac(BytesView msg, const KeyBundle& bundle) {
  Bytes buf;
  put_u64_be(buf, msg.size());
  append(buf, msg);
  buf.insert(buf.end(), (8 - buf.size() % 8) % 8, 0);

  Block acc{0};
  for (std::size_t i = 0; i < buf.size(); i += 8) {
    acc = tdea_encrypt_block(Block::from_bytes(BytesView(buf).subspan(i, 8)) ^ acc,
                             bundle);
  }
  return acc;
}

}  // namespace setforge::blockcipher
