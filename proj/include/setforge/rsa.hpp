#pragma once

#include <atomic>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include "setforge/bigint.hpp"
#include "setforge/bytes.hpp"
#include "setforge/error.hpp"
#include "setforge/numtheory.hpp"
#include "setforge/rng.hpp"

// Textbook RSA: the encryption path (confidentiality under the recipient's
// public key), the authentication path (message-recovery signatures under the
// sender's private key), and the combined signed-encryption of both.
//
// Deliberately unpadded. Textbook RSA is multiplicative --
// E(a)*E(b) = E(a*b mod n) -- which is exactly why deployed systems pad;
// the property is asserted in the tests rather than hidden.

namespace setforge::rsa {

struct RsaPublicKey {
  UnsignedBig n;
  UnsignedBig e;

  RsaPublicKey(UnsignedBig n_, UnsignedBig e_)
      : n(std::move(n_)), e(std::move(e_)) {
    if (e <= UnsignedBig(1) || e >= n || !e.is_odd())
      throw Error(ErrorCode::BadParameters, "public exponent");
  }
};

struct RsaPrivateKey {
  UnsignedBig n;
  UnsignedBig d;
  UnsignedBig p;
  UnsignedBig q;
};

struct RsaKeyPair {
  RsaPublicKey pub;
  RsaPrivateKey priv;
};

namespace detail {

// Counts modular exponentiations so tests can assert how much asymmetric
// work an operation really performs.
inline std::atomic<std::uint64_t> residue_op_count{0};

inline UnsignedBig residue_op(const UnsignedBig& value, const UnsignedBig& exp,
                              const UnsignedBig& n) {
  residue_op_count.fetch_add(1, std::memory_order_relaxed);
  return numtheory::mod_pow(value, exp, n);
}

}  // namespace detail

inline UnsignedBig encrypt_residue(const UnsignedBig& m, const RsaPublicKey& key) {
  if (m >= key.n) throw Error(ErrorCode::MessageTooLarge);
  return detail::residue_op(m, key.e, key.n);
}

inline UnsignedBig decrypt_residue(const UnsignedBig& c, const RsaPrivateKey& key) {
  if (c >= key.n) throw Error(ErrorCode::MessageTooLarge);
  return detail::residue_op(c, key.d, key.n);
}

inline UnsignedBig sign_residue(const UnsignedBig& m, const RsaPrivateKey& key) {
  if (m >= key.n) throw Error(ErrorCode::MessageTooLarge);
  return detail::residue_op(m, key.d, key.n);
}

inline UnsignedBig verify_residue(const UnsignedBig& s, const RsaPublicKey& key) {
  if (s >= key.n) throw Error(ErrorCode::MessageTooLarge);
  return detail::residue_op(s, key.e, key.n);
}

// Deterministic keypair from known primes; the test fixtures use this.
inline RsaKeyPair keypair_from_primes(const UnsignedBig& p, const UnsignedBig& q,
                                      const UnsignedBig& e) {
  if (p == q) throw Error(ErrorCode::BadParameters, "p == q");
  {
    SeededRng probe(0x5E7F04CE);
    if (!numtheory::is_probable_prime(p, 40, probe) ||
        !numtheory::is_probable_prime(q, 40, probe))
      throw Error(ErrorCode::BadParameters, "p, q must be prime");
  }
  const UnsignedBig phi = (p - UnsignedBig(1)) * (q - UnsignedBig(1));
  UnsignedBig d;
  try {
    d = numtheory::mod_inverse(e, phi);
  } catch (const Error&) {
    throw Error(ErrorCode::BadParameters, "e not coprime to phi(n)");
  }
  const UnsignedBig n = p * q;
  return {RsaPublicKey(n, e), RsaPrivateKey{n, d, p, q}};
}

// Fresh keypair: two bits/2-bit primes, regenerated until e is coprime to
// phi(n). n ends up with `bits` or `bits - 1` bits.
inline RsaKeyPair generate_keypair(std::size_t bits, const UnsignedBig& e,
                                   SeededRng& rng) {
  if (bits < 16 || bits % 2 != 0)
    throw Error(ErrorCode::BadParameters, "key size must be even and >= 16");
  if (!e.is_odd() || e < UnsignedBig(3))
    throw Error(ErrorCode::BadParameters, "public exponent must be odd and >= 3");
  for (;;) {
    const UnsignedBig p = numtheory::gen_prime(bits / 2, rng);
    const UnsignedBig q = numtheory::gen_prime(bits / 2, rng);
    if (p == q) continue;
    const UnsignedBig phi = (p - UnsignedBig(1)) * (q - UnsignedBig(1));
    UnsignedBig d;
    try {
      d = numtheory::mod_inverse(e, phi);
    } catch (const Error&) {
      continue;  // gcd(e, phi) != 1: draw new primes
    }
    const UnsignedBig n = p * q;
    return {RsaPublicKey(n, e), RsaPrivateKey{n, d, p, q}};
  }
}

namespace detail {

// Blockwise residue codec. With k the modulus byte length, each plaintext
// block is encoded into k-1 bytes as [length byte][payload][zero fill] --
// always strictly below 256^(k-1) <= n -- and each ciphertext block is the
// residue written in exactly k bytes. Every block except the last must be
// full, which makes the coding a bijection on its valid set.
inline std::size_t payload_capacity(std::size_t modulus_len, ErrorCode on_error) {
  if (modulus_len < 3)
    throw Error(on_error, "modulus too small for message blocks");
  return modulus_len - 2 < 255 ? modulus_len - 2 : 255;
}

inline Bytes apply_blockwise(BytesView msg, const UnsignedBig& n,
                             const UnsignedBig& exponent) {
  if (msg.empty()) return {};
  const std::size_t k = n.to_bytes_be().size();
  const std::size_t cap = payload_capacity(k, ErrorCode::BadParameters);

  Bytes out;
  for (std::size_t off = 0; off < msg.size(); off += cap) {
    const std::size_t len =
        msg.size() - off < cap ? msg.size() - off : cap;
    Bytes encoded(k - 1, 0);
    encoded[0] = static_cast<std::uint8_t>(len);
    std::copy(msg.begin() + off, msg.begin() + off + len, encoded.begin() + 1);
    const UnsignedBig residue =
        residue_op(UnsignedBig::from_bytes_be(encoded), exponent, n);
    append(out, residue.to_bytes_be_padded(k));
  }
  return out;
}

inline Bytes unapply_blockwise(BytesView blob, const UnsignedBig& n,
                               const UnsignedBig& exponent, ErrorCode on_error) {
  if (blob.empty()) return {};
  const std::size_t k = n.to_bytes_be().size();
  const std::size_t cap = payload_capacity(k, on_error);
  if (blob.size() % k != 0) throw Error(on_error, "length not a block multiple");

  Bytes out;
  for (std::size_t off = 0; off < blob.size(); off += k) {
    const UnsignedBig residue = UnsignedBig::from_bytes_be(blob.subspan(off, k));
    if (residue >= n) throw Error(on_error, "block exceeds modulus");
    const UnsignedBig decoded = residue_op(residue, exponent, n);
    if (decoded.to_bytes_be().size() > k - 1)
      throw Error(on_error, "decoded block too wide");
    const Bytes encoded = decoded.to_bytes_be_padded(k - 1);
    const std::size_t len = encoded[0];
    const bool last = off + k == blob.size();
    if (len == 0 || len > cap || (!last && len != cap))
      throw Error(on_error, "bad block length byte");
    for (std::size_t i = 1 + len; i < encoded.size(); ++i) {
      if (encoded[i] != 0) throw Error(on_error, "nonzero fill");
    }
    out.insert(out.end(), encoded.begin() + 1, encoded.begin() + 1 + len);
  }
  return out;
}

}  // namespace detail

inline Bytes encrypt_message(BytesView msg, const RsaPublicKey& key) {
  return detail::apply_blockwise(msg, key.n, key.e);
}

inline Bytes decrypt_message(BytesView ct, const RsaPrivateKey& key) {
  return detail::unapply_blockwise(ct, key.n, key.d,
                                   ErrorCode::MalformedCiphertext);
}

// Message-recovery signature: the same block scheme with the private
// exponent. Verification recovers the message, which is this toolkit's
// authentication criterion.
inline Bytes sign_message(BytesView msg, const RsaPrivateKey& key) {
  return detail::apply_blockwise(msg, key.n, key.d);
}

inline Bytes verify_message(BytesView blob, const RsaPublicKey& key) {
  return detail::unapply_blockwise(blob, key.n, key.e,
                                   ErrorCode::SignatureInvalid);
}

// Signed encryption: encrypt to the recipient first, then wrap the resulting
// ciphertext in a blockwise signature under the sender's key. The ciphertext
// is re-blocked for the signer's modulus, so mismatched key sizes are fine.
inline Bytes sign_then_encrypt(BytesView msg, const RsaPrivateKey& sender,
                               const RsaPublicKey& recipient) {
  return sign_message(encrypt_message(msg, recipient), sender);
}

// Unwrap order is the reverse of wrapping: strip the sender's signature
// first, then decrypt. Recovering well-formed plaintext is what
// authenticates the sender; any malformed layer means the signature did not
// verify.
inline Bytes decrypt_then_verify(BytesView blob, const RsaPrivateKey& recipient,
                                 const RsaPublicKey& sender) {
  try {
    const Bytes inner = verify_message(blob, sender);
    return decrypt_message(inner, recipient);
  } catch (const Error& err) {
    if (err.code() == ErrorCode::SignatureInvalid ||
        err.code() == ErrorCode::MalformedCiphertext)
      throw Error(ErrorCode::AuthenticationFailed);
    throw;
  }
}

// --- key files ----------------------------------------------------------
//
// Text format, LF line endings:
//   setforge-key v1
//   kind=public|private
//   n=<lowercase hex>
//   e=<hex>              (public)   or   d= p= q=   (private)
// Unknown lines are rejected.

inline std::string save_public_key(const RsaPublicKey& key) {
  std::string out = "setforge-key v1\nkind=public\n";
  out += "n=" + key.n.to_hex() + "\n";
  out += "e=" + key.e.to_hex() + "\n";
  return out;
}

inline std::string save_private_key(const RsaPrivateKey& key) {
  std::string out = "setforge-key v1\nkind=private\n";
  out += "n=" + key.n.to_hex() + "\n";
  out += "d=" + key.d.to_hex() + "\n";
  out += "p=" + key.p.to_hex() + "\n";
  out += "q=" + key.q.to_hex() + "\n";
  return out;
}

namespace detail {

struct ParsedKeyFile {
  bool is_public = false;
  UnsignedBig n, e, d, p, q;
};

inline ParsedKeyFile parse_key_file(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != "setforge-key v1")
    throw Error(ErrorCode::MalformedKeyFile, "bad header");
  if (!std::getline(in, line) ||
      (line != "kind=public" && line != "kind=private"))
    throw Error(ErrorCode::MalformedKeyFile, "bad kind");

  ParsedKeyFile parsed;
  parsed.is_public = line == "kind=public";
  bool seen_n = false, seen_e = false, seen_d = false, seen_p = false,
       seen_q = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || eq != 1)
      throw Error(ErrorCode::MalformedKeyFile, "unknown line");
    UnsignedBig value;
    try {
      value = UnsignedBig::from_hex(line.substr(2));
    } catch (const Error&) {
      throw Error(ErrorCode::MalformedKeyFile, "bad hex");
    }
    switch (line[0]) {
      case 'n': parsed.n = value; seen_n = true; break;
      case 'e': parsed.e = value; seen_e = true; break;
      case 'd': parsed.d = value; seen_d = true; break;
      case 'p': parsed.p = value; seen_p = true; break;
      case 'q': parsed.q = value; seen_q = true; break;
      default: throw Error(ErrorCode::MalformedKeyFile, "unknown line");
    }
  }
  if (parsed.is_public && !(seen_n && seen_e && !seen_d && !seen_p && !seen_q))
    throw Error(ErrorCode::MalformedKeyFile, "public key needs exactly n, e");
  if (!parsed.is_public && !(seen_n && seen_d && seen_p && seen_q && !seen_e))
    throw Error(ErrorCode::MalformedKeyFile, "private key needs n, d, p, q");
  return parsed;
}

}  // namespace detail

inline RsaPublicKey load_public_key(std::string_view text) {
  const auto parsed = detail::parse_key_file(text);
  if (!parsed.is_public)
    throw Error(ErrorCode::MalformedKeyFile, "expected a public key");
  return RsaPublicKey(parsed.n, parsed.e);
}

inline RsaPrivateKey load_private_key(std::string_view text) {
  const auto parsed = detail::parse_key_file(text);
  if (parsed.is_public)
    throw Error(ErrorCode::MalformedKeyFile, "expected a private key");
  return RsaPrivateKey{parsed.n, parsed.d, parsed.p, parsed.q};
}

}  // namespace setforge::rsa
