#pragma once

#include <string>
#include <string_view>
#include <utility>

#include "setforge/bytes.hpp"
#include "setforge/error.hpp"
#include "setforge/rsa.hpp"

// Toy certification authority: a certificate binds a subject name to an RSA
// public key under the issuer's blockwise message-recovery signature. One
// level only -- no chains, no expiry, no revocation.

namespace setforge::pki {

struct Certificate {
  std::string subject_name;
  rsa::RsaPublicKey subject_public_key;
  std::string issuer_name;
  Bytes signature;
};

struct CertificationAuthority {
  std::string name;
  rsa::RsaKeyPair keypair;

  CertificationAuthority(std::string name_, rsa::RsaKeyPair keypair_)
      : name(std::move(name_)), keypair(std::move(keypair_)) {
    if (name.empty()) throw Error(ErrorCode::EmptyField, "CA name");
  }
};

namespace detail {

inline void check_name(std::string_view name, std::string_view which) {
  if (name.empty()) throw Error(ErrorCode::EmptyField, std::string(which));
  if (name.size() > 255) throw Error(ErrorCode::FieldTooLong, std::string(which));
}

}  // namespace detail

// The deterministic signing target: four length-prefixed fields in fixed
// order (subject, issuer, n, e), bit-exact across implementations.
inline Bytes canonical_cert_bytes(std::string_view subject_name,
                                  const rsa::RsaPublicKey& subject_public_key,
                                  std::string_view issuer_name) {
  detail::check_name(subject_name, "subject name");
  detail::check_name(issuer_name, "issuer name");
  Bytes out;
  put_field(out, subject_name);
  put_field(out, issuer_name);
  put_field(out, subject_public_key.n.to_bytes_be());
  put_field(out, subject_public_key.e.to_bytes_be());
  return out;
}

inline Certificate issue_certificate(const CertificationAuthority& ca,
                                     std::string_view subject_name,
                                     const rsa::RsaPublicKey& subject_public_key) {
  const Bytes canonical =
      canonical_cert_bytes(subject_name, subject_public_key, ca.name);
  return Certificate{std::string(subject_name), subject_public_key, ca.name,
                     rsa::sign_message(canonical, ca.keypair.priv)};
}

// Strips the signature with the issuer's public key and compares against the
// recomputed canonical bytes. Structural failures are just "false".
inline bool verify_certificate(const Certificate& cert,
                               const rsa::RsaPublicKey& issuer_public) {
  try {
    const Bytes recovered = rsa::verify_message(cert.signature, issuer_public);
    const Bytes canonical = canonical_cert_bytes(
        cert.subject_name, cert.subject_public_key, cert.issuer_name);
    return recovered == canonical;
  } catch (const Error&) {
    return false;
  }
}

// --- certificate files ---------------------------------------------------
// Binary: magic "SFC1", canonical_cert_bytes, [4-byte length][signature].

inline Bytes save_certificate(const Certificate& cert) {
  Bytes out = to_bytes("SFC1");
  append(out, canonical_cert_bytes(cert.subject_name, cert.subject_public_key,
                                   cert.issuer_name));
  put_field(out, cert.signature);
  return out;
}

inline Certificate load_certificate(BytesView data) {
  if (data.size() < 4 || to_string(data.subspan(0, 4)) != "SFC1")
    throw Error(ErrorCode::MalformedCertificate, "bad magic");
  FieldReader reader(data.subspan(4), ErrorCode::MalformedCertificate);
  std::string subject = reader.text_field();
  std::string issuer = reader.text_field();
  const UnsignedBig n = UnsignedBig::from_bytes_be(reader.field());
  const UnsignedBig e = UnsignedBig::from_bytes_be(reader.field());
  Bytes signature = reader.field();
  reader.expect_done();
  detail::check_name(subject, "subject name");
  detail::check_name(issuer, "issuer name");
  try {
    return Certificate{std::move(subject), rsa::RsaPublicKey(n, e),
                       std::move(issuer), std::move(signature)};
  } catch (const Error&) {
    throw Error(ErrorCode::MalformedCertificate, "bad public key");
  }
}

}  // namespace setforge::pki
