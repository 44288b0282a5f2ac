#pragma once

#include <exception>
#include <string>
#include <string_view>

namespace setforge {

// Every failure the toolkit can report. The enumerator name doubles as the
// stable error string printed by the CLI, so renaming one is a wire change.
enum class ErrorCode {
  // numtheory
  ZeroModulus,
  NotInvertible,
  BadParameters,
  // rsa
  MessageTooLarge,
  MalformedCiphertext,
  AuthenticationFailed,
  MalformedKeyFile,
  // blockcipher
  PaddingError,
  BadLength,
  // pki
  EmptyField,
  FieldTooLong,
  MalformedCertificate,
  // envelope
  WrongRecipient,
  SignatureInvalid,
  MalformedEnvelope,
  // channel
  NoCommonStrength,
  CertificateRejected,
  MacFailure,
  ReplayOrReorder,
  // setflow
  DuplicateName,
  AmountMismatch,
  OrderIdMismatch,
  DuplicateOrder,
  DuplicateAuthorization,
  CardUnknown,
  CardExpired,
  InsufficientFunds,
  AmountDisagreement,
  MalformedCard,
  SenderMismatch,
  UnexpectedMessage,
  MalformedMessage,
  // cracker
  IndexOutOfRange,
  NotFound,
  BadRate,
  // cli
  IoError,
};

constexpr std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroModulus: return "ZeroModulus";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::BadParameters: return "BadParameters";
    case ErrorCode::MessageTooLarge: return "MessageTooLarge";
    case ErrorCode::MalformedCiphertext: return "MalformedCiphertext";
    case ErrorCode::AuthenticationFailed: return "AuthenticationFailed";
    case ErrorCode::MalformedKeyFile: return "MalformedKeyFile";
    case ErrorCode::PaddingError: return "PaddingError";
    case ErrorCode::BadLength: return "BadLength";
    case ErrorCode::EmptyField: return "EmptyField";
    case ErrorCode::FieldTooLong: return "FieldTooLong";
    case ErrorCode::MalformedCertificate: return "MalformedCertificate";
    case ErrorCode::WrongRecipient: return "WrongRecipient";
    case ErrorCode::SignatureInvalid: return "SignatureInvalid";
    case ErrorCode::MalformedEnvelope: return "MalformedEnvelope";
    case ErrorCode::NoCommonStrength: return "NoCommonStrength";
    case ErrorCode::CertificateRejected: return "CertificateRejected";
    case ErrorCode::MacFailure: return "MacFailure";
    case ErrorCode::ReplayOrReorder: return "ReplayOrReorder";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::AmountMismatch: return "AmountMismatch";
    case ErrorCode::OrderIdMismatch: return "OrderIdMismatch";
    case ErrorCode::DuplicateOrder: return "DuplicateOrder";
    case ErrorCode::DuplicateAuthorization: return "DuplicateAuthorization";
    case ErrorCode::CardUnknown: return "CardUnknown";
    case ErrorCode::CardExpired: return "CardExpired";
    case ErrorCode::InsufficientFunds: return "InsufficientFunds";
    case ErrorCode::AmountDisagreement: return "AmountDisagreement";
    case ErrorCode::MalformedCard: return "MalformedCard";
    case ErrorCode::SenderMismatch: return "SenderMismatch";
    case ErrorCode::UnexpectedMessage: return "UnexpectedMessage";
    case ErrorCode::MalformedMessage: return "MalformedMessage";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::BadRate: return "BadRate";
    case ErrorCode::IoError: return "IoError";
  }
  return "UnknownError";
}

class Error : public std::exception {
 public:
  explicit Error(ErrorCode code, std::string detail = {})
      : code_(code), what_(error_name(code)) {
    if (!detail.empty()) {
      what_ += ": ";
      what_ += detail;
    }
  }

  ErrorCode code() const noexcept { return code_; }
  std::string_view name() const noexcept { return error_name(code_); }
  const char* what() const noexcept override { return what_.c_str(); }

 private:
  ErrorCode code_;
  std::string what_;
};

}  // namespace setforge
