#include "wroca/field.hpp"

#include <cctype>

#include "wroca/error.hpp"

namespace wroca {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::IntervalOutOfBounds: return "IntervalOutOfBounds";
    case ErrorCode::AlphabetMismatch: return "AlphabetMismatch";
    case ErrorCode::InvalidAutomaton: return "InvalidAutomaton";
    case ErrorCode::BoundTooLarge: return "BoundTooLarge";
    case ErrorCode::ResourceBudgetExceeded: return "ResourceBudgetExceeded";
    case ErrorCode::BudgetExceeded: return "BudgetExceeded";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::prime(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31)) {
    throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " must be below 2^31");
  }
  if (!is_prime(p)) {
    throw Error(ErrorCode::InvalidArgument, "modulus " + std::to_string(p) + " is not prime");
  }
  return FieldSpec(Kind::PrimeField, static_cast<std::uint32_t>(p));
}

std::string FieldSpec::to_string() const {
  if (is_rational()) return "Q";
  return "GF(" + std::to_string(modulus_) + ")";
}

FieldElement FieldElement::zero(const FieldSpec& spec) { return FieldElement(spec); }

FieldElement FieldElement::one(const FieldSpec& spec) { return from_int(spec, 1); }

FieldElement FieldElement::from_int(const FieldSpec& spec, long value) {
  FieldElement e(spec);
  if (spec.is_rational()) {
    e.rational_ = value;
  } else {
    long m = static_cast<long>(spec.modulus());
    long r = value % m;
    if (r < 0) r += m;
    e.residue_ = static_cast<std::uint32_t>(r);
  }
  return e;
}

FieldElement FieldElement::from_rational(const FieldSpec& spec, const mpq_class& value) {
  FieldElement e(spec);
  if (spec.is_rational()) {
    e.rational_ = value;
    e.rational_.canonicalize();
    return e;
  }
  mpz_class m = spec.modulus();
  mpz_class num = value.get_num() % m;
  mpz_class den = value.get_den() % m;
  if (num < 0) num += m;
  if (den < 0) den += m;
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "denominator vanishes in " + spec.to_string());
  FieldElement n(spec);
  n.residue_ = static_cast<std::uint32_t>(num.get_ui());
  FieldElement d(spec);
  d.residue_ = static_cast<std::uint32_t>(den.get_ui());
  return n / d;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

}  // namespace

FieldElement FieldElement::parse(std::string_view text, const FieldSpec& spec) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  std::string_view num_text = body;
  std::string_view den_text;
  auto slash = body.find('/');
  if (slash != std::string_view::npos) {
    if (!spec.is_rational()) {
      throw Error(ErrorCode::ParseError, "fractions are not accepted in " + spec.to_string() + ": '" +
                                             std::string(text) + "'");
    }
    num_text = body.substr(0, slash);
    den_text = body.substr(slash + 1);
    if (!all_digits(den_text)) throw Error(ErrorCode::ParseError, "malformed element '" + std::string(text) + "'");
  }
  if (!all_digits(num_text)) throw Error(ErrorCode::ParseError, "malformed element '" + std::string(text) + "'");

  mpz_class num(std::string(num_text), 10);
  mpz_class den = 1;
  if (!den_text.empty()) {
    den = mpz_class(std::string(den_text), 10);
    if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
  }
  if (negative) num = -num;
  mpq_class q(num, den);
  q.canonicalize();
  return from_rational(spec, q);
}

bool FieldElement::is_zero() const {
  return spec_.is_rational() ? sgn(rational_) == 0 : residue_ == 0;
}

bool FieldElement::is_one() const {
  return spec_.is_rational() ? rational_ == 1 : residue_ == 1;
}

void FieldElement::require_same_field(const FieldElement& other) const {
  if (!(spec_ == other.spec_)) {
    throw Error(ErrorCode::FieldMismatch, spec_.to_string() + " vs " + other.spec_.to_string());
  }
}

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  FieldElement e(spec_);
  if (spec_.is_rational()) {
    mpq_inv(e.rational_.get_mpq_t(), rational_.get_mpq_t());
    return e;
  }
  // Extended Euclid on (residue, p).
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = spec_.modulus(), new_r = residue_;
  while (new_r != 0) {
    std::int64_t quotient = r / new_r;
    std::int64_t tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += spec_.modulus();
  e.residue_ = static_cast<std::uint32_t>(t);
  return e;
}

FieldElement FieldElement::operator-() const {
  FieldElement e(spec_);
  if (spec_.is_rational()) {
    e.rational_ = -rational_;
  } else {
    e.residue_ = residue_ == 0 ? 0 : spec_.modulus() - residue_;
  }
  return e;
}

FieldElement& FieldElement::operator+=(const FieldElement& rhs) {
  require_same_field(rhs);
  if (spec_.is_rational()) {
    rational_ += rhs.rational_;
  } else {
    std::uint64_t s = std::uint64_t{residue_} + rhs.residue_;
    residue_ = static_cast<std::uint32_t>(s % spec_.modulus());
  }
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& rhs) {
  require_same_field(rhs);
  if (spec_.is_rational()) {
    rational_ -= rhs.rational_;
  } else {
    std::uint64_t s = std::uint64_t{residue_} + spec_.modulus() - rhs.residue_;
    residue_ = static_cast<std::uint32_t>(s % spec_.modulus());
  }
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& rhs) {
  require_same_field(rhs);
  if (spec_.is_rational()) {
    rational_ *= rhs.rational_;
  } else {
    std::uint64_t p = std::uint64_t{residue_} * rhs.residue_;
    residue_ = static_cast<std::uint32_t>(p % spec_.modulus());
  }
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& rhs) {
  require_same_field(rhs);
  return *this *= rhs.inverse();
}

bool operator==(const FieldElement& a, const FieldElement& b) {
  a.require_same_field(b);
  if (a.spec_.is_rational()) return a.rational_ == b.rational_;
  return a.residue_ == b.residue_;
}

std::string FieldElement::to_string() const {
  if (spec_.is_rational()) return rational_.get_str();
  return std::to_string(residue_);
}

}  // namespace wroca
