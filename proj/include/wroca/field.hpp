#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace wroca {

/// Which exact field the weights of an automaton live in: the rationals, or
/// GF(p) for a prime p < 2^31.
class FieldSpec {
 public:
  enum class Kind { Rational, PrimeField };

  static FieldSpec rational() { return FieldSpec(Kind::Rational, 0); }
  /// Throws InvalidArgument unless p is a prime below 2^31.
  static FieldSpec prime(std::uint64_t p);

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  /// Zero for the rationals.
  std::uint32_t modulus() const { return modulus_; }

  std::string to_string() const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(Kind kind, std::uint32_t modulus) : kind_(kind), modulus_(modulus) {}

  Kind kind_;
  std::uint32_t modulus_;
};

bool is_prime(std::uint64_t n);

/// An exact field element, always kept in canonical form: rationals fully
/// reduced with a positive denominator, residues in [0, p).
///
/// Combining elements of different fields throws FieldMismatch, so equality
/// of two elements is a plain structural comparison.
class FieldElement {
 public:
  /// Rational zero.
  FieldElement() : spec_(FieldSpec::rational()) {}

  static FieldElement zero(const FieldSpec& spec);
  static FieldElement one(const FieldSpec& spec);
  static FieldElement from_int(const FieldSpec& spec, long value);
  static FieldElement from_rational(const FieldSpec& spec, const mpq_class& value);
  /// Grammar: [+-]digits for GF(p); [+-]digits[/digits] for the rationals.
  static FieldElement parse(std::string_view text, const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  bool is_zero() const;
  bool is_one() const;

  /// Throws DivisionByZero on zero.
  FieldElement inverse() const;
  FieldElement operator-() const;

  FieldElement& operator+=(const FieldElement& rhs);
  FieldElement& operator-=(const FieldElement& rhs);
  FieldElement& operator*=(const FieldElement& rhs);
  FieldElement& operator/=(const FieldElement& rhs);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }

  friend bool operator==(const FieldElement& a, const FieldElement& b);

  std::string to_string() const;

  /// Only meaningful for rational elements.
  const mpq_class& rational_value() const { return rational_; }
  /// Only meaningful for GF(p) elements.
  std::uint32_t residue() const { return residue_; }

 private:
  explicit FieldElement(const FieldSpec& spec) : spec_(spec) {}
  void require_same_field(const FieldElement& other) const;

  FieldSpec spec_;
  mpq_class rational_;
  std::uint32_t residue_ = 0;
};

}  // namespace wroca
