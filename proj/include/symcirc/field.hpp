#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "symcirc/error.hpp"

namespace symcirc {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// num/den in lowest terms. Boost's two-argument constructor rejects negative
/// denominators, so the sign is moved to the numerator first.
inline Rational make_rational(BigInt num, BigInt den) {
  if (den == 0) throw InvalidArgument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

/// Field descriptor: the rationals, or the prime field F_p.
class Field {
 public:
  enum class Kind { Rational, Prime };

  static Field rationals() { return Field(Kind::Rational, 0); }

  static Field prime(std::uint64_t p) {
    if (!is_prime(p)) throw InvalidArgument("F_p requires a prime, got " + std::to_string(p));
    if (p >= (std::uint64_t{1} << 62)) throw InvalidArgument("prime too large: " + std::to_string(p));
    return Field(Kind::Prime, p);
  }

  /// Parses "Q" or "Fp:<prime>".
  static Field parse(std::string_view text) {
    if (text == "Q") return rationals();
    if (text.substr(0, 3) == "Fp:") {
      std::string digits(text.substr(3));
      if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
        throw InvalidArgument("malformed field descriptor '" + std::string(text) + "'");
      return prime(std::stoull(digits));
    }
    throw InvalidArgument("unknown field '" + std::string(text) + "' (expected Q or Fp:<prime>)");
  }

  Kind kind() const { return kind_; }
  bool is_rational() const { return kind_ == Kind::Rational; }
  std::uint64_t characteristic() const { return kind_ == Kind::Rational ? 0 : p_; }

  std::string to_string() const {
    return kind_ == Kind::Rational ? "Q" : "Fp:" + std::to_string(p_);
  }

  friend bool operator==(const Field&, const Field&) = default;
  friend auto operator<=>(const Field&, const Field&) = default;

  static bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

/// An exact element of a Field. Rationals are kept in lowest terms by the
/// underlying cpp_rational; F_p elements are stored as their representative
/// in [0, p).
class FieldValue {
 public:
  FieldValue() : field_(Field::rationals()) {}

  static FieldValue from_int(const Field& field, const BigInt& value) {
    FieldValue v(field);
    if (field.is_rational()) {
      v.q_ = Rational(value);
    } else {
      BigInt r = value % BigInt(field.characteristic());
      if (r < 0) r += field.characteristic();
      v.r_ = static_cast<std::uint64_t>(r);
    }
    return v;
  }

  static FieldValue from_int(const Field& field, long long value) {
    return from_int(field, BigInt(value));
  }

  static FieldValue from_rational(const Field& field, const Rational& value) {
    if (field.is_rational()) {
      FieldValue v(field);
      v.q_ = value;
      return v;
    }
    return from_int(field, numerator(value)) / from_int(field, denominator(value));
  }

  static FieldValue zero(const Field& field) { return from_int(field, 0); }
  static FieldValue one(const Field& field) { return from_int(field, 1); }

  /// Parses an integer or "a/b" fraction. Fractions in F_p are interpreted as
  /// a * b^{-1}.
  static FieldValue parse(const Field& field, std::string_view text) {
    auto parse_int = [&](std::string_view s) {
      std::string t(s);
      std::size_t start = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
      if (t.size() == start || t.find_first_not_of("0123456789", start) != std::string::npos)
        throw InvalidArgument("malformed field value '" + std::string(text) + "'");
      if (t[0] == '+') t.erase(0, 1);
      return BigInt(t);
    };
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return from_int(field, parse_int(text));
    BigInt num = parse_int(text.substr(0, slash));
    BigInt den = parse_int(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    if (field.is_rational()) return from_rational(field, make_rational(num, den));
    return from_int(field, num) / from_int(field, den);
  }

  const Field& field() const { return field_; }
  bool is_zero() const { return field_.is_rational() ? q_ == 0 : r_ == 0; }
  bool is_one() const { return field_.is_rational() ? q_ == 1 : r_ == 1; }

  const Rational& rational() const { return q_; }
  std::uint64_t residue() const { return r_; }

  std::string to_string() const {
    if (!field_.is_rational()) return std::to_string(r_);
    if (denominator(q_) == 1) return numerator(q_).str();
    return numerator(q_).str() + "/" + denominator(q_).str();
  }

  FieldValue operator+(const FieldValue& o) const {
    check_same(o);
    FieldValue v(field_);
    if (field_.is_rational()) {
      v.q_ = q_ + o.q_;
    } else {
      std::uint64_t p = field_.characteristic();
      v.r_ = (r_ + o.r_) % p;
    }
    return v;
  }

  FieldValue operator-() const {
    FieldValue v(field_);
    if (field_.is_rational()) {
      v.q_ = -q_;
    } else {
      v.r_ = r_ == 0 ? 0 : field_.characteristic() - r_;
    }
    return v;
  }

  FieldValue operator-(const FieldValue& o) const { return *this + (-o); }

  FieldValue operator*(const FieldValue& o) const {
    check_same(o);
    FieldValue v(field_);
    if (field_.is_rational()) {
      v.q_ = q_ * o.q_;
    } else {
      unsigned __int128 prod = static_cast<unsigned __int128>(r_) * o.r_;
      v.r_ = static_cast<std::uint64_t>(prod % field_.characteristic());
    }
    return v;
  }

  FieldValue inverse() const {
    if (is_zero()) throw InvalidArgument("division by zero");
    FieldValue v(field_);
    if (field_.is_rational()) {
      v.q_ = Rational(1) / q_;
    } else {
      v = pow(field_.characteristic() - 2);
    }
    return v;
  }

  FieldValue operator/(const FieldValue& o) const {
    check_same(o);
    return *this * o.inverse();
  }

  FieldValue& operator+=(const FieldValue& o) { return *this = *this + o; }
  FieldValue& operator*=(const FieldValue& o) { return *this = *this * o; }

  /// x^e with x^0 = 1 (including 0^0).
  FieldValue pow(std::uint64_t e) const {
    FieldValue result = one(field_);
    FieldValue base = *this;
    while (e > 0) {
      if (e & 1) result *= base;
      base *= base;
      e >>= 1;
    }
    return result;
  }

  friend bool operator==(const FieldValue& a, const FieldValue& b) {
    if (a.field_ != b.field_) return false;
    return a.field_.is_rational() ? a.q_ == b.q_ : a.r_ == b.r_;
  }

  // Fields first, then value order (rationals by value, F_p by representative).
  friend std::strong_ordering operator<=>(const FieldValue& a, const FieldValue& b) {
    if (auto c = a.field_ <=> b.field_; c != 0) return c;
    if (a.field_.is_rational()) {
      if (a.q_ < b.q_) return std::strong_ordering::less;
      if (b.q_ < a.q_) return std::strong_ordering::greater;
      return std::strong_ordering::equal;
    }
    return a.r_ <=> b.r_;
  }

 private:
  explicit FieldValue(const Field& field) : field_(field) {}

  void check_same(const FieldValue& o) const {
    if (field_ != o.field_)
      throw FieldMismatch("field mismatch: " + field_.to_string() + " vs " + o.field_.to_string());
  }

  Field field_;
  Rational q_{0};
  std::uint64_t r_ = 0;
};

}  // namespace symcirc
