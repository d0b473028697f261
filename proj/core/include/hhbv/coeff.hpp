#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include "hhbv/errors.hpp"

namespace hhbv {

enum class RingKind { Integers, Rationals, IntegersMod };

// Which coefficient ring we compute over. Values are carried around as raw
// mpq_class and canonicalised by reduce(); integers keep denominator 1.
class CoeffRingTag {
 public:
  CoeffRingTag() = default;  // Z

  static CoeffRingTag integers() { return {}; }
  static CoeffRingTag rationals();
  static CoeffRingTag integers_mod(const mpz_class& modulus);
  static CoeffRingTag integers_mod(std::int64_t modulus) { return integers_mod(mpz_class(static_cast<long>(modulus))); }
  // "Z", "Q", "Z/4", "F_5", "GF(7)"
  static CoeffRingTag parse(std::string_view spec);

  RingKind kind() const noexcept { return kind_; }
  bool is_modular() const noexcept { return kind_ == RingKind::IntegersMod; }
  const mpz_class& modulus() const;
  // 0 for Z and Q
  mpz_class characteristic() const;
  bool is_field() const;
  bool is_integral_domain() const;

  // Canonical form in place: residue in [0,m), lowest terms, or checks integrality.
  void reduce(mpq_class& value) const;
  mpq_class make(long value) const;
  mpq_class make(const mpq_class& value) const;

  bool is_unit(const mpq_class& value) const;
  mpq_class inverse(const mpq_class& value) const;  // throws NonUnit

  std::string to_string() const;

  friend bool operator==(const CoeffRingTag& a, const CoeffRingTag& b) {
    if (a.kind_ != b.kind_) return false;
    return a.kind_ != RingKind::IntegersMod || a.modulus_ == b.modulus_;
  }

 private:
  RingKind kind_ = RingKind::Integers;
  mpz_class modulus_ = 0;
};

void require_same_ring(const CoeffRingTag& a, const CoeffRingTag& b);

class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(CoeffRingTag ring, long value);
  Coefficient(CoeffRingTag ring, const mpq_class& value);

  const CoeffRingTag& ring() const noexcept { return ring_; }
  const mpq_class& value() const noexcept { return value_; }
  bool is_zero() const { return value_ == 0; }
  bool is_one() const { return value_ == 1; }
  bool is_unit() const { return ring_.is_unit(value_); }

  Coefficient operator-() const;
  friend Coefficient operator+(const Coefficient& x, const Coefficient& y);
  friend Coefficient operator-(const Coefficient& x, const Coefficient& y);
  friend Coefficient operator*(const Coefficient& x, const Coefficient& y);
  friend bool operator==(const Coefficient& x, const Coefficient& y) {
    return x.ring_ == y.ring_ && x.value_ == y.value_;
  }

  std::string to_string() const;

 private:
  CoeffRingTag ring_;
  mpq_class value_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Coefficient& x);

enum class ArithOp { Add, Mul, Neg };

Coefficient coeff_arith(ArithOp op, const Coefficient& x, const Coefficient& y);
Coefficient coeff_invert(const Coefficient& x);

// Decimal string for an exact scalar ("3", "-7/2").
std::string scalar_to_string(const mpq_class& v);

}  // namespace hhbv
