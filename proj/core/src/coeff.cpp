#include "hhbv/coeff.hpp"

#include <algorithm>
#include <cctype>
#include <ostream>

namespace hhbv {

namespace {

std::string compact(std::string_view s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

mpz_class parse_modulus(const std::string& digits, std::string_view spec) {
  if (digits.empty() || !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("bad ring spec: " + std::string(spec));
  return mpz_class(digits);
}

}  // namespace

CoeffRingTag CoeffRingTag::rationals() {
  CoeffRingTag tag;
  tag.kind_ = RingKind::Rationals;
  return tag;
}

CoeffRingTag CoeffRingTag::integers_mod(const mpz_class& modulus) {
  if (modulus < 2) throw DomainError("modulus must be at least 2, got " + modulus.get_str());
  CoeffRingTag tag;
  tag.kind_ = RingKind::IntegersMod;
  tag.modulus_ = modulus;
  return tag;
}

CoeffRingTag CoeffRingTag::parse(std::string_view spec) {
  const std::string s = compact(spec);
  if (s == "Z" || s == "ZZ") return integers();
  if (s == "Q" || s == "QQ") return rationals();
  if (s.starts_with("Z/")) return integers_mod(parse_modulus(s.substr(2), spec));
  if (s.starts_with("F_")) return integers_mod(parse_modulus(s.substr(2), spec));
  if (s.starts_with("GF(") && s.ends_with(")")) return integers_mod(parse_modulus(s.substr(3, s.size() - 4), spec));
  throw ParseError("unknown ring spec: " + std::string(spec));
}

const mpz_class& CoeffRingTag::modulus() const {
  if (kind_ != RingKind::IntegersMod) throw DomainError("ring " + to_string() + " has no modulus");
  return modulus_;
}

mpz_class CoeffRingTag::characteristic() const { return kind_ == RingKind::IntegersMod ? modulus_ : mpz_class(0); }

bool CoeffRingTag::is_field() const {
  switch (kind_) {
    case RingKind::Integers: return false;
    case RingKind::Rationals: return true;
    case RingKind::IntegersMod: return mpz_probab_prime_p(modulus_.get_mpz_t(), 30) != 0;
  }
  return false;
}

bool CoeffRingTag::is_integral_domain() const { return kind_ != RingKind::IntegersMod || is_field(); }

void CoeffRingTag::reduce(mpq_class& value) const {
  switch (kind_) {
    case RingKind::Rationals:
      value.canonicalize();
      return;
    case RingKind::Integers:
      value.canonicalize();
      if (value.get_den() != 1) throw DomainError("non-integral value " + value.get_str() + " over Z");
      return;
    case RingKind::IntegersMod: {
      value.canonicalize();
      mpz_class num = value.get_num();
      if (value.get_den() != 1) {
        // a/b with b a unit mod m
        mpz_class inv;
        if (mpz_invert(inv.get_mpz_t(), value.get_den_mpz_t(), modulus_.get_mpz_t()) == 0)
          throw NonUnit("denominator " + value.get_den().get_str() + " is not invertible mod " + modulus_.get_str());
        num *= inv;
      }
      mpz_class r;
      mpz_fdiv_r(r.get_mpz_t(), num.get_mpz_t(), modulus_.get_mpz_t());
      value = r;
      return;
    }
  }
}

mpq_class CoeffRingTag::make(long value) const {
  mpq_class v(value);
  reduce(v);
  return v;
}

mpq_class CoeffRingTag::make(const mpq_class& value) const {
  mpq_class v(value);
  reduce(v);
  return v;
}

bool CoeffRingTag::is_unit(const mpq_class& value) const {
  switch (kind_) {
    case RingKind::Rationals: return value != 0;
    case RingKind::Integers: return value == 1 || value == -1;
    case RingKind::IntegersMod: {
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), value.get_num_mpz_t(), modulus_.get_mpz_t());
      return g == 1;
    }
  }
  return false;
}

mpq_class CoeffRingTag::inverse(const mpq_class& value) const {
  if (!is_unit(value)) throw NonUnit(scalar_to_string(value) + " is not a unit in " + to_string());
  switch (kind_) {
    case RingKind::Rationals: return 1 / value;
    case RingKind::Integers: return value;
    case RingKind::IntegersMod: {
      mpz_class inv;
      mpz_invert(inv.get_mpz_t(), value.get_num_mpz_t(), modulus_.get_mpz_t());
      return mpq_class(inv);
    }
  }
  return value;
}

std::string CoeffRingTag::to_string() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::IntegersMod: return "Z/" + modulus_.get_str();
  }
  return "?";
}

void require_same_ring(const CoeffRingTag& a, const CoeffRingTag& b) {
  if (!(a == b)) throw RingMismatch("ring mismatch: " + a.to_string() + " vs " + b.to_string());
}

Coefficient::Coefficient(CoeffRingTag ring, long value) : ring_(std::move(ring)), value_(ring_.make(value)) {}

Coefficient::Coefficient(CoeffRingTag ring, const mpq_class& value) : ring_(std::move(ring)), value_(ring_.make(value)) {}

Coefficient Coefficient::operator-() const { return Coefficient(ring_, mpq_class(-value_)); }

Coefficient operator+(const Coefficient& x, const Coefficient& y) {
  require_same_ring(x.ring_, y.ring_);
  return Coefficient(x.ring_, mpq_class(x.value_ + y.value_));
}

Coefficient operator-(const Coefficient& x, const Coefficient& y) {
  require_same_ring(x.ring_, y.ring_);
  return Coefficient(x.ring_, mpq_class(x.value_ - y.value_));
}

Coefficient operator*(const Coefficient& x, const Coefficient& y) {
  require_same_ring(x.ring_, y.ring_);
  return Coefficient(x.ring_, mpq_class(x.value_ * y.value_));
}

std::string Coefficient::to_string() const { return scalar_to_string(value_); }

Coefficient coeff_arith(ArithOp op, const Coefficient& x, const Coefficient& y) {
  switch (op) {
    case ArithOp::Add: return x + y;
    case ArithOp::Mul: return x * y;
    case ArithOp::Neg: return -x;
  }
  return x;
}

Coefficient coeff_invert(const Coefficient& x) { return Coefficient(x.ring(), x.ring().inverse(x.value())); }

std::string scalar_to_string(const mpq_class& v) { return v.get_str(); }

std::ostream& operator<<(std::ostream& os, const Coefficient& x) { return os << x.to_string(); }

}  // namespace hhbv
