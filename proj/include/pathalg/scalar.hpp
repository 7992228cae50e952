// Exact scalar types used as Eigen scalars: arbitrary-precision rationals and
// residues modulo a prime p < 2^31.
#ifndef PATHALG_SCALAR_HPP
#define PATHALG_SCALAR_HPP

#include <cstdint>
#include <functional>
#include <ostream>
#include <random>
#include <string>

#include <gmpxx.h>

#include <Eigen/Core>

#include "pathalg/errors.hpp"

namespace pathalg {

/// The ground field k.
struct FieldDescriptor {
  enum class Kind { Rationals, PrimeField };

  Kind kind = Kind::Rationals;
  std::uint32_t characteristic = 0;

  static FieldDescriptor rationals() { return {}; }
  /// Throws InputError unless p is a prime below 2^31.
  static FieldDescriptor prime_field(std::uint64_t p);

  std::string name() const;
  bool operator==(const FieldDescriptor&) const = default;
};

bool is_prime(std::uint64_t n);

class Rational {
 public:
  Rational() = default;
  Rational(long n) : q_(n) {}  // NOLINT: implicit, Eigen builds Scalar(0) / Scalar(1)
  Rational(const mpz_class& num, const mpz_class& den);
  explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

  /// Parses "a" or "a/b" (optional leading sign).
  static Rational parse(const std::string& text);

  const mpq_class& value() const { return q_; }
  mpz_class numerator() const { return q_.get_num(); }
  mpz_class denominator() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_one() const { return q_ == 1; }
  Rational inverse() const;
  std::string str() const { return q_.get_str(); }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.q_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

/// Residue modulo a prime carried with its modulus. A value built from a bare
/// integer (modulus 0) is an unbound literal and binds to the modulus of the
/// first bound operand it meets; Eigen relies on this for Scalar(0) and Scalar(1).
class Modp {
 public:
  Modp() = default;
  Modp(long n) : v_(n) {}  // NOLINT: implicit literal
  Modp(std::int64_t value, std::uint32_t p);

  std::uint32_t modulus() const { return p_; }
  /// Residue in [0, p); for an unbound literal, the literal itself.
  std::int64_t residue() const { return v_; }

  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }
  Modp inverse() const;
  Modp pow(std::uint64_t e) const;
  std::string str() const { return std::to_string(v_); }

  Modp& operator+=(const Modp& o);
  Modp& operator-=(const Modp& o);
  Modp& operator*=(const Modp& o);
  Modp& operator/=(const Modp& o) { return *this *= o.inverse(); }

  friend Modp operator+(Modp a, const Modp& b) { return a += b; }
  friend Modp operator-(Modp a, const Modp& b) { return a -= b; }
  friend Modp operator*(Modp a, const Modp& b) { return a *= b; }
  friend Modp operator/(Modp a, const Modp& b) { return a /= b; }
  friend Modp operator-(const Modp& a);

  friend bool operator==(const Modp& a, const Modp& b);
  friend bool operator!=(const Modp& a, const Modp& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const Modp& r) { return os << r.str(); }

 private:
  // Brings a and b to a common modulus; returns it (0 if both unbound).
  static std::uint32_t bind(Modp& a, Modp b, Modp& b_out);

  std::int64_t v_ = 0;
  std::uint32_t p_ = 0;
};

/// Field-aware construction and inspection of scalars.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static constexpr FieldDescriptor::Kind kind = FieldDescriptor::Kind::Rationals;
  static Rational from_int(const FieldDescriptor&, long n) { return Rational(n); }
  static Rational from_rational(const FieldDescriptor&, const Rational& q) { return q; }
  static bool is_zero(const Rational& x) { return x.is_zero(); }
  static Rational inverse(const Rational& x) { return x.inverse(); }
  static std::string str(const Rational& x) { return x.str(); }
  static void check_field(const FieldDescriptor& f);
  static Rational bind(const FieldDescriptor&, const Rational& x) { return x; }
  static bool less(const Rational& a, const Rational& b) { return a.value() < b.value(); }
};

template <>
struct ScalarTraits<Modp> {
  static constexpr FieldDescriptor::Kind kind = FieldDescriptor::Kind::PrimeField;
  static Modp from_int(const FieldDescriptor& f, long n);
  static Modp from_rational(const FieldDescriptor& f, const Rational& q);
  static bool is_zero(const Modp& x) { return x.is_zero(); }
  static Modp inverse(const Modp& x) { return x.inverse(); }
  static std::string str(const Modp& x) { return x.str(); }
  static void check_field(const FieldDescriptor& f);
  /// Binds an unbound literal to f; FieldMismatch for a foreign modulus.
  static Modp bind(const FieldDescriptor& f, const Modp& x);
  /// Residue order.
  static bool less(const Modp& a, const Modp& b) { return a.residue() < b.residue(); }
};

template <class T>
bool is_zero(const T& x) {
  return ScalarTraits<T>::is_zero(x);
}

template <class T>
T scalar(const FieldDescriptor& f, long n) {
  return ScalarTraits<T>::from_int(f, n);
}

/// Uniform small integer in [lo, hi], mapped into the field.
template <class T>
T random_scalar(const FieldDescriptor& f, std::mt19937_64& rng, long lo = -3, long hi = 3) {
  std::uniform_int_distribution<long> dist(lo, hi);
  return ScalarTraits<T>::from_int(f, dist(rng));
}

}  // namespace pathalg

namespace Eigen {

template <>
struct NumTraits<pathalg::Rational> : GenericNumTraits<pathalg::Rational> {
  typedef pathalg::Rational Real;
  typedef pathalg::Rational NonInteger;
  typedef pathalg::Rational Literal;
  typedef pathalg::Rational Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 10,
    AddCost = 40,
    MulCost = 80
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<pathalg::Modp> : GenericNumTraits<pathalg::Modp> {
  typedef pathalg::Modp Real;
  typedef pathalg::Modp NonInteger;
  typedef pathalg::Modp Literal;
  typedef pathalg::Modp Nested;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 2,
    MulCost = 4
  };
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

#endif  // PATHALG_SCALAR_HPP
