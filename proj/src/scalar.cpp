#include "pathalg/scalar.hpp"

#include <limits>

namespace pathalg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldDescriptor FieldDescriptor::prime_field(std::uint64_t p) {
  if (p >= (std::uint64_t{1} << 31)) {
    throw Error(ErrorCode::InvalidField, "GF(" + std::to_string(p) + "): modulus must be below 2^31");
  }
  if (!is_prime(p)) {
    throw Error(ErrorCode::InvalidField, "GF(" + std::to_string(p) + "): " + std::to_string(p) + " is not prime");
  }
  return {Kind::PrimeField, static_cast<std::uint32_t>(p)};
}

std::string FieldDescriptor::name() const {
  if (kind == Kind::Rationals) return "Q";
  return "GF(" + std::to_string(characteristic) + ")";
}

// --- Rational ---------------------------------------------------------------

Rational::Rational(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw Error(ErrorCode::Internal, "zero denominator");
  q_.canonicalize();
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  mpz_class num, den(1);
  auto parse_int = [&](const std::string& s, mpz_class& out) {
    std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (start == s.size()) return false;
    for (std::size_t i = start; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    out.set_str(s[0] == '+' ? s.substr(1) : s, 10);
    return true;
  };
  bool ok = slash == std::string::npos ? parse_int(text, num)
                                       : parse_int(text.substr(0, slash), num) &&
                                             parse_int(text.substr(slash + 1), den);
  if (!ok) throw Error(ErrorCode::SyntaxError, "malformed number '" + text + "'");
  if (den == 0) throw Error(ErrorCode::SyntaxError, "zero denominator in '" + text + "'");
  return Rational(num, den);
}

Rational Rational::inverse() const {
  if (is_zero()) throw Error(ErrorCode::Internal, "inverse of zero");
  mpq_class r;
  mpq_inv(r.get_mpq_t(), q_.get_mpq_t());
  return Rational(r);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw Error(ErrorCode::Internal, "division by zero");
  q_ /= o.q_;
  return *this;
}

void ScalarTraits<Rational>::check_field(const FieldDescriptor& f) {
  if (f.kind != FieldDescriptor::Kind::Rationals) {
    throw Error(ErrorCode::FieldMismatch, "expected Q, got " + f.name());
  }
}

// --- Modp -------------------------------------------------------------------

namespace {

std::int64_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % static_cast<std::int64_t>(p);
  return r < 0 ? r + p : r;
}

}  // namespace

Modp::Modp(std::int64_t value, std::uint32_t p) : v_(reduce(value, p)), p_(p) {}

std::uint32_t Modp::bind(Modp& a, Modp b, Modp& b_out) {
  if (a.p_ != 0 && b.p_ != 0 && a.p_ != b.p_) {
    throw Error(ErrorCode::FieldMismatch,
                "GF(" + std::to_string(a.p_) + ") vs GF(" + std::to_string(b.p_) + ")");
  }
  std::uint32_t p = a.p_ != 0 ? a.p_ : b.p_;
  if (p != 0) {
    if (a.p_ == 0) a = Modp(a.v_, p);
    if (b.p_ == 0) b = Modp(b.v_, p);
  }
  b_out = b;
  return p;
}

Modp& Modp::operator+=(const Modp& o) {
  Modp b;
  std::uint32_t p = bind(*this, o, b);
  v_ += b.v_;
  if (p != 0 && v_ >= p) v_ -= p;
  return *this;
}

Modp& Modp::operator-=(const Modp& o) {
  Modp b;
  std::uint32_t p = bind(*this, o, b);
  v_ -= b.v_;
  if (p != 0 && v_ < 0) v_ += p;
  return *this;
}

Modp& Modp::operator*=(const Modp& o) {
  Modp b;
  std::uint32_t p = bind(*this, o, b);
  v_ *= b.v_;
  if (p != 0) v_ %= p;
  return *this;
}

Modp operator-(const Modp& a) {
  Modp r = a;
  if (a.p_ == 0) {
    r.v_ = -a.v_;
  } else if (a.v_ != 0) {
    r.v_ = a.p_ - a.v_;
  }
  return r;
}

bool operator==(const Modp& a, const Modp& b) {
  Modp x = a, y;
  Modp::bind(x, b, y);
  return x.v_ == y.v_;
}

Modp Modp::pow(std::uint64_t e) const {
  Modp result(1), base = *this;
  while (e > 0) {
    if (e & 1) result *= base;
    base *= base;
    e >>= 1;
  }
  return result;
}

Modp Modp::inverse() const {
  if (v_ == 0) throw Error(ErrorCode::Internal, "inverse of zero");
  if (p_ == 0) {
    if (v_ == 1 || v_ == -1) return *this;
    throw Error(ErrorCode::Internal, "inverse of an unbound literal");
  }
  return pow(p_ - 2);
}

Modp ScalarTraits<Modp>::from_int(const FieldDescriptor& f, long n) {
  return Modp(n, f.characteristic);
}

Modp ScalarTraits<Modp>::from_rational(const FieldDescriptor& f, const Rational& q) {
  mpz_class p(f.characteristic);
  mpz_class num = q.numerator() % p, den = q.denominator() % p;
  if (den == 0) {
    throw Error(ErrorCode::InvalidField, q.str() + " has a denominator divisible by " + f.name());
  }
  Modp n(num.get_si(), f.characteristic), d(den.get_si(), f.characteristic);
  return n / d;
}

Modp ScalarTraits<Modp>::bind(const FieldDescriptor& f, const Modp& x) {
  if (x.modulus() == 0) return Modp(x.residue(), f.characteristic);
  if (x.modulus() != f.characteristic) {
    throw Error(ErrorCode::FieldMismatch, "GF(" + std::to_string(x.modulus()) + ") value in " + f.name());
  }
  return x;
}

void ScalarTraits<Modp>::check_field(const FieldDescriptor& f) {
  if (f.kind != FieldDescriptor::Kind::PrimeField) {
    throw Error(ErrorCode::FieldMismatch, "expected a prime field, got " + f.name());
  }
}

}  // namespace pathalg
