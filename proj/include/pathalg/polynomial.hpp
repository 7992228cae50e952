// Univariate polynomials over an exact field, and root finding in that field.
#ifndef PATHALG_POLYNOMIAL_HPP
#define PATHALG_POLYNOMIAL_HPP

#include <random>
#include <utility>
#include <vector>

#include "pathalg/scalar.hpp"

namespace pathalg {

template <class T>
class Polynomial {
 public:
  Polynomial() = default;
  /// coeffs[i] is the coefficient of x^i.
  explicit Polynomial(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Polynomial monomial(const T& c, std::size_t degree) {
    std::vector<T> v(degree + 1, T(0));
    v[degree] = c;
    return Polynomial(std::move(v));
  }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](std::size_t i) const { return c_[i]; }
  const std::vector<T>& coefficients() const { return c_; }
  const T& leading() const { return c_.back(); }

  T operator()(const T& x) const {
    T acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    T inv = ScalarTraits<T>::inverse(leading());
    std::vector<T> v = c_;
    for (auto& x : v) x *= inv;
    return Polynomial(std::move(v));
  }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> v(c_.size() - 1, T(0));
    for (std::size_t i = 1; i < c_.size(); ++i) v[i - 1] = c_[i] * T(static_cast<long>(i));
    return Polynomial(std::move(v));
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] += b.c_[i];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) v[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) v[i] -= b.c_[i];
    return Polynomial(std::move(v));
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) v[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(v));
  }

  /// Quotient and remainder; divisor must be nonzero.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw Error(ErrorCode::Internal, "polynomial division by zero");
    if (degree() < d.degree()) return {Polynomial(), *this};
    std::vector<T> r = c_;
    std::vector<T> q(c_.size() - d.c_.size() + 1, T(0));
    const T inv = ScalarTraits<T>::inverse(d.leading());
    for (int i = degree(); i >= d.degree(); --i) {
      T coef = r[i] * inv;
      q[i - d.degree()] = coef;
      if (is_zero_scalar(coef)) continue;
      for (int j = 0; j <= d.degree(); ++j) r[i - d.degree() + j] -= coef * d.c_[j];
    }
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  friend Polynomial gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
      auto r = a.divmod(b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

 private:
  static bool is_zero_scalar(const T& x) { return ScalarTraits<T>::is_zero(x); }
  void trim() {
    while (!c_.empty() && is_zero_scalar(c_.back())) c_.pop_back();
  }

  std::vector<T> c_;
};

/// Distinct roots of f lying in the field, in increasing canonical order
/// (residue order over GF(p), numeric order over Q). Over Q, roots are found
/// modulo a 61-bit prime and recovered by rational reconstruction, so a root
/// whose numerator or denominator exceeds about 2^30 may be missed; every
/// returned value is verified exactly.
template <class T>
std::vector<T> roots(const Polynomial<T>& f, const FieldDescriptor& field, std::mt19937_64& rng);

}  // namespace pathalg

#endif  // PATHALG_POLYNOMIAL_HPP
