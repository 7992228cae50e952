#include "pathalg/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>

namespace pathalg {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Dense polynomial arithmetic modulo a prime m < 2^62, low degree first.
class ModRing {
 public:
  explicit ModRing(u64 m) : m_(m) {}

  using Poly = std::vector<u64>;

  u64 mul(u64 a, u64 b) const { return static_cast<u64>((static_cast<u128>(a) * b) % m_); }
  u64 add(u64 a, u64 b) const { return (a + b) % m_; }
  u64 sub(u64 a, u64 b) const { return (a + m_ - b) % m_; }
  u64 pow(u64 a, u64 e) const {
    u64 r = 1 % m_;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  u64 inv(u64 a) const { return pow(a, m_ - 2); }

  static void trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
  }

  Poly rem(Poly a, const Poly& d) const {
    const u64 inv_lead = inv(d.back());
    const std::size_t dd = d.size() - 1;
    while (a.size() >= d.size()) {
      u64 coef = mul(a.back(), inv_lead);
      std::size_t shift = a.size() - d.size();
      for (std::size_t j = 0; j <= dd; ++j) a[shift + j] = sub(a[shift + j], mul(coef, d[j]));
      trim(a);
    }
    return a;
  }

  Poly quot(Poly a, const Poly& d) const {
    const u64 inv_lead = inv(d.back());
    if (a.size() < d.size()) return {};
    Poly q(a.size() - d.size() + 1, 0);
    while (a.size() >= d.size()) {
      u64 coef = mul(a.back(), inv_lead);
      std::size_t shift = a.size() - d.size();
      q[shift] = coef;
      for (std::size_t j = 0; j < d.size(); ++j) a[shift + j] = sub(a[shift + j], mul(coef, d[j]));
      trim(a);
    }
    trim(q);
    return q;
  }

  Poly mulmod(const Poly& a, const Poly& b, const Poly& f) const {
    if (a.empty() || b.empty()) return {};
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = add(r[i + j], mul(a[i], b[j]));
    }
    trim(r);
    return rem(std::move(r), f);
  }

  Poly powmod(Poly base, u64 e, const Poly& f) const {
    Poly r{1};
    r = rem(r, f);
    base = rem(std::move(base), f);
    while (e) {
      if (e & 1) r = mulmod(r, base, f);
      base = mulmod(base, base, f);
      e >>= 1;
    }
    return r;
  }

  Poly gcd(Poly a, Poly b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Poly r = rem(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    if (!a.empty()) {
      u64 inv_lead = inv(a.back());
      for (auto& x : a) x = mul(x, inv_lead);
    }
    return a;
  }

  u64 eval(const Poly& p, u64 x) const {
    u64 acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = add(mul(acc, x), *it);
    return acc;
  }

  // Distinct roots of f (nonzero).
  std::vector<u64> roots(Poly f, std::mt19937_64& rng) const {
    trim(f);
    std::vector<u64> out;
    if (f.size() <= 1) return out;
    if (m_ < 256) {
      for (u64 x = 0; x < m_; ++x)
        if (eval(f, x) == 0) out.push_back(x);
      return out;
    }
    // g = gcd(f, x^m - x) is the product of the distinct linear factors.
    Poly xm = powmod(Poly{0, 1}, m_, f);
    if (xm.size() < 2) xm.resize(2, 0);
    xm[1] = sub(xm[1], 1);
    trim(xm);
    Poly g = gcd(f, xm);
    split(g, rng, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  void split(const Poly& g, std::mt19937_64& rng, std::vector<u64>& out) const {
    if (g.size() <= 1) return;
    if (g.size() == 2) {
      out.push_back(mul(sub(0, g[0]), inv(g[1])));
      return;
    }
    std::uniform_int_distribution<u64> dist(0, m_ - 1);
    for (;;) {
      Poly h = powmod(Poly{dist(rng), 1}, (m_ - 1) / 2, g);
      if (h.empty()) h.push_back(0);
      h[0] = sub(h[0], 1);
      trim(h);
      Poly d = gcd(g, h);
      if (d.size() > 1 && d.size() < g.size()) {
        split(d, rng, out);
        split(quot(g, d), rng, out);
        return;
      }
    }
  }

  u64 m_;
};

constexpr u64 kReconstructionPrime = (u64{1} << 61) - 1;

// a/b with |a|, |b| <= sqrt(m/2) and a = b r mod m, if it exists.
std::optional<Rational> reconstruct(u64 r, u64 m) {
  using i128 = __int128;
  const i128 bound = static_cast<i128>(1) << 30;
  i128 r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 >= bound) {
    i128 q = r0 / r1;
    i128 r2 = r0 - q * r1;
    r0 = r1;
    r1 = r2;
    i128 t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0) return std::nullopt;
  i128 abs_t = t1 < 0 ? -t1 : t1;
  if (abs_t >= bound) return std::nullopt;
  long num = static_cast<long>(t1 < 0 ? -r1 : r1);
  long den = static_cast<long>(abs_t);
  return Rational(mpz_class(num), mpz_class(den));
}

}  // namespace

template <>
std::vector<Modp> roots<Modp>(const Polynomial<Modp>& f, const FieldDescriptor& field, std::mt19937_64& rng) {
  const u64 p = field.characteristic;
  ModRing ring(p);
  ModRing::Poly g;
  for (const auto& c : f.coefficients()) g.push_back(static_cast<u64>(Modp(c.residue(), field.characteristic).residue()));
  std::vector<Modp> out;
  for (u64 r : ring.roots(g, rng)) out.emplace_back(static_cast<std::int64_t>(r), field.characteristic);
  return out;
}

template <>
std::vector<Rational> roots<Rational>(const Polynomial<Rational>& f, const FieldDescriptor&, std::mt19937_64& rng) {
  std::vector<Rational> out;
  if (f.degree() <= 0) return out;
  ModRing ring(kReconstructionPrime);
  const mpz_class m(static_cast<unsigned long>(kReconstructionPrime));
  ModRing::Poly g;
  for (const auto& c : f.coefficients()) {
    mpz_class num = c.numerator() % m, den = c.denominator() % m;
    if (num < 0) num += m;
    if (den == 0) return out;  // astronomically unlikely; caller retries
    u64 n = num.get_ui(), d = den.get_ui();
    g.push_back(ring.mul(n, ring.inv(d)));
  }
  for (u64 r : ring.roots(g, rng)) {
    auto cand = reconstruct(r, kReconstructionPrime);
    if (cand && f(*cand).is_zero()) out.push_back(*cand);
  }
  std::sort(out.begin(), out.end(), [](const Rational& a, const Rational& b) { return a.value() < b.value(); });
  return out;
}

}  // namespace pathalg
