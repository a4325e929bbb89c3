#pragma once

#include <map>
#include <complex>
#include "disfermion/gaussian.hpp"

namespace disfermion {

/// Element of Q(i)[pi, 1/pi]: a sparse Laurent polynomial in pi with Gaussian
/// rational coefficients.  The potential kernel lives in degrees {0,-1}, the
/// negative monomials in {0,1}, pairing integrals in {0,1}; the ring is closed
/// under every operation the harnesses perform, so comparisons are exact.
struct PiExt {
  std::map<int, GQ> c;  // degree -> coefficient, no zero entries

  PiExt() = default;
  PiExt(const GQ& a) { if (!a.is_zero()) c[0] = a; }
  PiExt(long a) : PiExt(GQ(a)) {}
  static PiExt pi_pow(int k, const GQ& a = GQ(1)) {
    PiExt p; if (!a.is_zero()) p.c[k] = a; return p;
  }

  bool is_zero() const { return c.empty(); }
  GQ coeff(int k) const { auto it = c.find(k); return it == c.end() ? GQ(0) : it->second; }

  void add_term(int k, const GQ& a) {
    if (a.is_zero()) return;
    auto it = c.find(k);
    if (it == c.end()) c.emplace(k, a);
    else {
      it->second += a;
      if (it->second.is_zero()) c.erase(it);
    }
  }

  friend PiExt operator+(const PiExt& x, const PiExt& y) {
    PiExt r = x;
    for (auto& [k, a] : y.c) r.add_term(k, a);
    return r;
  }
  friend PiExt operator-(const PiExt& x, const PiExt& y) {
    PiExt r = x;
    for (auto& [k, a] : y.c) r.add_term(k, -a);
    return r;
  }
  friend PiExt operator-(const PiExt& x) {
    PiExt r;
    for (auto& [k, a] : x.c) r.c[k] = -a;
    return r;
  }
  friend PiExt operator*(const PiExt& x, const PiExt& y) {
    PiExt r;
    for (auto& [k1, a1] : x.c)
      for (auto& [k2, a2] : y.c) r.add_term(k1 + k2, a1 * a2);
    return r;
  }
  friend PiExt operator*(const PiExt& x, const GQ& s) {
    PiExt r;
    if (s.is_zero()) return r;
    for (auto& [k, a] : x.c) r.c[k] = a * s;
    return r;
  }
  friend PiExt operator*(const GQ& s, const PiExt& x) { return x * s; }
  PiExt& operator+=(const PiExt& y) { for (auto& [k, a] : y.c) add_term(k, a); return *this; }
  PiExt& operator-=(const PiExt& y) { for (auto& [k, a] : y.c) add_term(k, -a); return *this; }
  PiExt& operator*=(const PiExt& y) { *this = *this * y; return *this; }
  friend bool operator==(const PiExt& x, const PiExt& y) { return x.c == y.c; }
  friend bool operator!=(const PiExt& x, const PiExt& y) { return !(x == y); }

  PiExt conj() const {
    PiExt r;
    for (auto& [k, a] : c) r.c[k] = a.conj();
    return r;
  }
  friend PiExt div_scalar(const PiExt& x, const GQ& s) { return x * s.inv(); }

  /// Exact-to-double projection.  Coefficients can cancel catastrophically
  /// (the potential-kernel recursion grows them exponentially), so the
  /// projection goes through GMP floats sized to the operands.
  std::complex<double> to_complex() const {
    if (c.empty()) return {0.0, 0.0};
    size_t bits = 128;
    for (auto& [k, a] : c) {
      bits = std::max(bits, mpz_sizeinbase(a.re.get_num().get_mpz_t(), 2));
      bits = std::max(bits, mpz_sizeinbase(a.im.get_num().get_mpz_t(), 2));
      bits = std::max(bits, mpz_sizeinbase(a.re.get_den().get_mpz_t(), 2));
      bits = std::max(bits, mpz_sizeinbase(a.im.get_den().get_mpz_t(), 2));
    }
    bits += 96;
    mpf_class pi = pi_mpf(bits);
    mpf_class re(0, bits), im(0, bits);
    for (auto& [k, a] : c) {
      mpf_class w(1, bits);
      for (int j = 0; j < std::abs(k); ++j) w *= pi;
      if (k < 0) w = 1 / w;
      re += mpf_class(a.re, bits) * w;
      im += mpf_class(a.im, bits) * w;
    }
    return {re.get_d(), im.get_d()};
  }

  std::string str() const {
    if (c.empty()) return "0";
    std::string s;
    for (auto& [k, a] : c) {
      if (!s.empty()) s += " + ";
      s += "(" + a.str() + ")";
      if (k == 1) s += "*pi";
      else if (k == -1) s += "/pi";
      else if (k != 0) s += "*pi^" + std::to_string(k);
    }
    return s;
  }

  /// pi to `bits` bits via the arctan Machin formula, cached per precision.
  static mpf_class pi_mpf(size_t bits) {
    static std::map<size_t, mpf_class> cache;
    size_t key = ((bits + 255) / 256) * 256;
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    size_t p = key + 64;
    auto atan_inv = [&](unsigned long x) {
      // arctan(1/x) = sum (-1)^k / ((2k+1) x^(2k+1))
      mpf_class term(0, p), sum(0, p), xp(x, p);
      mpf_class x2 = xp * xp, denom = xp;
      mpf_class eps(0, p);
      mpf_div_2exp(eps.get_mpf_t(), mpf_class(1, p).get_mpf_t(), p);
      for (unsigned long k = 0;; ++k) {
        term = 1 / (denom * (2 * k + 1));
        if (term < eps) break;
        if (k % 2 == 0) sum += term; else sum -= term;
        denom *= x2;
      }
      return sum;
    };
    mpf_class pi = 16 * atan_inv(5) - 4 * atan_inv(239);
    cache[key] = pi;
    return pi;
  }
};

template <> struct scalar_traits<PiExt> {
  static PiExt zero() { return PiExt(); }
  static PiExt one() { return PiExt(GQ(1)); }
  static bool is_zero(const PiExt& x) { return x.is_zero(); }
};

}  // namespace disfermion
