#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <gmpxx.h>

namespace disfermion {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Gaussian integer a + b*i over GMP integers.  Exact Kasteleyn entries,
/// Bareiss pivots and matching weights all live here.
struct GInt {
  mpz_class re, im;

  GInt() : re(0), im(0) {}
  GInt(long r) : re(r), im(0) {}
  GInt(long r, long i) : re(r), im(i) {}
  GInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re == 0 && im == 0; }

  friend GInt operator+(const GInt& a, const GInt& b) { return {a.re + b.re, a.im + b.im}; }
  friend GInt operator-(const GInt& a, const GInt& b) { return {a.re - b.re, a.im - b.im}; }
  friend GInt operator-(const GInt& a) { return {-a.re, -a.im}; }
  friend GInt operator*(const GInt& a, const GInt& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GInt& operator+=(const GInt& b) { re += b.re; im += b.im; return *this; }
  GInt& operator-=(const GInt& b) { re -= b.re; im -= b.im; return *this; }
  GInt& operator*=(const GInt& b) { *this = *this * b; return *this; }
  friend bool operator==(const GInt& a, const GInt& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GInt& a, const GInt& b) { return !(a == b); }

  GInt conj() const { return {re, -im}; }
  mpz_class norm() const { return re * re + im * im; }  // |z|^2

  /// Exact quotient; throws if b does not divide *this in Z[i].
  GInt divexact(const GInt& b) const {
    mpz_class n = b.norm();
    if (n == 0) throw error("GInt division by zero");
    GInt num = *this * b.conj();
    GInt q;
    mpz_class r;
    mpz_fdiv_qr(q.re.get_mpz_t(), r.get_mpz_t(), num.re.get_mpz_t(), n.get_mpz_t());
    if (r != 0) throw error("GInt: inexact division");
    mpz_fdiv_qr(q.im.get_mpz_t(), r.get_mpz_t(), num.im.get_mpz_t(), n.get_mpz_t());
    if (r != 0) throw error("GInt: inexact division");
    return q;
  }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const {
    return re.get_str() + (im >= 0 ? "+" : "") + im.get_str() + "i";
  }
};

/// Gaussian rational a + b*i; the exact field for inverse Kasteleyn matrices,
/// path factors and Green's functions.
struct GQ {
  mpq_class re, im;

  GQ() : re(0), im(0) {}
  GQ(long r) : re(r), im(0) {}
  GQ(long r, long i) : re(r), im(i) {}
  GQ(mpq_class r, mpq_class i) : re(std::move(r)), im(std::move(i)) {
    re.canonicalize(); im.canonicalize();
  }
  GQ(const GInt& g) : re(g.re), im(g.im) {}
  static GQ frac(long num, long den) {
    GQ g; g.re = mpq_class(num, den); g.re.canonicalize(); return g;
  }
  static GQ i() { return GQ(0, 1); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  friend GQ operator+(const GQ& a, const GQ& b) { return {a.re + b.re, a.im + b.im}; }
  friend GQ operator-(const GQ& a, const GQ& b) { return {a.re - b.re, a.im - b.im}; }
  friend GQ operator-(const GQ& a) { return {-a.re, -a.im}; }
  friend GQ operator*(const GQ& a, const GQ& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  GQ& operator+=(const GQ& b) { re += b.re; im += b.im; return *this; }
  GQ& operator-=(const GQ& b) { re -= b.re; im -= b.im; return *this; }
  GQ& operator*=(const GQ& b) { *this = *this * b; return *this; }
  friend bool operator==(const GQ& a, const GQ& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const GQ& a, const GQ& b) { return !(a == b); }

  GQ conj() const { return {re, -im}; }
  mpq_class norm() const { return re * re + im * im; }

  GQ inv() const {
    mpq_class n = norm();
    if (n == 0) throw error("GQ division by zero");
    return {re / n, -im / n};
  }
  friend GQ operator/(const GQ& a, const GQ& b) { return a * b.inv(); }

  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }
  std::string str() const {
    std::string s = re.get_str();
    if (im != 0) s += (im >= 0 ? "+" : "") + im.get_str() + "i";
    return s;
  }
};

inline GQ conj(const GQ& a) { return a.conj(); }
inline GInt conj(const GInt& a) { return a.conj(); }

// scalar traits so exact and float backends share templated code
template <class T> struct scalar_traits;

template <> struct scalar_traits<GQ> {
  static GQ zero() { return GQ(0); }
  static GQ one() { return GQ(1); }
  static bool is_zero(const GQ& x) { return x.is_zero(); }
};
template <> struct scalar_traits<std::complex<double>> {
  static std::complex<double> zero() { return {0.0, 0.0}; }
  static std::complex<double> one() { return {1.0, 0.0}; }
  static bool is_zero(const std::complex<double>& x) { return x == std::complex<double>(0.0, 0.0); }
};

}  // namespace disfermion
