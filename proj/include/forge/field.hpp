#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "forge/matrix.hpp"
#include "forge/rational.hpp"

namespace forge {

bool is_prime(std::uint64_t n);
/// Smallest prime strictly greater than n.
std::uint64_t next_prime(std::uint64_t n);

/// Either the rationals or GF(p) for a prime p < 2^32.
class FieldSpec {
 public:
  static FieldSpec rationals() { return FieldSpec(0); }
  /// Throws Error(kBadParams) unless p is a prime below 2^32.
  static FieldSpec prime(std::uint64_t p);
  /// Accepts "q" or "gf:P".
  static FieldSpec parse(const std::string& text);

  bool is_rational() const noexcept { return p_ == 0; }
  std::uint64_t characteristic() const noexcept { return p_; }
  std::string to_string() const;

  friend bool operator==(FieldSpec a, FieldSpec b) { return a.p_ == b.p_; }

 private:
  explicit FieldSpec(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// Field policy for exact rational arithmetic.
class RationalField {
 public:
  using value_type = Rational;

  static value_type zero() { return Rational(0); }
  static value_type one() { return Rational(1); }
  static bool is_zero(const value_type& a) { return sgn(a) == 0; }
  static value_type add(const value_type& a, const value_type& b) { return a + b; }
  static value_type sub(const value_type& a, const value_type& b) { return a - b; }
  static value_type mul(const value_type& a, const value_type& b) { return a * b; }
  static value_type div(const value_type& a, const value_type& b) { return a / b; }
  static value_type neg(const value_type& a) { return -a; }
  static value_type from_rational(const Rational& q) { return q; }
  static Rational to_rational(const value_type& a) { return a; }
  static void append_key(std::string& key, const value_type& a);
  FieldSpec spec() const { return FieldSpec::rationals(); }
};

/// Field policy for GF(p); residues are kept in [0, p).
class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {}

  std::uint64_t characteristic() const noexcept { return p_; }
  static value_type zero() { return 0; }
  static value_type one() { return 1; }
  static bool is_zero(value_type a) { return a == 0; }
  value_type add(value_type a, value_type b) const { return (a + b) % p_; }
  value_type sub(value_type a, value_type b) const { return (a + p_ - b) % p_; }
  value_type mul(value_type a, value_type b) const { return (a * b) % p_; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const;
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  /// Reduces an integral rational; throws Error(kNotIntegral) otherwise.
  value_type from_rational(const Rational& q) const;
  /// Residue as an integer in [0, p).
  static Rational to_rational(value_type a) { return Rational(static_cast<unsigned long>(a)); }
  static void append_key(std::string& key, value_type a);
  FieldSpec spec() const { return FieldSpec::prime(p_); }

 private:
  std::uint64_t p_;
};

template <class F>
using FieldMatrix = DenseMatrix<typename F::value_type>;

/// Reduced row echelon form in place; returns the pivot columns.  Zero rows
/// end up at the bottom.
template <class F>
std::vector<std::size_t> rref_in_place(const F& f, FieldMatrix<F>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && f.is_zero(m(sel, col))) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(sel, row);
    if (!f.is_zero(f.sub(m(row, col), f.one()))) {
      const auto inv = f.div(f.one(), m(row, col));
      for (std::size_t c = col; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), inv);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || f.is_zero(m(r, col))) continue;
      const auto factor = m(r, col);
      for (std::size_t c = col; c < m.cols(); ++c) {
        if (!f.is_zero(m(row, c))) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class F>
std::size_t rank_of(const F& f, FieldMatrix<F> m) {
  return rref_in_place(f, m).size();
}

inline PrimeField::value_type PrimeField::inv(value_type a) const {
  // Fermat: a^(p-2).
  value_type result = 1;
  value_type base = a % p_;
  std::uint64_t e = p_ - 2;
  while (e) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

}  // namespace forge
