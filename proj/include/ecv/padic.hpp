#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ecv/arith.hpp"
#include "ecv/curve.hpp"

namespace ecv {

/// p^valuation * unit, with the unit known modulo p^precision (relative
/// precision). Zero is represented as "0 + O(p^absolute_precision)".
class PadicNumber {
 public:
  /// Rational x to `precision` relative digits (absolute digits if x = 0).
  PadicNumber(const Integer& p, const Rational& x, long precision);
  static PadicNumber from_unit(const Integer& p, long valuation, const Integer& unit, long precision);
  /// The residue n known modulo p^absolute_precision.
  static PadicNumber from_residue(const Integer& p, const Integer& n, long absolute_precision);

  const Integer& prime() const { return p_; }
  bool is_zero() const { return zero_; }
  /// For zero this is the absolute precision.
  long valuation() const { return v_; }
  long precision() const { return zero_ ? 0 : r_; }
  long absolute_precision() const { return v_ + precision(); }
  /// Unit part modulo p^precision().
  const Integer& unit() const { return u_; }

  /// Base-p digits of the unit, least significant first.
  std::vector<unsigned long> digits() const;
  /// First `n` relative digits agree (and valuations match).
  bool agrees_with(const PadicNumber& other, long n) const;
  PadicNumber truncated(long precision) const;

  /// "p=5 v=1 prec=20 digits=d0d1d2..." (comma-separated digits when p > 10).
  std::string str() const;
  static PadicNumber parse(const std::string& text);

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }
  friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
  friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);

  friend bool operator==(const PadicNumber& a, const PadicNumber& b) {
    return a.p_ == b.p_ && a.zero_ == b.zero_ && a.v_ == b.v_ && a.r_ == b.r_ && a.u_ == b.u_;
  }

 private:
  PadicNumber() = default;
  Integer p_;
  bool zero_ = false;
  long v_ = 0;
  long r_ = 0;
  Integer u_;
};

/// Coefficients c_{-1}, c_0, ..., c_T of j(q) = E4(q)^3 / Delta(q).
struct QExpansion {
  std::vector<Integer> coefficients;  ///< coefficients[k] is c_{k-1}
  long terms() const { return static_cast<long>(coefficients.size()) - 2; }
  const Integer& coefficient(long n) const { return coefficients.at(static_cast<std::size_t>(n + 1)); }
};

QExpansion j_q_expansion(long terms);

/// Sum c_n q^n for n = -1..T.
PadicNumber evaluate(const QExpansion& j, const PadicNumber& q);

/// Tate parameter q_E: the solution of j(q) = j(E) with ord(q) = -ord(j).
/// Requires split multiplicative reduction at p. With series_terms = 0 the
/// length is precision + ord + 10.
PadicNumber tate_parameter(const WeierstrassCurve& c, const Integer& p, long precision,
                           long series_terms = 0);

/// Iwasawa logarithm: log(p) = branch (0 by default), log(u) for units from
/// log(u^{p-1})/(p-1) and the Mercator series.
PadicNumber iwasawa_log(const PadicNumber& x);
PadicNumber iwasawa_log(const PadicNumber& x, const PadicNumber& log_of_p);

struct LInvariant {
  Integer p;
  PadicNumber tate_q;
  PadicNumber value;  ///< log_p(q) / ord_p(q)
  long precision = 0;
  bool in_p_times_units() const { return !value.is_zero() && value.valuation() == 1; }
};

LInvariant l_invariant(const WeierstrassCurve& c, const Integer& p, long precision);

}  // namespace ecv
