#pragma once

#include <array>
#include <optional>
#include <string>

#include "ecv/arith.hpp"

namespace ecv {

/// b- and c-invariants, discriminant and j-invariant of a Weierstrass model.
/// Over F_p every value is reduced into [0, p).
struct Invariants {
  Integer b2, b4, b6, b8;
  Integer c4, c6;
  Integer discriminant;
  Rational j;
};

/// Long Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 with
/// integer coefficients, over Q or over F_p. Construction rejects singular models.
class WeierstrassCurve {
 public:
  using Coefficients = std::array<Integer, 5>;

  explicit WeierstrassCurve(const Coefficients& a, const Integer& field_prime = 0);

  /// Parses "a1,a2,a3,a4,a6".
  static WeierstrassCurve parse(const std::string& text);

  const Integer& a1() const { return a_[0]; }
  const Integer& a2() const { return a_[1]; }
  const Integer& a3() const { return a_[2]; }
  const Integer& a4() const { return a_[3]; }
  const Integer& a6() const { return a_[4]; }
  const Coefficients& coefficients() const { return a_; }

  bool over_rationals() const { return prime_ == 0; }
  /// 0 for curves over Q.
  const Integer& field_prime() const { return prime_; }

  const Invariants& invariants() const { return inv_; }
  const Integer& discriminant() const { return inv_.discriminant; }

  /// "a1,a2,a3,a4,a6"
  std::string descriptor() const;

  friend bool operator==(const WeierstrassCurve& a, const WeierstrassCurve& b) {
    return a.a_ == b.a_ && a.prime_ == b.prime_;
  }

 private:
  Coefficients a_;
  Integer prime_;
  Invariants inv_;
};

/// Invariants of a model with arbitrary rational coefficients.
struct ModelInvariants {
  Rational b2, b4, b6, b8;
  Rational c4, c6;
  Rational discriminant;
  Rational j;  // 0 when the model is singular
};

ModelInvariants model_invariants(const std::array<Rational, 5>& a);

/// Either the point at infinity or an affine point. Over F_p the coordinates
/// are integers in [0, p).
class CurvePoint {
 public:
  static CurvePoint infinity() { return CurvePoint(); }
  CurvePoint(Rational x, Rational y) : x_(std::move(x)), y_(std::move(y)), affine_(true) {}

  bool is_infinity() const { return !affine_; }
  const Rational& x() const { return x_; }
  const Rational& y() const { return y_; }

  std::string str() const;

  friend bool operator==(const CurvePoint& a, const CurvePoint& b) {
    if (a.affine_ != b.affine_) return false;
    return !a.affine_ || (a.x_ == b.x_ && a.y_ == b.y_);
  }

 private:
  CurvePoint() = default;
  Rational x_, y_;
  bool affine_ = false;
};

bool is_on_curve(const WeierstrassCurve& c, const CurvePoint& p);
CurvePoint negate(const WeierstrassCurve& c, const CurvePoint& p);
CurvePoint add(const WeierstrassCurve& c, const CurvePoint& p, const CurvePoint& q);
CurvePoint multiply(const WeierstrassCurve& c, const CurvePoint& p, const Integer& n);

/// Coefficients reduced mod p. Throws BadReductionError if p | disc.
WeierstrassCurve reduce_mod_p(const WeierstrassCurve& c, const Integer& p);
/// Image of a rational point on the reduction; non-p-integral points go to infinity.
CurvePoint reduce_point(const CurvePoint& pt, const Integer& p);

/// Sufficient minimality certificate at p: ord_p(disc) < 12 or ord_p(c4) < 4.
bool minimality_certified(const WeierstrassCurve& c, const Integer& p);

/// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct CurveIsomorphism {
  Rational u{1}, r, s, t;
  std::string str() const;
};

/// Coefficients of the model obtained by applying `iso` to `a`.
std::array<Rational, 5> transform(const std::array<Rational, 5>& a, const CurveIsomorphism& iso);
std::array<Rational, 5> to_rational(const WeierstrassCurve::Coefficients& a);

/// An isomorphism over Q carrying `from` onto `to` exactly, if one exists.
std::optional<CurveIsomorphism> isomorphism_over_Q(const WeierstrassCurve& from,
                                                   const WeierstrassCurve& to);

/// Quotient by the subgroup generated by a rational 2-torsion point.
struct TwoIsogeny {
  CurvePoint kernel = CurvePoint::infinity();
  /// Codomain exactly as produced by Velu's formulas (may be non-integral).
  std::array<Rational, 5> velu_model;
  /// Integral model obtained by the scaling `scaling` (r = s = t = 0).
  WeierstrassCurve codomain;
  CurveIsomorphism scaling;
  /// Velu's v and w: A4 = a4 - 5v, A6 = a6 - b2 v - 7w.
  Rational v, w;
};

TwoIsogeny velu_2_isogeny(const WeierstrassCurve& c, const CurvePoint& kernel);

/// Image of a point under the isogeny, on the Velu model.
CurvePoint apply_isogeny(const WeierstrassCurve& c, const TwoIsogeny& phi, const CurvePoint& pt);

/// Group law on a model with arbitrary rational coefficients (used for the
/// non-integral Velu model).
bool is_on_model(const std::array<Rational, 5>& a, const CurvePoint& p);

}  // namespace ecv
