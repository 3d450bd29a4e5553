#pragma once

#include <optional>
#include <vector>

#include "ecv/arith.hpp"
#include "ecv/curve.hpp"

namespace ecv {

/// Rational torsion subgroup, isomorphic to Z/d1 + Z/d2 with d1 | d2.
struct TorsionGroup {
  Integer order;
  Integer d1 = 1, d2 = 1;
  std::vector<CurvePoint> generators;
  std::vector<CurvePoint> points;       ///< every torsion point, infinity first
  std::vector<CurvePoint> two_torsion;  ///< the points of exact order 2
  Integer reduction_bound;              ///< gcd of #E(F_p) over the primes used
  std::vector<long> bound_primes;

  std::string structure() const;  ///< "Z/2 + Z/4" or "Z/6"
};

/// Least n <= 16 with nP = O; nullopt when no such n exists.
std::optional<unsigned> point_order(const WeierstrassCurve& c, const CurvePoint& p);

/// Nagell-Lutz search on Y^2 = X^3 - 27 c4 X - 54 c6, screened by the
/// reduction bound and closed under the group law.
TorsionGroup torsion_subgroup(const WeierstrassCurve& c);

/// Integer roots of X^3 + a X + b, ascending.
std::vector<Integer> integer_roots_depressed_cubic(const Integer& a, const Integer& b);

/// True for the fifteen groups allowed by Mazur's theorem.
bool mazur_admissible(const Integer& d1, const Integer& d2);

}  // namespace ecv
