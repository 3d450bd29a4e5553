#pragma once

#include <cstdint>
#include <vector>

#include "ecv/arith.hpp"
#include "ecv/curve.hpp"

namespace ecv {

struct FrobeniusRecord {
  std::int64_t p = 0;
  Integer count;  ///< #E(F_p), including the point at infinity
  Integer trace;  ///< a_p = p + 1 - count
  bool ordinary = false;
};

enum class FrobeniusClass { ordinary, supersingular };

/// #E(F_p) for a good prime p of a curve over Q. O(p) character sum for odd
/// p, direct enumeration for p = 2. Throws BadReductionError when p | disc.
Integer count_points(const WeierstrassCurve& c, std::int64_t p);
Integer trace_ap(const WeierstrassCurve& c, std::int64_t p);
FrobeniusRecord frobenius_record(const WeierstrassCurve& c, std::int64_t p);
FrobeniusClass classify_ordinary(const WeierstrassCurve& c, std::int64_t p);

/// Exact check that t*p > p + 1 + 2 sqrt(p) holds for every p >= 2.
bool hasse_contradiction_unconditional(const Integer& torsion_order);

struct OrdinaryCriterionRow {
  FrobeniusRecord record;
  bool torsion_divides = false;  ///< torsion_order | #E(F_p)
  bool ap_not_one = false;       ///< a_p mod p != 1
  bool pass() const { return torsion_divides && ap_not_one; }
};

struct OrdinaryCriterionReport {
  Integer torsion_order;
  std::int64_t bound = 0;
  std::vector<OrdinaryCriterionRow> rows;  ///< ascending p
  bool hasse_unconditional = false;

  std::size_t failures() const;
  bool pass() const { return hasse_unconditional && failures() == 0; }
};

/// For every good odd p <= bound: torsion_order | #E(F_p) and a_p mod p != 1.
/// Primes are processed in parallel chunks; rows are reported in ascending p.
OrdinaryCriterionReport verify_ordinary_criterion(const WeierstrassCurve& c,
                                                  const Integer& torsion_order,
                                                  std::int64_t bound);

}  // namespace ecv
