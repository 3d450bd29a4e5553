#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecv/arith.hpp"
#include "ecv/curve.hpp"

namespace ecv {

enum class ReductionKind { good, split_multiplicative, nonsplit_multiplicative, additive };

std::string to_string(ReductionKind kind);

/// Reduction data at one prime: Kodaira type I_n (n = kodaira_index) and the
/// Tamagawa number.
struct LocalData {
  Integer p;
  ReductionKind kind = ReductionKind::good;
  unsigned kodaira_index = 0;
  Integer tamagawa = 1;

  std::string kodaira_symbol() const { return "I" + std::to_string(kodaira_index); }
};

/// Good / split / non-split multiplicative. Throws UnsupportedError for
/// additive reduction or when minimality at p cannot be certified.
ReductionKind reduction_type(const WeierstrassCurve& c, const Integer& p);

/// Splitting of the node's tangent cone T^2 + a1 T - (3 x0 + a2) over F_p,
/// found by exhaustive search for the singular point. Valid for any p at
/// which the reduction is multiplicative; it is the only test used at p = 2.
bool node_tangents_split(const WeierstrassCurve& c, std::int64_t p);

LocalData kodaira_and_tamagawa(const WeierstrassCurve& c, const Integer& p);

/// Primes dividing the discriminant, ascending.
std::vector<Integer> bad_primes(const WeierstrassCurve& c);
std::vector<LocalData> local_data(const WeierstrassCurve& c);

Integer tamagawa_product(const WeierstrassCurve& c);
/// Product of the bad primes; requires every bad prime to be multiplicative.
Integer conductor_semistable(const WeierstrassCurve& c);

}  // namespace ecv
