#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ecv/curve.hpp"

namespace ecv {

/// 2x2 matrix over Z/mZ, entries row-major in [0, m).
class MatModM {
 public:
  MatModM(int a, int b, int c, int d, int modulus);

  int modulus() const { return m_; }
  int operator()(int row, int col) const { return e_[2 * row + col]; }
  const std::array<int, 4>& entries() const { return e_; }

  int det() const;
  int trace() const;
  bool invertible() const;
  MatModM inverse() const;
  MatModM operator*(const MatModM& o) const;
  std::array<int, 2> apply(const std::array<int, 2>& v) const;

  static MatModM identity(int modulus) { return MatModM(1, 0, 0, 1, modulus); }

  /// "[[a,b],[c,d]]"
  std::string str() const;

  friend bool operator==(const MatModM&, const MatModM&) = default;
  friend auto operator<=>(const MatModM&, const MatModM&) = default;

 private:
  int m_;
  std::array<int, 4> e_;
};

/// A finite subgroup of GL_2(Z/mZ); elements are kept sorted.
class ModMMatrixGroup {
 public:
  ModMMatrixGroup(int modulus, std::vector<MatModM> elements);

  int modulus() const { return m_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<MatModM>& elements() const { return elements_; }
  bool contains(const MatModM& g) const;

  /// Identity present, closed under products and inverses.
  bool is_group() const;
  bool is_subgroup_of(const ModMMatrixGroup& other) const;

  friend bool operator==(const ModMMatrixGroup& a, const ModMMatrixGroup& b) {
    return a.m_ == b.m_ && a.elements_ == b.elements_;
  }

 private:
  int m_;
  std::vector<MatModM> elements_;
};

/// Smallest group containing `generators` (worklist closure). Throws
/// DomainError for non-invertible generators or mixed moduli.
ModMMatrixGroup group_closure(std::span<const MatModM> generators, int modulus);

/// { g in G : det(g) = +-1 }, the mod-m shadow of det(g)^2 = 1 in Z_2.
ModMMatrixGroup det_condition_subgroup(const ModMMatrixGroup& g);

/// All of GL_2(Z/mZ).
ModMMatrixGroup full_gl2(int modulus);

using Vec2 = std::array<int, 2>;

/// { v in (Z/m)^2 : g v = v for all g in G }, sorted.
std::vector<Vec2> fixed_submodule(const ModMMatrixGroup& g);

/// Invariant factors (d1, d2), d1 | d2, of a subgroup of (Z/m)^2.
std::array<int, 2> vector_group_structure(const std::vector<Vec2>& vectors, int modulus);

/// Mod-8 image data for 15A1 (Rouse--Zureick-Brown), as printed.
namespace datasets {
inline constexpr const char* kRzb15a1Mod8 = "rzb-15a1-mod8";
std::vector<MatModM> rzb_15a1_mod8_g_generators();
std::vector<MatModM> rzb_15a1_mod8_h_generators();
}  // namespace datasets

inline constexpr int kMaxSubgroupPrime = 7;

/// Conjugacy-class representatives of the subgroups of GL_2(F_l), ordered by
/// order then elements. Built bottom-up from cyclic subgroups by joins, with
/// conjugacy deduplication. Throws UnsupportedError for l > 7. Results are
/// cached per l.
const std::vector<ModMMatrixGroup>& enumerate_subgroups_gl2(int l);

/// Conjugacy-invariant data of Frob_p acting on E[l]: its trace, determinant
/// and dim ker(Frob - 1). The last is read off #E(F_p)[l].
struct FrobeniusObservation {
  int trace = 0;
  int det = 0;
  int fixed_dim = 0;
  friend auto operator<=>(const FrobeniusObservation&, const FrobeniusObservation&) = default;
};

/// Observations collected for one l.
struct FrobeniusConstraint {
  int l = 0;
  std::vector<std::pair<std::int64_t, FrobeniusObservation>> by_prime;
};

FrobeniusObservation observe(const MatModM& g);
FrobeniusObservation observe_frobenius(const WeierstrassCurve& c, std::int64_t p, int l);

/// A subgroup is ruled out as the mod-l image when its determinant is not all
/// of (Z/l)^*, or when it has no element matching some observation.
bool subgroup_excluded(const ModMMatrixGroup& h, std::span<const FrobeniusObservation> observed);
bool determinant_surjective(const ModMMatrixGroup& h);

enum class Verdict { surjective, inconclusive };

struct SurjectivityCertificate {
  int l = 0;
  std::int64_t prime_bound = 0;
  std::vector<std::int64_t> witness_primes;  ///< primes whose data eliminated a subgroup
  std::size_t primes_examined = 0;
  std::size_t proper_classes = 0;
  std::size_t eliminated_by_det = 0;
  std::size_t eliminated = 0;
  Verdict verdict = Verdict::inconclusive;
};

/// Sound sufficient test for surjectivity of the mod-l representation:
/// "surjective" only if every proper subgroup class is eliminated.
SurjectivityCertificate surjectivity_certificate(const WeierstrassCurve& c, int l,
                                                 std::int64_t prime_bound);

}  // namespace ecv
