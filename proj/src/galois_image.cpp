#include "ecv/galois_image.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_map>

#include "ecv/counting.hpp"
#include "ecv/errors.hpp"

namespace ecv {

namespace {

int mod(long v, int m) {
  const long r = v % m;
  return static_cast<int>(r < 0 ? r + m : r);
}

}  // namespace

MatModM::MatModM(int a, int b, int c, int d, int modulus) : m_(modulus) {
  if (modulus < 2) throw DomainError("matrix modulus must be >= 2");
  e_ = {mod(a, m_), mod(b, m_), mod(c, m_), mod(d, m_)};
}

int MatModM::det() const { return mod(static_cast<long>(e_[0]) * e_[3] - static_cast<long>(e_[1]) * e_[2], m_); }
int MatModM::trace() const { return mod(e_[0] + e_[3], m_); }
bool MatModM::invertible() const { return std::gcd(det(), m_) == 1; }

MatModM MatModM::inverse() const {
  if (!invertible()) throw DomainError("matrix " + str() + " is not invertible");
  const int di = static_cast<int>(inverse_mod(static_cast<std::int64_t>(det()), m_));
  return MatModM(e_[3] * di, -e_[1] * di, -e_[2] * di, e_[0] * di, m_);
}

MatModM MatModM::operator*(const MatModM& o) const {
  if (o.m_ != m_) throw DomainError("matrix moduli differ");
  return MatModM(e_[0] * o.e_[0] + e_[1] * o.e_[2], e_[0] * o.e_[1] + e_[1] * o.e_[3],
                 e_[2] * o.e_[0] + e_[3] * o.e_[2], e_[2] * o.e_[1] + e_[3] * o.e_[3], m_);
}

std::array<int, 2> MatModM::apply(const std::array<int, 2>& v) const {
  return {mod(e_[0] * v[0] + e_[1] * v[1], m_), mod(e_[2] * v[0] + e_[3] * v[1], m_)};
}

std::string MatModM::str() const {
  return "[[" + std::to_string(e_[0]) + "," + std::to_string(e_[1]) + "],[" + std::to_string(e_[2]) +
         "," + std::to_string(e_[3]) + "]]";
}

ModMMatrixGroup::ModMMatrixGroup(int modulus, std::vector<MatModM> elements)
    : m_(modulus), elements_(std::move(elements)) {
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
}

bool ModMMatrixGroup::contains(const MatModM& g) const {
  return std::binary_search(elements_.begin(), elements_.end(), g);
}

bool ModMMatrixGroup::is_group() const {
  if (!contains(MatModM::identity(m_))) return false;
  for (const auto& a : elements_) {
    if (a.modulus() != m_ || !a.invertible() || !contains(a.inverse())) return false;
    for (const auto& b : elements_) {
      if (!contains(a * b)) return false;
    }
  }
  return true;
}

bool ModMMatrixGroup::is_subgroup_of(const ModMMatrixGroup& other) const {
  return m_ == other.m_ && std::includes(other.elements_.begin(), other.elements_.end(),
                                         elements_.begin(), elements_.end());
}

ModMMatrixGroup group_closure(std::span<const MatModM> generators, int modulus) {
  for (const auto& g : generators) {
    if (g.modulus() != modulus) throw DomainError("generator modulus differs from group modulus");
    if (!g.invertible()) throw DomainError("generator " + g.str() + " is not invertible");
  }
  std::set<MatModM> seen{MatModM::identity(modulus)};
  std::deque<MatModM> work{MatModM::identity(modulus)};
  while (!work.empty()) {
    const MatModM x = work.front();
    work.pop_front();
    for (const auto& g : generators) {
      const MatModM y = x * g;
      if (seen.insert(y).second) work.push_back(y);
    }
  }
  return ModMMatrixGroup(modulus, {seen.begin(), seen.end()});
}

ModMMatrixGroup det_condition_subgroup(const ModMMatrixGroup& g) {
  std::vector<MatModM> out;
  for (const auto& x : g.elements()) {
    // det = +-1 exactly, read mod m. Testing det^2 = 1 mod m would keep all of
    // G when m = 8, since every odd square is 1 mod 8.
    const int d = x.det();
    if (d == 1 % g.modulus() || d == g.modulus() - 1) out.push_back(x);
  }
  return ModMMatrixGroup(g.modulus(), std::move(out));
}

ModMMatrixGroup full_gl2(int m) {
  std::vector<MatModM> out;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c)
        for (int d = 0; d < m; ++d) {
          MatModM x(a, b, c, d, m);
          if (x.invertible()) out.push_back(x);
        }
  return ModMMatrixGroup(m, std::move(out));
}

std::vector<Vec2> fixed_submodule(const ModMMatrixGroup& g) {
  const int m = g.modulus();
  std::vector<Vec2> out;
  for (int x = 0; x < m; ++x) {
    for (int y = 0; y < m; ++y) {
      const Vec2 v{x, y};
      if (std::all_of(g.elements().begin(), g.elements().end(),
                      [&](const MatModM& h) { return h.apply(v) == v; })) {
        out.push_back(v);
      }
    }
  }
  return out;
}

std::array<int, 2> vector_group_structure(const std::vector<Vec2>& vectors, int m) {
  int max_order = 1;
  for (const auto& v : vectors) {
    const int o = m / std::gcd(std::gcd(v[0], v[1]), m);
    max_order = std::max(max_order, o);
  }
  return {static_cast<int>(vectors.size()) / max_order, max_order};
}

namespace datasets {

std::vector<MatModM> rzb_15a1_mod8_g_generators() {
  return {MatModM(5, 4, 2, 3, 8), MatModM(1, 0, 0, 5, 8), MatModM(1, 4, 0, 5, 8),
          MatModM(1, 0, 4, 5, 8)};
}

std::vector<MatModM> rzb_15a1_mod8_h_generators() {
  return {MatModM(5, 4, 2, 3, 8), MatModM(5, 0, 2, 3, 8), MatModM(1, 0, 4, 1, 8)};
}

}  // namespace datasets

namespace {

// GL_2(F_l) with elements indexed 0..n-1 and precomputed product/conjugation tables.
class IndexedGl2 {
 public:
  explicit IndexedGl2(int l) : l_(l) {
    const ModMMatrixGroup full = full_gl2(l);
    for (const auto& g : full.elements()) {
      index_[code(g)] = static_cast<int>(elems_.size());
      elems_.push_back(g);
    }
    n_ = static_cast<int>(elems_.size());
    mul_.resize(static_cast<std::size_t>(n_) * n_);
    inv_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      inv_[i] = index_.at(code(elems_[i].inverse()));
      for (int j = 0; j < n_; ++j) mul_[i * n_ + j] = index_.at(code(elems_[i] * elems_[j]));
    }
    identity_ = index_.at(code(MatModM::identity(l)));
  }

  int size() const { return n_; }
  int mul(int a, int b) const { return mul_[a * n_ + b]; }
  int conj(int h, int x) const { return mul(mul(h, x), inv_[h]); }
  int identity() const { return identity_; }
  const MatModM& element(int i) const { return elems_[i]; }

 private:
  static int code(const MatModM& g) {
    const auto& e = g.entries();
    const int m = g.modulus();
    return ((e[0] * m + e[1]) * m + e[2]) * m + e[3];
  }

  int l_;
  int n_ = 0;
  int identity_ = 0;
  std::vector<MatModM> elems_;
  std::unordered_map<int, int> index_;
  std::vector<int> mul_;
  std::vector<int> inv_;
};

using Bits = std::vector<std::uint64_t>;

struct IndexedSubgroup {
  Bits bits;
  std::vector<int> members;
  std::vector<int> gens;
};

bool test(const Bits& b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; }
void set(Bits& b, int i) { b[i >> 6] |= std::uint64_t{1} << (i & 63); }

std::uint64_t hash_bits(const Bits& b) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::uint64_t w : b) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 1099511628211ull;
  }
  return h;
}

IndexedSubgroup closure(const IndexedGl2& gl, std::vector<int> gens) {
  IndexedSubgroup s;
  s.bits.assign((gl.size() + 63) / 64, 0);
  s.gens = std::move(gens);
  s.members.push_back(gl.identity());
  set(s.bits, gl.identity());
  for (std::size_t k = 0; k < s.members.size(); ++k) {
    const int x = s.members[k];
    for (int g : s.gens) {
      const int y = gl.mul(x, g);
      if (!test(s.bits, y)) {
        set(s.bits, y);
        s.members.push_back(y);
      }
    }
  }
  std::sort(s.members.begin(), s.members.end());
  return s;
}

Bits conjugate(const IndexedGl2& gl, const IndexedSubgroup& s, int h) {
  Bits out(s.bits.size(), 0);
  for (int x : s.members) set(out, gl.conj(h, x));
  return out;
}

std::vector<ModMMatrixGroup> compute_subgroup_classes(int l) {
  const IndexedGl2 gl(l);
  const int n = gl.size();

  std::vector<IndexedSubgroup> reps;
  std::unordered_multimap<std::uint64_t, std::size_t> conjugate_hashes;

  // Returns true when `s` is new up to conjugacy (and registers it).
  auto register_class = [&](IndexedSubgroup s) {
    const auto range = conjugate_hashes.equal_range(hash_bits(s.bits));
    for (auto it = range.first; it != range.second; ++it) {
      const auto& rep = reps[it->second];
      if (rep.members.size() != s.members.size()) continue;
      for (int h = 0; h < n; ++h) {
        if (conjugate(gl, rep, h) == s.bits) return false;
      }
    }
    std::set<Bits> distinct;
    for (int h = 0; h < n; ++h) distinct.insert(conjugate(gl, s, h));
    for (const auto& b : distinct) conjugate_hashes.emplace(hash_bits(b), reps.size());
    reps.push_back(std::move(s));
    return true;
  };

  // One generator per cyclic subgroup.
  std::vector<int> cyclic_gens;
  {
    std::set<Bits> seen;
    for (int g = 0; g < n; ++g) {
      if (seen.insert(closure(gl, {g}).bits).second) cyclic_gens.push_back(g);
    }
  }

  register_class(closure(gl, {}));
  for (std::size_t k = 0; k < reps.size(); ++k) {
    for (int g : cyclic_gens) {
      if (test(reps[k].bits, g)) continue;
      std::vector<int> gens = reps[k].gens;
      gens.push_back(g);
      register_class(closure(gl, std::move(gens)));
    }
  }

  std::vector<ModMMatrixGroup> out;
  for (const auto& rep : reps) {
    std::vector<MatModM> elems;
    for (int i : rep.members) elems.push_back(gl.element(i));
    out.emplace_back(l, std::move(elems));
  }
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.order() != b.order() ? a.order() < b.order() : a.elements() < b.elements();
  });
  return out;
}

}  // namespace

const std::vector<ModMMatrixGroup>& enumerate_subgroups_gl2(int l) {
  if (l > kMaxSubgroupPrime) throw UnsupportedError("subgroup enumeration is capped at l <= 7");
  if (!is_prime(static_cast<std::int64_t>(l))) throw DomainError("enumerate_subgroups_gl2: l must be prime");
  static std::mutex mutex;
  static std::map<int, std::shared_future<std::vector<ModMMatrixGroup>>> cache;
  std::shared_future<std::vector<ModMMatrixGroup>> entry;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(l);
    if (it == cache.end()) {
      it = cache.emplace(l, std::async(std::launch::deferred, compute_subgroup_classes, l).share()).first;
    }
    entry = it->second;
  }
  return entry.get();
}

FrobeniusObservation observe(const MatModM& g) {
  const int l = g.modulus();
  FrobeniusObservation o{g.trace(), g.det(), 0};
  if (g == MatModM::identity(l)) {
    o.fixed_dim = 2;
  } else if (mod(1 - o.trace + o.det, l) == 0) {
    o.fixed_dim = 1;
  }
  return o;
}

namespace {

// Number of points P in E(F_p) with lP = O.
// Affine points over F_p on y^2 = x^3 + a2 x^2 + a4 x + a6, with int64 arithmetic.
struct SmallCurve {
  std::int64_t p, a2, a4, a6;

  struct Pt {
    std::int64_t x = 0, y = 0;
    bool inf = true;
  };

  std::int64_t md(std::int64_t v) const { return mod_floor(v, p); }

  Pt add(const Pt& P, const Pt& Q) const {
    if (P.inf) return Q;
    if (Q.inf) return P;
    std::int64_t lambda;
    if (P.x == Q.x) {
      if (md(P.y + Q.y) == 0) return {};
      lambda = md(md(md(3 * P.x % p * P.x) + 2 * a2 % p * P.x + a4) * inverse_mod(md(2 * P.y), p));
    } else {
      lambda = md(md(Q.y - P.y) * inverse_mod(md(Q.x - P.x), p));
    }
    const std::int64_t x3 = md(lambda * lambda % p - a2 - P.x - Q.x);
    const std::int64_t y3 = md(-(P.y + lambda * md(x3 - P.x) % p));
    return {x3, y3, false};
  }

  Pt mul(Pt P, long n) const {
    Pt r;
    while (n > 0) {
      if (n & 1) r = add(r, P);
      P = add(P, P);
      n >>= 1;
    }
    return r;
  }
};

// #E(F_p)[l], by enumerating E(F_p). The curve is first moved to a model
// y^2 = x^3 + (b2/4) x^2 + (b4/2) x + b6/4, so p must be odd.
long count_l_torsion(const WeierstrassCurve& c, std::int64_t p, int l) {
  if (p == 2) throw DomainError("count_l_torsion: p must be odd");
  const auto& inv = c.invariants();
  const std::int64_t i2 = inverse_mod(std::int64_t{2}, p), i4 = i2 * i2 % p;
  auto red = [&](const Integer& v) { return mod_floor(v, Integer(static_cast<long>(p))).get_si(); };
  const SmallCurve e{p, red(inv.b2) * i4 % p, red(inv.b4) * i2 % p, red(inv.b6) * i4 % p};

  std::vector<std::int64_t> root(p, -1);
  for (std::int64_t y = 0; y < p; ++y) root[y * y % p] = y;

  long n = 1;  // infinity
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t f = e.md(((x + e.a2) % p * x % p + e.a4) % p * x % p + e.a6);
    const std::int64_t y = root[f];
    if (y < 0) continue;
    const SmallCurve::Pt P{x, y, false};
    if (e.mul(P, l).inf) n += y == 0 ? 1 : 2;
  }
  return n;
}

}  // namespace

FrobeniusObservation observe_frobenius(const WeierstrassCurve& c, std::int64_t p, int l) {
  const Integer ap = trace_ap(c, p);
  FrobeniusObservation o;
  o.trace = static_cast<int>(mod_floor(ap, Integer(l)).get_si());
  o.det = static_cast<int>(mod_floor(p, l));
  if (mod(1 - o.trace + o.det, l) != 0) return o;
  o.fixed_dim = 1;
  // Frobenius can be the identity on E[l] only with characteristic polynomial (x-1)^2.
  // It also needs l^2 | #E(F_p) = 1 + p - a_p.
  const Integer count = 1 + p - ap;
  if (o.trace == mod(2, l) && o.det == 1 && mpz_divisible_ui_p(count.get_mpz_t(), l * l) &&
      count_l_torsion(c, p, l) == static_cast<long>(l) * l)
    o.fixed_dim = 2;
  return o;
}

bool determinant_surjective(const ModMMatrixGroup& h) {
  std::set<int> dets;
  for (const auto& g : h.elements()) dets.insert(g.det());
  int units = 0;
  for (int u = 1; u < h.modulus(); ++u) units += std::gcd(u, h.modulus()) == 1;
  return static_cast<int>(dets.size()) == units;
}

bool subgroup_excluded(const ModMMatrixGroup& h, std::span<const FrobeniusObservation> observed) {
  if (!determinant_surjective(h)) return true;
  std::set<FrobeniusObservation> realized;
  for (const auto& g : h.elements()) realized.insert(observe(g));
  return std::any_of(observed.begin(), observed.end(),
                     [&](const FrobeniusObservation& o) { return !realized.count(o); });
}

SurjectivityCertificate surjectivity_certificate(const WeierstrassCurve& c, int l,
                                                 std::int64_t prime_bound) {
  if (l < 3) throw DomainError("surjectivity_certificate: l must be an odd prime");
  const auto& classes = enumerate_subgroups_gl2(l);
  const std::size_t full_order = classes.back().order();

  SurjectivityCertificate cert;
  cert.l = l;
  cert.prime_bound = prime_bound;

  struct Candidate {
    const ModMMatrixGroup* group;
    std::set<FrobeniusObservation> realized;
  };
  std::vector<Candidate> alive;
  for (const auto& h : classes) {
    if (h.order() == full_order) continue;
    ++cert.proper_classes;
    if (!determinant_surjective(h)) {
      ++cert.eliminated_by_det;
      continue;
    }
    Candidate cand{&h, {}};
    for (const auto& g : h.elements()) cand.realized.insert(observe(g));
    alive.push_back(std::move(cand));
  }

  for (std::int64_t p : primes_up_to(prime_bound)) {
    if (alive.empty()) break;
    if (p == l || mpz_divisible_ui_p(c.discriminant().get_mpz_t(), static_cast<unsigned long>(p)))
      continue;
    ++cert.primes_examined;
    const FrobeniusObservation o = observe_frobenius(c, p, l);
    const auto before = alive.size();
    std::erase_if(alive, [&](const Candidate& cand) { return !cand.realized.count(o); });
    if (alive.size() != before) cert.witness_primes.push_back(p);
  }
  cert.eliminated = cert.proper_classes - alive.size();
  cert.verdict = alive.empty() ? Verdict::surjective : Verdict::inconclusive;
  return cert;
}

}  // namespace ecv
