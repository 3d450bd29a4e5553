#include "ecv/counting.hpp"

#include <algorithm>
#include <future>
#include <stdexcept>
#include <thread>

#include "ecv/errors.hpp"

namespace ecv {

namespace {

std::int64_t residue(const Integer& n, std::int64_t p) {
  return mod_floor(n, Integer(static_cast<long>(p))).get_si();
}

void require_good(const WeierstrassCurve& c, std::int64_t p) {
  if (!c.over_rationals()) throw DomainError("point counting expects a curve over Q");
  if (!is_prime(p)) throw DomainError("point counting: p must be prime");
  if (p > (std::int64_t{1} << 31)) throw UnsupportedError("point counting: p too large");
  if (residue(c.discriminant(), p) == 0)
    throw BadReductionError("bad reduction at p = " + std::to_string(p));
}

}  // namespace

Integer count_points(const WeierstrassCurve& c, std::int64_t p) {
  require_good(c, p);
  if (p == 2) {
    std::int64_t a[5];
    for (int i = 0; i < 5; ++i) a[i] = residue(c.coefficients()[i], 2);
    long n = 1;
    for (std::int64_t x = 0; x < 2; ++x) {
      for (std::int64_t y = 0; y < 2; ++y) {
        const std::int64_t lhs = y * y + a[0] * x * y + a[2] * y;
        const std::int64_t rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
        if ((lhs - rhs) % 2 == 0) ++n;
      }
    }
    return n;
  }

  // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6: each x contributes 1 + chi(f(x)).
  const auto& inv = c.invariants();
  const std::int64_t b2 = residue(inv.b2, p), b4 = residue(inv.b4, p), b6 = residue(inv.b6, p);
  std::vector<signed char> chi(static_cast<std::size_t>(p), -1);
  chi[0] = 0;
  for (std::int64_t y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;

  std::int64_t n = 1;
  for (std::int64_t x = 0; x < p; ++x) {
    const std::int64_t f = (((4 * x + b2) % p * x + 2 * b4) % p * x + b6) % p;
    n += 1 + chi[f];
  }
  return n;
}

FrobeniusRecord frobenius_record(const WeierstrassCurve& c, std::int64_t p) {
  FrobeniusRecord r;
  r.p = p;
  r.count = count_points(c, p);
  r.trace = Integer(static_cast<long>(p + 1)) - r.count;
  if (r.trace * r.trace > 4 * p)
    throw std::logic_error("Hasse bound violated at p = " + std::to_string(p));
  r.ordinary = residue(r.trace, p) != 0;
  return r;
}

Integer trace_ap(const WeierstrassCurve& c, std::int64_t p) { return frobenius_record(c, p).trace; }

FrobeniusClass classify_ordinary(const WeierstrassCurve& c, std::int64_t p) {
  return frobenius_record(c, p).ordinary ? FrobeniusClass::ordinary : FrobeniusClass::supersingular;
}

bool hasse_contradiction_unconditional(const Integer& t) {
  // (t-1)s^2 - 2s - 1 > 0 with s = sqrt(p) is increasing for s >= 1/(t-1), so
  // it holds for all p >= 2 iff it holds at s = sqrt(2): 2t - 3 > 2 sqrt(2).
  if (t < 2) return false;
  const Integer lhs = 2 * t - 3;
  return lhs > 0 && lhs * lhs > 8;
}

std::size_t OrdinaryCriterionReport::failures() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const auto& r) { return !r.pass(); }));
}

OrdinaryCriterionReport verify_ordinary_criterion(const WeierstrassCurve& c,
                                                  const Integer& torsion_order,
                                                  std::int64_t bound) {
  OrdinaryCriterionReport report;
  report.torsion_order = torsion_order;
  report.bound = bound;
  report.hasse_unconditional = hasse_contradiction_unconditional(torsion_order);

  std::vector<std::int64_t> primes;
  for (std::int64_t p : primes_up_to(bound)) {
    if (p != 2 && residue(c.discriminant(), p) != 0) primes.push_back(p);
  }

  auto check = [&](std::int64_t p) {
    OrdinaryCriterionRow row;
    row.record = frobenius_record(c, p);
    row.torsion_divides = mpz_divisible_p(row.record.count.get_mpz_t(), torsion_order.get_mpz_t());
    row.ap_not_one = residue(row.record.trace, p) != 1;
    return row;
  };

  const std::size_t workers = std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  std::vector<std::future<std::vector<OrdinaryCriterionRow>>> jobs;
  for (std::size_t w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      std::vector<OrdinaryCriterionRow> out;
      for (std::size_t i = w; i < primes.size(); i += workers) out.push_back(check(primes[i]));
      return out;
    }));
  }
  for (auto& job : jobs) {
    auto part = job.get();
    report.rows.insert(report.rows.end(), part.begin(), part.end());
  }
  std::sort(report.rows.begin(), report.rows.end(),
            [](const auto& a, const auto& b) { return a.record.p < b.record.p; });
  return report;
}

}  // namespace ecv
