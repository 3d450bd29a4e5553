#include "ecv/ledger.hpp"

#include <algorithm>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "ecv/counting.hpp"
#include "ecv/errors.hpp"
#include "ecv/galois_image.hpp"
#include "ecv/local_data.hpp"
#include "ecv/lvalue.hpp"
#include "ecv/padic.hpp"
#include "ecv/torsion.hpp"

namespace ecv {

std::string to_string(Method m) { return m == Method::computed ? "computed" : "cited"; }

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::cited: return "cited";
    case Status::unsupported: return "unsupported";
  }
  return "fail";
}

std::string to_string(Overall o) {
  return o == Overall::verified_at_desk_scale ? "verified-at-desk-scale" : "failed";
}

void VerificationReport::finalize() {
  const bool failed = std::any_of(records.begin(), records.end(), [](const CheckRecord& r) {
    return r.method == Method::computed && r.status == Status::fail;
  });
  overall = failed ? Overall::failed : Overall::verified_at_desk_scale;
}

const CheckRecord* VerificationReport::find(const std::string& id) const {
  for (const auto& r : records) {
    if (r.id == id) return &r;
  }
  return nullptr;
}

namespace {

Status verdict(bool ok) { return ok ? Status::pass : Status::fail; }

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

template <typename T>
std::string join_values(const std::vector<T>& xs, const std::string& sep = ",") {
  std::vector<std::string> parts;
  for (const auto& x : xs) {
    std::ostringstream os;
    os << x;
    parts.push_back(os.str());
  }
  return join(parts, sep);
}

// Lazily computed data shared between sections.
class Context {
 public:
  Context(const WeierstrassCurve& c, const LedgerOptions& o) : curve(c), options(o) {}

  const WeierstrassCurve& curve;
  const LedgerOptions& options;

  bool is_e1() const { return curve.descriptor() == kE1; }
  bool is_e2() const { return curve.descriptor() == kE2; }
  std::string curve_input() const { return "curve=" + curve.descriptor(); }

  const TorsionGroup& torsion() {
    if (!torsion_) torsion_ = torsion_subgroup(curve);
    return *torsion_;
  }

 private:
  std::optional<TorsionGroup> torsion_;
};

CheckRecord computed(std::string id, std::string claim, std::string inputs) {
  CheckRecord r;
  r.id = std::move(id);
  r.claim = std::move(claim);
  r.method = Method::computed;
  r.inputs = std::move(inputs);
  return r;
}

// Runs `body`, turning toolkit exceptions into unsupported/fail records.
CheckRecord guarded(CheckRecord r, const std::function<void(CheckRecord&)>& body) {
  try {
    body(r);
  } catch (const UnsupportedError& e) {
    r.status = Status::unsupported;
    r.result = std::string("unsupported: ") + e.what();
  } catch (const std::exception& e) {
    r.status = Status::fail;
    r.result = std::string("error: ") + e.what();
  }
  return r;
}

void invariants_section(Context& ctx, std::vector<CheckRecord>& out) {
  const auto& c = ctx.curve;
  const std::string claim = ctx.is_e1() ? "Delta(E) = 15^4 = 50625; 1728 Delta = c4^3 - c6^2"
                                        : "1728 Delta = c4^3 - c6^2; 4 b8 = b2 b6 - b4^2";
  out.push_back(guarded(computed("curve-invariants", claim, ctx.curve_input()), [&](CheckRecord& r) {
    const auto& i = c.invariants();
    const bool identities = 1728 * i.discriminant == i.c4 * i.c4 * i.c4 - i.c6 * i.c6 &&
                            4 * i.b8 == i.b2 * i.b6 - i.b4 * i.b4;
    bool ok = identities;
    if (ctx.is_e1()) ok = ok && i.discriminant == 50625;
    r.result = "b2=" + to_string(i.b2) + " b4=" + to_string(i.b4) + " b6=" + to_string(i.b6) +
               " b8=" + to_string(i.b8) + " c4=" + to_string(i.c4) + " c6=" + to_string(i.c6) +
               " disc=" + to_string(i.discriminant) + " j=" + i.j.str();
    r.status = verdict(ok);
  }));

  out.push_back(guarded(computed("minimality", "model is minimal at every bad prime", ctx.curve_input()),
                        [&](CheckRecord& r) {
    std::vector<std::string> parts;
    bool all = true;
    for (const Integer& p : bad_primes(c)) {
      const bool ok = minimality_certified(c, p);
      all = all && ok;
      parts.push_back(to_string(p) + ":ord(disc)=" + std::to_string(valuation(c.discriminant(), p)) +
                      (ok ? ":certified" : ":uncertified"));
    }
    r.result = join(parts, " ");
    if (!all) throw UnsupportedError("minimality not certified at some prime (" + r.result + ")");
    r.status = Status::pass;
  }));

  const bool known_pair = ctx.is_e1() || ctx.is_e2();
  const std::string partner = ctx.is_e1() ? kE2 : kE1;
  out.push_back(guarded(
      computed("isogeny-degree-2",
               ctx.is_e1() ? "E1 = 15A1 and E2 = 15A3 are 2-isogenous" : "E is 2-isogenous to its partner",
               ctx.curve_input() + (known_pair ? " partner=" + partner : "") + " trace_bound=100"),
      [&](CheckRecord& r) {
        if (!known_pair) throw UnsupportedError("skipped: no partner curve for this input");
        const WeierstrassCurve target = WeierstrassCurve::parse(partner);
        for (const auto& k : ctx.torsion().two_torsion) {
          const TwoIsogeny phi = velu_2_isogeny(c, k);
          const auto iso = isomorphism_over_Q(phi.codomain, target);
          if (!iso) continue;
          bool traces = true;
          for (std::int64_t p : primes_up_to(100)) {
            if (p == 2 || mpz_divisible_ui_p(c.discriminant().get_mpz_t(), p) ||
                mpz_divisible_ui_p(phi.codomain.discriminant().get_mpz_t(), p))
              continue;
            traces = traces && trace_ap(c, p) == trace_ap(phi.codomain, p);
          }
          r.result = "kernel=" + k.str() + " velu_codomain=" + phi.codomain.descriptor() +
                     " isomorphism=" + iso->str() + " traces_match=" + (traces ? "yes" : "no");
          r.status = verdict(traces);
          return;
        }
        r.result = "no rational 2-torsion point has a Velu quotient isomorphic to " + partner;
        r.status = Status::fail;
      }));
}

void local_section(Context& ctx, std::vector<CheckRecord>& out) {
  const auto& c = ctx.curve;
  std::vector<Integer> primes;
  try {
    primes = bad_primes(c);
  } catch (const std::exception&) {
  }
  for (const Integer& p : primes) {
    std::string claim = "reduction type, Kodaira symbol and Tamagawa number at p = " + to_string(p);
    std::optional<ReductionKind> expected;
    if (ctx.is_e1() && p == 3) {
      claim = "E has non-split multiplicative reduction at p = 3";
      expected = ReductionKind::nonsplit_multiplicative;
    } else if (ctx.is_e1() && p == 5) {
      claim = "E has split multiplicative reduction at p = 5";
      expected = ReductionKind::split_multiplicative;
    }
    out.push_back(guarded(computed("reduction-" + to_string(p), claim, ctx.curve_input() + " p=" + to_string(p)),
                          [&](CheckRecord& r) {
      const LocalData d = kodaira_and_tamagawa(c, p);
      r.result = "kind=" + to_string(d.kind) + " kodaira=" + d.kodaira_symbol() +
                 " tamagawa=" + to_string(d.tamagawa);
      r.status = verdict(!expected || d.kind == *expected);
    }));
  }

  out.push_back(guarded(
      computed("conductor", ctx.is_e1() ? "conductor of E1 (15A1) is 15" : (ctx.is_e2() ? "conductor of E2 (15A3) is 15" : "semistable conductor"),
               ctx.curve_input()),
      [&](CheckRecord& r) {
        const Integer n = conductor_semistable(c);
        r.result = "N=" + to_string(n);
        r.status = verdict(!(ctx.is_e1() || ctx.is_e2()) || n == 15);
      }));

  out.push_back(guarded(computed("tamagawa-product", ctx.is_e1() ? "Tam(E) = 8" : "Tam(E) = product of c_p",
                                 ctx.curve_input()),
                        [&](CheckRecord& r) {
    std::vector<std::string> parts;
    for (const auto& d : local_data(c)) parts.push_back("c_" + to_string(d.p) + "=" + to_string(d.tamagawa));
    const Integer tam = tamagawa_product(c);
    r.result = "Tam=" + to_string(tam) + (parts.empty() ? "" : " (" + join(parts, " ") + ")");
    r.status = verdict(!ctx.is_e1() || tam == 8);
  }));
}

void torsion_section(Context& ctx, std::vector<CheckRecord>& out) {
  const bool paper_curve = ctx.is_e1() || ctx.is_e2();
  out.push_back(guarded(computed("torsion-subgroup",
                                 paper_curve ? "E(Q) = E(Q)_tors is Z/2 + Z/4" : "rational torsion subgroup",
                                 ctx.curve_input() + " bound_primes=good odd p<=100"),
                        [&](CheckRecord& r) {
    const auto& t = ctx.torsion();
    std::vector<std::string> gens;
    for (const auto& g : t.generators) gens.push_back(g.str());
    r.result = "structure=" + t.structure() + " order=" + to_string(t.order) + " generators=" + join(gens, ";") +
               " reduction_bound=" + to_string(t.reduction_bound);
    const bool ok = mazur_admissible(t.d1, t.d2) &&
                    mpz_divisible_p(t.reduction_bound.get_mpz_t(), t.order.get_mpz_t());
    r.status = verdict(ok && (!paper_curve || (t.d1 == 2 && t.d2 == 4)));
  }));

  out.push_back(guarded(computed("two-torsion-points", "rational points of order 2", ctx.curve_input()),
                        [&](CheckRecord& r) {
    const auto& t = ctx.torsion();
    std::vector<std::string> pts;
    for (const auto& p : t.two_torsion) pts.push_back(p.str());
    r.result = "count=" + std::to_string(t.two_torsion.size()) + " points=" + join(pts, ";");
    // Number of order-2 points is 3 exactly when the 2-rank is 2.
    const std::size_t expected = t.d1 % 2 == 0 ? 3 : (t.d2 % 2 == 0 ? 1 : 0);
    r.status = verdict(t.two_torsion.size() == expected);
  }));
}

void image_mod8_section(Context& ctx, std::vector<CheckRecord>& out) {
  const std::string inputs = ctx.curve_input() + " dataset=" + datasets::kRzb15a1Mod8;
  const bool applies = ctx.is_e1();
  auto skip = [&](CheckRecord& r) {
    r.status = Status::unsupported;
    r.result = "skipped: external image data unavailable";
  };

  out.push_back(guarded(computed("mod8-group-order", "|G| = 16 for the mod-8 image G", inputs), [&](CheckRecord& r) {
    if (!applies) return skip(r);
    const auto gens = datasets::rzb_15a1_mod8_g_generators();
    const ModMMatrixGroup g = group_closure(gens, 8);
    r.result = "order=" + std::to_string(g.order()) + " closed=" + (g.is_group() ? "yes" : "no");
    r.status = verdict(g.order() == 16 && g.is_group());
  }));

  out.push_back(guarded(computed("mod8-det-subgroup",
                                 "H = {g in G : det(g) = +-1} is generated by the three listed matrices", inputs),
                        [&](CheckRecord& r) {
    if (!applies) return skip(r);
    const auto g_gens = datasets::rzb_15a1_mod8_g_generators();
    const auto h_gens = datasets::rzb_15a1_mod8_h_generators();
    const ModMMatrixGroup g = group_closure(g_gens, 8);
    const ModMMatrixGroup h = det_condition_subgroup(g);
    const ModMMatrixGroup h_listed = group_closure(h_gens, 8);
    r.result = "order(H)=" + std::to_string(h.order()) + " equals_listed=" + (h == h_listed ? "yes" : "no") +
               " index=" + std::to_string(g.order() / std::max<std::size_t>(h.order(), 1));
    r.status = verdict(h == h_listed && h.order() == 8 && h.is_group() && h.is_subgroup_of(g));
  }));

  out.push_back(guarded(computed("mod8-fixed-points", "((Z/8)^2)^H = ((Z/8)^2)^G, of size #E(Q)_tors", inputs),
                        [&](CheckRecord& r) {
    if (!applies) return skip(r);
    const auto g_gens = datasets::rzb_15a1_mod8_g_generators();
    const ModMMatrixGroup g = group_closure(g_gens, 8);
    const ModMMatrixGroup h = det_condition_subgroup(g);
    const auto fg = fixed_submodule(g);
    const auto fh = fixed_submodule(h);
    const auto s = vector_group_structure(fg, 8);
    const Integer torsion_order = ctx.torsion().order;
    r.result = "size=" + std::to_string(fg.size()) + " structure=Z/" + std::to_string(s[0]) + " + Z/" +
               std::to_string(s[1]) + " equal=" + (fg == fh ? "yes" : "no") +
               " torsion_order=" + to_string(torsion_order);
    r.status = verdict(fg == fh && Integer(static_cast<unsigned long>(fg.size())) == torsion_order);
  }));
}

void image_modl_section(Context& ctx, std::vector<CheckRecord>& out) {
  const auto& c = ctx.curve;
  const std::int64_t bound = ctx.options.prime_bound;
  std::vector<std::future<CheckRecord>> jobs;
  for (int l : ctx.options.l_list) {
    jobs.push_back(std::async(std::launch::async, [&c, &ctx, l, bound] {
      return guarded(computed("surjective-mod-" + std::to_string(l),
                              "rho_{E," + std::to_string(l) + "} mod " + std::to_string(l) + " is surjective",
                              ctx.curve_input() + " l=" + std::to_string(l) + " prime_bound=" + std::to_string(bound)),
                     [&](CheckRecord& r) {
        const auto cert = surjectivity_certificate(c, l, bound);
        std::vector<std::int64_t> witnesses = cert.witness_primes;
        r.result = std::string("verdict=") + (cert.verdict == Verdict::surjective ? "surjective" : "inconclusive") +
                   " proper_classes=" + std::to_string(cert.proper_classes) +
                   " eliminated=" + std::to_string(cert.eliminated) +
                   " by_det=" + std::to_string(cert.eliminated_by_det) +
                   " primes_examined=" + std::to_string(cert.primes_examined) +
                   " witnesses=" + join_values(witnesses);
        r.status = verdict(cert.verdict == Verdict::surjective);
      });
    }));
  }
  for (auto& j : jobs) out.push_back(j.get());
}

void count_section(Context& ctx, std::vector<CheckRecord>& out, bool per_prime) {
  const auto& c = ctx.curve;
  const std::int64_t bound = ctx.options.prime_bound;
  if (per_prime) {
    for (std::int64_t p : primes_up_to(bound)) {
      if (mpz_divisible_ui_p(c.discriminant().get_mpz_t(), p)) continue;
      out.push_back(guarded(computed("frobenius-" + std::to_string(p), "|a_p| <= 2 sqrt(p)",
                                     ctx.curve_input() + " p=" + std::to_string(p)),
                            [&](CheckRecord& r) {
        const auto rec = frobenius_record(c, p);
        r.result = "count=" + to_string(rec.count) + " a_p=" + to_string(rec.trace) +
                   " class=" + (rec.ordinary ? "ordinary" : "supersingular");
        r.status = verdict(rec.trace * rec.trace <= 4 * p);
      }));
    }
  }

  Integer torsion_order = 0;
  std::string torsion_error;
  try {
    torsion_order = ctx.torsion().order;
  } catch (const std::exception& e) {
    torsion_error = e.what();
  }

  out.push_back(guarded(
      computed("ordinary-criterion", "a_p != 1 mod p for every good odd p (torsion injects into E(F_p))",
               ctx.curve_input() + " prime_bound=" + std::to_string(bound)),
      [&](CheckRecord& r) {
        if (torsion_order == 0) throw UnsupportedError("torsion unavailable: " + torsion_error);
        const auto rep = verify_ordinary_criterion(c, torsion_order, bound);
        std::vector<std::int64_t> failing;
        for (const auto& row : rep.rows) {
          if (!row.pass()) failing.push_back(row.record.p);
        }
        r.result = "torsion_order=" + to_string(torsion_order) + " primes_checked=" + std::to_string(rep.rows.size()) +
                   " failures=" + std::to_string(failing.size()) +
                   (failing.empty() ? "" : " failing=" + join_values(failing));
        r.status = verdict(failing.empty());
      }));

  out.push_back(guarded(computed("hasse-contradiction",
                                 "t p > p + 1 + 2 sqrt(p) for all p >= 2, so t p never divides #E(F_p)",
                                 ctx.curve_input()),
                        [&](CheckRecord& r) {
    if (torsion_order == 0) throw UnsupportedError("torsion unavailable: " + torsion_error);
    const bool ok = hasse_contradiction_unconditional(torsion_order);
    r.result = "t=" + to_string(torsion_order) + " holds_for_all_p>=2=" + (ok ? "yes" : "no");
    r.status = verdict(ok);
  }));
}

bool odd_unit(const Rational& x) {
  if (x.sign() == 0) return false;
  Integer n = abs(x.num()), d = x.den();
  mpz_remove(n.get_mpz_t(), n.get_mpz_t(), Integer(2).get_mpz_t());
  mpz_remove(d.get_mpz_t(), d.get_mpz_t(), Integer(2).get_mpz_t());
  return n == 1 && d == 1;
}

void lvalue_section(Context& ctx, std::vector<CheckRecord>& out) {
  const auto& c = ctx.curve;
  const auto& o = ctx.options;
  const std::string inputs = ctx.curve_input() + " terms=" + std::to_string(o.terms) +
                             " precision_bits=" + std::to_string(o.precision_bits) + " max_den=100";
  std::optional<Rational> ratio;
  out.push_back(guarded(computed("lvalue-ratio", ctx.is_e1() ? "L(E,1)/Omega_E = 1/8" : "L(E,1)/Omega_E is rational",
                                 inputs),
                        [&](CheckRecord& r) {
    const LRatio lr = l_ratio(c, o.terms, static_cast<mpfr_prec_t>(o.precision_bits));
    ratio = lr.reconstructed;
    r.result = "L=" + lr.l_value.value.str(25) + " Omega=" + lr.period.value.str(25) +
               " ratio=" + lr.ratio.value.str(25) + " error_bound=" + lr.ratio.error_bound.str(3) +
               " rational=" + (ratio ? ratio->str() : std::string("none")) + " convention=" + kPeriodConvention;
    bool ok = ratio.has_value() && lr.ratio.error_bound < Real::from_double(1e-8, lr.ratio.error_bound.precision());
    if (ctx.is_e1()) ok = ok && *ratio == Rational(1, 8);
    r.status = verdict(ok);
  }));

  out.push_back(guarded(computed("lvalue-unit-odd-p", "L(E,1)/Omega_E is a p-adic unit for every odd p", inputs),
                        [&](CheckRecord& r) {
    if (!ratio) throw UnsupportedError("ratio not available");
    const bool ok = odd_unit(*ratio);
    r.result = "ratio=" + ratio->str() + " odd_unit=" + (ok ? "yes" : "no");
    r.status = verdict(ok);
  }));
}

void linv_section(Context& ctx, std::vector<CheckRecord>& out) {
  const auto& c = ctx.curve;
  const long digits = ctx.options.padic_digits;
  std::vector<LocalData> split;
  try {
    for (const auto& d : local_data(c)) {
      if (d.kind == ReductionKind::split_multiplicative) split.push_back(d);
    }
  } catch (const UnsupportedError& e) {
    CheckRecord r = computed("linv", "L-invariant at split multiplicative primes", ctx.curve_input());
    r.status = Status::unsupported;
    r.result = std::string("unsupported: ") + e.what();
    out.push_back(r);
    return;
  }
  for (const auto& d : split) {
    const std::string ps = to_string(d.p);
    const std::string claim = ctx.is_e1() && d.p == 5 ? "L-invariant log_5 q_E / ord_5 q_E lies in 5 Z_5^*"
                                                      : "L-invariant at p = " + ps + " lies in p Z_p^*";
    out.push_back(guarded(computed("linv-" + ps, claim,
                                   ctx.curve_input() + " p=" + ps + " padic_digits=" + std::to_string(digits) +
                                       " branch=log(p)=0"),
                          [&](CheckRecord& r) {
      const LInvariant li = l_invariant(c, d.p, digits);
      const LInvariant doubled = l_invariant(c, d.p, 2 * digits);
      const long shared = std::min(li.value.precision(), doubled.value.precision());
      const bool stable = li.value.agrees_with(doubled.value, shared) && li.value.precision() > 0;
      r.result = "q_E=[" + li.tate_q.str() + "] L=[" + li.value.str() + "] ord(L)=" +
                 (li.value.is_zero() ? std::string("inf") : std::to_string(li.value.valuation())) +
                 " stable_under_doubling=" + (stable ? "yes" : "no");
      r.status = verdict(li.in_p_times_units() && stable);
    }));
  }
}

struct CitedDependency {
  const char* id;
  const char* claim;
  const char* source;
};

const std::vector<CitedDependency>& cited_dependencies() {
  static const std::vector<CitedDependency> deps = {
      {"cited-modularity-lifting",
       "E over totally real F is modular if rhobar_{E,3}|G_F(zeta_3) is absolutely irreducible, or if sqrt5 not in F "
       "and rhobar_{E,5} is irreducible",
       "Kisin, Langlands-Tunnell, Freitas-Le Hung-Siksek Thm 3, Thorne Thm 1.1"},
      {"cited-base-change",
       "For cyclic F/Q without sqrt5, X(s3,b5)(F) = X(s3,b5)(Q) and X(b3,b5)(F) = X(b3,b5)(Q) imply all E/F modular",
       "Freitas-Le Hung-Siksek Prop 4.1; Langlands cyclic base change"},
      {"cited-moduli-interpretation", "X(b3,b5) ~ E1 (15A1) and X(s3,b5) ~ E2 (15A3) over Q",
       "Freitas-Le Hung-Siksek Lemmas 5.6, 5.7"},
      {"cited-serre-surjectivity", "rho_{E,l} is surjective onto GL_2(Z_l) for every prime l >= 3",
       "Serre 1972 Prop 21 with minimal discriminant 15^4; certified here only for the l in the options"},
      {"cited-rzb-2adic-image", "rho_{E,2}(G_Q) is the preimage of the mod-8 group G",
       "Rouse-Zureick-Brown 2-adic image database (X187d)"},
      {"cited-greenberg-p2-lambda", "the 2-adic lambda-invariant of E is trivial, so E(Q_inf) is finite for p = 2",
       "Greenberg 1999, p. 136"},
      {"cited-greenberg-prop-3-8",
       "for good ordinary p >= 3, Sel_p(E) = Sha(E)[p] trivial and a_p != 1 mod p imply E(Q_inf) finite",
       "Greenberg 1999, Prop 3.8; pp. 92-93 for multiplicative p"},
      {"cited-kato-selmer", "L(E,1)/Omega_E a p-adic unit implies Sel_p(E) trivial (good ordinary p)",
       "Kato 2004 Thm 17.4; Skinner 2014 Thm 3.35"},
      {"cited-kurihara-supersingular", "E(Q_inf) finite at good supersingular p when L(E,1)/Omega_E is a p-adic unit",
       "Kurihara 2002 Thm 0.1 with Kato"},
      {"cited-skinner-theorem-c", "Sel_p(E) trivial at the bad primes p = 3, 5 when L(E,1)/Omega_E is a p-adic unit",
       "Skinner 2015 Thm C"},
  };
  return deps;
}

void cited_section(std::vector<CheckRecord>& out) {
  for (const auto& d : cited_dependencies()) {
    CheckRecord r;
    r.id = d.id;
    r.claim = d.claim;
    r.method = Method::cited;
    r.inputs = "";
    r.result = std::string("cited: ") + d.source;
    r.status = Status::cited;
    out.push_back(std::move(r));
  }
}

}  // namespace

const std::vector<std::string>& cited_record_ids() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (const auto& d : cited_dependencies()) v.emplace_back(d.id);
    return v;
  }();
  return ids;
}

VerificationReport run_section(const WeierstrassCurve& c, Section section, const LedgerOptions& options) {
  Context ctx(c, options);
  VerificationReport report;
  report.curve = c.descriptor();
  switch (section) {
    case Section::invariants: invariants_section(ctx, report.records); break;
    case Section::local: local_section(ctx, report.records); break;
    case Section::torsion: torsion_section(ctx, report.records); break;
    case Section::count: count_section(ctx, report.records, true); break;
    case Section::image_mod8: image_mod8_section(ctx, report.records); break;
    case Section::image_modl: image_modl_section(ctx, report.records); break;
    case Section::lvalue: lvalue_section(ctx, report.records); break;
    case Section::linv: linv_section(ctx, report.records); break;
  }
  report.finalize();
  return report;
}

VerificationReport run_ledger(const WeierstrassCurve& c, const LedgerOptions& options) {
  Context ctx(c, options);
  VerificationReport report;
  report.curve = c.descriptor();
  auto& out = report.records;

  // The slow, independent sections start first; assembly order stays fixed.
  auto modl = std::async(std::launch::async, [&] {
    std::vector<CheckRecord> r;
    Context local_ctx(c, options);
    image_modl_section(local_ctx, r);
    return r;
  });
  auto lval = std::async(std::launch::async, [&] {
    std::vector<CheckRecord> r;
    Context local_ctx(c, options);
    lvalue_section(local_ctx, r);
    return r;
  });

  invariants_section(ctx, out);
  local_section(ctx, out);
  torsion_section(ctx, out);
  image_mod8_section(ctx, out);
  for (auto& r : modl.get()) out.push_back(std::move(r));
  count_section(ctx, out, false);
  for (auto& r : lval.get()) out.push_back(std::move(r));
  linv_section(ctx, out);
  cited_section(out);

  report.finalize();
  return report;
}

namespace {

using nlohmann::json;

json record_to_json(const CheckRecord& r) {
  return json{{"id", r.id},         {"claim", r.claim},   {"method", to_string(r.method)},
              {"inputs", r.inputs}, {"result", r.result}, {"status", to_string(r.status)}};
}

template <typename E>
E enum_from(const std::string& s, std::initializer_list<E> values) {
  for (E v : values) {
    if (to_string(v) == s) return v;
  }
  throw DomainError("unknown enum value '" + s + "' in report");
}

}  // namespace

std::string emit_report(const VerificationReport& report, ReportFormat format) {
  if (format == ReportFormat::json) {
    json records = json::array();
    for (const auto& r : report.records) records.push_back(record_to_json(r));
    const json doc{{"curve", report.curve},
                   {"toolkit_version", report.toolkit_version},
                   {"records", records},
                   {"overall", to_string(report.overall)}};
    return doc.dump(2) + "\n";
  }

  std::ostringstream os;
  os << "curve " << report.curve << " (toolkit " << report.toolkit_version << ")\n";
  for (const auto& r : report.records) {
    std::string tag = to_string(r.status);
    std::transform(tag.begin(), tag.end(), tag.begin(), ::toupper);
    os << "[" << tag << "] " << r.id << ": " << r.claim << " -- " << r.result << "\n";
  }
  os << "overall: " << to_string(report.overall) << "\n";
  return os.str();
}

VerificationReport parse_report_json(const std::string& json_text) {
  const json doc = json::parse(json_text);
  VerificationReport report;
  report.curve = doc.at("curve").get<std::string>();
  report.toolkit_version = doc.at("toolkit_version").get<std::string>();
  for (const auto& j : doc.at("records")) {
    CheckRecord r;
    r.id = j.at("id").get<std::string>();
    r.claim = j.at("claim").get<std::string>();
    r.method = enum_from(j.at("method").get<std::string>(), {Method::computed, Method::cited});
    r.inputs = j.at("inputs").get<std::string>();
    r.result = j.at("result").get<std::string>();
    r.status = enum_from(j.at("status").get<std::string>(),
                         {Status::pass, Status::fail, Status::cited, Status::unsupported});
    report.records.push_back(std::move(r));
  }
  report.overall = enum_from(doc.at("overall").get<std::string>(),
                             {Overall::verified_at_desk_scale, Overall::failed});
  return report;
}

}  // namespace ecv
