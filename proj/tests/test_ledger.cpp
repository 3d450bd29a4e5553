#include <doctest.h>

#include <set>
#include <sstream>

#include "ecv/ledger.hpp"

using namespace ecv;

namespace {
const WeierstrassCurve E1 = WeierstrassCurve::parse(kE1);
const WeierstrassCurve E2 = WeierstrassCurve::parse(kE2);

LedgerOptions fast() {
  LedgerOptions o;
  o.prime_bound = 1000;
  return o;
}

const VerificationReport& e1_report() {
  static const VerificationReport r = run_ledger(E1);
  return r;
}

std::vector<std::string> ids(const VerificationReport& r) {
  std::vector<std::string> out;
  for (const auto& rec : r.records) out.push_back(rec.id);
  return out;
}
}  // namespace

TEST_CASE("E1 ledger is verified with the expected records") {
  const auto& r = e1_report();
  CHECK(r.overall == Overall::verified_at_desk_scale);
  CHECK(r.curve == kE1);
  const std::vector<std::string> expected = {
      "curve-invariants", "minimality", "isogeny-degree-2", "reduction-3", "reduction-5", "conductor",
      "tamagawa-product", "torsion-subgroup", "two-torsion-points", "mod8-group-order", "mod8-det-subgroup",
      "mod8-fixed-points", "surjective-mod-3", "surjective-mod-5", "surjective-mod-7", "ordinary-criterion",
      "hasse-contradiction", "lvalue-ratio", "lvalue-unit-odd-p", "linv-5", "cited-modularity-lifting",
      "cited-base-change", "cited-moduli-interpretation", "cited-serre-surjectivity", "cited-rzb-2adic-image",
      "cited-greenberg-p2-lambda", "cited-greenberg-prop-3-8", "cited-kato-selmer",
      "cited-kurihara-supersingular", "cited-skinner-theorem-c"};
  CHECK(ids(r) == expected);
  for (const auto& rec : r.records) {
    INFO(rec.id << ": " << rec.result);
    CHECK((rec.status == Status::cited) == (rec.method == Method::cited));
    if (rec.method == Method::computed) {
      CHECK(rec.status == Status::pass);
      CHECK_FALSE(rec.inputs.empty());
    }
  }
  CHECK(r.find("tamagawa-product")->result.find("Tam=8") != std::string::npos);
  CHECK(r.find("torsion-subgroup")->result.find("structure=Z/2 + Z/4") != std::string::npos);
  CHECK(r.find("lvalue-ratio")->result.find("rational=1/8") != std::string::npos);
  CHECK(r.find("mod8-group-order")->result.find("order=16") != std::string::npos);
  CHECK(r.find("mod8-fixed-points")->result.find("equal=yes") != std::string::npos);
  CHECK(r.find("linv-5")->result.find("ord(L)=1") != std::string::npos);
  CHECK(r.find("no-such-record") == nullptr);
}

TEST_CASE("every cited dependency appears exactly once") {
  const auto& r = e1_report();
  std::multiset<std::string> cited;
  for (const auto& rec : r.records)
    if (rec.method == Method::cited) cited.insert(rec.id);
  CHECK(cited.size() == cited_record_ids().size());
  for (const auto& id : cited_record_ids()) CHECK(cited.count(id) == 1);
  for (const char* id : {"cited-kato-selmer", "cited-kurihara-supersingular", "cited-skinner-theorem-c",
                         "cited-greenberg-p2-lambda", "cited-greenberg-prop-3-8", "cited-modularity-lifting"})
    CHECK(cited.count(id) == 1);
}

TEST_CASE("E2 ledger") {
  const auto r = run_ledger(E2, fast());
  CHECK(r.overall == Overall::verified_at_desk_scale);
  CHECK(r.find("torsion-subgroup")->status == Status::pass);
  CHECK(r.find("torsion-subgroup")->result.find("Z/2 + Z/4") != std::string::npos);
  CHECK(r.find("mod8-group-order")->status == Status::unsupported);
  CHECK(r.find("mod8-group-order")->result == "skipped: external image data unavailable");
  CHECK(r.find("isogeny-degree-2")->status == Status::pass);
}

TEST_CASE("additive curve gets unsupported records without aborting") {
  const auto r = run_ledger(WeierstrassCurve::parse("0,0,0,0,1"), fast());
  CHECK(r.find("reduction-3")->status == Status::unsupported);
  CHECK(r.find("reduction-2")->status == Status::unsupported);
  CHECK(r.find("tamagawa-product")->status == Status::unsupported);
  CHECK(r.find("torsion-subgroup")->status == Status::pass);
  CHECK(r.find("cited-kato-selmer") != nullptr);
  // A CM curve has a non-surjective mod-l image; that is a computed failure.
  CHECK(r.find("surjective-mod-3")->status == Status::fail);
  CHECK(r.overall == Overall::failed);
}

TEST_CASE("json output is deterministic and round-trips") {
  const auto a = emit_report(e1_report(), ReportFormat::json);
  const auto b = emit_report(run_ledger(E1), ReportFormat::json);
  CHECK(a == b);
  CHECK(a.back() == '\n');
  const auto parsed = parse_report_json(a);
  CHECK(parsed == e1_report());
  CHECK(emit_report(parsed, ReportFormat::json) == a);
  // Keys are sorted.
  CHECK(a.find("\"curve\"") < a.find("\"overall\""));
  CHECK(a.find("\"overall\"") < a.find("\"records\""));
  CHECK(a.find("\"records\"") < a.find("\"toolkit_version\""));
}

TEST_CASE("text output has one line per record") {
  const auto& r = e1_report();
  const auto text = emit_report(r, ReportFormat::text);
  std::istringstream in(text);
  std::string line;
  std::size_t record_lines = 0;
  while (std::getline(in, line))
    if (line.rfind("[", 0) == 0) ++record_lines;
  CHECK(record_lines == r.records.size());
  for (const auto& rec : r.records) CHECK(text.find(rec.claim) != std::string::npos);
  CHECK(text.find("overall: verified-at-desk-scale") != std::string::npos);
}

TEST_CASE("sections run alone") {
  const auto inv = run_section(E1, Section::invariants);
  CHECK(inv.records.size() == 3);
  const auto count = run_section(E1, Section::count, fast());
  CHECK(count.find("frobenius-7") != nullptr);
  CHECK(count.find("frobenius-7")->result.find("a_p=0") != std::string::npos);
  CHECK(count.find("frobenius-3") == nullptr);
  CHECK(count.overall == Overall::verified_at_desk_scale);
  CHECK_THROWS(parse_report_json("{\"curve\": 1}"));
}
