// ecverify: run the verification ledger (or one section of it) for a curve.

#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "ecv/errors.hpp"
#include "ecv/ledger.hpp"

namespace {

struct Cli {
  std::string curve = ecv::kE1;
  ecv::LedgerOptions options;
  std::string format = "json";
  std::string out;
};

int emit(const Cli& cli, const ecv::VerificationReport& report) {
  const auto fmt = cli.format == "text" ? ecv::ReportFormat::text : ecv::ReportFormat::json;
  const std::string body = ecv::emit_report(report, fmt);
  if (cli.out.empty()) {
    std::cout << body;
  } else {
    std::ofstream f(cli.out);
    if (!f) {
      std::cerr << "ecverify: cannot write " << cli.out << "\n";
      return 2;
    }
    f << body;
  }
  return report.overall == ecv::Overall::verified_at_desk_scale ? 0 : 1;
}

void add_common(CLI::App* sub, Cli& cli) {
  sub->add_option("--curve", cli.curve, "a1,a2,a3,a4,a6")->capture_default_str();
  sub->add_option("--prime-bound", cli.options.prime_bound, "largest prime examined")
      ->capture_default_str()
      ->check(CLI::Range(3, 10000000));
  sub->add_option("--l-list", cli.options.l_list, "primes l for the mod-l image")
      ->delimiter(',')
      ->capture_default_str();
  sub->add_option("--terms", cli.options.terms, "Dirichlet series terms")->capture_default_str();
  sub->add_option("--precision-bits", cli.options.precision_bits, "MPFR precision")
      ->capture_default_str()
      ->check(CLI::Range(32, 1 << 16));
  sub->add_option("--padic-digits", cli.options.padic_digits, "p-adic precision")
      ->capture_default_str()
      ->check(CLI::Range(4, 2000));
  sub->add_option("--format", cli.format, "json or text")
      ->capture_default_str()
      ->check(CLI::IsMember({"json", "text"}));
  sub->add_option("--out", cli.out, "write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Desk-scale verification ledger for elliptic curves over Q"};
  app.require_subcommand(1);
  Cli cli;

  const std::map<std::string, ecv::Section> sections = {
      {"invariants", ecv::Section::invariants}, {"local", ecv::Section::local},
      {"torsion", ecv::Section::torsion},       {"count", ecv::Section::count},
      {"image-mod8", ecv::Section::image_mod8}, {"image-modl", ecv::Section::image_modl},
      {"lvalue", ecv::Section::lvalue},         {"linv", ecv::Section::linv},
  };

  auto* ledger = app.add_subcommand("ledger", "run every section and list the cited dependencies");
  add_common(ledger, cli);
  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, section] : sections) {
    subs[name] = app.add_subcommand(name, "run the " + name + " section");
    add_common(subs[name], cli);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    const auto curve = ecv::WeierstrassCurve::parse(cli.curve);
    if (ledger->parsed()) return emit(cli, ecv::run_ledger(curve, cli.options));
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) return emit(cli, ecv::run_section(curve, sections.at(name), cli.options));
    }
  } catch (const std::exception& e) {
    std::cerr << "ecverify: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
