#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ecv/curve.hpp"

namespace ecv {

inline constexpr const char* kToolkitVersion = "0.1.0";
inline constexpr const char* kE1 = "1,1,1,-10,-10";
inline constexpr const char* kE2 = "1,1,1,-5,2";

enum class Method { computed, cited };
enum class Status { pass, fail, cited, unsupported };
enum class Overall { verified_at_desk_scale, failed };

std::string to_string(Method m);
std::string to_string(Status s);
std::string to_string(Overall o);

struct CheckRecord {
  std::string id;
  std::string claim;
  Method method = Method::computed;
  std::string inputs;
  std::string result;
  Status status = Status::fail;

  friend bool operator==(const CheckRecord&, const CheckRecord&) = default;
};

struct VerificationReport {
  std::string curve;
  std::string toolkit_version = kToolkitVersion;
  std::vector<CheckRecord> records;
  Overall overall = Overall::failed;

  /// Recomputes `overall` from the records.
  void finalize();
  const CheckRecord* find(const std::string& id) const;

  friend bool operator==(const VerificationReport&, const VerificationReport&) = default;
};

struct LedgerOptions {
  std::int64_t prime_bound = 10000;
  std::vector<int> l_list{3, 5, 7};
  std::size_t terms = 2000;
  long precision_bits = 128;
  long padic_digits = 20;
};

enum class Section { invariants, local, torsion, count, image_mod8, image_modl, lvalue, linv };

/// Full proof skeleton: every section in order, then the cited dependencies.
VerificationReport run_ledger(const WeierstrassCurve& c, const LedgerOptions& options = {});
/// One section only (the CLI subcommands).
VerificationReport run_section(const WeierstrassCurve& c, Section section,
                               const LedgerOptions& options = {});

/// Ids of the cited records, one per external theorem the argument relies on.
const std::vector<std::string>& cited_record_ids();

enum class ReportFormat { json, text };

/// json: key-sorted, two-space indented, trailing newline. text: one line per record.
std::string emit_report(const VerificationReport& report, ReportFormat format);
VerificationReport parse_report_json(const std::string& json_text);

}  // namespace ecv
