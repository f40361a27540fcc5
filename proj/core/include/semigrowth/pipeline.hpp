#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "semigrowth/bounds.hpp"
#include "semigrowth/config.hpp"
#include "semigrowth/increase.hpp"

namespace semigrowth {

enum class Verb { check, curve, certify, classify };

std::string_view to_string(Verb v);

struct CheckResult {
  CheckId id = CheckId::sandwich_62;
  std::optional<BoundReport> report;
  std::string error_kind;  ///< empty when the check produced a report
  std::string error;
  Verdict verdict() const { return report ? report->verdict : Verdict::fail; }
};

struct CertificateRecord {
  std::optional<PositiveIncreaseCert> certificate;
  std::optional<CertificateCheck> verification;
  std::optional<double> polynomial_floor;
  std::string error;
};

struct RunReport {
  RunConfig config;
  Verb verb = Verb::check;
  std::optional<GrowthCurve> curve;
  std::optional<MonotoneFn> envelope;
  std::string envelope_error;
  std::optional<CertificateRecord> certificate;
  std::optional<Classification> classification;
  std::vector<CheckResult> checks;
  /// Largest certified truncation bound relative to the sampled value.
  double max_relative_truncation = 0.0;
  bool curve_certified = true;
  /// Wall-clock seconds per stage; kept out of the emitted files.
  std::vector<std::pair<std::string, double>> timing;

  /// 0 when every requested check passes, 1 otherwise.
  int exit_code() const;
};

/// Builds the model, computes the growth curve and resolvent envelope once and
/// runs the requested checks. Model construction errors propagate; per-check
/// failures are recorded in that check's slot.
RunReport run_pipeline(const RunConfig& config, Verb verb = Verb::check);

/// JSON report document (deterministic key order).
std::string report_document(const RunReport& report);
std::string summary_text(const RunReport& report);

/// Writes CSVs, report.json and summary.txt into `dir`. Files are staged in a
/// subdirectory and renamed into place; an unwritable target raises IoError
/// before anything is written.
std::vector<std::filesystem::path> emit_outputs(const RunReport& report, const std::filesystem::path& dir);

}  // namespace semigrowth
