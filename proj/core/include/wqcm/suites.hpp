#pragma once

// Executable checks for the identities and theorem contracts of weak
// quasi-contact metric geometry.
//
// A check is asserted at a point only when all of its hypotheses hold there.
// A check asserted nowhere is "skipped"; skipped checks never count as failures.

#include <optional>
#include <string>
#include <vector>

#include "wqcm/classify.hpp"

namespace wqcm {

enum class Verdict { pass, fail, skipped };

const char* verdict_name(Verdict v);

struct CheckRecord {
  std::string id;
  std::string paper;  // equation or theorem label, or "plumbing"
  double max_residual = 0.0;
  double tol = 0.0;
  Verdict verdict = Verdict::skipped;
  int points = 0;  // points at which the check was asserted
  std::string detail;
};

struct CheckReport {
  std::string suite;
  std::string structure;
  std::uint64_t seed = 0;
  Tolerances tol;
  std::vector<CheckRecord> checks;
  std::optional<std::string> timestamp;

  bool failed() const;
  const CheckRecord& at(const std::string& id) const;
};

struct SuiteOptions {
  SamplePlan plan;
  Tolerances tol;
  int threads = 0;  // 0 picks the hardware concurrency
};

CheckReport run_identity_suite(const WeakACM& s, const SuiteOptions& opts);
CheckReport run_curvature_suite(const WeakACM& s, const SuiteOptions& opts);
CheckReport run_theorem_suite(const WeakACM& s, const SuiteOptions& opts);
// The three suites concatenated under suite name "all".
CheckReport run_all_suites(const WeakACM& s, const SuiteOptions& opts);

// "identity", "curvature", "theorems" or "all". Throws SchemaError otherwise.
CheckReport run_suite(const std::string& name, const WeakACM& s, const SuiteOptions& opts);

}  // namespace wqcm
