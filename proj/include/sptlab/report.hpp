#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sptlab/series.hpp"

namespace sptlab {

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct Failure {
  Index n = 0;
  std::string lhs;
  std::string rhs;
  Modulus modulus = 0;  // 0 for an exact comparison
};

/// Outcome of one verification. status == fail iff first_failure is set.
struct CongruenceReport {
  std::string check;
  std::string claim;   // the statement under test, in plain notation
  std::string params;  // e.g. "ell=11 mod=32760 nmax=100"
  std::int64_t n_verified = 0;
  Status status = Status::pass;
  std::optional<Failure> first_failure;
  std::string note;
  double elapsed_ms = 0;

  bool passed() const { return status == Status::pass; }
  void fail_at(Index n, std::string lhs, std::string rhs, Modulus modulus);
};

/// Starts a report and times it until finish() is called.
class ReportTimer {
 public:
  ReportTimer(std::string check, std::string claim, std::string params);
  CongruenceReport& report() { return report_; }
  CongruenceReport finish();

 private:
  CongruenceReport report_;
  std::chrono::steady_clock::time_point start_;
};

/// Compares lhs and rhs on [from, to] (reduced mod `modulus` when nonzero) and
/// records the smallest mismatch. Adds the number of compared indices to
/// n_verified.
void compare_into(CongruenceReport& report, const Series& lhs, const Series& rhs, Index from,
                  Index to, Modulus modulus = 0);

/// Merges several reports into one: fail if any failed, first failure kept.
CongruenceReport combine(std::string check, std::string claim, std::string params,
                         const std::vector<CongruenceReport>& parts);

std::string format_text(const CongruenceReport& r);

}  // namespace sptlab
