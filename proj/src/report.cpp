#include "sptlab/report.hpp"

#include <sstream>

namespace sptlab {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::skipped: return "skipped";
  }
  return "unknown";
}

void CongruenceReport::fail_at(Index n, std::string lhs, std::string rhs, Modulus modulus) {
  if (first_failure && first_failure->n <= n) return;
  status = Status::fail;
  first_failure = Failure{n, std::move(lhs), std::move(rhs), modulus};
}

ReportTimer::ReportTimer(std::string check, std::string claim, std::string params)
    : start_(std::chrono::steady_clock::now()) {
  report_.check = std::move(check);
  report_.claim = std::move(claim);
  report_.params = std::move(params);
}

CongruenceReport ReportTimer::finish() {
  auto dt = std::chrono::steady_clock::now() - start_;
  report_.elapsed_ms = std::chrono::duration<double, std::milli>(dt).count();
  return report_;
}

void compare_into(CongruenceReport& report, const Series& lhs, const Series& rhs, Index from,
                  Index to, Modulus modulus) {
  const Series a = (modulus != 0 && lhs.modulus() != modulus) ? reduce_mod(lhs, modulus) : lhs;
  const Series b = (modulus != 0 && rhs.modulus() != modulus) ? reduce_mod(rhs, modulus) : rhs;
  if (auto bad = first_mismatch(a, b, from, to)) {
    report.fail_at(*bad, a.coeff(*bad).get_str(), b.coeff(*bad).get_str(), modulus);
  }
  report.n_verified += to - from + 1;
}

CongruenceReport combine(std::string check, std::string claim, std::string params,
                         const std::vector<CongruenceReport>& parts) {
  CongruenceReport out;
  out.check = std::move(check);
  out.claim = std::move(claim);
  out.params = std::move(params);
  for (const auto& p : parts) {
    out.n_verified += p.n_verified;
    out.elapsed_ms += p.elapsed_ms;
    if (p.status == Status::fail && !out.first_failure) {
      out.status = Status::fail;
      out.first_failure = p.first_failure;
      out.note = p.check + ": " + p.note;
    }
  }
  return out;
}

std::string format_text(const CongruenceReport& r) {
  std::ostringstream os;
  os << "[" << to_string(r.status) << "] " << r.check << " (" << r.params << ") verified "
     << r.n_verified << " in " << static_cast<long long>(r.elapsed_ms) << " ms";
  os << "\n    claim: " << r.claim;
  if (r.first_failure) {
    const auto& f = *r.first_failure;
    os << "\n    first failure at n=" << f.n << ": lhs=" << f.lhs << " rhs=" << f.rhs;
    if (f.modulus != 0) os << " (mod " << f.modulus << ")";
  }
  if (!r.note.empty()) os << "\n    note: " << r.note;
  return os.str();
}

}  // namespace sptlab
