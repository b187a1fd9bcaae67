#include "qha/report.hpp"

#include <algorithm>
#include <cmath>

namespace qha {

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skipped: return "skipped";
  }
  return "fail";
}

namespace {

CheckStatus judge(double abs_err, double rel_err, const Tolerance& tol) {
  if (!std::isfinite(abs_err)) return CheckStatus::fail;
  return (abs_err <= tol.abs || rel_err <= tol.rel) ? CheckStatus::pass : CheckStatus::fail;
}

}  // namespace

CheckReport equality_report(std::string name, std::string anchor, std::complex<double> lhs,
                            std::complex<double> rhs, Tolerance tol, std::string notes, double scale) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::abs(lhs - rhs);
  const double s = std::max({std::abs(lhs), std::abs(rhs), scale});
  r.rel_err = s > 0.0 ? r.abs_err / s : 0.0;
  r.tol = tol;
  r.status = judge(r.abs_err, r.rel_err, tol);
  r.notes = std::move(notes);
  return r;
}

CheckReport inequality_report(std::string name, std::string anchor, double lhs, double rhs,
                              Tolerance tol, std::string notes) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_err = std::max(0.0, lhs - rhs);
  r.rel_err = std::abs(rhs) > 0.0 ? r.abs_err / std::abs(rhs) : r.abs_err;
  r.tol = tol;
  r.status = judge(r.abs_err, r.rel_err, tol);
  if (!std::isfinite(lhs) || !std::isfinite(rhs)) r.status = CheckStatus::fail;
  r.notes = std::move(notes);
  return r;
}

CheckReport defect_report(std::string name, std::string anchor, double defect, double scale,
                          Tolerance tol, std::string notes) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.lhs = defect;
  r.rhs = 0.0;
  r.abs_err = defect;
  r.rel_err = scale > 0.0 ? defect / scale : defect;
  r.tol = tol;
  r.status = judge(r.abs_err, r.rel_err, tol);
  r.notes = std::move(notes);
  return r;
}

CheckReport skipped_report(std::string name, std::string anchor, std::string reason) {
  CheckReport r;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.status = CheckStatus::skipped;
  r.notes = std::move(reason);
  return r;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const CheckReport& r) { return r.passed(); });
}

}  // namespace qha
