#pragma once

#include <complex>
#include <string>
#include <vector>

namespace qha {

enum class CheckStatus { pass, fail, skipped };
std::string to_string(CheckStatus s);

struct Tolerance {
  double rel = 1e-9;
  double abs = 1e-12;
  friend bool operator==(const Tolerance&, const Tolerance&) = default;
};

struct CheckReport {
  std::string name;
  std::string anchor;  // claim being certified, e.g. "orthogonality-relation"
  std::complex<double> lhs;
  std::complex<double> rhs;
  double abs_err = 0.0;
  double rel_err = 0.0;
  Tolerance tol;
  CheckStatus status = CheckStatus::pass;
  std::string scenario;
  std::string notes;

  bool passed() const { return status != CheckStatus::fail; }
};

/// Equality report: pass iff abs_err <= tol.abs or rel_err <= tol.rel, with
/// rel_err = abs_err / max(|lhs|, |rhs|, scale).
CheckReport equality_report(std::string name, std::string anchor, std::complex<double> lhs,
                            std::complex<double> rhs, Tolerance tol, std::string notes = {},
                            double scale = 0.0);
/// lhs <= rhs up to slack: err = max(0, lhs - rhs), rel to |rhs|.
CheckReport inequality_report(std::string name, std::string anchor, double lhs, double rhs,
                              Tolerance tol, std::string notes = {});
/// A defect that should vanish: lhs = defect, rhs = 0, rel_err = defect / scale.
CheckReport defect_report(std::string name, std::string anchor, double defect, double scale,
                          Tolerance tol, std::string notes = {});
CheckReport skipped_report(std::string name, std::string anchor, std::string reason);

bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace qha
