#pragma once

#include <vector>

namespace cupset {

struct DecayFit {
  double c0 = 0.0;
  double c1 = 0.0;
  double s = 0.0;
  // Sum of squared residuals of c0 + c1 s^(k-1) at the data.
  double residual = 0.0;
  // +infinity when the decay rate is not identifiable from the data.
  double s_stderr = 0.0;
  bool with_offset = false;
  std::vector<double> xs;
  std::vector<double> ys;
  // Standard error of each ys entry over random sequences (protocol runs only).
  std::vector<double> y_stderr;

  double model(double k) const;
};

// Least squares for ys = c0 + c1 s^(x-1) (c0 fixed at 0 without offset), with
// s searched over [0, 1.05] and reported clipped to at most 1. With an offset,
// data that a constant explains as well as a decay (F-test, 1% level) is
// reported as s = 1 with infinite s_stderr. Throws FitError on fewer than
// three points, mismatched lengths or non-finite values.
DecayFit fit_decay(const std::vector<double>& xs, const std::vector<double>& ys, bool with_offset);

// Standard error of s from the per-point standard errors in fit.y_stderr,
// (J^T J)^-1 J^T diag(se^2) J (J^T J)^-1, for unequal noise across lengths.
// Infinite when fit.s_stderr is infinite or the Jacobian is singular.
double rate_stderr_from_points(const DecayFit& fit);

}  // namespace cupset
