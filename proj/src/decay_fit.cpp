#include "cupset/decay_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Dense>
#include <boost/math/distributions/fisher_f.hpp>
#include <boost/math/tools/minima.hpp>

#include "cupset/errors.hpp"

namespace cupset {

double DecayFit::model(double k) const { return c0 + c1 * std::pow(s, k - 1.0); }

namespace {

constexpr double kSMax = 1.05;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Linear {
  double c0 = 0.0, c1 = 0.0, rss = 0.0;
};

double rss_of(const std::vector<double>& xs, const std::vector<double>& ys, double c0, double c1, double s) {
  double r = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (c0 + c1 * std::pow(s, xs[i] - 1.0));
    r += e * e;
  }
  return r;
}

// Best amplitudes for a fixed rate.
Linear solve_linear(const std::vector<double>& xs, const std::vector<double>& ys, double s, bool offset) {
  const double n = static_cast<double>(xs.size());
  double sf = 0, sff = 0, sy = 0, sfy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = std::pow(s, xs[i] - 1.0);
    sf += f;
    sff += f * f;
    sy += ys[i];
    sfy += f * ys[i];
  }
  Linear out;
  if (offset) {
    const double det = n * sff - sf * sf;
    if (std::abs(det) <= 1e-12 * std::max(1.0, n * sff)) {
      out.c0 = sy / n;
    } else {
      out.c0 = (sff * sy - sf * sfy) / det;
      out.c1 = (n * sfy - sf * sy) / det;
    }
  } else if (sff > 0.0) {
    out.c1 = sfy / sff;
  }
  out.rss = rss_of(xs, ys, out.c0, out.c1, s);
  return out;
}

double log_linear_start(const std::vector<double>& xs, const std::vector<double>& ys, bool offset) {
  const double floor_y = offset ? *std::min_element(ys.begin(), ys.end()) : 0.0;
  const double eps = 1e-12;
  double mx = 0, mz = 0;
  const double n = static_cast<double>(xs.size());
  std::vector<double> z(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    z[i] = std::log(std::max(ys[i] - floor_y, eps));
    mx += xs[i] / n;
    mz += z[i] / n;
  }
  double sxz = 0, sxx = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxz += (xs[i] - mx) * (z[i] - mz);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  const double s0 = sxx > 0 ? std::exp(sxz / sxx) : 1.0;
  return std::isfinite(s0) ? std::clamp(s0, 0.0, kSMax) : 1.0;
}

Eigen::MatrixXd jacobian(const std::vector<double>& xs, double c1, double s, bool offset) {
  const Eigen::Index p = offset ? 3 : 2;
  Eigen::MatrixXd j(static_cast<Eigen::Index>(xs.size()), p);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    const double e = xs[i] - 1.0;
    Eigen::Index c = 0;
    if (offset) j(r, c++) = 1.0;
    j(r, c++) = std::pow(s, e);
    j(r, c) = e == 0.0 ? 0.0 : c1 * e * std::pow(s, e - 1.0);
  }
  return j;
}

// Gauss-Newton polish of (c0, c1, s) with step halving.
void polish(const std::vector<double>& xs, const std::vector<double>& ys, DecayFit& f) {
  double best = rss_of(xs, ys, f.c0, f.c1, f.s);
  for (int it = 0; it < 50 && best > 0.0; ++it) {
    const Eigen::MatrixXd j = jacobian(xs, f.c1, f.s, f.with_offset);
    Eigen::VectorXd r(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) r(static_cast<Eigen::Index>(i)) = ys[i] - f.model(xs[i]);
    const Eigen::VectorXd step = j.colPivHouseholderQr().solve(r);
    if (!step.allFinite()) return;
    bool improved = false;
    for (double scale = 1.0; scale > 1e-6; scale *= 0.5) {
      DecayFit t = f;
      Eigen::Index c = 0;
      if (t.with_offset) t.c0 += scale * step(c++);
      t.c1 += scale * step(c++);
      t.s = std::clamp(t.s + scale * step(c), 0.0, kSMax);
      const double v = rss_of(xs, ys, t.c0, t.c1, t.s);
      if (v < best) {
        const double gain = best - v;
        f = t;
        best = v;
        improved = gain > 1e-15 * (1.0 + best);
        break;
      }
    }
    if (!improved) return;
  }
}

double rate_stderr(const std::vector<double>& xs, const DecayFit& f) {
  const Eigen::MatrixXd j = jacobian(xs, f.c1, f.s, f.with_offset);
  const auto p = j.cols();
  const auto dof = static_cast<Eigen::Index>(xs.size()) - p;
  if (dof <= 0) return kInf;
  const Eigen::MatrixXd jtj = j.transpose() * j;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(jtj);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return kInf;
  const double var = f.residual / static_cast<double>(dof) * lu.inverse()(p - 1, p - 1);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

}  // namespace

double rate_stderr_from_points(const DecayFit& fit) {
  if (fit.y_stderr.size() != fit.xs.size()) throw DimensionError("rate_stderr_from_points: y_stderr size mismatch");
  if (std::isinf(fit.s_stderr)) return kInf;
  const Eigen::MatrixXd j = jacobian(fit.xs, fit.c1, fit.s, fit.with_offset);
  const auto p = j.cols();
  Eigen::FullPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd(j.transpose() * j));
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) return kInf;
  const Eigen::MatrixXd a_inv = lu.inverse();
  Eigen::VectorXd w(j.rows());
  for (Eigen::Index i = 0; i < j.rows(); ++i) w(i) = fit.y_stderr[static_cast<std::size_t>(i)] * fit.y_stderr[static_cast<std::size_t>(i)];
  const Eigen::MatrixXd cov = a_inv * j.transpose() * w.asDiagonal() * j * a_inv;
  const double var = cov(p - 1, p - 1);
  return var > 0.0 ? std::sqrt(var) : 0.0;
}

DecayFit fit_decay(const std::vector<double>& xs, const std::vector<double>& ys, bool with_offset) {
  if (xs.size() != ys.size()) throw FitError("fit_decay: xs and ys differ in length", xs, ys);
  if (xs.size() < 3) throw FitError("fit_decay: need at least three points", xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) throw FitError("fit_decay: non-finite data", xs, ys);

  DecayFit fit;
  fit.with_offset = with_offset;
  fit.xs = xs;
  fit.ys = ys;
  const double n = static_cast<double>(xs.size());
  double mean = 0;
  for (double y : ys) mean += y / n;
  double rss_const = 0;
  for (double y : ys) rss_const += (y - mean) * (y - mean);
  const double scale = std::max(1.0, std::abs(mean));

  auto flat = [&](double c0, double c1, double rss) {
    fit.c0 = c0;
    fit.c1 = c1;
    fit.s = 1.0;
    fit.residual = rss;
    fit.s_stderr = kInf;
    return fit;
  };
  if (with_offset && rss_const <= 1e-28 * scale * scale * n) return flat(mean, 0.0, rss_const);
  if (!with_offset) {
    double ss = 0;
    for (double y : ys) ss += y * y;
    if (ss <= 1e-28 * n) return flat(0.0, 0.0, ss);
  }

  // Profile the rate over a grid, then refine the best bracket.
  auto profile = [&](double s) { return solve_linear(xs, ys, s, with_offset).rss; };
  const int grid = 210;
  const double h = kSMax / grid;
  int best_i = 0;
  double best_v = kInf;
  for (int i = 0; i <= grid; ++i) {
    const double v = profile(i * h);
    if (v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  std::vector<std::pair<double, double>> brackets{
      {std::max(0.0, (best_i - 1) * h), std::min(kSMax, (best_i + 1) * h)}};
  const double s0 = log_linear_start(xs, ys, with_offset);
  brackets.push_back({std::max(0.0, s0 - h), std::min(kSMax, s0 + h)});
  double s_best = best_i * h;
  for (const auto& [lo, hi] : brackets) {
    const auto r = boost::math::tools::brent_find_minima(profile, lo, hi, 50);
    if (r.second < best_v) {
      best_v = r.second;
      s_best = r.first;
    }
  }
  const Linear lin = solve_linear(xs, ys, s_best, with_offset);
  fit.c0 = lin.c0;
  fit.c1 = lin.c1;
  fit.s = s_best;
  polish(xs, ys, fit);
  if (fit.s > 1.0) {
    const Linear at_one = solve_linear(xs, ys, 1.0, with_offset);
    fit.c0 = at_one.c0;
    fit.c1 = at_one.c1;
    fit.s = 1.0;
  }
  fit.residual = rss_of(xs, ys, fit.c0, fit.c1, fit.s);
  if (!std::isfinite(fit.residual) || !std::isfinite(fit.s)) throw FitError("fit_decay: optimizer diverged", xs, ys);

  if (with_offset && xs.size() > 3) {
    const double dof = n - 3.0;
    const double gain = std::max(0.0, rss_const - fit.residual);
    bool decays = true;
    if (fit.residual > 0.0) {
      const double f_stat = (gain / 2.0) / (fit.residual / dof);
      boost::math::fisher_f_distribution<double> dist(2.0, dof);
      decays = boost::math::cdf(boost::math::complement(dist, f_stat)) < 0.01;
    } else {
      decays = gain > 0.0;
    }
    if (!decays) return flat(mean, 0.0, rss_const);
  }
  fit.s_stderr = rate_stderr(xs, fit);
  return fit;
}

}  // namespace cupset
