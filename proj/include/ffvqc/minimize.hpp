#pragma once

// Derivative-free minimisers for noisy, unconstrained objectives.
//
// minimize_linear_trust_region follows the unconstrained core of Powell's
// COBYLA: keep a simplex of n+1 evaluated points, fit the linear model that
// interpolates them, step a distance rho against the model gradient from the
// best vertex, and shrink rho when steps stop paying off. Geometry-improving
// steps keep the simplex well conditioned. The evaluation budget is a hard
// cap on objective calls.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace ffvqc {

using Objective = std::function<double(const std::vector<double>&)>;

struct MinimizeOptions {
  double rho_begin = 1.0;
  double rho_end = 1e-4;
  int max_evaluations = 300;
};

struct MinimizeResult {
  std::vector<double> x;
  double fx = std::numeric_limits<double>::infinity();
  int evaluations = 0;
};

namespace detail {

class CountingObjective {
 public:
  CountingObjective(const Objective& f, int cap, MinimizeResult& best) : f_(f), cap_(cap), best_(best) {}

  bool exhausted() const { return best_.evaluations >= cap_; }

  double operator()(const std::vector<double>& x) {
    const double v = f_(x);
    ++best_.evaluations;
    if (v < best_.fx || best_.x.empty()) {
      best_.fx = v;
      best_.x = x;
    }
    return v;
  }

 private:
  const Objective& f_;
  int cap_;
  MinimizeResult& best_;
};

}  // namespace detail

inline MinimizeResult minimize_linear_trust_region(const Objective& f, std::vector<double> x0,
                                                   const MinimizeOptions& opt = {}) {
  if (opt.max_evaluations < 1) throw ArgumentError("max_evaluations must be >= 1");
  if (!(opt.rho_begin > 0.0) || !(opt.rho_end > 0.0) || opt.rho_end > opt.rho_begin)
    throw ArgumentError("need 0 < rho_end <= rho_begin");

  MinimizeResult result;
  detail::CountingObjective eval(f, opt.max_evaluations, result);
  const int n = static_cast<int>(x0.size());
  if (n == 0) {
    eval(x0);
    return result;
  }

  // Powell's acceptability constants.
  constexpr double kAlpha = 0.25;  // min vertex distance to opposite face, in rho
  constexpr double kBeta = 2.1;    // max vertex distance from the best vertex, in rho
  constexpr double kGamma = 0.5;   // geometry step length, in rho
  constexpr double kDelta = 1.1;   // distance weighting when choosing a vertex to drop

  double rho = opt.rho_begin;
  using Vec = Eigen::VectorXd;
  std::vector<Vec> pts;
  std::vector<double> vals;
  auto to_std = [](const Vec& v) { return std::vector<double>(v.data(), v.data() + v.size()); };

  Vec base = Eigen::Map<const Vec>(x0.data(), n);
  pts.push_back(base);
  vals.push_back(eval(x0));
  for (int i = 0; i < n && !eval.exhausted(); ++i) {
    Vec p = base;
    p[i] += rho;
    pts.push_back(p);
    vals.push_back(eval(to_std(p)));
  }
  if (static_cast<int>(pts.size()) < n + 1) return result;

  bool last_step_poor = false;
  while (!eval.exhausted()) {
    // Best vertex first.
    const auto best = std::min_element(vals.begin(), vals.end()) - vals.begin();
    std::swap(pts[0], pts[best]);
    std::swap(vals[0], vals[best]);

    Eigen::MatrixXd edges(n, n);  // row i: pts[i+1] - pts[0]
    Vec df(n);
    for (int i = 0; i < n; ++i) {
      edges.row(i) = (pts[i + 1] - pts[0]).transpose();
      df[i] = vals[i + 1] - vals[0];
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(edges);
    const bool singular = !lu.isInvertible();
    Eigen::MatrixXd inv = singular ? Eigen::MatrixXd::Zero(n, n) : Eigen::MatrixXd(lu.inverse());

    // Column i of inv is normal to the face opposite vertex i+1; 1/|col| is
    // that vertex's distance to the face.
    std::vector<double> sigma(n), eta(n);
    bool acceptable = !singular;
    for (int i = 0; i < n; ++i) {
      const double cn = inv.col(i).norm();
      sigma[i] = cn > 0.0 ? 1.0 / cn : 0.0;
      eta[i] = edges.row(i).norm();
      if (sigma[i] < kAlpha * rho || eta[i] > kBeta * rho) acceptable = false;
    }

    if (last_step_poor && !acceptable) {
      // Geometry step: replace the farthest vertex, else the flattest one.
      int j = -1;
      double worst = kBeta * rho;
      for (int i = 0; i < n; ++i)
        if (eta[i] > worst) worst = eta[i], j = i;
      if (j < 0) {
        double flat = std::numeric_limits<double>::infinity();
        for (int i = 0; i < n; ++i)
          if (sigma[i] < flat) flat = sigma[i], j = i;
      }
      Vec dir = singular ? Vec(Vec::Unit(n, j)) : Vec(inv.col(j));
      if (dir.norm() == 0.0) dir = Vec::Unit(n, j);
      dir *= kGamma * rho / dir.norm();
      if (!singular) {
        const Vec g = inv * df;
        if (g.dot(dir) > 0.0) dir = -dir;
      }
      pts[j + 1] = pts[0] + dir;
      vals[j + 1] = eval(to_std(pts[j + 1]));
      last_step_poor = false;
      continue;
    }

    const Vec g = singular ? Vec(Vec::Zero(n)) : Vec(inv * df);
    const double gnorm = g.norm();
    bool poor = true;
    if (gnorm > 0.0 && std::isfinite(gnorm)) {
      const Vec step = -(rho / gnorm) * g;
      const Vec trial = pts[0] + step;
      const double ft = eval(to_std(trial));
      const double predicted = rho * gnorm;
      const double actual = vals[0] - ft;
      poor = actual < 0.1 * predicted;

      // Pick the vertex whose removal keeps the simplex best conditioned,
      // favouring vertices far from the new best point.
      const Vec bary = inv.transpose() * step;  // barycentric weights of the step
      const Vec& centre = ft < vals[0] ? trial : pts[0];
      int drop = -1;
      double score = actual > 0.0 ? 0.0 : 1.0;
      for (int i = 0; i < n; ++i) {
        double s = std::abs(bary[i]);
        const double dist = (pts[i + 1] - centre).norm() / (kDelta * rho);
        if (dist > 1.0) s *= dist * dist;
        if (s > score) score = s, drop = i;
      }
      if (drop >= 0) {
        pts[drop + 1] = trial;
        vals[drop + 1] = ft;
      } else if (ft < vals[0]) {
        pts[0] = trial;
        vals[0] = ft;
      }
    }

    if (poor) {
      if (acceptable || gnorm == 0.0) {
        if (rho <= opt.rho_end) break;
        rho = rho * 0.5 <= 1.5 * opt.rho_end ? opt.rho_end : rho * 0.5;
        last_step_poor = false;
      } else {
        last_step_poor = true;
      }
    } else {
      last_step_poor = false;
    }
  }
  return result;
}

// Nelder-Mead simplex with the standard coefficients.
inline MinimizeResult minimize_nelder_mead(const Objective& f, std::vector<double> x0,
                                           const MinimizeOptions& opt = {}) {
  if (opt.max_evaluations < 1) throw ArgumentError("max_evaluations must be >= 1");
  MinimizeResult result;
  detail::CountingObjective eval(f, opt.max_evaluations, result);
  const std::size_t n = x0.size();
  if (n == 0) {
    eval(x0);
    return result;
  }
  std::vector<std::vector<double>> simplex{x0};
  std::vector<double> vals{eval(x0)};
  for (std::size_t i = 0; i < n && !eval.exhausted(); ++i) {
    auto p = x0;
    p[i] += opt.rho_begin;
    simplex.push_back(p);
    vals.push_back(eval(p));
  }
  if (simplex.size() < n + 1) return result;

  auto affine = [&](const std::vector<double>& a, const std::vector<double>& b, double t) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = a[i] + t * (b[i] - a[i]);
    return out;
  };

  std::vector<std::size_t> order(n + 1);
  while (!eval.exhausted()) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    const auto lo = order.front(), hi = order.back(), second = order[n - 1];

    double size = 0.0;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t k = 0; k < n; ++k) size = std::max(size, std::abs(simplex[i][k] - simplex[lo][k]));
    if (size <= opt.rho_end) break;

    std::vector<double> centroid(n, 0.0);
    for (std::size_t i = 0; i <= n; ++i)
      if (i != hi)
        for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);

    const auto reflected = affine(centroid, simplex[hi], -1.0);
    const double fr = eval(reflected);
    if (fr < vals[lo]) {
      if (eval.exhausted()) break;
      const auto expanded = affine(centroid, simplex[hi], -2.0);
      const double fe = eval(expanded);
      if (fe < fr) {
        simplex[hi] = expanded, vals[hi] = fe;
      } else {
        simplex[hi] = reflected, vals[hi] = fr;
      }
    } else if (fr < vals[second]) {
      simplex[hi] = reflected, vals[hi] = fr;
    } else {
      if (eval.exhausted()) break;
      const bool outside = fr < vals[hi];
      const auto contracted = affine(centroid, outside ? reflected : simplex[hi], 0.5);
      const double fc = eval(contracted);
      if (fc < std::min(fr, vals[hi])) {
        simplex[hi] = contracted, vals[hi] = fc;
      } else {
        for (std::size_t i = 0; i <= n && !eval.exhausted(); ++i) {
          if (i == lo) continue;
          simplex[i] = affine(simplex[lo], simplex[i], 0.5);
          vals[i] = eval(simplex[i]);
        }
      }
    }
  }
  return result;
}

}  // namespace ffvqc
