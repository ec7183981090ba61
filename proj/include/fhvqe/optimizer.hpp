// Copyright 2026 The fhvqe Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FHVQE_OPTIMIZER_HPP
#define FHVQE_OPTIMIZER_HPP

#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <sstream>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "fhvqe/errors.hpp"

namespace fhvqe {

struct OptimizeConfig {
  double grad_tol = 1e-6;
  double f_tol = 1e-10;
  int max_iters = 500;
  int history_size = 10;

  void validate() const {
    if (grad_tol <= 0 || f_tol <= 0 || max_iters <= 0 || history_size <= 0)
      throw ValidationError("OptimizeConfig: all fields must be positive");
  }
};

struct OptimizeResult {
  Eigen::VectorXd x_star;
  double f_star = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// f(x) with gradient written into the second argument (same size as x).
using ObjectiveFn = std::function<double(const Eigen::VectorXd&, Eigen::VectorXd&)>;

namespace detail {

struct LinePoint {
  double step, f, slope;
};

/// Cubic-interpolated zoom between a bracketing pair, standard strong-Wolfe
/// conditions; falls back to bisection when interpolation degenerates.
template <typename Eval>
bool wolfe_zoom(Eval&& eval, double f0, double slope0, LinePoint lo, LinePoint hi,
                double c1, double c2, LinePoint& out) {
  for (int iter = 0; iter < 30; ++iter) {
    double step;
    const double d1 = lo.slope + hi.slope - 3.0 * (lo.f - hi.f) / (lo.step - hi.step);
    const double disc = d1 * d1 - lo.slope * hi.slope;
    if (disc >= 0.0) {
      const double d2 = std::sqrt(disc) * (hi.step > lo.step ? 1.0 : -1.0);
      step = hi.step - (hi.step - lo.step) * (hi.slope + d2 - d1) /
                           (hi.slope - lo.slope + 2.0 * d2);
    } else {
      step = 0.5 * (lo.step + hi.step);
    }
    const double lo_s = std::min(lo.step, hi.step), hi_s = std::max(lo.step, hi.step);
    if (!(step > lo_s + 1e-12 * (hi_s - lo_s)) || !(step < hi_s - 1e-12 * (hi_s - lo_s)))
      step = 0.5 * (lo.step + hi.step);

    LinePoint cand = eval(step);
    if (cand.f > f0 + c1 * cand.step * slope0 || cand.f >= lo.f) {
      hi = cand;
    } else {
      if (std::abs(cand.slope) <= -c2 * slope0) {
        out = cand;
        return true;
      }
      if (cand.slope * (hi.step - lo.step) >= 0.0) hi = lo;
      lo = cand;
    }
    if (std::abs(hi.step - lo.step) < 1e-14) break;
  }
  // Accept the best sufficient-decrease point even if curvature failed.
  if (lo.f < f0 + c1 * lo.step * slope0 && lo.step > 0.0) {
    out = lo;
    return true;
  }
  return false;
}

/// Strong Wolfe line search (sufficient decrease c1, curvature c2).
template <typename Eval>
bool wolfe_line_search(Eval&& eval, double f0, double slope0, double init_step,
                       LinePoint& out, double c1 = 1e-4, double c2 = 0.9) {
  LinePoint prev{0.0, f0, slope0};
  double step = init_step;
  for (int iter = 0; iter < 25; ++iter) {
    LinePoint cand = eval(step);
    if (cand.f > f0 + c1 * step * slope0 || (iter > 0 && cand.f >= prev.f))
      return wolfe_zoom(eval, f0, slope0, prev, cand, c1, c2, out);
    if (std::abs(cand.slope) <= -c2 * slope0) {
      out = cand;
      return true;
    }
    if (cand.slope >= 0.0)
      return wolfe_zoom(eval, f0, slope0, cand, prev, c1, c2, out);
    prev = cand;
    step *= 2.0;
  }
  return false;
}

}  // namespace detail

/// Limited-memory BFGS minimization with a strong-Wolfe line search.
/// Deterministic: identical inputs produce identical iterates. Accepted
/// steps never increase f. Convergence is declared on the gradient
/// sup-norm or on the per-step decrease, whichever triggers first.
inline OptimizeResult minimize(const ObjectiveFn& objective, Eigen::VectorXd x0,
                               const OptimizeConfig& config = {}) {
  config.validate();
  const auto n = x0.size();
  OptimizeResult res;
  if (n == 0) {
    Eigen::VectorXd g0(0);
    res.x_star = std::move(x0);
    res.f_star = objective(res.x_star, g0);
    res.converged = true;
    return res;
  }

  Eigen::VectorXd x = std::move(x0), grad(n);
  double f = objective(x, grad);
  auto check_finite = [](double value, const Eigen::VectorXd& at) {
    if (!std::isfinite(value)) {
      std::ostringstream os;
      os << "minimize: non-finite objective at x = [" << at.transpose() << "]";
      throw NumericalError(os.str());
    }
  };
  check_finite(f, x);

  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> history;  // (s, y)
  Eigen::VectorXd grad_prev = grad, x_prev = x;
  double gamma = 1.0;

  for (int iter = 0; iter < config.max_iters; ++iter) {
    const double gnorm = grad.lpNorm<Eigen::Infinity>();
    if (gnorm <= config.grad_tol) {
      res.converged = true;
      break;
    }

    // Two-loop recursion for the search direction.
    Eigen::VectorXd dir = -grad;
    std::vector<double> alpha(history.size());
    for (std::size_t k = history.size(); k-- > 0;) {
      const auto& [s, y] = history[k];
      alpha[k] = s.dot(dir) / y.dot(s);
      dir -= alpha[k] * y;
    }
    dir *= gamma;
    for (std::size_t k = 0; k < history.size(); ++k) {
      const auto& [s, y] = history[k];
      const double beta = y.dot(dir) / y.dot(s);
      dir += (alpha[k] - beta) * s;
    }

    double slope = grad.dot(dir);
    if (slope >= 0.0) {  // curvature information went stale
      history.clear();
      dir = -grad;
      slope = grad.dot(dir);
    }

    Eigen::VectorXd x_cand(n), grad_cand(n);
    double last_eval_step = std::numeric_limits<double>::quiet_NaN();
    auto eval = [&](double step) {
      x_cand = x + step * dir;
      const double fc = objective(x_cand, grad_cand);
      check_finite(fc, x_cand);
      last_eval_step = step;
      return detail::LinePoint{step, fc, grad_cand.dot(dir)};
    };

    detail::LinePoint accepted{};
    const double init_step = history.empty() ? std::min(1.0, 1.0 / std::max(gnorm, 1e-12)) : 1.0;
    if (!detail::wolfe_line_search(eval, f, slope, init_step, accepted)) {
      res.iterations = iter;
      break;  // no further decrease available along any tried direction
    }
    if (accepted.step != last_eval_step) eval(accepted.step);

    Eigen::VectorXd s = x_cand - x;
    Eigen::VectorXd y = grad_cand - grad;
    const double sy = s.dot(y);
    if (sy > 1e-10 * s.norm() * y.norm()) {
      history.emplace_back(std::move(s), std::move(y));
      if (static_cast<int>(history.size()) > config.history_size)
        history.pop_front();
      gamma = history.back().first.dot(history.back().second) /
              history.back().second.squaredNorm();
    }

    const double f_prev = f;
    x = x_cand;
    grad = grad_cand;
    f = accepted.f;
    res.iterations = iter + 1;
    if (std::abs(f_prev - f) <= config.f_tol) {
      res.converged = true;
      break;
    }
  }

  res.x_star = std::move(x);
  res.f_star = f;
  res.grad_norm = grad.lpNorm<Eigen::Infinity>();
  if (res.grad_norm <= config.grad_tol) res.converged = true;
  return res;
}

}  // namespace fhvqe

#endif  // FHVQE_OPTIMIZER_HPP
