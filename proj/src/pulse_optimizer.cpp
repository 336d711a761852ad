// Copyright 2026 The ergoflux Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ergoflux/pulse_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <string>

#include "ergoflux/energetics.hpp"
#include "ergoflux/errors.hpp"
#include "ergoflux/numerics.hpp"

namespace ergoflux {

namespace {

constexpr double kTauMin = 1e-3;
constexpr double kTauMax = 10.0;
constexpr int kTauGrid = 31;

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be finite and > 0");
}

struct Vec2 {
  double p;
  double s;
};

// A^T lambda for the Bloch generator A = [[-g, -O], [O, -g/2]] on (P, s).
Vec2 transpose_apply(double rabi, double gamma, Vec2 l) {
  return {-gamma * l.p + rabi * l.s, -rabi * l.p - 0.5 * gamma * l.s};
}

// d f / d Omega at y.
double rabi_sensitivity(const QubitState& y, Vec2 l) { return -y.s_bar.real() * l.p + (y.p_e - 0.5) * l.s; }

}  // namespace

DriveProfile exponential_drive(double n_bar, double tau, double gamma) {
  return DriveProfile::exponential(n_bar, tau, gamma);
}

double exponential_work(const Preparation& prep, double n_bar, double tau, double gamma) {
  const auto drive = exponential_drive(n_bar, tau, gamma);
  const double t_end = std::max(10.0 / gamma, drive.support_end());
  const auto traj = evolve_numeric(prepare_initial(prep), drive, CouplingSchedule::always_on(), t_end,
                                   quadrature_step(drive, gamma), gamma);
  return accumulate(traj).total_work();
}

ExponentialOptimum optimize_exponential_tau(const Preparation& prep, double n_bar, double gamma) {
  prep.validate();
  require_positive(n_bar, "optimize_exponential_tau: n_bar");
  require_positive(gamma, "optimize_exponential_tau: gamma");
  const Eigen::VectorXd taus = logspace(kTauMin / gamma, kTauMax / gamma, kTauGrid);
  std::vector<double> works(kTauGrid);
  for (int i = 0; i < kTauGrid; ++i) works[i] = exponential_work(prep, n_bar, taus[i], gamma);
  const auto best = static_cast<int>(std::max_element(works.begin(), works.end()) - works.begin());
  if (best == 0 || best == kTauGrid - 1) return {taus[best], works[best], true};

  auto objective = [&](double log_tau) { return exponential_work(prep, n_bar, std::exp(log_tau), gamma); };
  const auto g = golden_section_maximize(objective, std::log(taus[best - 1]), std::log(taus[best + 1]), 1e-5);
  if (g.value < works[best]) return {taus[best], works[best], false};
  return {std::exp(g.x), g.value, false};
}

void ControlProblem::validate() const {
  prep.validate();
  require_positive(gamma, "ControlProblem: gamma");
  require_positive(n_bar, "ControlProblem: n_bar");
  if (!(horizon >= 5.0 / gamma) || !std::isfinite(horizon)) throw DomainError("ControlProblem: need T >= 5/gamma");
  if (nodes < 32) throw DomainError("ControlProblem: need at least 32 control nodes");
  if (restarts < 0) throw DomainError("ControlProblem: restarts must be >= 0");
  if (max_iterations < 1) throw DomainError("ControlProblem: max_iterations must be >= 1");
}

ControlObjective::ControlObjective(const Preparation& prep, double horizon, int nodes, double gamma,
                                   double n_bar_cap)
    : start_(prepare_initial(prep)), gamma_(gamma) {
  require_positive(horizon, "ControlObjective: horizon");
  require_positive(gamma, "ControlObjective: gamma");
  require_positive(n_bar_cap, "ControlObjective: n_bar_cap");
  if (nodes < 2) throw DomainError("ControlObjective: need at least two nodes");
  node_times_.resize(static_cast<std::size_t>(nodes));
  for (int j = 0; j < nodes; ++j) node_times_[j] = horizon * static_cast<double>(j) / (nodes - 1);
  node_times_.back() = horizon;
  // A nonnegative control within budget never exceeds sqrt(12 gamma N / h)
  // at a node (the smallest diagonal mass entry is h/3).
  const double h_seg = horizon / (nodes - 1);
  const double rabi_cap = std::sqrt(12.0 * gamma * n_bar_cap / h_seg);
  dt_ = 0.01 / std::max(gamma, rabi_cap);
  substeps_.resize(node_times_.size() - 1);
  for (std::size_t k = 0; k + 1 < node_times_.size(); ++k)
    substeps_[k] = static_cast<long>(std::ceil((node_times_[k + 1] - node_times_[k]) / dt_ - 1e-9));
}

DriveProfile ControlObjective::drive(const Eigen::VectorXd& rabi_nodes) const {
  return DriveProfile::tabulated(node_times_, std::vector<double>(rabi_nodes.data(), rabi_nodes.data() + rabi_nodes.size()));
}

double ControlObjective::budget(const Eigen::VectorXd& u) const {
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < node_times_.size(); ++k) {
    const double a = u[static_cast<Eigen::Index>(k)];
    const double b = u[static_cast<Eigen::Index>(k + 1)];
    acc += (node_times_[k + 1] - node_times_[k]) * (a * a + a * b + b * b) / 3.0;
  }
  return acc;
}

Eigen::VectorXd ControlObjective::mass_times(const Eigen::VectorXd& v) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(v.size());
  for (std::size_t k = 0; k + 1 < node_times_.size(); ++k) {
    const auto i = static_cast<Eigen::Index>(k);
    const double h = node_times_[k + 1] - node_times_[k];
    out[i] += h * (2.0 * v[i] + v[i + 1]) / 6.0;
    out[i + 1] += h * (v[i] + 2.0 * v[i + 1]) / 6.0;
  }
  return out;
}

double ControlObjective::value(const Eigen::VectorXd& u) const { return evaluate(u, nullptr); }

double ControlObjective::value_and_gradient(const Eigen::VectorXd& u, Eigen::VectorXd& gradient) const {
  return evaluate(u, &gradient);
}

double ControlObjective::evaluate(const Eigen::VectorXd& u, Eigen::VectorXd* gradient_out) const {
  if (u.size() != size()) throw DomainError("ControlObjective: control size mismatch");
  const double g = gamma_;
  const std::size_t segments = substeps_.size();

  auto piece = [&](std::size_t k, double t) {
    const double w = (t - node_times_[k]) / (node_times_[k + 1] - node_times_[k]);
    return std::pair<double, double>{u[static_cast<Eigen::Index>(k)] +
                                         (u[static_cast<Eigen::Index>(k + 1)] - u[static_cast<Eigen::Index>(k)]) * w,
                                     w};
  };
  auto running = [&](const QubitState& x, double rabi) { return rabi * x.s_bar.real() + g * std::norm(x.s_bar); };

  // Forward sweep, mirroring evolve_numeric on the Tabulated drive.
  std::vector<QubitState> states;
  states.reserve(static_cast<std::size_t>(std::accumulate(substeps_.begin(), substeps_.end(), 0L)) + 1);
  states.push_back(start_);
  double work = 0.0;
  QubitState x = start_;
  for (std::size_t k = 0; k < segments; ++k) {
    const double a = node_times_[k];
    const double b = node_times_[k + 1];
    const long n = substeps_[k];
    const double h = (b - a) / static_cast<double>(n);
    auto rabi_at = [&](double t) { return piece(k, t).first; };
    for (long i = 0; i < n; ++i) {
      const double t = a + static_cast<double>(i) * h;
      const double t_next = (i + 1 == n) ? b : a + static_cast<double>(i + 1) * h;
      const QubitState next = rk4_step(x, t, h, rabi_at, g);
      const double step = t_next - t;
      work += 0.5 * step * (running(x, rabi_at(t)) + running(next, rabi_at(t_next)));
      x = next;
      if (!std::isfinite(x.p_e) || !std::isfinite(x.s_bar.real()))
        throw NumericalError("ControlObjective: non-finite state at t = " + std::to_string(t_next));
      states.push_back(x);
    }
  }
  work += std::norm(x.s_bar);  // free-decay tail after the horizon
  if (gradient_out == nullptr) return work;

  // Backward costate sweep through each RK4 step.
  Eigen::VectorXd& gradient = *gradient_out;
  gradient = Eigen::VectorXd::Zero(size());
  auto deposit = [&](std::size_t k, double w, double amount) {
    gradient[static_cast<Eigen::Index>(k)] += (1.0 - w) * amount;
    gradient[static_cast<Eigen::Index>(k + 1)] += w * amount;
  };

  std::size_t idx = states.size() - 1;
  Vec2 costate{0.0, 2.0 * states[idx].s_bar.real()};
  for (std::size_t kk = segments; kk-- > 0;) {
    const double a = node_times_[kk];
    const double b = node_times_[kk + 1];
    const long n = substeps_[kk];
    const double h = (b - a) / static_cast<double>(n);
    for (long i = n; i-- > 0;) {
      const double t = a + static_cast<double>(i) * h;
      const double t_next = (i + 1 == n) ? b : a + static_cast<double>(i + 1) * h;
      const double step = t_next - t;
      const QubitState& x0 = states[idx - 1];
      const QubitState& x1 = states[idx];

      // Trapezoid terms of this step at both ends.
      const auto [r_end, w_end] = piece(kk, t_next);
      costate.s += 0.5 * step * (r_end + 2.0 * g * x1.s_bar.real());
      deposit(kk, w_end, 0.5 * step * x1.s_bar.real());

      const double half = h / 2;
      const auto [ra, wa] = piece(kk, t);
      const auto [rm, wm] = piece(kk, t + half);
      const auto [rb, wb] = piece(kk, t + h);
      const QubitState y1 = x0;
      const QubitState k1 = bloch_rhs(y1, ra, g);
      const QubitState y2 = x0 + half * k1;
      const QubitState k2 = bloch_rhs(y2, rm, g);
      const QubitState y3 = x0 + half * k2;
      const QubitState k3 = bloch_rhs(y3, rm, g);
      const QubitState y4 = x0 + h * k3;

      const Vec2 kb1{h / 6 * costate.p, h / 6 * costate.s};
      Vec2 kb2{h / 3 * costate.p, h / 3 * costate.s};
      Vec2 kb3 = kb2;
      const Vec2 kb4 = kb1;
      Vec2 xb = costate;
      double bar_a = 0.0, bar_m = 0.0, bar_b = 0.0;

      const Vec2 yb4 = transpose_apply(rb, g, kb4);
      bar_b += rabi_sensitivity(y4, kb4);
      xb = {xb.p + yb4.p, xb.s + yb4.s};
      kb3 = {kb3.p + h * yb4.p, kb3.s + h * yb4.s};

      const Vec2 yb3 = transpose_apply(rm, g, kb3);
      bar_m += rabi_sensitivity(y3, kb3);
      xb = {xb.p + yb3.p, xb.s + yb3.s};
      kb2 = {kb2.p + half * yb3.p, kb2.s + half * yb3.s};

      const Vec2 yb2 = transpose_apply(rm, g, kb2);
      bar_m += rabi_sensitivity(y2, kb2);
      xb = {xb.p + yb2.p, xb.s + yb2.s};
      const Vec2 kb1_total{kb1.p + half * yb2.p, kb1.s + half * yb2.s};

      const Vec2 yb1 = transpose_apply(ra, g, kb1_total);
      bar_a += rabi_sensitivity(y1, kb1_total);
      xb = {xb.p + yb1.p, xb.s + yb1.s};

      deposit(kk, wa, bar_a);
      deposit(kk, wm, bar_m);
      deposit(kk, wb, bar_b);

      // Start-of-step trapezoid term.
      xb.s += 0.5 * step * (ra + 2.0 * g * x0.s_bar.real());
      deposit(kk, wa, 0.5 * step * x0.s_bar.real());
      costate = xb;
      --idx;
    }
  }
  return work;
}

namespace {

// Clamp to Omega >= 0 and rescale onto the budget sphere.
bool project_to_budget(const ControlObjective& obj, Eigen::VectorXd& u, double target) {
  u = u.cwiseMax(0.0);
  const double b = obj.budget(u);
  if (!(b > 0.0) || !std::isfinite(b)) return false;
  u *= std::sqrt(target / b);
  return true;
}

struct AscentRun {
  Eigen::VectorXd u;
  double work = 0.0;
  int iterations = 0;
  bool converged = false;
  double gradient_norm = 0.0;
};

AscentRun ascend(const ControlObjective& obj, Eigen::VectorXd u, double target, int max_iterations) {
  constexpr double kArmijo = 1e-4;
  constexpr double kRelImprovement = 1e-8;
  constexpr int kWindow = 10;

  Eigen::VectorXd lumped = Eigen::VectorXd::Zero(obj.size());
  {
    const auto& ts = obj.node_times();
    for (std::size_t k = 0; k + 1 < ts.size(); ++k) {
      lumped[static_cast<Eigen::Index>(k)] += 0.5 * (ts[k + 1] - ts[k]);
      lumped[static_cast<Eigen::Index>(k + 1)] += 0.5 * (ts[k + 1] - ts[k]);
    }
  }

  AscentRun run;
  Eigen::VectorXd grad;
  double work = obj.value_and_gradient(u, grad);
  std::vector<double> history{work};
  double alpha = -1.0;
  for (int it = 0; it < max_iterations; ++it) {
    // Steepest ascent in the lumped L2 metric L restricted to the tangent of
    // the budget sphere over the free nodes: dir = L^-1 (g - lambda G u).
    // Nodes at the bound whose component points outward are frozen.
    const Eigen::VectorXd gu = obj.mass_times(u);
    std::vector<bool> frozen(static_cast<std::size_t>(u.size()), false);
    Eigen::VectorXd dir(u.size());
    for (int pass = 0; pass < 3; ++pass) {
      double num = 0.0;
      double den = 0.0;
      for (Eigen::Index j = 0; j < u.size(); ++j) {
        if (frozen[static_cast<std::size_t>(j)]) continue;
        num += gu[j] * grad[j] / lumped[j];
        den += gu[j] * gu[j] / lumped[j];
      }
      const double lambda = den > 0.0 ? num / den : 0.0;
      bool changed = false;
      for (Eigen::Index j = 0; j < u.size(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        dir[j] = frozen[k] ? 0.0 : (grad[j] - lambda * gu[j]) / lumped[j];
        if (!frozen[k] && u[j] <= 0.0 && dir[j] < 0.0) {
          frozen[k] = true;
          dir[j] = 0.0;
          changed = true;
        }
      }
      if (!changed) break;
    }
    const double dir_norm = std::sqrt(std::max(0.0, dir.dot(obj.mass_times(dir))));
    run.gradient_norm = dir_norm;
    if (!(dir_norm > 0.0)) {
      run.converged = true;
      break;
    }
    if (alpha < 0.0) alpha = 0.1 * std::sqrt(target) / dir_norm;

    bool accepted = false;
    Eigen::VectorXd trial;
    double trial_work = 0.0;
    for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
      trial = u + alpha * dir;
      if (!project_to_budget(obj, trial, target)) continue;
      trial_work = obj.value(trial);
      if (trial_work >= work + kArmijo * grad.dot(trial - u) && trial_work >= work) {
        accepted = true;
        break;
      }
    }
    run.iterations = it + 1;
    if (!accepted) {
      run.converged = true;  // no ascent step at line-search resolution
      break;
    }
    u = std::move(trial);
    work = obj.value_and_gradient(u, grad);
    history.push_back(work);
    alpha *= 2.0;
    const std::size_t n = history.size();
    if (n > kWindow && history[n - 1] - history[n - 1 - kWindow] < kRelImprovement * std::abs(history[n - 1])) {
      run.converged = true;
      break;
    }
  }
  run.u = std::move(u);
  run.work = work;
  return run;
}

}  // namespace

OptimalPulse solve_optimal_control(const ControlProblem& problem) {
  problem.validate();
  const double target = 4.0 * problem.gamma * problem.n_bar;
  const ControlObjective obj(problem.prep, problem.horizon, problem.nodes, problem.gamma, problem.n_bar);

  const auto expo = optimize_exponential_tau(problem.prep, problem.n_bar, problem.gamma);
  const auto exp_drive = exponential_drive(problem.n_bar, expo.tau_opt, problem.gamma);
  Eigen::VectorXd u0(obj.size());
  for (Eigen::Index j = 0; j < u0.size(); ++j) u0[j] = exp_drive.rabi(obj.node_times()[static_cast<std::size_t>(j)]);
  if (!project_to_budget(obj, u0, target)) throw NumericalError("solve_optimal_control: degenerate initial pulse");

  OptimalPulse out;
  out.exponential_tau = expo.tau_opt;
  out.exponential_work = obj.value(u0);

  std::vector<Eigen::VectorXd> starts{u0};
  std::mt19937_64 rng(problem.seed);
  std::normal_distribution<double> noise(0.0, 0.3);
  for (int r = 0; r < problem.restarts; ++r) {
    Eigen::VectorXd u = u0;
    for (Eigen::Index j = 0; j < u.size(); ++j) u[j] *= 1.0 + noise(rng);
    if (project_to_budget(obj, u, target)) starts.push_back(std::move(u));
  }

  std::vector<AscentRun> runs(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { runs[i] = ascend(obj, starts[i], target, problem.max_iterations); });
  const auto best = std::max_element(runs.begin(), runs.end(),
                                     [](const AscentRun& a, const AscentRun& b) { return a.work < b.work; });
  out.drive = obj.drive(best->u);
  out.work = best->work;
  out.iterations = best->iterations;
  out.converged = best->converged;
  out.gradient_norm = best->gradient_norm;
  return out;
}

double pulse_distance(const DriveProfile& a, const DriveProfile& b, double horizon) {
  require_positive(horizon, "pulse_distance: horizon");
  constexpr int kSamples = 200001;
  double diff = 0.0;
  double ref = 0.0;
  const double h = horizon / (kSamples - 1);
  for (int i = 0; i < kSamples; ++i) {
    const double t = h * i;
    const double w = (i == 0 || i == kSamples - 1) ? 0.5 : 1.0;
    // Left-continuous at the horizon so a table ending at T keeps its last value.
    const double va = (i == kSamples - 1) ? a.rabi_on_piece(t, t - 0.5 * h) : a.rabi(t);
    const double vb = (i == kSamples - 1) ? b.rabi_on_piece(t, t - 0.5 * h) : b.rabi(t);
    diff += w * (va - vb) * (va - vb);
    ref += w * vb * vb;
  }
  if (!(ref > 0.0)) throw DomainError("pulse_distance: reference pulse vanishes");
  return std::sqrt(diff / ref);
}

ShapedThetaOptimum optimize_shaped_over_theta(ControlProblem base, double theta_lo, double theta_hi) {
  if (!(theta_hi > theta_lo) || theta_lo < 0.0 || theta_hi > std::numbers::pi)
    throw DomainError("optimize_shaped_over_theta: need 0 <= theta_lo < theta_hi <= pi");
  // Coarse bracket from exponential pulses.
  constexpr int kCoarse = 11;
  const Eigen::VectorXd thetas = linspace(theta_lo, theta_hi, kCoarse);
  std::vector<double> works(kCoarse);
  for (int i = 0; i < kCoarse; ++i)
    works[i] = optimize_exponential_tau(Preparation::make(base.prep.p, thetas[i]), base.n_bar, base.gamma).work;
  const auto best = static_cast<int>(std::max_element(works.begin(), works.end()) - works.begin());
  const double lo = thetas[std::max(0, best - 1)];
  const double hi = thetas[std::min(kCoarse - 1, best + 1)];

  ShapedThetaOptimum top;
  top.pulse.work = -std::numeric_limits<double>::infinity();
  auto shaped = [&](double theta) {
    ControlProblem p = base;
    p.prep = Preparation::make(base.prep.p, theta);
    auto pulse = solve_optimal_control(p);
    const double w = pulse.work;
    if (w > top.pulse.work) top = {theta, std::move(pulse)};
    return w;
  };
  golden_section_maximize(shaped, lo, hi, 0.01 * (hi - lo) + 1e-3);
  return top;
}

}  // namespace ergoflux
