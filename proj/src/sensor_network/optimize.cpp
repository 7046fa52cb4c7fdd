#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <cmath>
#include <complex>
#include <memory>

#include "haloscan/network.hpp"

namespace haloscan {

namespace {

using cd = std::complex<double>;

struct Problem {
  const std::vector<CavityParams>* cavities;
  double gain;
  std::vector<double> omegas;  // one point for per-frequency mode
  bool integrate;
  double scale;  // objective at the seed, used to keep values O(1)
};

WeightPair unpack(const gsl_vector* x, int m) {
  CVec w(m), wp(m);
  for (int k = 0; k < m; ++k) {
    w(k) = cd(gsl_vector_get(x, 2 * k), gsl_vector_get(x, 2 * k + 1));
    wp(k) = cd(gsl_vector_get(x, 2 * m + 2 * k), gsl_vector_get(x, 2 * m + 2 * k + 1));
  }
  return {w, wp, false};
}

void pack(const WeightPair& w, gsl_vector* x) {
  const auto m = w.combiner.size();
  for (Eigen::Index k = 0; k < m; ++k) {
    gsl_vector_set(x, 2 * k, w.combiner(k).real());
    gsl_vector_set(x, 2 * k + 1, w.combiner(k).imag());
    gsl_vector_set(x, 2 * m + 2 * k, w.divider(k).real());
    gsl_vector_set(x, 2 * m + 2 * k + 1, w.divider(k).imag());
  }
}

double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
  double s = 0.0;
  for (std::size_t i = 1; i < x.size(); ++i) s += 0.5 * (x[i] - x[i - 1]) * (y[i] + y[i - 1]);
  return s;
}

double objective(const Problem& pr, const WeightPair& w) {
  if (!pr.integrate) {
    const double snr = network_output(*pr.cavities, pr.gain, w, pr.omegas.front()).snr;
    return snr * snr;
  }
  std::vector<double> vals(pr.omegas.size());
  for (std::size_t i = 0; i < pr.omegas.size(); ++i) {
    const double snr = network_output(*pr.cavities, pr.gain, w, pr.omegas[i]).snr;
    vals[i] = snr * snr;
  }
  return trapezoid(pr.omegas, vals);
}

// Projection onto the product of unit spheres precedes every evaluation.
WeightPair project(WeightPair w) {
  const double a = w.combiner.norm();
  const double b = w.divider.norm();
  if (a == 0.0 || b == 0.0) return {};
  w.combiner /= a;
  w.divider /= b;
  return w;
}

double gsl_objective(const gsl_vector* x, void* params) {
  const auto* pr = static_cast<const Problem*>(params);
  const int m = static_cast<int>(pr->cavities->size());
  const WeightPair w = project(unpack(x, m));
  if (w.combiner.size() == 0) return GSL_POSINF;
  return -objective(*pr, w) / pr->scale;
}

struct Outcome {
  WeightPair weights;
  double value;
  double seed_value;
  bool converged;
  std::size_t iterations;
};

Outcome run_simplex(Problem& pr, const WeightPair& seed) {
  const int m = static_cast<int>(pr.cavities->size());
  const std::size_t dim = 4 * static_cast<std::size_t>(m);
  const double seed_value = objective(pr, seed);
  pr.scale = seed_value > 0.0 ? seed_value : 1.0;

  gsl_multimin_function fn{&gsl_objective, dim, &pr};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(dim), &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(dim), &gsl_vector_free);
  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, dim), &gsl_multimin_fminimizer_free);

  WeightPair best = seed;
  double best_value = seed_value;
  bool converged = false;
  std::size_t iterations = 0;

  // Restart from the current best point until a restart stops improving it;
  // this guards against premature simplex collapse.
  for (int restart = 0; restart < 8; ++restart) {
    pack(best, x.get());
    gsl_vector_set_all(step.get(), restart == 0 ? 0.1 : 0.02);
    gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get());
    int status = GSL_CONTINUE;
    std::size_t it = 0;
    for (; it < 20000 && status == GSL_CONTINUE; ++it) {
      if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
      status = gsl_multimin_test_size(gsl_multimin_fminimizer_size(solver.get()), 1e-11);
    }
    iterations += it;
    converged = status == GSL_SUCCESS;
    const WeightPair found = project(unpack(gsl_multimin_fminimizer_x(solver.get()), m));
    const double value = found.combiner.size() ? objective(pr, found) : 0.0;
    const bool improved = value > best_value * (1.0 + 1e-13);
    if (value > best_value) {
      best = found;
      best_value = value;
    }
    if (!improved && restart > 0) break;
  }
  return {best, best_value, seed_value, converged, iterations};
}

}  // namespace

std::vector<double> default_weight_grid(const std::vector<CavityParams>& cavities, int points) {
  if (points < 2) throw InvalidArgument("weight grid needs at least two points");
  double width = 0.0;
  for (const auto& c : cavities) width = std::max(width, c.total_rate());
  const double half_span = 10.0 * width;
  std::vector<double> grid(points);
  for (int i = 0; i < points; ++i) grid[i] = -half_span + 2.0 * half_span * i / (points - 1);
  return grid;
}

OptimizeResult optimize_weights(const std::vector<CavityParams>& cavities, double gain, WeightMode mode,
                                const std::vector<double>& omega_grid) {
  if (cavities.size() < 2) throw InvalidArgument("weight optimization needs at least two cavities");
  if (!(gain >= 1.0)) throw InvalidArgument("network gain must be >= 1");
  gsl_set_error_handler_off();

  OptimizeResult result;
  result.omegas = omega_grid.empty() ? default_weight_grid(cavities) : omega_grid;

  if (mode == WeightMode::per_frequency) {
    for (double w : result.omegas) {
      Problem pr{&cavities, gain, {w}, false, 1.0};
      const Outcome o = run_simplex(pr, near_optimal_weights(cavities, w));
      result.weights.push_back(o.weights);
      result.objective.push_back(o.value);
      result.seed_objective.push_back(o.seed_value);
      result.converged = result.converged && o.converged;
      result.iterations += o.iterations;
    }
    return result;
  }

  // A single weight pair for the whole band, seeded at the on-resonance near-optimum.
  Problem pr{&cavities, gain, result.omegas, true, 1.0};
  const Outcome o = run_simplex(pr, near_optimal_weights(cavities, 0.0));
  result.weights.push_back(o.weights);
  result.objective.push_back(o.value);
  result.seed_objective.push_back(o.seed_value);
  result.converged = o.converged;
  result.iterations = o.iterations;
  return result;
}

}  // namespace haloscan
