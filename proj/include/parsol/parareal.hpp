#pragma once

#include <vector>

#include "parsol/odeparallel.hpp"

namespace parsol {

enum class PropagatorKind { FineDiscrete, CoarseDiscrete, MatrixExponential };

/// Window propagator: maps a window's initial value to its endpoint.
/// FineDiscrete with steps = grid.N reproduces the window solves of the
/// time-parallel solver arithmetic-for-arithmetic.  MatrixExponential uses
/// e^{(tau_i - tau_{i-1}) L} for the homogeneous part and accumulates the
/// forcing with the discrete rule.
struct Propagator {
  PropagatorKind kind = PropagatorKind::FineDiscrete;
  OdeMethod method = OdeMethod::ImplicitEuler;
  int steps = 1;
};

Vector propagate(const Propagator& P, const IVProblem& prob, const TimeGrid& grid, int i,
                 const Vector& y);

/// Iteration state: the window initial values y_{0i}^{(k)} plus the cached
/// fine propagations of the previous iterate.  inits[0] stays y0 at every k.
struct PararealState {
  int k = 0;
  std::vector<Vector> inits;
  std::vector<Vector> fine_cache;
  std::vector<double> history;  ///< per-iteration max update norm
};

/// Initial iterate: a sequential coarse sweep.
PararealState parareal_init(const IVProblem& prob, const TimeGrid& grid, const Propagator& coarse);

/// One sweep of y_{0,i+1}^{(k+1)} = G_i y_{0i}^{(k+1)} + (F_i - G_i) y_{0i}^{(k)}.
/// The fine propagations run concurrently over windows; the coarse sweep is
/// sequential.
PararealState parareal_iterate(const PararealState& state, const Propagator& fine,
                               const Propagator& coarse, const IVProblem& prob,
                               const TimeGrid& grid);

struct PararealResult {
  std::vector<Vector> inits;
  int iterations = 0;
  std::vector<double> history;
  bool converged = true;
};

/// Iterate until the relative max-norm update drops below tol, or max_iter.
/// Non-convergence is reported softly in the result.
PararealResult parareal_solve(const IVProblem& prob, const TimeGrid& grid, const Propagator& fine,
                              const Propagator& coarse, double tol = 1e-8, int max_iter = -1);

/// Scaling-and-squaring matrix exponential e^{t L} with a fixed-order
/// diagonal Pade core.
DenseMatrix matrix_exponential(const DenseMatrix& L, double t);

/// Method-of-lines 1-D heat equation on (0,1): m interior points, second
/// differences scaled by 1/dx^2, homogeneous Dirichlet boundaries,
/// y0 = sin(pi x).
IVProblem heat_problem(int m, double t0 = 0.0, double T = 0.1);

/// Scalar decay problem y' = lambda y, y(t0) = 1.
IVProblem decay_problem(double lambda, double t0 = 0.0, double T = 1.0);

}  // namespace parsol
