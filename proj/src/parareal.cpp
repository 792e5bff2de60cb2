#include "parsol/parareal.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace parsol {

namespace {

Vector discrete_endpoint(const IVProblem& prob, const TimeGrid& grid, int i, OdeMethod method,
                         int steps, const Vector& y) {
  TimeGrid local = coarse_mesh({grid.tau[i - 1], grid.tau[i]}, steps);
  WindowSystem W = discretize_window(prob, local, 1, method);
  Vector full = window_forward(W, y);
  return Vector(full.end() - prob.dim(), full.end());
}

}  // namespace

Vector propagate(const Propagator& P, const IVProblem& prob, const TimeGrid& grid, int i,
                 const Vector& y) {
  if (i < 1 || i > grid.windows()) fail(Errc::IndexOutOfRange, "window index");
  if (int(y.size()) != prob.dim()) fail(Errc::DimensionMismatch, "initial value length");
  switch (P.kind) {
    case PropagatorKind::FineDiscrete:
      return discrete_endpoint(prob, grid, i, P.method, P.steps, y);
    case PropagatorKind::CoarseDiscrete:
      return discrete_endpoint(prob, grid, i, P.method, P.steps, y);
    case PropagatorKind::MatrixExponential: {
      double delta = grid.tau[i] - grid.tau[i - 1];
      DenseMatrix E = matrix_exponential(prob.L, delta);
      Vector out = matvec(E, y);
      if (prob.g) {
        // Forcing accumulated by the discrete rule with zero initial value.
        Vector part = discrete_endpoint(prob, grid, i, P.method, P.steps, Vector(prob.dim(), 0.0));
        for (int q = 0; q < prob.dim(); ++q) out[q] += part[q];
      }
      return out;
    }
  }
  fail(Errc::InvalidParameter, "unknown propagator");
}

PararealState parareal_init(const IVProblem& prob, const TimeGrid& grid, const Propagator& coarse) {
  const int p = grid.windows();
  PararealState st;
  st.k = 0;
  st.inits.resize(p);
  st.inits[0] = prob.y0;
  for (int i = 1; i < p; ++i) st.inits[i] = propagate(coarse, prob, grid, i, st.inits[i - 1]);
  return st;
}

PararealState parareal_iterate(const PararealState& state, const Propagator& fine,
                               const Propagator& coarse, const IVProblem& prob,
                               const TimeGrid& grid) {
  const int p = int(state.inits.size());
  PararealState next;
  next.k = state.k + 1;
  next.history = state.history;
  next.inits.resize(p);
  next.inits[0] = prob.y0;

  // Fine propagations of the previous iterate: the expensive concurrent part.
  next.fine_cache.resize(p > 0 ? p - 1 : 0);
#pragma omp parallel for schedule(static)
  for (int i = 1; i < p; ++i)
    next.fine_cache[i - 1] = propagate(fine, prob, grid, i, state.inits[i - 1]);

  // Sequential coarse sweep.
  for (int i = 1; i < p; ++i) {
    Vector gnew = propagate(coarse, prob, grid, i, next.inits[i - 1]);
    Vector gold = propagate(coarse, prob, grid, i, state.inits[i - 1]);
    Vector v = next.fine_cache[i - 1];
    for (int q = 0; q < prob.dim(); ++q) v[q] += gnew[q] - gold[q];
    next.inits[i] = std::move(v);
  }

  double upd = 0.0;
  for (int i = 1; i < p; ++i)
    for (int q = 0; q < prob.dim(); ++q)
      upd = std::max(upd, std::abs(next.inits[i][q] - state.inits[i][q]));
  next.history.push_back(upd);
  return next;
}

PararealResult parareal_solve(const IVProblem& prob, const TimeGrid& grid, const Propagator& fine,
                              const Propagator& coarse, double tol, int max_iter) {
  if (tol <= 0) fail(Errc::InvalidParameter, "tol must be positive");
  const int p = grid.windows();
  if (max_iter < 0) max_iter = 2 * p;
  PararealState st = parareal_init(prob, grid, coarse);
  PararealResult res;
  if (p == 1) {
    res.inits = st.inits;
    res.iterations = 0;
    return res;
  }
  for (int k = 1; k <= max_iter; ++k) {
    st = parareal_iterate(st, fine, coarse, prob, grid);
    double scale = 0.0;
    for (const auto& v : st.inits) scale = std::max(scale, inf_norm(v));
    if (st.history.back() <= tol * std::max(scale, 1e-300)) {
      res.inits = st.inits;
      res.iterations = k;
      res.history = st.history;
      return res;
    }
  }
  res.inits = st.inits;
  res.iterations = max_iter;
  res.history = st.history;
  res.converged = false;
  return res;
}

DenseMatrix matrix_exponential(const DenseMatrix& L, double t) {
  if (L.rows != L.cols) fail(Errc::DimensionMismatch, "expm needs square input");
  const int m = L.rows;
  DenseMatrix B = scale(L, t);
  double nrm = inf_norm(B);
  if (!std::isfinite(nrm)) fail(Errc::ExpmFailure, "non-finite input");
  int s = 0;
  while (nrm > 0.5) {
    nrm /= 2;
    ++s;
    if (s > 1070) fail(Errc::ExpmFailure, "scaling overflow");
  }
  B = scale(B, std::ldexp(1.0, -s));

  // Diagonal Pade of order 7 on the scaled matrix.
  static const double b[8] = {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
  DenseMatrix I = DenseMatrix::identity(m);
  DenseMatrix B2 = matmul(B, B);
  DenseMatrix B4 = matmul(B2, B2);
  DenseMatrix B6 = matmul(B4, B2);
  DenseMatrix Upoly = add(add(scale(B6, b[7]), scale(B4, b[5])), add(scale(B2, b[3]), scale(I, b[1])));
  DenseMatrix U = matmul(B, Upoly);
  DenseMatrix V = add(add(scale(B6, b[6]), scale(B4, b[4])), add(scale(B2, b[2]), scale(I, b[0])));
  DenseMatrix X;
  try {
    X = lu_solve(sub(V, U), add(V, U));
  } catch (const Error&) {
    fail(Errc::ExpmFailure, "Pade denominator singular");
  }
  for (int q = 0; q < s; ++q) X = matmul(X, X);
  for (double v : X.a)
    if (!std::isfinite(v)) fail(Errc::ExpmFailure, "overflow while squaring");
  return X;
}

IVProblem heat_problem(int m, double t0, double T) {
  if (m < 1) fail(Errc::InvalidParameter, "need at least one interior point");
  IVProblem prob;
  prob.t0 = t0;
  prob.T = T;
  prob.L = DenseMatrix(m, m);
  const double scale = double(m + 1) * double(m + 1);  // 1/dx^2
  for (int i = 0; i < m; ++i) {
    prob.L.at(i, i) = -2.0 * scale;
    if (i > 0) prob.L.at(i, i - 1) = scale;
    if (i + 1 < m) prob.L.at(i, i + 1) = scale;
  }
  prob.y0.resize(m);
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < m; ++i) prob.y0[i] = std::sin(pi * double(i + 1) / double(m + 1));
  return prob;
}

IVProblem decay_problem(double lambda, double t0, double T) {
  IVProblem prob;
  prob.t0 = t0;
  prob.T = T;
  prob.L = DenseMatrix(1, 1);
  prob.L.at(0, 0) = lambda;
  prob.y0 = {1.0};
  return prob;
}

}  // namespace parsol
