#include "parsol/odeparallel.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>

namespace parsol {

const char* method_name(OdeMethod m) {
  return m == OdeMethod::ImplicitEuler ? "ie" : "trap";
}

OdeMethod method_from_name(const std::string& s) {
  if (s == "ie" || s == "euler") return OdeMethod::ImplicitEuler;
  if (s == "trap" || s == "trapezoidal") return OdeMethod::Trapezoidal;
  fail(Errc::InvalidParameter, "unknown method '" + s + "'");
}

TimeGrid coarse_mesh(double t0, double T, int p, int N) {
  if (!(T > t0)) fail(Errc::InvalidInterval, "T must exceed t0");
  if (p < 1 || N < 1) fail(Errc::InvalidInterval, "p and N must be >= 1");
  std::vector<double> tau(p + 1);
  for (int i = 0; i <= p; ++i) tau[i] = t0 + (T - t0) * double(i) / double(p);
  tau[0] = t0;
  tau[p] = T;
  return coarse_mesh(std::move(tau), N);
}

TimeGrid coarse_mesh(std::vector<double> tau, int N) {
  if (tau.size() < 2) fail(Errc::InvalidInterval, "need at least one window");
  if (N < 1) fail(Errc::InvalidInterval, "N must be >= 1");
  for (std::size_t i = 1; i < tau.size(); ++i)
    if (!(tau[i] > tau[i - 1])) fail(Errc::InvalidInterval, "mesh must be strictly increasing");
  TimeGrid grid;
  grid.tau = std::move(tau);
  grid.N = N;
  grid.h.resize(grid.tau.size() - 1);
  for (std::size_t i = 1; i < grid.tau.size(); ++i)
    grid.h[i - 1] = (grid.tau[i] - grid.tau[i - 1]) / N;
  return grid;
}

DenseMatrix WindowSystem::v_dense() const {
  DenseMatrix V(m * N, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) V.at(i, j) = sub.at(i, j);
  return V;
}

DenseMatrix WindowSystem::m_dense() const {
  DenseMatrix M(m * N, m * N);
  for (int nstep = 0; nstep < N; ++nstep)
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        M.at(nstep * m + i, nstep * m + j) = diag.at(i, j);
        if (nstep > 0) M.at(nstep * m + i, (nstep - 1) * m + j) = -sub.at(i, j);
      }
  return M;
}

DenseMatrix WindowSolution::w_tail() const {
  DenseMatrix W(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) W.at(i, j) = w.at((N - 1) * m + i, j);
  return W;
}

WindowSystem discretize_window(const IVProblem& prob, const TimeGrid& grid, int i,
                               OdeMethod method) {
  if (i < 1 || i > grid.windows()) fail(Errc::IndexOutOfRange, "window index");
  if (int(prob.y0.size()) != prob.dim()) fail(Errc::DimensionMismatch, "y0 length");
  WindowSystem W;
  W.index = i;
  W.method = method;
  W.m = prob.dim();
  W.N = grid.N;
  W.h = grid.h[i - 1];
  W.tstart = grid.tau[i - 1];

  const int m = W.m;
  DenseMatrix I = DenseMatrix::identity(m);
  if (method == OdeMethod::ImplicitEuler) {
    W.diag = sub(I, scale(prob.L, W.h));
    W.sub = I;
  } else {
    W.diag = parsol::sub(I, scale(prob.L, W.h / 2));
    W.sub = add(I, scale(prob.L, W.h / 2));
  }
  try {
    W.diag_lu = DenseLu(W.diag);
  } catch (const Error&) {
    fail(Errc::StepTooLarge, "window matrix singular for h = " + std::to_string(W.h));
  }

  W.gvec.resize(std::size_t(m) * W.N);
  for (int nstep = 1; nstep <= W.N; ++nstep) {
    double tn = W.tstart + nstep * W.h;
    Vector gn;
    if (method == OdeMethod::ImplicitEuler) {
      gn = prob.forcing(tn);
      for (double& v : gn) v *= W.h;
    } else {
      Vector g0 = prob.forcing(tn - W.h);
      gn = prob.forcing(tn);
      for (int q = 0; q < m; ++q) gn[q] = W.h / 2 * (g0[q] + gn[q]);
    }
    std::copy(gn.begin(), gn.end(), W.gvec.begin() + std::size_t(nstep - 1) * m);
  }
  return W;
}

Vector window_forward(const WindowSystem& W, const Vector& y_init) {
  const int m = W.m;
  Vector out(std::size_t(m) * W.N);
  Vector prev = y_init;
  Vector rhs(m);
  for (int nstep = 0; nstep < W.N; ++nstep) {
    for (int q = 0; q < m; ++q) {
      double acc = W.gvec[std::size_t(nstep) * m + q];
      for (int j = 0; j < m; ++j) acc += W.sub.at(q, j) * prev[j];
      rhs[q] = acc;
    }
    prev = W.diag_lu.solve(rhs);
    std::copy(prev.begin(), prev.end(), out.begin() + std::size_t(nstep) * m);
  }
  return out;
}

WindowSolution solve_window_homogeneous(const WindowSystem& W) {
  WindowSolution sol;
  sol.m = W.m;
  sol.N = W.N;
  sol.z = window_forward(W, Vector(W.m, 0.0));

  // w = M^{-1} v by m forward substitutions, one per column.
  sol.w = DenseMatrix(W.m * W.N, W.m);
  WindowSystem hom = W;
  std::fill(hom.gvec.begin(), hom.gvec.end(), 0.0);
  for (int j = 0; j < W.m; ++j) {
    Vector e(W.m, 0.0);
    e[j] = 1.0;
    Vector col = window_forward(hom, e);
    for (int q = 0; q < W.m * W.N; ++q) sol.w.at(q, j) = col[q];
  }
  return sol;
}

std::vector<Vector> reduced_recursion(const std::vector<WindowSolution>& sols, const Vector& y0) {
  const int p = int(sols.size());
  std::vector<Vector> inits(p);
  inits[0] = y0;
  for (int i = 0; i < p - 1; ++i) {
    Vector next = sols[i].z_tail();
    DenseMatrix wN = sols[i].w_tail();
    for (int q = 0; q < sols[i].m; ++q)
      for (int j = 0; j < sols[i].m; ++j) next[q] += wN.at(q, j) * inits[i][j];
    inits[i + 1] = std::move(next);
  }
  return inits;
}

Trajectory parallel_update(const TimeGrid& grid, const std::vector<WindowSolution>& sols,
                           const std::vector<Vector>& inits) {
  const int p = int(sols.size());
  const int m = sols[0].m, N = sols[0].N;
  Trajectory traj;
  traj.m = m;
  traj.p = p;
  traj.N = N;
  traj.flat.assign(std::size_t(p * N + 1) * m, 0.0);
  std::copy(inits[0].begin(), inits[0].end(), traj.flat.begin());
  (void)grid;
#pragma omp parallel for schedule(static)
  for (int i = 0; i < p; ++i)
    for (int q = 0; q < m * N; ++q) {
      double acc = sols[i].z[q];
      for (int j = 0; j < m; ++j) acc += sols[i].w.at(q, j) * inits[i][j];
      traj.flat[std::size_t(i) * N * m + m + q] = acc;
    }
  return traj;
}

Trajectory solve_ivp_parallel(const IVProblem& prob, const TimeGrid& grid, OdeMethod method) {
  const int p = grid.windows();
  const int m = prob.dim(), N = grid.N;
  Trajectory traj;
  traj.m = m;
  traj.p = p;
  traj.N = N;
  traj.flat.assign(std::size_t(p * N + 1) * m, 0.0);
  std::copy(prob.y0.begin(), prob.y0.end(), traj.flat.begin());

  // Window 1 is solved with y0 directly (its homogeneous split would be
  // redundant work); the other windows run the homogeneous solve, then the
  // recursion fixes their initial values and the updates run concurrently.
  std::vector<WindowSolution> sols(p);
  Vector first;
#pragma omp parallel for schedule(static)
  for (int i = 1; i <= p; ++i) {
    WindowSystem W = discretize_window(prob, grid, i, method);
    if (i == 1) {
      Vector y1 = window_forward(W, prob.y0);
#pragma omp critical
      first = std::move(y1);
    } else {
      sols[i - 1] = solve_window_homogeneous(W);
    }
  }
  std::copy(first.begin(), first.end(), traj.flat.begin() + m);

  if (p == 1) return traj;

  std::vector<Vector> inits(p);
  inits[0] = prob.y0;
  inits[1] = Vector(first.end() - m, first.end());
  for (int i = 1; i < p - 1; ++i) {
    Vector next = sols[i].z_tail();
    DenseMatrix wN = sols[i].w_tail();
    for (int q = 0; q < m; ++q)
      for (int j = 0; j < m; ++j) next[q] += wN.at(q, j) * inits[i][j];
    inits[i + 1] = std::move(next);
  }

#pragma omp parallel for schedule(static)
  for (int i = 1; i < p; ++i)
    for (int q = 0; q < m * N; ++q) {
      double acc = sols[i].z[q];
      for (int j = 0; j < m; ++j) acc += sols[i].w.at(q, j) * inits[i][j];
      traj.flat[std::size_t(i) * N * m + m + q] = acc;
    }
  return traj;
}

Trajectory solve_ivp_sequential(const IVProblem& prob, const TimeGrid& grid, OdeMethod method) {
  const int p = grid.windows();
  const int m = prob.dim(), N = grid.N;
  Trajectory traj;
  traj.m = m;
  traj.p = p;
  traj.N = N;
  traj.flat.assign(std::size_t(p * N + 1) * m, 0.0);
  std::copy(prob.y0.begin(), prob.y0.end(), traj.flat.begin());
  Vector carry = prob.y0;
  for (int i = 1; i <= p; ++i) {
    WindowSystem W = discretize_window(prob, grid, i, method);
    Vector yi = window_forward(W, carry);
    std::copy(yi.begin(), yi.end(), traj.flat.begin() + std::size_t(i - 1) * N * m + m);
    carry.assign(yi.end() - m, yi.end());
  }
  return traj;
}

}  // namespace parsol
