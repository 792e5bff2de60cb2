#pragma once

#include <functional>
#include <vector>

#include "parsol/dense.hpp"

namespace parsol {

enum class OdeMethod { ImplicitEuler, Trapezoidal };

const char* method_name(OdeMethod m);
OdeMethod method_from_name(const std::string& s);

/// Linear initial value problem y' = L y + g(t), y(t0) = y0.
struct IVProblem {
  DenseMatrix L;
  std::function<Vector(double)> g;  ///< empty means g = 0
  double t0 = 0, T = 1;
  Vector y0;

  int dim() const { return L.rows; }
  Vector forcing(double t) const {
    if (!g) return Vector(dim(), 0.0);
    return g(t);
  }
};

/// Coarse mesh t0 = tau_0 < ... < tau_p = T with N fine steps per window.
struct TimeGrid {
  std::vector<double> tau;
  int N = 1;
  std::vector<double> h;  ///< (tau_i - tau_{i-1}) / N

  int windows() const { return int(tau.size()) - 1; }
};

TimeGrid coarse_mesh(double t0, double T, int p, int N);
TimeGrid coarse_mesh(std::vector<double> tau, int N);

/// One window's discrete problem M_i y_i = v_i y_{0i} + g_i.  For the
/// bundled one-step methods M_i is unit-structured lower block bidiagonal:
/// every step solves  diag * y_n = sub * y_{n-1} + rhs_n.
struct WindowSystem {
  int index = 1;  ///< 1-based window number
  OdeMethod method = OdeMethod::ImplicitEuler;
  int m = 0, N = 0;
  double h = 0, tstart = 0;
  DenseMatrix diag;  ///< I - h L (implicit Euler), I - h/2 L (trapezoidal)
  DenseMatrix sub;   ///< I, resp. I + h/2 L; also the v_i coupling block
  DenseLu diag_lu;
  Vector gvec;  ///< m*N method right-hand side

  /// v_i as a dense mN x m block (first block row = sub).
  DenseMatrix v_dense() const;
  /// M_i as dense (oracle helper).
  DenseMatrix m_dense() const;
};

/// Homogeneous-data window solve: z = M^{-1} g and the propagator block
/// w = M^{-1} v.
struct WindowSolution {
  int m = 0, N = 0;
  Vector z;        ///< m*N
  DenseMatrix w;   ///< m*N x m

  Vector z_tail() const { return Vector(z.end() - m, z.end()); }
  DenseMatrix w_tail() const;
};

/// Discrete solution over the whole interval: y_{N0}, then window i's
/// y_{1i}..y_{Ni}.  The stitching y_{0,i} = y_{N,i-1} is shared storage.
struct Trajectory {
  int m = 0, p = 0, N = 0;
  Vector flat;  ///< (p*N + 1) * m entries

  Vector entry(int idx) const {
    return Vector(flat.begin() + std::size_t(idx) * m, flat.begin() + std::size_t(idx + 1) * m);
  }
  Vector endpoint() const { return entry(p * N); }
};

WindowSystem discretize_window(const IVProblem& prob, const TimeGrid& grid, int i, OdeMethod method);

/// Full forward substitution through a window with the given initial value;
/// returns all N step values.
Vector window_forward(const WindowSystem& W, const Vector& y_init);

WindowSolution solve_window_homogeneous(const WindowSystem& W);

/// y_{01} = y0, y_{0,i+1} = z_{Ni} + w_{Ni} y_{0i}; returns the p window
/// initial values (sequential, p-1 small products).
std::vector<Vector> reduced_recursion(const std::vector<WindowSolution>& sols, const Vector& y0);

/// The p concurrent updates yhat_i = zhat_i + what_i y_{0i}.
Trajectory parallel_update(const TimeGrid& grid, const std::vector<WindowSolution>& sols,
                           const std::vector<Vector>& inits);

Trajectory solve_ivp_parallel(const IVProblem& prob, const TimeGrid& grid, OdeMethod method);
Trajectory solve_ivp_sequential(const IVProblem& prob, const TimeGrid& grid, OdeMethod method);

}  // namespace parsol
