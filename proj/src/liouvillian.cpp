#include "fluordimer/liouvillian.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace fluordimer {

namespace {

constexpr double table_symmetry_tol = 1e-10;

// Largest absolute entry, used to scale residual tolerances.
double inf_scale(const Eigen::MatrixXcd& m) {
  return std::max(1.0, m.cwiseAbs().maxCoeff());
}

struct TraceRowSolve {
  Eigen::VectorXcd x;
  double rcond;  // min/max |U_ii| of the pivoted factorisation
};

// Solve m x = rho with one redundant (diagonal) row replaced by the trace
// constraint tr(x) = 1.  Any diagonal row may be dropped because the trace
// identity t^T M = 0 makes it a linear combination of the other rows.  The
// replaced system is nonsingular exactly when the kernel of m is simple; a
// higher-dimensional kernel leaves traceless kernel elements behind and
// shows up as a vanishing pivot.
TraceRowSolve solve_with_trace_row(const Eigen::MatrixXcd& m, int level) {
  Eigen::MatrixXcd a = m;
  const int row = level * (dim + 1);  // vec index of the (level, level) entry
  a.row(row).setZero();
  for (int k = 0; k < dim; ++k) a(row, k * (dim + 1)) = 1.0;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(vdim);
  b(row) = 1.0;
  const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
  const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
  TraceRowSolve out;
  out.rcond = pivots.minCoeff() / pivots.maxCoeff();
  out.x = lu.solve(b);
  out.x += lu.solve(b - a * out.x);  // one step of iterative refinement
  return out;
}

}  // namespace

Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& a) {
  return Eigen::Map<const Eigen::VectorXcd>(a.data(), a.size());
}

Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

Eigen::RowVectorXcd trace_functional() {
  Eigen::RowVectorXcd t = Eigen::RowVectorXcd::Zero(vdim);
  for (int k = 0; k < dim; ++k) t(k * (dim + 1)) = 1.0;
  return t;
}

Eigen::MatrixXcd build_hamiltonian(const DriveField& f, const Geometry& g) {
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(dim, dim);
  for (int mu = 1; mu <= n_atoms; ++mu) {
    for (int i = 1; i <= 2; ++i) {  // only the pi lines are driven/detuned
      const Eigen::MatrixXcd sp = transition_raising(i, mu);
      const std::complex<double> rabi = rabi_frequency(i, mu, g, f);
      h -= f.detuning * sp * sp.adjoint();
      h -= rabi * sp + std::conj(rabi) * sp.adjoint();
    }
  }
  return h;
}

Eigen::MatrixXcd build_liouvillian(const DriveField& f, const Geometry& g,
                                   const CouplingTable& table) {
  const double asym = table.max_conjugate_asymmetry();
  if (asym > table_symmetry_tol) {
    std::ostringstream msg;
    msg << "coupling table is not conjugate symmetric (max deviation " << asym
        << "); the generator would not preserve Hermiticity";
    throw std::invalid_argument(msg.str());
  }

  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(dim, dim);
  Eigen::MatrixXcd h = build_hamiltonian(f, g);
  // Coherent two-point couplings; Hermitian by conjugate symmetry of Omega.
  for (int mu = 1; mu <= n_atoms; ++mu)
    for (int nu = 1; nu <= n_atoms; ++nu) {
      if (mu == nu) continue;
      for (int i = 1; i <= n_transitions; ++i)
        for (int j = 1; j <= n_transitions; ++j) {
          const std::complex<double> om = table.omega(i, j, mu, nu);
          if (om == 0.0) continue;
          h -= om * transition_raising(i, mu) * transition_lowering(j, nu);
        }
    }
  const std::complex<double> I(0.0, 1.0);

  // vec(A X) = (1 kron A) vec X, vec(X B) = (B^T kron 1) vec X.
  Eigen::MatrixXcd m =
      -I * (Eigen::kroneckerProduct(id, h) -
            Eigen::kroneckerProduct(h.transpose(), id));

  for (int mu = 1; mu <= n_atoms; ++mu)
    for (int nu = 1; nu <= n_atoms; ++nu)
      for (int i = 1; i <= n_transitions; ++i)
        for (int j = 1; j <= n_transitions; ++j) {
          const std::complex<double> rate = table.gamma(i, j, mu, nu);
          if (rate == 0.0) continue;
          const Eigen::MatrixXcd sp = transition_raising(i, mu);
          const Eigen::MatrixXcd sm = transition_lowering(j, nu);
          const Eigen::MatrixXcd spsm = sp * sm;
          m -= rate * (Eigen::kroneckerProduct(id, spsm) +
                       Eigen::kroneckerProduct(spsm.transpose(), id) -
                       2.0 * Eigen::kroneckerProduct(sp.transpose(), sm));
        }
  return m;
}

Eigen::VectorXcd steady_state(const Eigen::MatrixXcd& m) {
  const double scale = inf_scale(m);
  // Two independent row replacements; a unique kernel element satisfies both,
  // while a degenerate kernel (e.g. no drive: the ground Zeeman coherence is
  // conserved) leaves the replaced systems singular and pivot-deficient.
  const TraceRowSolve x = solve_with_trace_row(m, 0);
  const TraceRowSolve y = solve_with_trace_row(m, 1);

  std::ostringstream msg;
  if (std::min(x.rcond, y.rcond) < 1e-13 || !x.x.allFinite() ||
      !y.x.allFinite()) {
    msg << "steady state is not unique (trace-row systems are singular, "
           "pivot ratio "
        << std::min(x.rcond, y.rcond)
        << "); for undriven atoms the kernel is degenerate and no unique "
           "steady state exists";
    throw SteadyStateError(msg.str());
  }
  const double residual = (m * x.x).cwiseAbs().maxCoeff();
  const double disagreement = (x.x - y.x).cwiseAbs().maxCoeff();
  const double tol = 1e-10 * scale * std::max(1.0, x.x.cwiseAbs().maxCoeff());
  if (residual > tol || disagreement > 1e3 * tol) {
    msg << "steady state is not unique or did not converge (residual "
        << residual << ", cross-check deviation " << disagreement
        << ", tolerance " << tol << "); for undriven atoms the kernel is "
        << "degenerate and no unique steady state exists";
    throw SteadyStateError(msg.str());
  }
  return x.x;
}

SpectralDecomposition liouvillian_eigenvalues(const Eigen::MatrixXcd& m,
                                              bool with_vectors) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(m, with_vectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("eigenvalue computation failed to converge");
  const Eigen::VectorXcd& raw = solver.eigenvalues();
  std::vector<int> order(raw.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&raw](int a, int b) {
    if (raw(a).imag() != raw(b).imag()) return raw(a).imag() < raw(b).imag();
    return raw(a).real() < raw(b).real();
  });
  SpectralDecomposition out;
  out.eigenvalues.resize(raw.size());
  if (with_vectors) out.right_vectors.resize(m.rows(), m.cols());
  for (int k = 0; k < raw.size(); ++k) {
    out.eigenvalues(k) = raw(order[k]);
    if (with_vectors)
      out.right_vectors.col(k) = solver.eigenvectors().col(order[k]);
  }
  return out;
}

Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& m, double t) {
  return (m * t).exp();
}

Eigen::VectorXcd time_evolve(const Eigen::VectorXcd& rho0, double t,
                             const Eigen::MatrixXcd& m) {
  return propagator(m, t) * rho0;
}

Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, int atom) {
  if (atom < 1 || atom > n_atoms)
    throw std::out_of_range("atom index must be 1 or 2");
  Eigen::MatrixXcd red = Eigen::MatrixXcd::Zero(n_levels, n_levels);
  for (int a = 0; a < n_levels; ++a)
    for (int c = 0; c < n_levels; ++c)
      for (int b = 0; b < n_levels; ++b)
        red(a, c) += (atom == 1) ? rho(4 * a + b, 4 * c + b)
                                 : rho(4 * b + a, 4 * b + c);
  return red;
}

}  // namespace fluordimer
