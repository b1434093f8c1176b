#include "fluordimer/spectrum.hpp"

#include <cmath>
#include <numbers>

#include "fluordimer/parallel.hpp"

namespace fluordimer {

namespace {

// Column layout for the (transition, atom) pairs of the pi lines:
// (1,1), (1,2), (2,1), (2,2).
int pair_column(int i, int mu) { return 2 * (i - 1) + (mu - 1); }

// Back substitution for (i w 1 - T) z = y with T upper triangular
// (column oriented: once z(c) is fixed, fold T(:,c) z(c) into the rows above).
Eigen::VectorXcd solve_shifted_triangular(const Eigen::MatrixXcd& t, double w,
                                          const Eigen::VectorXcd& y) {
  const int n = static_cast<int>(t.rows());
  const std::complex<double> iw(0.0, w);
  Eigen::VectorXcd z = y;
  for (int c = n - 1; c >= 0; --c) {
    z(c) /= iw - t(c, c);
    z.head(c) += t.col(c).head(c) * z(c);
  }
  return z;
}

}  // namespace

Eigen::Vector3d default_detector() {
  return Eigen::Vector3d(1.0, 1.0, 0.0) / std::sqrt(2.0);
}

std::vector<double> SpectrumTrace::intra() const {
  std::vector<double> out(p1.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = p1[k] - p3[k];
  return out;
}

std::vector<double> SpectrumTrace::inter() const {
  std::vector<double> out(p1.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = p1[k] + p2[k] - p4[k];
  return out;
}

SpectrumSolver::SpectrumSolver(const DriveField& f, const Geometry& g,
                               const CouplingTable& table)
    : geom_(g) {
  m_ = build_liouvillian(f, g, table);
  rho_ss_ = steady_state(m_);

  // Shift the zero mode of M to -1 on its own spectral direction; the
  // resolvent on trace-free right-hand sides is untouched (see header).
  const Eigen::MatrixXcd deflated = m_ - rho_ss_ * trace_functional();
  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(deflated, true);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("Schur factorisation of the generator failed");
  schur_t_ = schur.matrixT();
  schur_u_ = schur.matrixU();

  sources_.resize(vdim, 4);
  probes_.resize(vdim, 4);
  const Eigen::MatrixXcd rho = unvectorize(rho_ss_);
  for (int i = 1; i <= 2; ++i)
    for (int mu = 1; mu <= n_atoms; ++mu) {
      const Eigen::MatrixXcd sm = transition_lowering(i, mu);
      const std::complex<double> mean = (sm * rho).trace();
      const Eigen::VectorXcd b = vectorize(sm * rho) - mean * rho_ss_;
      sources_.col(pair_column(i, mu)) = schur_u_.adjoint() * b;
      probes_.col(pair_column(i, mu)) = schur_u_.adjoint() * vectorize(sm);
    }
}

Eigen::VectorXcd SpectrumSolver::resolve(double omega,
                                         const Eigen::VectorXcd& b) const {
  const Eigen::VectorXcd y = schur_u_.adjoint() * b;
  return schur_u_ * solve_shifted_triangular(schur_t_, omega, y);
}

std::complex<double> SpectrumSolver::correlation_transform(
    int i, int j, int mu, int nu, double omega,
    const Eigen::Vector3d& detector) const {
  const Eigen::MatrixXcd rho = unvectorize(rho_ss_);
  const Eigen::MatrixXcd sm = transition_lowering(j, nu);
  const std::complex<double> mean = (sm * rho).trace();
  const Eigen::VectorXcd b = vectorize(sm * rho) - mean * rho_ss_;
  const Eigen::MatrixXcd x = unvectorize(resolve(omega, b));
  const double arg =
      k0 * detector.dot(geom_.position(mu) - geom_.position(nu));
  return std::polar(1.0, arg) * (transition_raising(i, mu) * x).trace();
}

SpectrumTrace SpectrumSolver::evaluate(const std::vector<double>& grid,
                                       const SpectrumTermFlags& flags,
                                       const Eigen::Vector3d& detector,
                                       int workers) const {
  SpectrumTrace trace;
  trace.omega = grid;
  const size_t n = grid.size();
  trace.total.resize(n);
  trace.p1.resize(n);
  trace.p2.resize(n);
  trace.p3.resize(n);
  trace.p4.resize(n);

  std::complex<double> phase[3][3];
  for (int mu = 1; mu <= n_atoms; ++mu)
    for (int nu = 1; nu <= n_atoms; ++nu)
      phase[mu][nu] = std::polar(
          1.0, k0 * detector.dot(geom_.position(mu) - geom_.position(nu)));

  auto point = [&](size_t k) {
    Eigen::MatrixXcd z(vdim, 4);
    for (int c = 0; c < 4; ++c)
      z.col(c) = solve_shifted_triangular(schur_t_, grid[k], sources_.col(c));
    std::complex<double> part[5] = {};
    for (int i = 1; i <= 2; ++i)
      for (int j = 1; j <= 2; ++j)
        for (int mu = 1; mu <= n_atoms; ++mu)
          for (int nu = 1; nu <= n_atoms; ++nu) {
            const std::complex<double> t =
                phase[mu][nu] *
                probes_.col(pair_column(i, mu)).dot(z.col(pair_column(j, nu)));
            const int which = (mu == nu) ? (i == j ? 1 : 3) : (i == j ? 2 : 4);
            part[which] += t;
          }
    // Real part only after the full sums; the partial sums are stored raw
    // and the total honours the term selection with signs (+, +, -, -).
    const double inv_pi = 1.0 / std::numbers::pi;
    trace.p1[k] = inv_pi * part[1].real();
    trace.p2[k] = inv_pi * part[2].real();
    trace.p3[k] = inv_pi * part[3].real();
    trace.p4[k] = inv_pi * part[4].real();
    trace.total[k] = (flags.p1 ? trace.p1[k] : 0.0) +
                     (flags.p2 ? trace.p2[k] : 0.0) -
                     (flags.p3 ? trace.p3[k] : 0.0) -
                     (flags.p4 ? trace.p4[k] : 0.0);
  };

  parallel_for(n, workers, point);
  return trace;
}

double SpectrumSolver::coherent_intensity(
    const Eigen::Vector3d& detector) const {
  const Eigen::MatrixXcd rho = unvectorize(rho_ss_);
  std::complex<double> amp = 0.0;
  for (int mu = 1; mu <= n_atoms; ++mu) {
    const double arg = -k0 * detector.dot(geom_.position(mu));
    for (int i = 1; i <= 2; ++i) {
      const std::complex<double> mean =
          (transition_lowering(i, mu) * rho).trace();
      amp += ((i % 2 == 0) ? 1.0 : -1.0) * std::polar(1.0, arg) * mean;
    }
  }
  return std::norm(amp);
}

}  // namespace fluordimer
