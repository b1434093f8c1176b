// Stationary resonance fluorescence spectrum of the pi lines.
//
// By the quantum regression theorem the two-time correlations follow from
// resolvents of the generator: for each source transition (j, nu)
//   ( i w 1 - M ) vec(X) = vec( S_j^{-nu} rho_ss - <S_j^{-nu}> rho_ss ),
// and the correlation transform is
//   T_ij^{munu}(w) = exp(i k0 Rhat . (r_mu - r_nu)) tr[ S_i^{+mu} X ],
// w = omega - omega_L.  The incoherent pi-polarised spectrum in detection
// direction Rhat splits into four partial sums over (i, j in {1,2}):
//   P1: mu == nu, i == j      P2: mu != nu, i == j
//   P3: mu == nu, i != j      P4: mu != nu, i != j
//   S(w) = (1/pi) Re [ P1 + P2 - P3 - P4 ]
// (the sign is (-1)^{i+j} because d2 = -d1 flips the detection amplitude).
// The real part is taken only after summation.
//
// The right-hand sides are trace free, so the resolvent is evaluated on the
// trace-free sector: with t the trace functional and P0 = rho_ss t^T the
// spectral projector of the zero eigenvalue, M' = M - rho_ss t^T has the
// zero mode shifted to -1 while t^T (iw - M') X = -t^T X forces tr X = 0 and
// hence (iw - M') X = (iw - M) X.  A single Schur factorisation of M' then
// solves every frequency, including w = 0, by one triangular substitution.

#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "fluordimer/liouvillian.hpp"

namespace fluordimer {

// Observation direction for the pi lines; default Rhat = (1,1,0)/sqrt(2)
// (perpendicular to the polarisation, oblique to the interatomic axis).
Eigen::Vector3d default_detector();

struct SpectrumTermFlags {
  bool p1 = true;
  bool p2 = true;
  bool p3 = true;
  bool p4 = true;
};

// Spectrum on a frequency grid, with the four partial sums kept separately
// (p1..p4 are the raw partial sums; total honours the term flags).
struct SpectrumTrace {
  std::vector<double> omega;
  std::vector<double> total, p1, p2, p3, p4;

  std::vector<double> intra() const;  // P1 - P3
  std::vector<double> inter() const;  // P1 + P2 - P4
};

class SpectrumSolver {
 public:
  SpectrumSolver(const DriveField& f, const Geometry& g,
                 const CouplingTable& table);

  // T_ij^{munu}(w) for any transitions i, j in 1..4 and atoms mu, nu in 1..2.
  std::complex<double> correlation_transform(
      int i, int j, int mu, int nu, double omega,
      const Eigen::Vector3d& detector = default_detector()) const;

  SpectrumTrace evaluate(const std::vector<double>& grid,
                         const SpectrumTermFlags& flags = {},
                         const Eigen::Vector3d& detector = default_detector(),
                         int workers = 1) const;

  // Coherently scattered pi intensity |sum_{mu,i} (-1)^i <S_i^{-mu}>
  // exp(-i k0 Rhat . r_mu)|^2.
  double coherent_intensity(
      const Eigen::Vector3d& detector = default_detector()) const;

  const Eigen::MatrixXcd& liouvillian() const { return m_; }
  const Eigen::VectorXcd& steady_state_vec() const { return rho_ss_; }
  const Geometry& geometry() const { return geom_; }

 private:
  // Solve (i w - M) x = b for trace-free b via the deflated Schur factors.
  Eigen::VectorXcd resolve(double omega, const Eigen::VectorXcd& b) const;

  Geometry geom_;
  Eigen::MatrixXcd m_;
  Eigen::VectorXcd rho_ss_;
  Eigen::MatrixXcd schur_t_, schur_u_;      // M - rho_ss t^T = U T U^H
  Eigen::MatrixXcd sources_;                // U^H B_{j nu},   256 x 4
  Eigen::MatrixXcd probes_;                 // U^H vec(S_i^{-mu}), 256 x 4
};

}  // namespace fluordimer
