// Master equation of the driven, vacuum-coupled atom pair in the frame
// rotating at the laser frequency:
//
//   d rho/dt = -i [H, rho]
//              - sum_{mu nu, ij} Gamma_ij^{munu} ( S_i^{+mu} S_j^{-nu} rho
//                  + rho S_i^{+mu} S_j^{-nu} - 2 S_j^{-nu} rho S_i^{+mu} )
//
// with H = -sum_{mu, i in {1,2}} [ Delta S_i^{+mu} S_i^{-mu}
//            + ( Omega_i(r_mu) S_i^{+mu} + h.c. ) ]
//          - sum_{mu != nu, ij} Omega_ij^{munu} S_i^{+mu} S_j^{-nu}.
//
// Note the factor-2 convention: a bare excited population decays at 2 gamma_i
// per open transition.  Density matrices are vectorised column-by-column
// (vec(A X B) = (B^T kron A) vec X), giving the 256x256 generator M with
// d vec(rho)/dt = M vec(rho).

#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

#include "fluordimer/coupling.hpp"

namespace fluordimer {

// Column-stacking helpers between 16x16 operators and length-256 vectors.
Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v);
// Left null vector t of M: t^T vec(X) = tr X.
Eigen::RowVectorXcd trace_functional();

// Two-atom drive Hamiltonian (16x16, Hermitian): Rabi and detuning terms of
// the pi lines only; the coherent two-point couplings enter the generator
// through their own commutator term.
Eigen::MatrixXcd build_hamiltonian(const DriveField& f, const Geometry& g);

// Full generator M (256x256).  Throws std::invalid_argument if the table is
// not conjugate symmetric (the resulting map would not preserve Hermiticity).
Eigen::MatrixXcd build_liouvillian(const DriveField& f, const Geometry& g,
                                   const CouplingTable& table);

struct SteadyStateError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Trace-one kernel element of M, computed by replacing one redundant row of
// M with the trace constraint and solving.  Throws SteadyStateError when the
// kernel is degenerate (e.g. undriven atoms, whose ground Zeeman coherences
// are conserved) or the solve did not converge; the message reports the
// residual.  Returns vec(rho_ss).
Eigen::VectorXcd steady_state(const Eigen::MatrixXcd& m);

struct SpectralDecomposition {
  Eigen::VectorXcd eigenvalues;     // sorted by (Im, Re) ascending
  Eigen::MatrixXcd right_vectors;   // columns, same order; empty if not asked
};

SpectralDecomposition liouvillian_eigenvalues(const Eigen::MatrixXcd& m,
                                              bool with_vectors = false);

// Propagator exp(M t) (scaling-and-squaring) and its action on a state.
Eigen::MatrixXcd propagator(const Eigen::MatrixXcd& m, double t);
Eigen::VectorXcd time_evolve(const Eigen::VectorXcd& rho0, double t,
                             const Eigen::MatrixXcd& m);

// Reduced single-atom state: trace over the other atom; "atom" is kept.
Eigen::MatrixXcd partial_trace(const Eigen::MatrixXcd& rho, int atom);

}  // namespace fluordimer
