// Level scheme, dipole moments, drive and transition operators for a pair of
// four-level atoms with J = 1/2 ground and excited states.
//
// Per-atom levels: |1>,|2> excited (m = +1/2, -1/2), |3>,|4> ground
// (m = +1/2, -1/2).  The four dipole transitions are
//   1: |1><3|  (pi,      m_e = +1/2 -> m_g = +1/2)
//   2: |2><4|  (pi,      m_e = -1/2 -> m_g = -1/2)
//   3: |2><3|  (sigma-,  m_e = -1/2 -> m_g = +1/2)
//   4: |1><4|  (sigma+,  m_e = +1/2 -> m_g = -1/2)
// Two-atom product states |a>_1 |b>_2 are ordered with the atom-1 index
// slowest, basis index 4*(a-1) + (b-1).
//
// Units: gamma_pi = 1 (rates), lambda_pi = 1 (lengths), hbar = 1, so
// k0 = 2*pi.  Dipole moments are quoted in units of the reduced matrix
// element D.

#pragma once

#include <complex>
#include <numbers>

#include <Eigen/Dense>

namespace fluordimer {

inline constexpr double gamma_pi = 1.0;
inline constexpr double lambda_pi = 1.0;
inline constexpr double k0 = 2.0 * std::numbers::pi / lambda_pi;
// |d_sigma|^2 = 2 |d_pi|^2 for J=1/2 -> J=1/2, hence the sigma lines decay
// twice as fast as the pi lines.
inline constexpr double gamma_sigma = 2.0 * gamma_pi;

inline constexpr int n_levels = 4;
inline constexpr int n_transitions = 4;
inline constexpr int n_atoms = 2;
inline constexpr int dim = n_levels * n_levels;  // two-atom Hilbert space
inline constexpr int vdim = dim * dim;           // vectorised density matrix

// Transition bookkeeping; i in 1..4.
int upper_level(int i);   // 1..4
int lower_level(int i);   // 1..4
bool is_pi(int i);        // true for i in {1,2}
double decay_rate(int i); // gamma_i in units of gamma_pi

// Normalised dipole moment d_i in units of D.  d1 = -e_z/sqrt(3),
// d2 = -d1, d3 = sqrt(2/3) (e_x - i e_y)/sqrt(2), d4 = conj(d3).
Eigen::Vector3cd dipole_moment(int i);

// Relative position and orientation of the two atoms.  Atom 1 sits at the
// origin, atom 2 at r12 * (sin(theta)cos(phi), sin(theta)sin(phi), cos(theta)).
struct Geometry {
  double r12 = 0.04;                        // interatomic distance / lambda_pi
  double theta = std::numbers::pi / 2.0;    // polar angle of the axis
  double phi = std::numbers::pi / 4.0;      // azimuthal angle of the axis

  Eigen::Vector3d position(int atom) const; // atom in {1,2}
  Eigen::Vector3d separation() const;       // r_2 - r_1
};

// Driving laser: propagates along +y, linearly polarised along z, wave
// number k_L = k0.  It couples only to the pi transitions; "rabi" is the
// (real, non-negative) Rabi frequency of transition 1 at the origin and
// "detuning" is Delta = omega_L - omega_0, common to both pi lines.
struct DriveField {
  double rabi = 10.0;
  double detuning = 0.0;
};

// Position-dependent Rabi frequency Omega_i(r_mu) = Omega_i exp(i k_L . r_mu)
// with Omega_1 = Omega, Omega_2 = -Omega (d2 = -d1) and Omega_3 = Omega_4 = 0.
std::complex<double> rabi_frequency(int i, int atom, const Geometry& g,
                                    const DriveField& f);

// Single-atom raising operator |upper(i)><lower(i)| on the 4-dim space.
Eigen::Matrix4cd atomic_raising(int i);

// Two-atom raising/lowering operators S_i^{+mu}, S_i^{-mu} on the 16-dim
// product space (identity on the other atom).
Eigen::MatrixXcd transition_raising(int i, int atom);
Eigen::MatrixXcd transition_lowering(int i, int atom);

}  // namespace fluordimer
