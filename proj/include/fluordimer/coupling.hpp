// Vacuum-mediated coupling constants between the dipole transitions of the
// atom pair.
//
// Two-point couplings (mu != nu) derive from the free-space dyadic Green
// tensor, here in the dimensionless form
//   chi_pq(r) = N * [ delta_pq (1/eta + i/eta^2 - 1/eta^3)
//                     - rhat_p rhat_q (1/eta + 3i/eta^2 - 3/eta^3) ] e^{i eta},
// eta = k0 |r|, with N = 9/2 fixed by Gamma_11^{mumu} = gamma_pi.  Then
//   Gamma_ij = d_i^T Im(chi) d_j^*,   Omega_ij = d_i^T Re(chi) d_j^*.
// Single-point couplings (mu == nu) are the frequency-degenerate cross terms
//   Gamma_ij^{mumu} = sqrt(gamma_i gamma_j) (d_i . d_j^*) / (|d_i||d_j|),
// nonzero off the diagonal only for the pi-pi pair (1,2); the corresponding
// Omega_ij^{mumu} vanish at the transition frequency.
//
// Interatomic couplings fall into five groups by transition character:
//   g1: pi with sigma      g2: different sigma      g3: different pi
//   g4: equal sigma        g5: equal pi
// A GroupMask scales each group's (Gamma, Omega) jointly by p in [0,1] and
// can drop the single-point cross terms from the equations of motion;
// diagonal rates gamma_i are never masked.

#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

#include "fluordimer/atomic_model.hpp"

namespace fluordimer {

// Normalisation N of chi; makes d_1^T Im(chi) d_1^* -> gamma_pi for eta -> 0.
inline constexpr double chi_normalisation = 4.5;

// Dimensionless coupling tensor chi(r); throws std::invalid_argument at r = 0.
Eigen::Matrix3cd chi_tensor(const Eigen::Vector3d& r, double k = k0);

struct TpvcPair {
  std::complex<double> gamma;
  std::complex<double> omega;
};

// Two-point coupling constants between transition i of one atom and j of the
// other, separated by r.
TpvcPair tpvc_constants(int i, int j, const Eigen::Vector3d& r);

// Single-point (same-atom) dissipative cross coupling.
std::complex<double> spvc_constant(int i, int j);

enum class CouplingGroup { diagonal, spvc, g1, g2, g3, g4, g5 };

// Group of the coupling (i, j, mu, nu); mu == nu gives diagonal/spvc.
CouplingGroup classify_group(int i, int j, int mu, int nu);

struct GroupMask {
  std::array<double, 5> scale{1.0, 1.0, 1.0, 1.0, 1.0};  // p1..p5
  bool spvc_eom = true;  // keep single-point cross terms in the dynamics

  static GroupMask all_on() { return {}; }
  static GroupMask all_off() {
    return {{0.0, 0.0, 0.0, 0.0, 0.0}, false};
  }
  // Scale factor applied to a coupling of group g (1 for diagonal entries).
  double factor(CouplingGroup g) const;
};

// All coupling constants of the pair for a fixed geometry, with the mask
// already applied.  Indices: transitions i, j in 1..4, atoms mu, nu in 1..2.
class CouplingTable {
 public:
  std::complex<double> gamma(int i, int j, int mu, int nu) const;
  std::complex<double> omega(int i, int j, int mu, int nu) const;

  // max |c_ij^{munu} - conj(c_ji^{numu})| over all entries; zero for a
  // physical table (this is what makes the dynamics Hermiticity-preserving).
  double max_conjugate_asymmetry() const;

  friend CouplingTable build_coupling_table(const Geometry&, const GroupMask&);

 private:
  static int index(int i, int j, int mu, int nu);
  std::array<std::complex<double>, 64> gamma_{};
  std::array<std::complex<double>, 64> omega_{};
};

CouplingTable build_coupling_table(const Geometry& g,
                                   const GroupMask& mask = GroupMask::all_on());

}  // namespace fluordimer
