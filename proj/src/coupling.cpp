#include "fluordimer/coupling.hpp"

#include <cmath>
#include <stdexcept>

namespace fluordimer {

Eigen::Matrix3cd chi_tensor(const Eigen::Vector3d& r, double k) {
  const double dist = r.norm();
  if (dist <= 0.0)
    throw std::invalid_argument("chi_tensor: zero separation");
  const double eta = k * dist;
  const Eigen::Vector3d rhat = r / dist;
  const std::complex<double> I(0.0, 1.0);
  const std::complex<double> iso = 1.0 / eta + I / (eta * eta)
                                   - 1.0 / (eta * eta * eta);
  const std::complex<double> dir = 1.0 / eta + 3.0 * I / (eta * eta)
                                   - 3.0 / (eta * eta * eta);
  const std::complex<double> phase = std::polar(1.0, eta);
  Eigen::Matrix3cd chi =
      iso * Eigen::Matrix3cd::Identity()
      - dir * (rhat * rhat.transpose()).cast<std::complex<double>>();
  return chi_normalisation * phase * chi;
}

TpvcPair tpvc_constants(int i, int j, const Eigen::Vector3d& r) {
  const Eigen::Matrix3cd chi = chi_tensor(r);
  const Eigen::Vector3cd di = dipole_moment(i);
  const Eigen::Vector3cd dj = dipole_moment(j);
  // Gamma from the anti-Hermitian (radiative) part, Omega from the Hermitian
  // (dispersive) part; elementwise Re/Im of chi, not of the bilinear form.
  const std::complex<double> gamma =
      di.transpose() * chi.imag().cast<std::complex<double>>() * dj.conjugate();
  const std::complex<double> omega =
      di.transpose() * chi.real().cast<std::complex<double>>() * dj.conjugate();
  return {gamma, omega};
}

std::complex<double> spvc_constant(int i, int j) {
  const Eigen::Vector3cd di = dipole_moment(i);
  const Eigen::Vector3cd dj = dipole_moment(j);
  const std::complex<double> overlap = dj.dot(di);  // = d_i . d_j^*
  // With unit-normalised directions this is -1 for the pi pair and 0 for
  // every pi-sigma or sigma-sigma' pair.
  return std::sqrt(decay_rate(i) * decay_rate(j)) * overlap /
         (di.norm() * dj.norm());
}

CouplingGroup classify_group(int i, int j, int mu, int nu) {
  upper_level(i);  // validate indices
  upper_level(j);
  if (mu < 1 || mu > n_atoms || nu < 1 || nu > n_atoms)
    throw std::out_of_range("atom index must be 1 or 2");
  if (mu == nu) return (i == j) ? CouplingGroup::diagonal : CouplingGroup::spvc;
  if (is_pi(i) != is_pi(j)) return CouplingGroup::g1;
  if (i == j) return is_pi(i) ? CouplingGroup::g5 : CouplingGroup::g4;
  return is_pi(i) ? CouplingGroup::g3 : CouplingGroup::g2;
}

double GroupMask::factor(CouplingGroup g) const {
  switch (g) {
    case CouplingGroup::g1: return scale[0];
    case CouplingGroup::g2: return scale[1];
    case CouplingGroup::g3: return scale[2];
    case CouplingGroup::g4: return scale[3];
    case CouplingGroup::g5: return scale[4];
    default: return 1.0;
  }
}

int CouplingTable::index(int i, int j, int mu, int nu) {
  return ((i - 1) * 4 + (j - 1)) * 4 + (mu - 1) * 2 + (nu - 1);
}

std::complex<double> CouplingTable::gamma(int i, int j, int mu, int nu) const {
  classify_group(i, j, mu, nu);  // validate
  return gamma_[index(i, j, mu, nu)];
}

std::complex<double> CouplingTable::omega(int i, int j, int mu, int nu) const {
  classify_group(i, j, mu, nu);
  return omega_[index(i, j, mu, nu)];
}

double CouplingTable::max_conjugate_asymmetry() const {
  double worst = 0.0;
  for (int i = 1; i <= n_transitions; ++i)
    for (int j = 1; j <= n_transitions; ++j)
      for (int mu = 1; mu <= n_atoms; ++mu)
        for (int nu = 1; nu <= n_atoms; ++nu) {
          const int a = index(i, j, mu, nu);
          const int b = index(j, i, nu, mu);
          worst = std::max(worst, std::abs(gamma_[a] - std::conj(gamma_[b])));
          worst = std::max(worst, std::abs(omega_[a] - std::conj(omega_[b])));
        }
  return worst;
}

CouplingTable build_coupling_table(const Geometry& g, const GroupMask& mask) {
  CouplingTable table;
  const Eigen::Vector3d r = g.separation();
  for (int i = 1; i <= n_transitions; ++i)
    for (int j = 1; j <= n_transitions; ++j)
      for (int mu = 1; mu <= n_atoms; ++mu)
        for (int nu = 1; nu <= n_atoms; ++nu) {
          const int idx = CouplingTable::index(i, j, mu, nu);
          const CouplingGroup grp = classify_group(i, j, mu, nu);
          if (grp == CouplingGroup::diagonal) {
            table.gamma_[idx] = decay_rate(i);
            table.omega_[idx] = 0.0;
          } else if (grp == CouplingGroup::spvc) {
            table.gamma_[idx] = mask.spvc_eom ? spvc_constant(i, j) : 0.0;
            table.omega_[idx] = 0.0;  // vanishes at the transition frequency
          } else {
            // chi is even in r, so the same tensor serves both orderings.
            const TpvcPair c = tpvc_constants(i, j, r);
            const double p = mask.factor(grp);
            table.gamma_[idx] = p * c.gamma;
            table.omega_[idx] = p * c.omega;
          }
        }
  return table;
}

}  // namespace fluordimer
