#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

#include "fluordimer/coupling.hpp"

using namespace fluordimer;
using std::numbers::pi;
using cplx = std::complex<double>;

namespace {

// Scalar radial profiles of chi, written out independently of the library.
cplx chi_iso(double eta) {
  const cplx I(0, 1);
  return chi_normalisation * std::polar(1.0, eta) *
         (1.0 / eta + I / (eta * eta) - 1.0 / (eta * eta * eta));
}
cplx chi_dir(double eta) {
  const cplx I(0, 1);
  return chi_normalisation * std::polar(1.0, eta) *
         (1.0 / eta + 3.0 * I / (eta * eta) - 3.0 / (eta * eta * eta));
}

Geometry small_geometry() {
  Geometry g;  // r12 = 0.04, theta = pi/2, phi = pi/4: the small-distance case
  return g;
}

}  // namespace

TEST_SUITE("coupling") {

TEST_CASE("chi tensor structure") {
  const Eigen::Vector3d r(0.21, -0.34, 0.12);
  const Eigen::Matrix3cd chi = chi_tensor(r);

  // Complex symmetric (not Hermitian) and even in r.
  CHECK((chi - chi.transpose()).norm() == doctest::Approx(0.0));
  CHECK((chi - chi_tensor(-r)).norm() == doctest::Approx(0.0));

  // Longitudinal/transverse scalar profiles along a coordinate axis.
  const double d = 0.37;
  const Eigen::Matrix3cd axial = chi_tensor(Eigen::Vector3d(0, 0, d));
  const double eta = k0 * d;
  CHECK(std::abs(axial(0, 0) - chi_iso(eta)) == doctest::Approx(0.0));
  CHECK(std::abs(axial(1, 1) - chi_iso(eta)) == doctest::Approx(0.0));
  CHECK(std::abs(axial(2, 2) - (chi_iso(eta) - chi_dir(eta))) ==
        doctest::Approx(0.0));
  CHECK(std::abs(axial(0, 1)) == doctest::Approx(0.0));
  CHECK(std::abs(axial(0, 2)) == doctest::Approx(0.0));

  // Depends on r and k only through eta and the direction.
  CHECK((chi_tensor(r, k0) - chi_tensor(2.0 * r, k0 / 2.0)).norm() ==
        doctest::Approx(0.0));

  CHECK_THROWS_AS(chi_tensor(Eigen::Vector3d::Zero()), std::invalid_argument);
}

TEST_CASE("contact normalisation") {
  // N is fixed so that the pi-pi self term reproduces gamma_pi as eta -> 0.
  const TpvcPair c = tpvc_constants(1, 1, Eigen::Vector3d(0, 0, 1e-4));
  CHECK(c.gamma.real() == doctest::Approx(gamma_pi).epsilon(1e-5));
  CHECK(std::abs(c.gamma.imag()) < 1e-12);
}

TEST_CASE("single-point cross couplings") {
  for (int i = 1; i <= n_transitions; ++i)
    for (int j = 1; j <= n_transitions; ++j) {
      const cplx c = spvc_constant(i, j);
      if (i == j) {
        CHECK(c.real() == doctest::Approx(decay_rate(i)));
      } else if (is_pi(i) && is_pi(j)) {
        // Antiparallel pi dipoles: -sqrt(gamma_1 gamma_2) = -gamma_pi.
        CHECK(c.real() == doctest::Approx(-gamma_pi));
      } else {
        CHECK(std::abs(c) == doctest::Approx(0.0));
      }
      CHECK(std::abs(c.imag()) < 1e-15);
    }
}

TEST_CASE("group classification") {
  CHECK(classify_group(1, 1, 1, 1) == CouplingGroup::diagonal);
  CHECK(classify_group(3, 3, 2, 2) == CouplingGroup::diagonal);
  CHECK(classify_group(1, 2, 1, 1) == CouplingGroup::spvc);
  CHECK(classify_group(3, 4, 2, 2) == CouplingGroup::spvc);
  CHECK(classify_group(1, 3, 1, 1) == CouplingGroup::spvc);

  CHECK(classify_group(1, 3, 1, 2) == CouplingGroup::g1);
  CHECK(classify_group(4, 2, 2, 1) == CouplingGroup::g1);
  CHECK(classify_group(3, 4, 1, 2) == CouplingGroup::g2);
  CHECK(classify_group(4, 3, 2, 1) == CouplingGroup::g2);
  CHECK(classify_group(1, 2, 1, 2) == CouplingGroup::g3);
  CHECK(classify_group(2, 1, 2, 1) == CouplingGroup::g3);
  CHECK(classify_group(3, 3, 1, 2) == CouplingGroup::g4);
  CHECK(classify_group(4, 4, 2, 1) == CouplingGroup::g4);
  CHECK(classify_group(1, 1, 1, 2) == CouplingGroup::g5);
  CHECK(classify_group(2, 2, 2, 1) == CouplingGroup::g5);

  CHECK_THROWS_AS(classify_group(0, 1, 1, 2), std::out_of_range);
  CHECK_THROWS_AS(classify_group(1, 1, 1, 3), std::out_of_range);
}

TEST_CASE("small-distance coupling constants") {
  // r12 = 0.04, theta = pi/2, phi = pi/4: |Omega(g2)| = 286.5, |Omega(g3)| =
  // |Omega(g5)| = 91.6 and |Omega(g4)| = 103.2 (in units of gamma_pi).
  const CouplingTable t = build_coupling_table(small_geometry());

  const cplx om_g2 = t.omega(3, 4, 1, 2);
  const cplx om_g3 = t.omega(1, 2, 1, 2);
  const cplx om_g4 = t.omega(3, 3, 1, 2);
  const cplx om_g5 = t.omega(1, 1, 1, 2);

  CHECK(std::abs(om_g2) == doctest::Approx(286.5).epsilon(0.005));
  CHECK(std::abs(om_g3) == doctest::Approx(91.6).epsilon(0.005));
  CHECK(std::abs(om_g4) == doctest::Approx(103.2).epsilon(0.005));
  CHECK(std::abs(om_g5) == doctest::Approx(91.6).epsilon(0.005));

  // d2 = -d1 makes the two pi groups equal and opposite; for the axis in the
  // xy plane at phi = pi/4 the sigma-sigma' coupling is purely imaginary.
  CHECK(std::abs(om_g3 + om_g5) < 1e-12 * std::abs(om_g3));
  CHECK(std::abs(om_g2.real()) < 1e-9 * std::abs(om_g2));
  CHECK(om_g3.real() > 0.0);
  CHECK(om_g5.real() < 0.0);
  CHECK(om_g4.real() > 0.0);

  // Equal-sigma couplings coincide for both polarisations.
  CHECK(std::abs(t.omega(4, 4, 1, 2) - om_g4) < 1e-12 * std::abs(om_g4));

  // The pi-sigma group is extinguished for an axis perpendicular to z.
  for (int i : {1, 2})
    for (int j : {3, 4}) {
      CHECK(std::abs(t.gamma(i, j, 1, 2)) < 1e-12);
      CHECK(std::abs(t.omega(i, j, 1, 2)) < 1e-12);
    }
}

TEST_CASE("pi-sigma extinction holds across azimuth") {
  Geometry g;
  g.r12 = 0.08;
  g.theta = pi / 2;
  for (double phi : {0.0, 0.3, 1.1, 2.0, 3.0}) {
    g.phi = phi;
    const Eigen::Vector3d r = g.separation();
    for (int i : {1, 2})
      for (int j : {3, 4}) {
        const TpvcPair c = tpvc_constants(i, j, r);
        CHECK(std::abs(c.gamma) < 1e-12);
        CHECK(std::abs(c.omega) < 1e-12);
      }
  }
  // A tilted axis does couple the two polarisations.
  g.theta = pi / 3;
  const TpvcPair tilted = tpvc_constants(1, 3, g.separation());
  CHECK(std::abs(tilted.omega) > 1.0);
}

TEST_CASE("bilinear forms match the tensor") {
  Geometry g;
  g.r12 = 0.11;
  g.theta = 1.0;
  g.phi = 2.2;
  const Eigen::Vector3d r = g.separation();
  const Eigen::Matrix3cd chi = chi_tensor(r);
  for (int i = 1; i <= n_transitions; ++i)
    for (int j = 1; j <= n_transitions; ++j) {
      const TpvcPair c = tpvc_constants(i, j, r);
      const Eigen::Vector3cd di = dipole_moment(i);
      const Eigen::Vector3cd dj = dipole_moment(j);
      cplx gamma = 0.0, omega = 0.0;
      for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) {
          gamma += di(p) * chi(p, q).imag() * std::conj(dj(q));
          omega += di(p) * chi(p, q).real() * std::conj(dj(q));
        }
      CHECK(std::abs(c.gamma - gamma) < 1e-12 * (1.0 + std::abs(gamma)));
      CHECK(std::abs(c.omega - omega) < 1e-12 * (1.0 + std::abs(omega)));
    }
}

TEST_CASE("near-field scaling of the dispersive coupling") {
  // Omega ~ r^-3 in the near zone: log-log slope over r in [0.001, 0.01].
  const Eigen::Vector3d rhat =
      Eigen::Vector3d(1.0, 1.0, 0.0).normalized();
  const double r_lo = 0.001, r_hi = 0.01;
  const double w_lo = std::abs(tpvc_constants(3, 4, r_lo * rhat).omega);
  const double w_hi = std::abs(tpvc_constants(3, 4, r_hi * rhat).omega);
  const double slope = (std::log(w_hi) - std::log(w_lo)) /
                       (std::log(r_hi) - std::log(r_lo));
  CHECK(slope == doctest::Approx(-3.0).epsilon(0.017));
}

TEST_CASE("far-field couplings are weak") {
  Geometry g = small_geometry();
  g.r12 = 10.0;
  const CouplingTable t = build_coupling_table(g);
  for (int i = 1; i <= n_transitions; ++i)
    for (int j = 1; j <= n_transitions; ++j) {
      CHECK(std::abs(t.gamma(i, j, 1, 2)) < 0.1);
      CHECK(std::abs(t.omega(i, j, 1, 2)) < 0.1);
    }
}

TEST_CASE("table symmetry and masking") {
  Geometry g;
  g.r12 = 0.06;
  g.theta = 0.9;
  g.phi = 2.5;

  const CouplingTable full = build_coupling_table(g);
  CHECK(full.max_conjugate_asymmetry() < 1e-12);

  // Diagonal rates are never masked and spvc has no dispersive part.
  for (int i = 1; i <= n_transitions; ++i)
    for (int mu = 1; mu <= n_atoms; ++mu) {
      CHECK(std::abs(full.gamma(i, i, mu, mu) - decay_rate(i)) < 1e-15);
      CHECK(std::abs(full.omega(i, i, mu, mu)) == 0.0);
      for (int j = 1; j <= n_transitions; ++j)
        CHECK(std::abs(full.omega(i, j, mu, mu)) == 0.0);
    }
  CHECK(std::abs(full.gamma(1, 2, 1, 1) + gamma_pi) < 1e-15);

  // Scaling one group multiplies exactly its entries.
  GroupMask mask;
  mask.scale[3] = 0.3;  // p4
  const CouplingTable part = build_coupling_table(g, mask);
  CHECK(part.max_conjugate_asymmetry() < 1e-12);
  for (int i = 1; i <= n_transitions; ++i)
    for (int j = 1; j <= n_transitions; ++j)
      for (int mu = 1; mu <= n_atoms; ++mu)
        for (int nu = 1; nu <= n_atoms; ++nu) {
          const double p =
              classify_group(i, j, mu, nu) == CouplingGroup::g4 ? 0.3 : 1.0;
          CHECK(std::abs(part.gamma(i, j, mu, nu) -
                         p * full.gamma(i, j, mu, nu)) < 1e-15);
          CHECK(std::abs(part.omega(i, j, mu, nu) -
                         p * full.omega(i, j, mu, nu)) < 1e-15);
        }

  // all_off keeps only the diagonal rates.
  const CouplingTable off = build_coupling_table(g, GroupMask::all_off());
  for (int i = 1; i <= n_transitions; ++i)
    for (int j = 1; j <= n_transitions; ++j)
      for (int mu = 1; mu <= n_atoms; ++mu)
        for (int nu = 1; nu <= n_atoms; ++nu) {
          const bool diag = (i == j && mu == nu);
          CHECK(std::abs(off.gamma(i, j, mu, nu) -
                         (diag ? decay_rate(i) : 0.0)) == 0.0);
          CHECK(std::abs(off.omega(i, j, mu, nu)) == 0.0);
        }

  // spvc_eom only strips the same-atom cross rates.
  GroupMask no_spvc;
  no_spvc.spvc_eom = false;
  const CouplingTable stripped = build_coupling_table(g, no_spvc);
  CHECK(std::abs(stripped.gamma(1, 2, 1, 1)) == 0.0);
  CHECK(std::abs(stripped.gamma(2, 1, 2, 2)) == 0.0);
  CHECK(std::abs(stripped.gamma(1, 1, 1, 1) - gamma_pi) < 1e-15);
  CHECK(std::abs(stripped.gamma(1, 2, 1, 2) - full.gamma(1, 2, 1, 2)) == 0.0);
}

}  // TEST_SUITE
