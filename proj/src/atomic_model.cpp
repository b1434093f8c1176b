#include "fluordimer/atomic_model.hpp"

#include <cmath>
#include <stdexcept>

namespace fluordimer {

namespace {

void check_transition(int i) {
  if (i < 1 || i > n_transitions)
    throw std::out_of_range("transition index must be in 1..4");
}

void check_atom(int atom) {
  if (atom < 1 || atom > n_atoms)
    throw std::out_of_range("atom index must be 1 or 2");
}

}  // namespace

int upper_level(int i) {
  check_transition(i);
  constexpr int up[] = {1, 2, 2, 1};
  return up[i - 1];
}

int lower_level(int i) {
  check_transition(i);
  constexpr int low[] = {3, 4, 3, 4};
  return low[i - 1];
}

bool is_pi(int i) {
  check_transition(i);
  return i <= 2;
}

double decay_rate(int i) { return is_pi(i) ? gamma_pi : gamma_sigma; }

Eigen::Vector3cd dipole_moment(int i) {
  check_transition(i);
  const double s3 = 1.0 / std::sqrt(3.0);
  const std::complex<double> I(0.0, 1.0);
  switch (i) {
    case 1: return {0.0, 0.0, -s3};
    case 2: return {0.0, 0.0, s3};
    case 3: return {s3, -I * s3, 0.0};
    default: return {s3, I * s3, 0.0};  // case 4 = conj(case 3)
  }
}

Eigen::Vector3d Geometry::position(int atom) const {
  check_atom(atom);
  if (atom == 1) return Eigen::Vector3d::Zero();
  return r12 * Eigen::Vector3d(std::sin(theta) * std::cos(phi),
                               std::sin(theta) * std::sin(phi),
                               std::cos(theta));
}

Eigen::Vector3d Geometry::separation() const { return position(2) - position(1); }

std::complex<double> rabi_frequency(int i, int atom, const Geometry& g,
                                    const DriveField& f) {
  check_transition(i);
  if (!is_pi(i)) return 0.0;  // z-polarised light does not drive sigma lines
  // Plane wave along +y; the pi amplitudes differ by the sign of d2 = -d1.
  const double sign = (i == 1) ? 1.0 : -1.0;
  const double phase = k0 * g.position(atom).y();
  return sign * f.rabi * std::polar(1.0, phase);
}

Eigen::Matrix4cd atomic_raising(int i) {
  Eigen::Matrix4cd s = Eigen::Matrix4cd::Zero();
  s(upper_level(i) - 1, lower_level(i) - 1) = 1.0;
  return s;
}

Eigen::MatrixXcd transition_raising(int i, int atom) {
  check_atom(atom);
  const Eigen::Matrix4cd id = Eigen::Matrix4cd::Identity();
  const Eigen::Matrix4cd s = atomic_raising(i);
  Eigen::MatrixXcd full(dim, dim);
  // Atom-1 index is the slow one: A kron B acts as A on atom 1, B on atom 2.
  const Eigen::Matrix4cd& a = (atom == 1) ? s : id;
  const Eigen::Matrix4cd& b = (atom == 1) ? id : s;
  for (int r = 0; r < n_levels; ++r)
    for (int c = 0; c < n_levels; ++c)
      full.block<4, 4>(4 * r, 4 * c) = a(r, c) * b;
  return full;
}

Eigen::MatrixXcd transition_lowering(int i, int atom) {
  return transition_raising(i, atom).adjoint();
}

}  // namespace fluordimer
