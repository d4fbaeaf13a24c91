#pragma once

// Dense 4x4 reference dynamics built directly from the Hamiltonian and the
// jump operators, independent of the 6x6 generator assembly.

#include <cmath>

#include "qtm/model.hpp"

namespace oracle {

using qtm::Complex;
using qtm::Matrix4;

inline Matrix4 ket_bra(int i, int j) {
  Matrix4 m = Matrix4::Zero();
  m(i, j) = 1.0;
  return m;
}

inline Matrix4 hamiltonian(const qtm::SystemParams& p) {
  const double u = p.u.value();
  Matrix4 h = Matrix4::Zero();
  h(1, 1) = p.epsilon;
  h(2, 2) = p.epsilon;
  h(3, 3) = 2.0 * p.epsilon + u;
  h(1, 2) = p.g;
  h(2, 1) = p.g;
  return h;
}

inline Matrix4 dissipator(const Matrix4& j, const Matrix4& rho) {
  const Matrix4 jd = j.adjoint();
  return j * rho * jd - 0.5 * (jd * j * rho + rho * jd * j);
}

// Jump operators lowering the cold qubit (second label l = state of the hot
// qubit) and the hot qubit.
inline Matrix4 cold_jump(int l) { return l == 0 ? ket_bra(0, 2) : ket_bra(1, 3); }
inline Matrix4 hot_jump(int l) { return l == 0 ? ket_bra(0, 1) : ket_bra(2, 3); }

inline Matrix4 cold_part(const qtm::RateSet& r, const Matrix4& rho) {
  Matrix4 out = Matrix4::Zero();
  for (int l = 0; l < 2; ++l) {
    out += r.down(qtm::Bath::Cold, l) * dissipator(cold_jump(l), rho);
    out += r.up(qtm::Bath::Cold, l) * dissipator(cold_jump(l).adjoint(), rho);
  }
  return out;
}

inline Matrix4 hot_part(const qtm::RateSet& r, const Matrix4& rho) {
  Matrix4 out = Matrix4::Zero();
  for (int l = 0; l < 2; ++l) {
    out += r.down(qtm::Bath::Hot, l) * dissipator(hot_jump(l), rho);
    out += r.up(qtm::Bath::Hot, l) * dissipator(hot_jump(l).adjoint(), rho);
  }
  return out;
}

inline Matrix4 coherent(const qtm::SystemParams& p, const Matrix4& rho) {
  const Matrix4 h = hamiltonian(p);
  return Complex(0.0, -1.0) * (h * rho - rho * h);
}

// Even sector {00, 11}, odd sector {01, 10}.
inline Matrix4 even_projector() { return ket_bra(0, 0) + ket_bra(3, 3); }
inline Matrix4 odd_projector() { return ket_bra(1, 1) + ket_bra(2, 2); }

// The hot bath acts on the even sector with probability 1 - eta and on the odd
// sector with probability eta.
inline Matrix4 feedback_rhs(const qtm::SystemParams& p, double eta, const Matrix4& rho) {
  const qtm::RateSet r = qtm::make_rates(p);
  const Matrix4 pe = even_projector(), po = odd_projector();
  const Matrix4 weighted = (1.0 - eta) * pe * rho * pe + eta * po * rho * po;
  return coherent(p, rho) + cold_part(r, rho) + hot_part(r, weighted);
}

inline Matrix4 free_rhs(const qtm::SystemParams& p, const Matrix4& rho) {
  const qtm::RateSet r = qtm::make_rates(p);
  return coherent(p, rho) + cold_part(r, rho) + hot_part(r, rho);
}

// Matrix4 of an X-shaped derivative from a 6-vector.
inline Matrix4 dense_from_vector(const qtm::Vector6& v) {
  Matrix4 m = Matrix4::Zero();
  for (int i = 0; i < 4; ++i) m(i, i) = v(i);
  m(1, 2) = v(qtm::kAlpha);
  m(2, 1) = v(qtm::kAlphaConj);
  return m;
}

// Series for erf, used to cross-check the mistake probability.
inline double erf_series(double x) {
  double term = x, sum = x;
  for (int n = 1; n < 200; ++n) {
    term *= -x * x / n;
    sum += term / (2 * n + 1);
  }
  return 2.0 / std::sqrt(M_PI) * sum;
}

}  // namespace oracle
