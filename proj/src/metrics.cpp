#include "qtm/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "qtm/generators.hpp"

namespace qtm {

namespace {

using Matrix2 = Eigen::Matrix<Complex, 2, 2>;

constexpr double kDensityTol = 1e-9;

std::array<Matrix2, 3> pauli() {
  Matrix2 x, y, z;
  x << 0.0, 1.0, 1.0, 0.0;
  y << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
  z << 1.0, 0.0, 0.0, -1.0;
  return {x, y, z};
}

Matrix4 kron(const Matrix2& a, const Matrix2& b) {
  Matrix4 out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

void check_density(const Matrix4& rho) {
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kDensityTol) {
    throw InvalidArgument("density matrix is not Hermitian");
  }
  if (std::abs(rho.trace() - 1.0) > kDensityTol) throw InvalidArgument("density matrix trace differs from 1");
  Eigen::SelfAdjointEigenSolver<Matrix4> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kDensityTol) {
    throw InvalidArgument("density matrix is not positive semidefinite");
  }
}

}  // namespace

double concurrence_x(const XState& s) {
  const double mixed = std::sqrt(std::max(s.p00 * s.p11, 0.0));
  return std::max(2.0 * (std::abs(s.alpha) - mixed), 0.0);
}

double concurrence_wootters(const Matrix4& rho_in) {
  check_density(rho_in);
  const Matrix4 rho = 0.5 * (rho_in + rho_in.adjoint());
  const auto p = pauli();
  const Matrix4 yy = kron(p[1], p[1]);
  const Matrix4 flipped = yy * rho.conjugate() * yy;

  // sqrt(rho) from its spectrum with tiny negative eigenvalues clipped.
  Eigen::SelfAdjointEigenSolver<Matrix4> es(rho);
  const Eigen::Vector4d root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix4 sqrt_rho = es.eigenvectors() * root.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();

  Matrix4 r = sqrt_rho * flipped * sqrt_rho;
  r = 0.5 * (r + r.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4> rs(r, Eigen::EigenvaluesOnly);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::sqrt(std::max(rs.eigenvalues()(i), 0.0));
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

double concurrence_ideal_closed_form(const RateSet& rates, double g) {
  const double c = rates.down(Bath::Cold, 0);
  const double h = rates.up(Bath::Hot, 0);
  const double denom = 4.0 * g * g * (c + 2.0 * h) + c * c * h;
  if (!(denom > 0.0)) throw InvalidArgument("ideal concurrence undefined: denominator vanishes");
  return 4.0 * g * c * h / denom;
}

double chsh_x(const XState& s) {
  const double a2 = std::norm(s.alpha);
  const double delta = s.p01 + s.p10;
  const double z2 = (2.0 * delta - 1.0) * (2.0 * delta - 1.0);
  return 2.0 * std::sqrt(std::max(8.0 * a2 + z2 - std::min(4.0 * a2, z2), 0.0));
}

double chsh_horodecki(const Matrix4& rho) {
  check_density(rho);
  const auto p = pauli();
  Eigen::Matrix3d t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t(i, j) = (rho * kron(p[i], p[j])).trace().real();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t, Eigen::EigenvaluesOnly);
  // Ascending order: the two largest are the last two.
  const double m = es.eigenvalues()(1) + es.eigenvalues()(2);
  return 2.0 * std::sqrt(std::max(m, 0.0));
}

double singlet_fraction_x(const XState& s) {
  const double a = std::abs(s.alpha);
  const double delta = s.p01 + s.p10;
  const double odd = a + 0.5 * delta;
  if (1.0 + 2.0 * a - 2.0 * delta <= 0.0) return odd;
  return std::max(odd, 0.5 * (1.0 - delta));
}

double teleportation_fidelity(const XState& s) { return (1.0 + 2.0 * singlet_fraction_x(s)) / 3.0; }

HeatCurrents heat_current_general(const XState& s, const RateSet& rates, const SystemParams& params) {
  params.validate();
  const double eps = params.epsilon;
  double q = eps * rates.down(Bath::Cold, 0) * s.p10 - eps * rates.up(Bath::Cold, 0) * s.p00;
  if (!params.u.is_infinite()) {
    const double e1 = eps + params.u.value();
    q += e1 * rates.down(Bath::Cold, 1) * s.p11 - e1 * rates.up(Bath::Cold, 1) * s.p01;
  }

  const Generator gen = build_generator(params);
  const Vector6 v = vectorize(s);
  const double scale = std::max(gen.matrix.cwiseAbs().maxCoeff(), 1e-300);
  const bool balanced = (gen.matrix * v).cwiseAbs().maxCoeff() <= 1e-8 * scale;
  return {q, -q, balanced};
}

MetricsRecord entanglement_metrics(const XState& s) {
  MetricsRecord r;
  r.concurrence = concurrence_x(s);
  r.chsh = chsh_x(s);
  r.singlet_fraction = singlet_fraction_x(s);
  r.fidelity = (1.0 + 2.0 * r.singlet_fraction) / 3.0;
  return r;
}

MetricsRecord compute_metrics(const XState& s, const SystemParams& params) {
  MetricsRecord r = entanglement_metrics(s);
  const HeatCurrents h = heat_current_general(s, make_rates(params), params);
  r.q_dot_c = h.q_dot_c;
  r.q_dot_h = h.q_dot_h;
  r.heat_balanced = h.balanced;
  return r;
}

double trace_distance(const XState& a, const XState& b) {
  // The difference is block diagonal: two 1x1 blocks and one 2x2 Hermitian block.
  const double d00 = a.p00 - b.p00;
  const double d11 = a.p11 - b.p11;
  const double x = a.p01 - b.p01;
  const double y = a.p10 - b.p10;
  const double c = std::abs(a.alpha - b.alpha);
  const double mean = 0.5 * (x + y);
  const double radius = std::hypot(0.5 * (x - y), c);
  return 0.5 * (std::abs(d00) + std::abs(d11) + std::abs(mean + radius) + std::abs(mean - radius));
}

}  // namespace qtm
