#pragma once

// Physical parameter domain of the two-qubit feedback machine: validated
// parameters, thermal transition rates and the X-shaped density matrix.
//
// Units: epsilon is the energy unit and k_B = hbar = 1, so temperatures and
// rates are all given as plain numbers relative to epsilon.
//
// Basis ordering is {|00>, |01>, |10>, |11>} where the first label is the
// cold qubit and the second the hot qubit.

#include <array>
#include <complex>
#include <limits>
#include <string>

#include <Eigen/Dense>

#include "qtm/errors.hpp"

namespace qtm {

using Complex = std::complex<double>;
using Vector6 = Eigen::Matrix<Complex, 6, 1>;
using Matrix6 = Eigen::Matrix<Complex, 6, 6>;
using Matrix4 = Eigen::Matrix<Complex, 4, 4>;

/// Tolerance on populations and on the coherence bound |alpha| <= sqrt(p01 p10).
inline constexpr double kPositivityTol = 1e-9;

/// Components of the vectorized X-state (p00, p01, p10, p11, alpha, conj(alpha)).
enum Component : int { kP00 = 0, kP01 = 1, kP10 = 2, kP11 = 3, kAlpha = 4, kAlphaConj = 5 };

/// A nonnegative quantity that may be symbolically infinite (interaction U,
/// measurement strength lambda). Constructing from +inf yields the symbolic value.
class ExtendedReal {
 public:
  constexpr ExtendedReal(double value = 0.0)  // NOLINT(google-explicit-constructor)
      : value_(value), infinite_(value == std::numeric_limits<double>::infinity()) {}

  static constexpr ExtendedReal infinite() { return ExtendedReal(std::numeric_limits<double>::infinity()); }

  constexpr bool is_infinite() const noexcept { return infinite_; }

  /// Finite value; throws InvalidArgument when infinite.
  double value() const;

  /// The value as a double, +inf when infinite.
  constexpr double as_double() const noexcept {
    return infinite_ ? std::numeric_limits<double>::infinity() : value_;
  }

  bool operator==(const ExtendedReal& other) const noexcept {
    return infinite_ == other.infinite_ && (infinite_ || value_ == other.value_);
  }

 private:
  double value_;
  bool infinite_;
};

std::string to_string(const ExtendedReal& x);

enum class BathStatistics { Fermionic, Bosonic };

enum class FeedbackMode { Off, General, Ideal, UInfinite };

enum class Bath : int { Cold = 0, Hot = 1 };

/// All physical knobs of the machine.
///
/// The local master equation assumes weak qubit-qubit and system-bath coupling;
/// g is accepted for any nonnegative value and the regime g, rates << epsilon
/// is left to the caller.
struct SystemParams {
  double epsilon = 1.0;
  double g = 0.0;
  ExtendedReal u = 0.0;
  double gamma_c = 0.0;
  double gamma_h = 0.0;
  double t_c = 0.0;
  double t_h = 0.0;
  double gamma_det = 1.0;
  ExtendedReal lam = ExtendedReal::infinite();
  BathStatistics statistics = BathStatistics::Fermionic;
  FeedbackMode feedback = FeedbackMode::Off;

  /// Throws InvalidArgument on any violated constraint.
  void validate() const;
};

/// The eight transition rates: excitation[k][l] and relaxation[k][l] for
/// bath k (Cold, Hot) while the other qubit holds l excitations.
struct RateSet {
  std::array<std::array<double, 2>, 2> excitation{};
  std::array<std::array<double, 2>, 2> relaxation{};

  double up(Bath k, int l) const { return excitation[static_cast<int>(k)][l]; }
  double down(Bath k, int l) const { return relaxation[static_cast<int>(k)][l]; }

  double max_rate() const;
};

/// Thermal rates for both baths. T = 0 and U = Infinite resolve to their
/// analytic limits (no excitation, relaxation at the bare rate).
RateSet make_rates(const SystemParams& params);

/// Two-qubit density matrix with populations on the diagonal and a single
/// coherence alpha = <01|rho|10>.
struct XState {
  double p00 = 1.0;
  double p01 = 0.0;
  double p10 = 0.0;
  double p11 = 0.0;
  Complex alpha{};

  double trace() const { return p00 + p01 + p10 + p11; }

  /// Throws InvalidArgument when normalization or positivity fails beyond tol.
  void check(double tol = kPositivityTol) const;

  bool operator==(const XState&) const = default;
};

Vector6 vectorize(const XState& state);

/// Inverse of vectorize. Rejects vectors whose populations are not real or whose
/// sixth component is not the conjugate of the fifth within tol. Does not check
/// normalization: derivatives of states are valid inputs.
XState devectorize(const Vector6& v, double tol = kPositivityTol);

/// Dense 4x4 Hermitian matrix in the computational basis.
Matrix4 to_dense(const XState& state);

}  // namespace qtm
