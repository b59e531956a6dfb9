#pragma once

// Test functions on the norm axis, their Mellin transforms
//   M psi(s) = int_0^inf t^s psi(t) dt/t,
// Mellin inversion along vertical lines, and the bridge to functions on the
// negative Weyl chamber: phi(diag(t, 1/t)) = psi(t^{-2}), so that
// phi(a_gamma) = psi(N(gamma)).

#include <complex>
#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace psl2lab::mellin {

/// psi(t) = (t/T)^{-beta} (1 - T/t)^k on [T, inf), zero below T.
/// M psi(s) = T^s B(beta - s, k + 1) for Re s < beta.
/// k >= 2 gives the integrability needed for inversion with a shifted
/// contour; k = 0, 1 are accepted for elementary checks.
struct ReferenceTestFunction {
  double beta = 4.0;
  int k = 3;
  double T = 1.0;

  ReferenceTestFunction() = default;
  ReferenceTestFunction(double beta, int k, double T);

  double operator()(double t) const;
  std::complex<double> mellin(std::complex<double> s) const;
};

/// An arbitrary psi, described by its support edge, decay exponent mu
/// (psi(t) = O(t^{-mu})) and nominal smoothness.
struct GenericTestFunction {
  std::function<double(double)> evaluator;
  double support_lo = 1.0;
  double decay_mu = 2.0;
  int smoothness_j = 2;
};

class TestFunction {
 public:
  TestFunction(ReferenceTestFunction f);  // NOLINT(google-explicit-constructor)
  TestFunction(GenericTestFunction f);    // NOLINT(google-explicit-constructor)

  /// psi identically 0.
  static TestFunction zero();

  double operator()(double t) const;
  /// Mellin transform converges for Re s < decay_bound().
  double decay_bound() const;
  double support_lo() const;
  const ReferenceTestFunction* reference() const { return std::get_if<ReferenceTestFunction>(&impl_); }
  std::string describe() const;

 private:
  std::variant<ReferenceTestFunction, GenericTestFunction> impl_;
};

/// psi(t), t > 0.
double evaluate(const TestFunction& psi, double t);

/// B(a, k + 1) = k! / (a (a+1) ... (a+k)).
std::complex<double> beta_integer(std::complex<double> a, int k);

/// Closed form for reference functions, quadrature otherwise.
std::complex<double> mellin(const TestFunction& psi, std::complex<double> s);

/// Adaptive quadrature in u = log t, regardless of the kind of psi.
std::complex<double> mellin_quadrature(const TestFunction& psi, std::complex<double> s,
                                       double abs_tol = 1e-10);

struct Inversion {
  double value = 0.0;
  double height = 0.0;  ///< truncation height actually used
};

/// (1/2pi) int_{-H}^{H} M psi(C + ih) t^{-C-ih} dh. H <= 0 picks the height
/// adaptively: doubling segments are added until one contributes (in L1) less
/// than 1e-9.
Inversion inverse_mellin(const TestFunction& psi, double C, double H, double t);

/// phi(diag(t, 1/t)) = psi(t^{-2}) for 0 < t < 1, and 0 on the closed
/// positive chamber t >= 1.
double chamber_function(const TestFunction& psi, double t);

struct Membership {
  bool member = true;
  /// N_m = sup_a |a^{-mu} (t d/dt)^m phi(a)|, m = 0..j (grid estimates).
  std::vector<double> seminorms;
  std::vector<std::string> diagnostics;
};

/// Estimates membership of phi in C^{mu,j}(A^-) with mu = mu_coeff * rho,
/// from finite differences on a geometric grid of 10^4 points per decade over
/// [T, T 10^6] in the norm coordinate. An estimate, not a certified bound.
Membership class_membership(const TestFunction& psi, double mu_coeff, int j);

}  // namespace psl2lab::mellin
