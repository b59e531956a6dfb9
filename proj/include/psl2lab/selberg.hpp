#pragma once

// The Selberg zeta function of PSL2(Z),
//   Z(s) = prod_{gamma0} prod_{k >= 0} (1 - N(gamma0)^{-s-k}),   Re s > 1,
// truncated to primitive norms <= X, its logarithmic derivative as a
// Dirichlet series over all hyperbolic classes, and zero/pole data.

#include <complex>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "psl2lab/geodesics.hpp"

namespace psl2lab::selberg {

struct Truncated {
  std::complex<double> value;
  /// Heuristic size of the omitted terms (from Psi(x) ~ x); reported, not
  /// certified.
  double tail_estimate = 0.0;
};

/// Smallest K with N_min^{-Re s - K} < 1e-16.
int default_k_cutoff(const geodesics::FamilyList& families, std::complex<double> s);

/// log Z(s) truncated to families with N0 <= X and k <= K (default cutoff
/// when K is empty).
Truncated log_zeta(const geodesics::FamilyList& families, std::complex<double> s, double X,
                   std::optional<int> K = std::nullopt);
Truncated log_zeta(std::complex<double> s, double X, std::optional<int> K = std::nullopt);

/// Z'/Z(s) = sum_gamma L(gamma) N(gamma)^{-s} over classes with N <= X.
Truncated zeta_logderiv(const geodesics::FamilyList& families, std::complex<double> s, double X);
Truncated zeta_logderiv(std::complex<double> s, double X);

/// Precomputed Dirichlet series for repeated evaluation of Z'/Z on a
/// vertical line Re s = C.
class LogDerivSeries {
 public:
  LogDerivSeries(const geodesics::FamilyList& families, double X);
  std::complex<double> operator()(std::complex<double> s) const;
  /// Faster evaluation at C + ih for the C passed to prepare_line.
  void prepare_line(double C);
  std::complex<double> on_line(double h) const;
  std::size_t size() const { return log_norms_.size(); }

 private:
  std::vector<double> log_norms_;
  std::vector<double> weights_;  // multiplicity * L(gamma)
  std::vector<double> line_weights_;
};

/// A zero (order > 0) or pole (order < 0) of Z.
struct ZeroDatum {
  std::complex<double> s0;
  int order = 1;
  std::string label;
};

/// CSV rows `re,im,order[,label]`. Blank lines and lines starting with '#'
/// are skipped. The simple zero at s = 1 is prepended unless listed.
std::vector<ZeroDatum> load_zero_data(std::istream& in);

}  // namespace psl2lab::selberg
