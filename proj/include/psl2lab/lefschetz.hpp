#pragma once

// Both sides of the Lefschetz formula for PSL2(Z) and their bridge:
//
//   geometric   sum_gamma L(gamma) phi(a_gamma) = sum_gamma L(gamma) psi(N(gamma))
//   contour     (1/2 pi i) int_{Re s = C} Z'/Z(s) M psi(s) ds
//   residues    sum_{s0} res_{s0}(Z'/Z) M psi(s0)
//
// plus the prime geodesic counting function and its class-number form.

#include <iosfwd>
#include <vector>

#include "psl2lab/geodesics.hpp"
#include "psl2lab/mellin.hpp"
#include "psl2lab/selberg.hpp"

namespace psl2lab::lefschetz {

/// Sum over classes with N(gamma) <= X of multiplicity * L(gamma) psi(N).
double geometric_side(const mellin::TestFunction& psi, const geodesics::FamilyList& families, double X);
double geometric_side(const mellin::TestFunction& psi, double X);

struct ContourResult {
  double value = 0.0;
  double height = 0.0;  ///< truncation height used
};

/// Vertical-line quadrature of Z'/Z * M psi at Re s = C, truncated to |h| <= H,
/// with Z'/Z truncated at X. H <= 0: grow H by decades from 10 until the last
/// decade changes the value by less than 1e-3 of the running total.
ContourResult contour_side(const mellin::TestFunction& psi, double C, double H,
                           const geodesics::FamilyList& families, double X);
ContourResult contour_side(const mellin::TestFunction& psi, double C, double H, double X);

/// sum order(z) Re M psi(z.s0).
double residue_side(const mellin::TestFunction& psi, const std::vector<selberg::ZeroDatum>& zeros);

/// Psi(X) = sum over classes with N <= X (with multiplicity) of log N(gamma0).
double psi_counting(const geodesics::FamilyList& families, double X);
double psi_counting(double X);

/// The same count assembled from discriminant records alone: every valid
/// D < X with eps+(D)^2 <= X contributes sum_{n : eps+^{2n} <= X}
/// 2 * (2 h_wide R(O_D)) (= h_narrow * 2 log eps+).
double class_number_form(double X);

/// Discriminant records used by class_number_form, ascending in D.
std::vector<quadform::DiscriminantRecord> class_number_records(double X);

}  // namespace psl2lab::lefschetz
