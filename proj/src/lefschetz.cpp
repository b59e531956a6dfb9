#include "psl2lab/lefschetz.hpp"

#include <cmath>
#include <numbers>

#include "psl2lab/error.hpp"
#include "psl2lab/quadrature.hpp"

namespace psl2lab::lefschetz {

using cplx = std::complex<double>;

namespace {

void require_norm_bound(double X) {
  if (!(X > 1.0)) throw precondition_error("norm bound X must exceed 1");
}

}  // namespace

double geometric_side(const mellin::TestFunction& psi, const geodesics::FamilyList& families, double X) {
  require_norm_bound(X);
  double sum = 0.0;
  for (const auto& c : geodesics::enumerate_classes(families, X)) {
    const double value = psi(std::exp(c.log_norm()));
    if (value == 0.0) continue;
    sum += c.multiplicity() * geodesics::local_lefschetz(c) * value;
  }
  return sum;
}

double geometric_side(const mellin::TestFunction& psi, double X) {
  require_norm_bound(X);
  return geometric_side(psi, geodesics::enumerate_primitive_families(X), X);
}

ContourResult contour_side(const mellin::TestFunction& psi, double C, double H,
                           const geodesics::FamilyList& families, double X) {
  require_norm_bound(X);
  if (!(C > 1.0 && C < psi.decay_bound())) {
    throw precondition_error("contour line needs 1 < C < decay exponent of psi");
  }
  selberg::LogDerivSeries series(families, X);
  series.prepare_line(C);
  const double max_log = std::log(X);
  // Re(Z'/Z M psi) is even in h; integrate over h >= 0 and divide by pi.
  const auto integrand = [&](double h) { return (series.on_line(h) * mellin::mellin(psi, cplx(C, h))).real(); };
  const auto segment = [&](double lo, double hi) {
    // resolve the fastest oscillation, period 2 pi / log X
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) * std::max(1.0, max_log) / 4.0));
    return quadrature::integrate<double>(integrand, lo, hi, 1e-10, panels).value / std::numbers::pi;
  };

  if (H > 0.0) return {segment(0.0, H), H};

  double height = 10.0;
  double total = segment(0.0, height);
  for (int decades = 0; decades < 5; ++decades) {
    const double next = 10.0 * height;
    const double extra = segment(height, next);
    total += extra;
    height = next;
    if (std::abs(extra) <= 1e-3 * std::abs(total)) break;
  }
  return {total, height};
}

ContourResult contour_side(const mellin::TestFunction& psi, double C, double H, double X) {
  require_norm_bound(X);
  return contour_side(psi, C, H, geodesics::enumerate_primitive_families(X), X);
}

double residue_side(const mellin::TestFunction& psi, const std::vector<selberg::ZeroDatum>& zeros) {
  double sum = 0.0;
  for (const auto& z : zeros) {
    if (!(z.s0.real() < psi.decay_bound())) {
      throw precondition_error("M psi undefined at zero datum '" + z.label + "' (Re s0 >= decay exponent)");
    }
    sum += z.order * mellin::mellin(psi, z.s0).real();
  }
  return sum;
}

double psi_counting(const geodesics::FamilyList& families, double X) {
  require_norm_bound(X);
  double sum = 0.0;
  for (const auto& c : geodesics::enumerate_classes(families, X)) sum += c.multiplicity() * c.family->log_norm0;
  return sum;
}

double psi_counting(double X) {
  require_norm_bound(X);
  return psi_counting(geodesics::enumerate_primitive_families(X), X);
}

std::vector<quadform::DiscriminantRecord> class_number_records(double X) {
  require_norm_bound(X);
  const double max_log = 0.5 * std::log(X);
  std::vector<quadform::DiscriminantRecord> out;
  // eps+(D) > sqrt(D), so only D < X can qualify.
  const auto upper = static_cast<std::int64_t>(std::ceil(X));
  for (std::int64_t D = 5; D < upper; ++D) {
    if (!quadform::is_valid_discriminant(D)) continue;
    auto pell = quadform::pell4_fundamental_bounded(D, max_log);
    if (!pell) continue;
    out.push_back(quadform::make_record(D, quadform::narrow_class_number(D), *pell));
  }
  return out;
}

double class_number_form(double X) {
  require_norm_bound(X);
  const double log_x = std::log(X);
  double sum = 0.0;
  for (const auto& rec : class_number_records(X)) {
    const double log_norm0 = 2.0 * rec.log_eps_plus;
    if (log_norm0 > log_x) continue;
    const double per_power = 2.0 * (2.0 * rec.h_wide * rec.log_eps_fund);
    for (int n = 1; n * log_norm0 <= log_x; ++n) sum += per_power;
  }
  return sum;
}

}  // namespace psl2lab::lefschetz
