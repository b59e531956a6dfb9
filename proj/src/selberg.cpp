#include "psl2lab/selberg.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <sstream>

#include "psl2lab/error.hpp"

namespace psl2lab::selberg {

using cplx = std::complex<double>;

namespace {

void require_half_plane(cplx s) {
  if (!(s.real() > 1.0)) throw precondition_error("the Euler product and Dirichlet series need Re(s) > 1");
}

// log(1 - z) for |z| < 1 without cancellation in the real part.
cplx log1m(cplx z) {
  const double re = -z.real();
  const double im = -z.imag();
  const double log_abs = 0.5 * std::log1p(2.0 * re + re * re + im * im);
  return {log_abs, std::atan2(im, 1.0 + re)};
}

double dirichlet_tail(double sigma, double X) {
  // sum_{N > X} L(gamma) N^{-sigma} ~ int_X^inf x^{-sigma} dx
  return std::pow(X, 1.0 - sigma) / (sigma - 1.0);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

int default_k_cutoff(const geodesics::FamilyList& families, cplx s) {
  if (families.empty()) return 0;
  double min_log = families.front()->log_norm0;
  for (const auto& f : families) min_log = std::min(min_log, f->log_norm0);
  // N_min^{-(sigma + K)} < 1e-16
  const double needed = 16.0 * std::log(10.0) / min_log - s.real();
  return std::max(0, static_cast<int>(std::floor(needed)) + 1);
}

Truncated log_zeta(const geodesics::FamilyList& families, cplx s, double X, std::optional<int> K) {
  require_half_plane(s);
  if (!(X > 1.0)) throw precondition_error("norm bound X must exceed 1");
  if (K && *K < 0) throw precondition_error("k cutoff must be >= 0");
  const double log_x = std::log(X);
  const int k_max = K ? *K : default_k_cutoff(families, s);

  Truncated out;
  double min_log = 0.0;
  double total_count = 0.0;
  for (const auto& fam : families) {  // ascending D
    if (fam->log_norm0 > log_x) continue;
    cplx partial = 0.0;
    for (int k = 0; k <= k_max; ++k) {
      const cplx z = std::exp(-(s + static_cast<double>(k)) * fam->log_norm0);
      partial += log1m(z);
    }
    out.value += static_cast<double>(fam->count) * partial;
    total_count += fam->count;
    if (min_log == 0.0 || fam->log_norm0 < min_log) min_log = fam->log_norm0;
  }
  // Omitted families: |log(1 - N^{-s})| ~ N^{-sigma}, density of primitive
  // norms ~ dx / log x.
  const double sigma = s.real();
  out.tail_estimate = std::pow(X, 1.0 - sigma) / ((sigma - 1.0) * std::max(1.0, log_x));
  if (min_log > 0.0) {
    const double first_omitted = std::exp(-(sigma + k_max + 1) * min_log);
    out.tail_estimate += total_count * first_omitted / (1.0 - std::exp(-min_log));
  }
  return out;
}

Truncated log_zeta(cplx s, double X, std::optional<int> K) {
  require_half_plane(s);
  return log_zeta(geodesics::enumerate_primitive_families(X), s, X, K);
}

LogDerivSeries::LogDerivSeries(const geodesics::FamilyList& families, double X) {
  for (const auto& c : geodesics::enumerate_classes(families, X)) {
    log_norms_.push_back(c.log_norm());
    weights_.push_back(c.multiplicity() * geodesics::local_lefschetz(c));
  }
}

cplx LogDerivSeries::operator()(cplx s) const {
  cplx sum = 0.0;
  for (std::size_t i = 0; i < log_norms_.size(); ++i) sum += weights_[i] * std::exp(-s * log_norms_[i]);
  return sum;
}

void LogDerivSeries::prepare_line(double C) {
  line_weights_.resize(weights_.size());
  for (std::size_t i = 0; i < weights_.size(); ++i) line_weights_[i] = weights_[i] * std::exp(-C * log_norms_[i]);
}

cplx LogDerivSeries::on_line(double h) const {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < log_norms_.size(); ++i) {
    const double phase = h * log_norms_[i];
    re += line_weights_[i] * std::cos(phase);
    im -= line_weights_[i] * std::sin(phase);
  }
  return {re, im};
}

Truncated zeta_logderiv(const geodesics::FamilyList& families, cplx s, double X) {
  require_half_plane(s);
  if (!(X > 1.0)) throw precondition_error("norm bound X must exceed 1");
  return {LogDerivSeries(families, X)(s), dirichlet_tail(s.real(), X)};
}

Truncated zeta_logderiv(cplx s, double X) {
  require_half_plane(s);
  return zeta_logderiv(geodesics::enumerate_primitive_families(X), s, X);
}

std::vector<ZeroDatum> load_zero_data(std::istream& in) {
  std::vector<ZeroDatum> data;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(body);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(trim(cell));
    if (cells.size() < 3 || cells.size() > 4) throw parse_error("expected re,im,order[,label]", lineno);
    ZeroDatum z;
    try {
      std::size_t used = 0;
      const double re = std::stod(cells[0], &used);
      if (used != cells[0].size()) throw std::invalid_argument("trailing");
      const double im = std::stod(cells[1], &used);
      if (used != cells[1].size()) throw std::invalid_argument("trailing");
      z.order = std::stoi(cells[2], &used);
      if (used != cells[2].size()) throw std::invalid_argument("trailing");
      z.s0 = {re, im};
    } catch (const std::logic_error&) {
      throw parse_error("malformed number in '" + body + "'", lineno);
    }
    if (z.order == 0) throw parse_error("order must be nonzero", lineno);
    if (cells.size() == 4) z.label = cells[3];
    for (const auto& prev : data) {
      if (prev.s0 == z.s0) throw parse_error("duplicate location", lineno);
    }
    data.push_back(std::move(z));
  }
  const bool has_one = std::any_of(data.begin(), data.end(), [](const ZeroDatum& z) { return z.s0 == cplx(1.0, 0.0); });
  if (!has_one) data.insert(data.begin(), ZeroDatum{cplx(1.0, 0.0), 1, "trivial s=1"});
  return data;
}

}  // namespace psl2lab::selberg
