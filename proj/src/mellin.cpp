#include "psl2lab/mellin.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "psl2lab/error.hpp"
#include "psl2lab/quadrature.hpp"

namespace psl2lab::mellin {

using cplx = std::complex<double>;

ReferenceTestFunction::ReferenceTestFunction(double beta_, int k_, double T_)
    : beta(beta_), k(k_), T(T_) {
  if (!(beta > 0.0)) throw precondition_error("reference test function needs beta > 0");
  if (k < 0) throw precondition_error("reference test function needs k >= 0");
  if (!(T > 0.0)) throw precondition_error("reference test function needs T > 0");
}

double ReferenceTestFunction::operator()(double t) const {
  if (t < T) return 0.0;
  const double x = T / t;
  return std::pow(x, beta) * std::pow(1.0 - x, k);
}

cplx ReferenceTestFunction::mellin(cplx s) const {
  if (!(s.real() < beta)) throw precondition_error("Mellin transform diverges for Re(s) >= beta");
  return std::exp(s * std::log(T)) * beta_integer(beta - s, k);
}

TestFunction::TestFunction(ReferenceTestFunction f) : impl_(f) {}
TestFunction::TestFunction(GenericTestFunction f) : impl_(std::move(f)) {
  const auto& g = std::get<GenericTestFunction>(impl_);
  if (!g.evaluator) throw precondition_error("generic test function needs an evaluator");
  if (!(g.support_lo > 0.0)) throw precondition_error("generic test function needs support_lo > 0");
}

TestFunction TestFunction::zero() {
  return GenericTestFunction{[](double) { return 0.0; }, 1.0,
                             std::numeric_limits<double>::infinity(), 1 << 20};
}

double TestFunction::operator()(double t) const {
  if (auto* r = std::get_if<ReferenceTestFunction>(&impl_)) return (*r)(t);
  const auto& g = std::get<GenericTestFunction>(impl_);
  return t < g.support_lo ? 0.0 : g.evaluator(t);
}

double TestFunction::decay_bound() const {
  if (auto* r = std::get_if<ReferenceTestFunction>(&impl_)) return r->beta;
  return std::get<GenericTestFunction>(impl_).decay_mu;
}

double TestFunction::support_lo() const {
  if (auto* r = std::get_if<ReferenceTestFunction>(&impl_)) return r->T;
  return std::get<GenericTestFunction>(impl_).support_lo;
}

std::string TestFunction::describe() const {
  char buf[128];
  if (auto* r = std::get_if<ReferenceTestFunction>(&impl_)) {
    std::snprintf(buf, sizeof buf, "reference(beta=%.12g,k=%d,T=%.12g)", r->beta, r->k, r->T);
  } else {
    const auto& g = std::get<GenericTestFunction>(impl_);
    std::snprintf(buf, sizeof buf, "generic(support_lo=%.12g,mu=%.12g,j=%d)", g.support_lo,
                  g.decay_mu, g.smoothness_j);
  }
  return buf;
}

double evaluate(const TestFunction& psi, double t) {
  if (!(t > 0.0)) throw precondition_error("test functions live on t > 0");
  return psi(t);
}

cplx beta_integer(cplx a, int k) {
  cplx denom = a;
  double fact = 1.0;
  for (int i = 1; i <= k; ++i) {
    denom *= a + static_cast<double>(i);
    fact *= i;
  }
  return fact / denom;
}

cplx mellin_quadrature(const TestFunction& psi, cplx s, double abs_tol) {
  const double rate = psi.decay_bound() - s.real();
  if (!(rate > 0.0)) throw precondition_error("Mellin transform diverges for Re(s) >= decay bound");
  if (std::isinf(rate)) {
    // decay faster than any power: only the zero function is represented this way
    if (psi(psi.support_lo()) == 0.0 && psi(2.0 * psi.support_lo()) == 0.0) return 0.0;
  }
  const double u0 = std::log(psi.support_lo());
  const double span = std::min(std::isinf(rate) ? 60.0 : 60.0 / rate, 700.0 - std::max(u0, 0.0));
  const auto integrand = [&](double u) { return std::exp(s * u) * psi(std::exp(u)); };
  const auto panels = static_cast<std::size_t>(std::ceil(span * std::max(1.0, std::abs(s.imag())) / 2.0));
  auto r = quadrature::integrate<cplx>(integrand, u0, u0 + span, 1e-12, panels);
  // panel tolerances are relative to the local L1 norm; tighten once if that misses abs_tol
  if (r.error > abs_tol) r = quadrature::integrate<cplx>(integrand, u0, u0 + span, 1e-12 * abs_tol / r.error, panels, 20);
  return r.value;
}

cplx mellin(const TestFunction& psi, cplx s) {
  if (auto* r = psi.reference()) return r->mellin(s);
  return mellin_quadrature(psi, s);
}

Inversion inverse_mellin(const TestFunction& psi, double C, double H, double t) {
  if (!(C < psi.decay_bound())) throw precondition_error("inversion line must satisfy C < decay bound");
  if (!(t > 0.0)) throw precondition_error("inverse Mellin needs t > 0");
  const double log_t = std::log(t);
  const double damp = std::exp(-C * log_t);
  const auto integrand = [&](double h) {
    const cplx s(C, h);
    return (mellin(psi, s) * std::exp(cplx(0.0, -h * log_t))).real() * damp;
  };
  const auto segment = [&](double lo, double hi) {
    const auto panels = static_cast<std::size_t>(std::ceil((hi - lo) * std::max(1.0, std::abs(log_t)) / 2.0));
    return quadrature::integrate<double>(integrand, lo, hi, 1e-12, panels).value;
  };

  // The integrand is even in h, since psi is real.
  if (H > 0.0) return {segment(0.0, H) / std::numbers::pi, H};

  constexpr double kSegmentL1 = 1e-9;
  constexpr double kMaxHeight = 1e6;
  const auto magnitude = [&](double h) { return std::abs(mellin(psi, cplx(C, h))) * damp; };
  double height = 16.0;
  double total = segment(0.0, height);
  while (height < kMaxHeight) {
    const double next = 2.0 * height;
    total += segment(height, next);
    const double l1 = quadrature::integrate<double>(magnitude, height, next, 1e-6, 8).value;
    height = next;
    if (l1 / std::numbers::pi < kSegmentL1) break;
  }
  return {total / std::numbers::pi, height};
}

double chamber_function(const TestFunction& psi, double t) {
  if (!(t > 0.0)) throw precondition_error("chamber coordinate must be positive");
  if (t >= 1.0) return 0.0;
  return psi(1.0 / (t * t));
}

Membership class_membership(const TestFunction& psi, double mu_coeff, int j) {
  if (j < 0) throw precondition_error("smoothness order j must be >= 0");
  Membership out;
  // Work in u = log N with N = t^{-2}: t d/dt = -2 d/du and a^{-mu} = e^{u mu/2}.
  const double u0 = std::log(psi.support_lo());
  const double spacing = std::log(10.0) / 1e4;
  const int points = 6 * 10000 + 20;
  const auto g = [&](double u) { return psi(std::exp(u)); };
  const auto weight = [&](double u) { return std::exp(0.5 * mu_coeff * u); };

  // m-th one-sided differences with step h: a jump in the m-th derivative
  // shows up as a forward/backward mismatch of the size of the jump.
  const auto one_sided = [&](int m, double u, double h, double dir) {
    double acc = 0.0;
    double binom = 1.0;
    for (int i = 0; i <= m; ++i) {
      const double sign = ((m - i) % 2 == 0) ? 1.0 : -1.0;
      acc += sign * binom * g(u + dir * i * h);
      binom = binom * (m - i) / (i + 1);
    }
    return dir > 0 ? acc / std::pow(h, m) : (m % 2 == 0 ? acc : -acc) / std::pow(h, m);
  };

  for (int m = 0; m <= j; ++m) {
    const double h = std::max(1e-4, 4.0 * std::pow(std::numeric_limits<double>::epsilon(), 1.0 / (m + 2)));
    const double scale = std::pow(2.0, m);
    double sup = 0.0;
    double cauchy = 0.0;
    double last = 0.0;
    double decade_back = 0.0;
    double prev = 0.0;
    bool finite = true;
    for (int i = 0; i < points; ++i) {
      const double u = u0 + (i - 20) * spacing;
      const double w = weight(u) * scale;
      double value = 0.0;
      if (m == 0) {
        const double cur = g(u);
        value = w * std::abs(cur);
        if (i > 0) cauchy = std::max(cauchy, w * std::abs(cur - prev));
        prev = cur;
      } else {
        const double fwd = one_sided(m, u, h, 1.0);
        const double bwd = one_sided(m, u, h, -1.0);
        value = w * 0.5 * std::abs(fwd + bwd);
        cauchy = std::max(cauchy, w * std::abs(fwd - bwd));
      }
      if (!std::isfinite(value)) finite = false;
      sup = std::max(sup, value);
      if (i == points - 1 - 10000) decade_back = value;
      if (i == points - 1) last = value;
    }
    out.seminorms.push_back(sup);
    char buf[160];
    if (!finite) {
      out.member = false;
      std::snprintf(buf, sizeof buf, "order %d: non-finite values", m);
      out.diagnostics.emplace_back(buf);
      continue;
    }
    if (sup > 0.0 && cauchy > 0.05 * sup) {
      out.member = false;
      std::snprintf(buf, sizeof buf, "order %d: derivative not continuous (jump %.3g vs sup %.3g)", m,
                    cauchy, sup);
      out.diagnostics.emplace_back(buf);
    }
    if (last > 0.0 && last > 1.01 * decade_back && last >= 0.5 * sup) {
      out.member = false;
      std::snprintf(buf, sizeof buf, "order %d: weighted derivative still growing (%.3g -> %.3g)", m,
                    decade_back, last);
      out.diagnostics.emplace_back(buf);
    }
  }
  return out;
}

}  // namespace psl2lab::mellin
