#include "psl2lab/replab.hpp"

#include <cmath>
#include <cstdio>

#include "psl2lab/error.hpp"

namespace psl2lab::replab {

namespace {

// s = +-(2n - 1) for some n >= 1; returns n, or 0.
int reducibility_index(std::complex<double> s) {
  if (s.imag() != 0.0) return 0;
  const double a = std::abs(s.real());
  if (a < 1.0 || a != std::floor(a)) return 0;
  const auto odd = static_cast<long long>(a);
  if (odd % 2 == 0) return 0;
  return static_cast<int>((odd + 1) / 2);
}

bool purely_imaginary(std::complex<double> s) { return s.real() == 0.0; }

void add(CohomologyTable& table, AWeight w, int dim) {
  for (auto& e : table) {
    if (e.weight == w) {
      e.dim += dim;
      return;
    }
  }
  table.push_back({w, dim});
}

bool in_support(const AdmissibleRep& rep, const AWeight& lambda) {
  for (const auto& w : weyl_support(rep)) {
    if (w == lambda) return true;
  }
  return false;
}

}  // namespace

bool precedes(const AWeight& nu, const AWeight& mu) {
  const auto d = mu.s - nu.s;
  return d.imag() == 0.0 && d.real() >= 1.0 && d.real() == std::floor(d.real());
}

std::string describe(const AdmissibleRep& rep) {
  char buf[96];
  if (auto* p = std::get_if<PrincipalSeries>(&rep)) {
    std::snprintf(buf, sizeof buf, "pi(s=%.12g%+.12gi)", p->s.real(), p->s.imag());
  } else if (auto* d = std::get_if<DiscreteSeries>(&rep)) {
    std::snprintf(buf, sizeof buf, "D%c_%d", d->sign > 0 ? '+' : '-', 2 * d->n);
  } else {
    std::snprintf(buf, sizeof buf, "delta_%d", 2 * std::get<FiniteDim>(rep).n - 1);
  }
  return buf;
}

bool is_irreducible(const AdmissibleRep& rep) {
  if (auto* p = std::get_if<PrincipalSeries>(&rep)) return reducibility_index(p->s) == 0;
  return true;
}

bool is_unitary(const AdmissibleRep& rep) {
  if (std::holds_alternative<DiscreteSeries>(rep)) return true;
  if (auto* p = std::get_if<PrincipalSeries>(&rep)) {
    if (purely_imaginary(p->s)) return true;
    return p->s.imag() == 0.0 && std::abs(p->s.real()) > 0.0 && std::abs(p->s.real()) < 1.0;
  }
  return false;
}

AWeight infinitesimal_character(const AdmissibleRep& rep) {
  if (auto* p = std::get_if<PrincipalSeries>(&rep)) return {p->s};
  if (auto* d = std::get_if<DiscreteSeries>(&rep)) return {static_cast<double>(2 * d->n - 1)};
  return {static_cast<double>(2 * std::get<FiniteDim>(rep).n - 1)};
}

std::vector<AWeight> weyl_support(const AdmissibleRep& rep) {
  const AWeight lam = infinitesimal_character(rep);
  const AWeight a = lam - kRho;
  const AWeight b = -lam - kRho;
  if (a == b) return {a};
  return {a, b};
}

CohomologyTable principal_series_h0(std::complex<double> s) {
  // s = 1 - 2k with k >= 1
  if (s.imag() == 0.0 && s.real() <= -1.0) {
    const int k = reducibility_index(s);
    if (k > 0 && s.real() < 0.0) return {{AWeight{static_cast<double>(2 * k - 2)}, 1}};
  }
  return {};
}

NCohomology n_cohomology(const AdmissibleRep& rep) {
  if (!is_irreducible(rep)) {
    throw precondition_error(describe(rep) +
                             " is reducible; take n-cohomology of its composition_factors");
  }
  NCohomology out;
  if (auto* p = std::get_if<PrincipalSeries>(&rep)) {
    out.h0 = principal_series_h0(p->s);
    add(out.h1, AWeight{p->s} - kRho, 1);
    if (purely_imaginary(p->s)) add(out.h1, AWeight{-p->s} - kRho, 1);
  } else if (auto* d = std::get_if<DiscreteSeries>(&rep)) {
    add(out.h1, AWeight{static_cast<double>(2 * d->n - 2)}, 1);
  } else {
    const int n = std::get<FiniteDim>(rep).n;
    add(out.h0, AWeight{static_cast<double>(2 * n - 2)}, 1);
    add(out.h1, AWeight{static_cast<double>(-2 * n)}, 1);
  }
  return out;
}

std::vector<AdmissibleRep> composition_factors(std::complex<double> s) {
  if (const int n = reducibility_index(s); n > 0) {
    return {FiniteDim{n}, DiscreteSeries{n, +1}, DiscreteSeries{n, -1}};
  }
  return {PrincipalSeries{s}};
}

int dim_at(const CohomologyTable& table, const AWeight& lambda) {
  int total = 0;
  for (const auto& e : table) {
    if (e.weight == lambda) total += e.dim;
  }
  return total;
}

int lefschetz_number(const AdmissibleRep& rep, const AWeight& lambda) {
  if (!is_irreducible(rep)) {
    int sum = 0;
    for (const auto& factor : composition_factors(std::get<PrincipalSeries>(rep).s)) {
      sum += lefschetz_number(factor, lambda);
    }
    return sum;
  }
  const auto coh = n_cohomology(rep);
  const int value = dim_at(coh.h1, lambda) - dim_at(coh.h0, lambda);
  if (value != 0 && !in_support(rep, lambda)) {
    throw std::logic_error("Lefschetz number of " + describe(rep) + " nonzero outside Weyl support");
  }
  return value;
}

}  // namespace psl2lab::replab
