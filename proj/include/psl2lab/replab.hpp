#pragma once

// The admissible dual of PSL2(R), n-cohomology of its irreducibles and the
// representation-theoretic Lefschetz numbers
//   L_lambda(pi) = dim H^1(n, pi_K)^lambda - dim H^0(n, pi_K)^lambda.
//
// For PSL2(R): dim N = 1, M is trivial, p_M = 0 and tau is trivial, so the
// general alternating sum collapses to the two terms above. Characters of A
// are written lambda = s rho, i.e. a^lambda = t^s on a = diag(t, 1/t).
//
// Convention note: the H^0 weight of the finite-dimensional representation
// delta_{2n-1} is taken to be (2n-2) rho (the highest-weight vector is
// n-invariant and carries the trivial A-character when n = 1). Consequently
// L_{(2n-2) rho}(delta_{2n-1}) = -1. The value sometimes printed for this
// entry, (1-2n) rho, is odd, lies outside the Weyl support and cannot arise.

#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace psl2lab::replab {

/// lambda = s * rho.
struct AWeight {
  std::complex<double> s;

  bool operator==(const AWeight&) const = default;
  AWeight operator-(const AWeight& o) const { return {s - o.s}; }
  AWeight operator+(const AWeight& o) const { return {s + o.s}; }
  AWeight operator-() const { return {-s}; }
};

/// nu < mu  iff  mu - nu is a positive integer multiple of rho.
bool precedes(const AWeight& nu, const AWeight& mu);

inline const AWeight kRho{1.0};

struct PrincipalSeries {
  std::complex<double> s;  ///< pi_{s rho}
  bool operator==(const PrincipalSeries&) const = default;
};
struct DiscreteSeries {
  int n = 1;      ///< D^{+-}_{2n}
  int sign = +1;  ///< +1 or -1
  bool operator==(const DiscreteSeries&) const = default;
};
struct FiniteDim {
  int n = 1;  ///< delta_{2n-1}, dimension 2n - 1
  bool operator==(const FiniteDim&) const = default;
};

using AdmissibleRep = std::variant<PrincipalSeries, DiscreteSeries, FiniteDim>;

std::string describe(const AdmissibleRep& rep);

/// pi_s is reducible exactly at s = +-(2n - 1).
bool is_irreducible(const AdmissibleRep& rep);
/// Purely imaginary s, real s with 0 < |s| < 1, or discrete series.
bool is_unitary(const AdmissibleRep& rep);

/// Representative Lambda_pi restricted to a (defined up to sign).
AWeight infinitesimal_character(const AdmissibleRep& rep);

/// {Lambda - rho, -Lambda - rho}; one element when they coincide.
std::vector<AWeight> weyl_support(const AdmissibleRep& rep);

struct CohomologyEntry {
  AWeight weight;
  int dim = 1;
  bool operator==(const CohomologyEntry&) const = default;
};
using CohomologyTable = std::vector<CohomologyEntry>;

struct NCohomology {
  CohomologyTable h0;
  CohomologyTable h1;
};

/// n-cohomology of an irreducible; throws precondition_error for reducible
/// principal series (use composition_factors).
NCohomology n_cohomology(const AdmissibleRep& rep);

/// H^0(n, pi_s) for any principal series, reducible or not: nonzero only for
/// s = 1 - 2k, where it is one-dimensional of weight (2k - 2) rho.
CohomologyTable principal_series_h0(std::complex<double> s);

/// Irreducible constituents of pi_s.
std::vector<AdmissibleRep> composition_factors(std::complex<double> s);

/// L_lambda(rep). Reducible principal series are handled additively over
/// their composition factors.
int lefschetz_number(const AdmissibleRep& rep, const AWeight& lambda);

/// dim of the generalized eigenspace of the given weight in a table.
int dim_at(const CohomologyTable& table, const AWeight& lambda);

}  // namespace psl2lab::replab
