#pragma once

// Arithmetic of real quadratic discriminants: reduced indefinite forms and
// their cycles, the Pell equation x^2 - D y^2 = 4, fundamental units and
// regulators.

#include <compare>
#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace psl2lab::quadform {

/// The binary form a x^2 + b x y + c y^2.
struct QuadraticForm {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 0;

  std::int64_t discriminant() const { return b * b - 4 * a * c; }
  bool is_primitive() const;
  /// |sqrt(D) - 2|a|| < b < sqrt(D), decided with integer arithmetic only.
  bool is_reduced() const;

  auto operator<=>(const QuadraticForm&) const = default;
};

/// D > 0, D = 0 or 1 mod 4, D not a perfect square.
bool is_valid_discriminant(std::int64_t D);

/// Valid discriminants in [lo, hi], ascending.
std::vector<std::int64_t> valid_discriminants(std::int64_t lo, std::int64_t hi);

/// All primitive reduced forms of discriminant D, sorted.
std::vector<QuadraticForm> reduced_forms(std::int64_t D);

/// One step of the reduction operator: (a, b, c) -> (c, b', c') with
/// b' = -b mod 2|c| and sqrt(D) - 2|c| < b' < sqrt(D). Maps reduced forms to
/// reduced forms and permutes each cycle.
QuadraticForm reduction_step(const QuadraticForm& f);

/// Number of cycles of reduced primitive forms (the narrow class number).
int narrow_class_number(std::int64_t D);

/// Class count by breadth-first closure over the generators of SL2(Z),
/// restricted to the box |a|, |c| <= D. Shares no code with the cycle method.
inline constexpr std::int64_t kOracleBound = 20000;
int oracle_class_count(std::int64_t D, std::int64_t oracle_bound = kOracleBound);

struct PellSolution {
  mpz_class x;
  mpz_class y;
};

/// Minimal positive solution of x^2 - D y^2 = 4.
PellSolution pell4_fundamental(std::int64_t D);

/// Same as pell4_fundamental, but gives up (returns nullopt) as soon as it is
/// clear that log((x + y sqrt D)/2) exceeds max_log. Cheap for the common case
/// of a long continued-fraction period.
std::optional<PellSolution> pell4_fundamental_bounded(std::int64_t D, double max_log);

struct UnitInfo {
  double log_eps = 0.0;  ///< regulator log(eps0), eps0 > 1
  int norm = 1;          ///< +1 or -1
};

/// Fundamental unit eps0 = (x + y sqrt D)/2 of the order of discriminant D.
UnitInfo fundamental_unit(std::int64_t D);

/// Natural log of a positive big integer from its top bits and bit length.
double log_big(const mpz_class& n);

/// log((x + y sqrt D)/2) for a solution of x^2 - D y^2 = 4 * norm, x > 0.
double log_quadratic_unit(const mpz_class& x, int norm);

struct DiscriminantRecord {
  std::int64_t D = 0;
  int h_narrow = 0;
  int h_wide = 0;
  mpz_class pell_x;  ///< x^2 - D y^2 = 4, minimal
  mpz_class pell_y;
  int unit_norm = 1;
  double log_eps_fund = 0.0;  ///< R(O_D)
  double log_eps_plus = 0.0;  ///< log of the totally positive generator

  bool operator==(const DiscriminantRecord&) const = default;
};

/// Builds the full record for a valid discriminant.
DiscriminantRecord make_record(std::int64_t D);

/// Builds the record from an already known narrow class number and Pell
/// solution (no class-number search).
DiscriminantRecord make_record(std::int64_t D, int h_narrow, const PellSolution& pell4);

}  // namespace psl2lab::quadform
