#pragma once

// Hyperbolic conjugacy classes of PSL2(Z), enumerated by norm.
//
// A primitive class of norm N0 = eps+(D)^2 exists for every valid D, with
// multiplicity h_narrow(D). Norms are kept as logs.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <vector>

#include <gmpxx.h>

#include "psl2lab/quadform.hpp"

namespace psl2lab::geodesics {

struct PrimitiveFamily {
  std::int64_t D = 0;
  int count = 0;           ///< primitive classes sharing this norm
  double log_norm0 = 0.0;  ///< log N(gamma0) = 2 log eps+(D)
  mpz_class trace;         ///< x of the fundamental automorph
  mpz_class y;             ///< y of the fundamental automorph
};

struct GeodesicClass {
  std::shared_ptr<const PrimitiveFamily> family;
  int n = 1;  ///< power of the primitive class

  double log_norm() const { return n * family->log_norm0; }
  /// t with a_gamma = diag(t, 1/t) in the negative chamber, t = N^{-1/2}.
  double a_coordinate() const;
  int multiplicity() const { return family->count; }
};

/// Families with N0 <= X, sorted by D.
using FamilyList = std::vector<std::shared_ptr<const PrimitiveFamily>>;

/// Trace loop over t = 3, 4, ...; the first trace that produces D (via
/// t^2 - 4 = f^2 D) is its fundamental automorph.
FamilyList enumerate_primitive_families(double X);

/// All powers gamma0^n with N(gamma0)^n <= X, sorted by (log_norm, D).
std::vector<GeodesicClass> enumerate_classes(const FamilyList& families, double X);
std::vector<GeodesicClass> enumerate_classes(double X);

/// L(gamma) = log N(gamma0) / (1 - N(gamma)^{-1}).
double local_lefschetz(const GeodesicClass& c);

/// Volume of the centralizer quotient: the primitive length log N(gamma0).
double h_index(const GeodesicClass& c);

// --- spectrum cache ---------------------------------------------------------

/// CSV with header D,h_narrow,h_wide,x,y,unit_norm,log_eps_fund,log_eps_plus,
/// one row per discriminant, sorted by D.
void write_spectrum_csv(std::ostream& out, const std::vector<quadform::DiscriminantRecord>& records);
std::vector<quadform::DiscriminantRecord> read_spectrum_csv(std::istream& in);

std::vector<quadform::DiscriminantRecord> records_of(const FamilyList& families);
FamilyList families_from_records(const std::vector<quadform::DiscriminantRecord>& records, double X);

inline constexpr const char* kCacheDirEnv = "PSL2LAB_CACHE_DIR";

/// A directory of spectrum files; a file named spectrum-X<n>.csv covers every
/// family with N0 <= n.
class SpectrumCache {
 public:
  explicit SpectrumCache(std::filesystem::path dir);
  /// $PSL2LAB_CACHE_DIR, else ./.psl2lab-cache
  static std::filesystem::path default_dir();

  const std::filesystem::path& dir() const { return dir_; }

  /// Families with N0 <= X, read from the smallest covering file if one
  /// exists; otherwise enumerated and written back. overwrite forces
  /// re-enumeration and replaces the file.
  FamilyList families(double X, bool overwrite = false) const;

  /// Covering file for X, if any.
  std::filesystem::path find_covering(double X) const;
  std::filesystem::path path_for(double X) const;

 private:
  std::filesystem::path dir_;
};

}  // namespace psl2lab::geodesics
