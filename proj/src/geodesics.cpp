#include "psl2lab/geodesics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unistd.h>

#include "psl2lab/error.hpp"

namespace psl2lab::geodesics {

using quadform::DiscriminantRecord;

namespace {

void require_norm_bound(double X) {
  if (!(X > 1.0)) throw precondition_error("norm bound X must exceed 1");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

double GeodesicClass::a_coordinate() const {
  return std::exp(-0.5 * log_norm());
}

FamilyList enumerate_primitive_families(double X) {
  require_norm_bound(X);
  const double log_x = std::log(X);
  std::map<std::int64_t, std::pair<std::int64_t, std::int64_t>> first_hit;  // D -> (t, f)
  // eps(t) = (t + sqrt(t^2 - 4))/2 = exp(acosh(t/2)), N0 = eps^2
  for (std::int64_t t = 3; 2.0 * std::acosh(0.5 * static_cast<double>(t)) <= log_x; ++t) {
    const std::int64_t n = t * t - 4;
    for (std::int64_t f = 1; f * f <= n; ++f) {
      if (n % (f * f) != 0) continue;
      const std::int64_t D = n / (f * f);
      if (!quadform::is_valid_discriminant(D)) continue;
      first_hit.try_emplace(D, t, f);
    }
  }

  FamilyList out;
  out.reserve(first_hit.size());
  for (const auto& [D, tf] : first_hit) {
    auto fam = std::make_shared<PrimitiveFamily>();
    fam->D = D;
    fam->trace = mpz_class(static_cast<long>(tf.first));
    fam->y = mpz_class(static_cast<long>(tf.second));
    fam->count = quadform::narrow_class_number(D);
    // Same route as records read back from the cache, so both agree bit-for-bit.
    const auto rec = quadform::make_record(D, fam->count, {fam->trace, fam->y});
    fam->log_norm0 = 2.0 * rec.log_eps_plus;
    out.push_back(std::move(fam));
  }
  return out;
}

std::vector<GeodesicClass> enumerate_classes(const FamilyList& families, double X) {
  require_norm_bound(X);
  const double log_x = std::log(X);
  std::vector<GeodesicClass> out;
  for (const auto& fam : families) {
    for (int n = 1; n * fam->log_norm0 <= log_x; ++n) out.push_back(GeodesicClass{fam, n});
  }
  // Equal norms (e.g. 5^2 vs 45) differ only by rounding; treat them as ties.
  std::sort(out.begin(), out.end(), [](const GeodesicClass& l, const GeodesicClass& r) {
    const double a = l.log_norm();
    const double b = r.log_norm();
    if (std::abs(a - b) > 1e-12 * std::max(a, b)) return a < b;
    if (l.family->D != r.family->D) return l.family->D < r.family->D;
    return l.n < r.n;
  });
  return out;
}

std::vector<GeodesicClass> enumerate_classes(double X) {
  return enumerate_classes(enumerate_primitive_families(X), X);
}

double local_lefschetz(const GeodesicClass& c) {
  return c.family->log_norm0 / -std::expm1(-c.log_norm());
}

double h_index(const GeodesicClass& c) { return c.family->log_norm0; }

// --- cache --------------------------------------------------------------------

void write_spectrum_csv(std::ostream& out, const std::vector<DiscriminantRecord>& records) {
  out << "D,h_narrow,h_wide,x,y,unit_norm,log_eps_fund,log_eps_plus\n";
  for (const auto& r : records) {
    out << r.D << ',' << r.h_narrow << ',' << r.h_wide << ',' << r.pell_x.get_str() << ','
        << r.pell_y.get_str() << ',' << r.unit_norm << ',' << format_double(r.log_eps_fund) << ','
        << format_double(r.log_eps_plus) << '\n';
  }
}

std::vector<DiscriminantRecord> read_spectrum_csv(std::istream& in) {
  std::vector<DiscriminantRecord> out;
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw parse_error("missing header row", 1);
  ++lineno;
  if (line != "D,h_narrow,h_wide,x,y,unit_norm,log_eps_fund,log_eps_plus") {
    throw parse_error("unexpected header '" + line + "'", lineno);
  }
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) cells.push_back(cell);
    if (cells.size() != 8) throw parse_error("expected 8 fields", lineno);
    try {
      DiscriminantRecord r;
      r.D = std::stoll(cells[0]);
      r.h_narrow = std::stoi(cells[1]);
      r.h_wide = std::stoi(cells[2]);
      if (r.pell_x.set_str(cells[3], 10) != 0 || r.pell_y.set_str(cells[4], 10) != 0) {
        throw parse_error("bad integer", lineno);
      }
      r.unit_norm = std::stoi(cells[5]);
      r.log_eps_fund = std::stod(cells[6]);
      r.log_eps_plus = std::stod(cells[7]);
      if (!out.empty() && out.back().D >= r.D) throw parse_error("rows not sorted by D", lineno);
      out.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw parse_error("malformed number", lineno);
    }
  }
  return out;
}

std::vector<DiscriminantRecord> records_of(const FamilyList& families) {
  std::vector<DiscriminantRecord> out;
  out.reserve(families.size());
  for (const auto& fam : families) {
    out.push_back(quadform::make_record(fam->D, fam->count, {fam->trace, fam->y}));
  }
  return out;
}

FamilyList families_from_records(const std::vector<DiscriminantRecord>& records, double X) {
  require_norm_bound(X);
  const double log_x = std::log(X);
  FamilyList out;
  for (const auto& r : records) {
    const double log_norm0 = 2.0 * r.log_eps_plus;
    if (log_norm0 > log_x) continue;
    auto fam = std::make_shared<PrimitiveFamily>();
    fam->D = r.D;
    fam->count = r.h_narrow;
    fam->log_norm0 = log_norm0;
    fam->trace = r.pell_x;
    fam->y = r.pell_y;
    out.push_back(std::move(fam));
  }
  return out;
}

SpectrumCache::SpectrumCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path SpectrumCache::default_dir() {
  if (const char* env = std::getenv(kCacheDirEnv); env && *env) return env;
  return ".psl2lab-cache";
}

std::filesystem::path SpectrumCache::path_for(double X) const {
  const auto bound = static_cast<long long>(std::ceil(X));
  return dir_ / ("spectrum-X" + std::to_string(bound) + ".csv");
}

std::filesystem::path SpectrumCache::find_covering(double X) const {
  std::error_code ec;
  if (!std::filesystem::is_directory(dir_, ec)) return {};
  std::filesystem::path best;
  long long best_bound = 0;
  for (const auto& entry : std::filesystem::directory_iterator(dir_, ec)) {
    const std::string name = entry.path().filename().string();
    if (name.rfind("spectrum-X", 0) != 0 || entry.path().extension() != ".csv") continue;
    const std::string digits = name.substr(10, name.size() - 14);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) continue;
    const long long bound = std::stoll(digits);
    if (static_cast<double>(bound) >= X && (best.empty() || bound < best_bound)) {
      best = entry.path();
      best_bound = bound;
    }
  }
  return best;
}

FamilyList SpectrumCache::families(double X, bool overwrite) const {
  require_norm_bound(X);
  if (!overwrite) {
    if (auto path = find_covering(X); !path.empty()) {
      std::ifstream in(path);
      return families_from_records(read_spectrum_csv(in), X);
    }
  }
  // Enumerate up to the integer bound the file name will claim.
  const auto target = path_for(X);
  const double bound = std::ceil(X);
  FamilyList fams = enumerate_primitive_families(bound);
  std::filesystem::create_directories(dir_);
  // Write to a private temporary and rename so readers never see a partial file.
  const auto tmp = target.string() + ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    write_spectrum_csv(out, records_of(fams));
    if (!out) throw std::runtime_error("failed writing " + tmp);
  }
  std::filesystem::rename(tmp, target);
  const double log_x = std::log(X);
  std::erase_if(fams, [&](const auto& fam) { return fam->log_norm0 > log_x; });
  return fams;
}

}  // namespace psl2lab::geodesics
