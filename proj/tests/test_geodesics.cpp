#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unistd.h>

#include "psl2lab/error.hpp"
#include "psl2lab/geodesics.hpp"

using namespace psl2lab;
using namespace psl2lab::geodesics;

namespace {

struct Entry {
  std::int64_t D;
  int n;
  int mult;
  bool operator==(const Entry&) const = default;
};

std::vector<Entry> entries(double X) {
  std::vector<Entry> out;
  for (const auto& c : enumerate_classes(X)) out.push_back({c.family->D, c.n, c.multiplicity()});
  return out;
}

const double kLogN5 = 1.9248473002384138;

}  // namespace

TEST_CASE("primitive families at small X") {
  const auto f7 = enumerate_primitive_families(7);
  REQUIRE(f7.size() == 1);
  CHECK(f7[0]->D == 5);
  CHECK(f7[0]->count == 1);
  CHECK(f7[0]->log_norm0 == doctest::Approx(kLogN5).epsilon(1e-14));
  CHECK(std::exp(f7[0]->log_norm0) == doctest::Approx(6.854101966249685).epsilon(1e-14));

  CHECK(enumerate_primitive_families(6).empty());

  const auto f14 = enumerate_primitive_families(14);
  REQUIRE(f14.size() == 2);
  CHECK(f14[0]->D == 5);
  CHECK(f14[1]->D == 12);
  CHECK(std::exp(f14[1]->log_norm0) == doctest::Approx(13.928203230275509).epsilon(1e-14));

  CHECK_THROWS_AS(enumerate_primitive_families(1.0), precondition_error);
  CHECK_THROWS_AS(enumerate_primitive_families(0.5), precondition_error);
}

TEST_CASE("classes at small X") {
  CHECK(entries(10) == std::vector<Entry>{{5, 1, 1}});
  CHECK(entries(1.5).empty());
  CHECK_THROWS_AS(enumerate_classes(1.0), precondition_error);

  // D = 45 (trace 7 = 7^2 - 4 = 45) shares its norm with the square of the D = 5 class.
  const std::vector<Entry> expected{{5, 1, 1},  {12, 1, 2}, {21, 1, 2}, {8, 1, 1},
                                    {32, 1, 2}, {5, 2, 1},  {45, 1, 2}};
  CHECK(entries(47) == expected);

  for (const auto& c : enumerate_classes(1000)) {
    CHECK(c.log_norm() == c.n * c.family->log_norm0);
    CHECK(c.a_coordinate() > 0.0);
    CHECK(c.a_coordinate() < 1.0);
  }
}

TEST_CASE("local Lefschetz numbers and H-indices") {
  const auto classes = enumerate_classes(400);
  const GeodesicClass* d5 = nullptr;
  const GeodesicClass* d5_cubed = nullptr;
  const GeodesicClass* d8 = nullptr;
  for (const auto& c : classes) {
    if (c.family->D == 5 && c.n == 1) d5 = &c;
    if (c.family->D == 5 && c.n == 3) d5_cubed = &c;
    if (c.family->D == 8 && c.n == 1) d8 = &c;
  }
  REQUIRE(d5);
  REQUIRE(d5_cubed);
  REQUIRE(d8);
  CHECK(local_lefschetz(*d5) == doctest::Approx(2.253650473011219).epsilon(1e-13));
  CHECK(h_index(*d5) == doctest::Approx(kLogN5).epsilon(1e-14));
  CHECK(h_index(*d5_cubed) == h_index(*d5));
  CHECK(h_index(*d8) == doctest::Approx(3.525494348078172).epsilon(1e-14));

  for (const auto& c : classes) {
    const double L = local_lefschetz(c);
    CHECK(L > c.family->log_norm0);
    CHECK(std::abs(L * (1 - std::exp(-c.log_norm())) - c.family->log_norm0) <= 1e-12 * c.family->log_norm0);
  }

  // Limit n -> infinity: L -> log N0.
  GeodesicClass far{d5->family, 40};
  CHECK(local_lefschetz(far) == doctest::Approx(kLogN5).epsilon(1e-15));
}

TEST_CASE("completeness: smaller bounds give exactly the prefix") {
  const auto big = enumerate_classes(5e4);
  for (double Xs : {7.0, 47.0, 1000.0, 12345.6, 5e4}) {
    std::set<std::pair<std::int64_t, int>> sub;
    for (const auto& c : enumerate_classes(Xs)) sub.insert({c.family->D, c.n});
    std::set<std::pair<std::int64_t, int>> filtered;
    for (const auto& c : big)
      if (c.log_norm() <= std::log(Xs)) filtered.insert({c.family->D, c.n});
    CHECK(sub == filtered);
  }
}

TEST_CASE("first-hit automorphs equal the continued-fraction solution") {
  for (const auto& fam : enumerate_primitive_families(2e5)) {
    const auto s = quadform::pell4_fundamental(fam->D);
    INFO("D = " << fam->D);
    REQUIRE(fam->trace == s.x);
    REQUIRE(fam->y == s.y);
    REQUIRE(fam->count == quadform::narrow_class_number(fam->D));
    const auto rec = quadform::make_record(fam->D);
    CHECK(std::abs(fam->log_norm0 - 2 * rec.log_eps_plus) <= 1e-12 * fam->log_norm0);
  }
}

TEST_CASE("every valid D with a small automorph is found") {
  const double X = 3e4;
  std::set<std::int64_t> found;
  for (const auto& fam : enumerate_primitive_families(X)) found.insert(fam->D);
  // eps+^2 <= X forces D y^2 < X, so D < X.
  for (std::int64_t D : quadform::valid_discriminants(5, static_cast<std::int64_t>(X))) {
    const bool small = 2 * quadform::make_record(D).log_eps_plus <= std::log(X);
    CHECK(found.count(D) == (small ? 1u : 0u));
  }
}

TEST_CASE("spectrum cache round trip") {
  const auto fams = enumerate_primitive_families(2e4);
  const auto recs = records_of(fams);
  std::stringstream ss;
  write_spectrum_csv(ss, recs);
  const auto back = read_spectrum_csv(ss);
  CHECK(back == recs);

  const auto refams = families_from_records(back, 2e4);
  REQUIRE(refams.size() == fams.size());
  for (std::size_t i = 0; i < fams.size(); ++i) {
    CHECK(refams[i]->D == fams[i]->D);
    CHECK(refams[i]->count == fams[i]->count);
    CHECK(refams[i]->log_norm0 == fams[i]->log_norm0);
    CHECK(refams[i]->trace == fams[i]->trace);
  }
}

TEST_CASE("spectrum CSV parse errors carry line numbers") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return read_spectrum_csv(in);
  };
  const std::string header = "D,h_narrow,h_wide,x,y,unit_norm,log_eps_fund,log_eps_plus\n";
  CHECK_THROWS_AS(parse(""), parse_error);
  CHECK_THROWS_AS(parse("D,x\n"), parse_error);
  try {
    parse(header + "5,1,1,3,1,-1,0.48,0.96\n8,1,1,6,2\n");
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse(header + "8,1,1,6,2,-1,0.88,1.76\n5,1,1,3,1,-1,0.48,0.96\n");
    FAIL("expected a parse error");
  } catch (const parse_error& e) {
    CHECK(e.line() == 3);
  }
  CHECK_THROWS_AS(parse(header + "5,1,1,3z,1,-1,0.48,0.96\n"), parse_error);
  CHECK(parse(header).empty());
}

TEST_CASE("spectrum cache directory") {
  const auto dir = std::filesystem::temp_directory_path() / ("psl2lab-test-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  SpectrumCache cache(dir);
  CHECK(cache.find_covering(100).empty());

  const auto fresh = cache.families(99.5);
  CHECK(std::filesystem::exists(dir / "spectrum-X100.csv"));
  CHECK(cache.find_covering(100) == dir / "spectrum-X100.csv");
  CHECK(cache.find_covering(100.5).empty());

  const auto again = cache.families(60);
  const auto direct = enumerate_primitive_families(60);
  REQUIRE(again.size() == direct.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i]->D == direct[i]->D);
    CHECK(again[i]->log_norm0 == direct[i]->log_norm0);
  }
  CHECK(fresh.size() == enumerate_primitive_families(99.5).size());

  cache.families(500);
  CHECK(cache.find_covering(101) == dir / "spectrum-X500.csv");
  CHECK(cache.find_covering(90) == dir / "spectrum-X100.csv");

  // overwrite replaces a corrupted file
  { std::ofstream(dir / "spectrum-X100.csv") << "garbage\n"; }
  CHECK_THROWS_AS(cache.families(50), parse_error);
  CHECK(cache.families(99.5, true).size() == fresh.size());
  CHECK(cache.families(50).size() == enumerate_primitive_families(50).size());
  std::filesystem::remove_all(dir);
}
