#include <doctest.h>

#include <cmath>
#include <sstream>

#include "psl2lab/error.hpp"
#include "psl2lab/selberg.hpp"

using namespace psl2lab;
using namespace psl2lab::selberg;
using cplx = std::complex<double>;

namespace {

std::vector<ZeroDatum> parse(const std::string& text) {
  std::istringstream in(text);
  return load_zero_data(in);
}

int error_line(const std::string& text) {
  try {
    parse(text);
  } catch (const parse_error& e) {
    return static_cast<int>(e.line());
  }
  return -1;
}

}  // namespace

TEST_CASE("log Z at small X") {
  // -0.02515711596... from an independent 30-digit evaluation of the single D = 5 factor.
  const auto z = log_zeta(2.0, 10.0, 50);
  CHECK(z.value.real() == doctest::Approx(-0.025157115961514643).epsilon(1e-13));
  CHECK(z.value.imag() == 0.0);
  CHECK(log_zeta(2.0, 6.0, 50).value == cplx(0.0));
  CHECK(log_zeta(2.0, 6.0, 3).value == cplx(0.0));
  CHECK(log_zeta(2.0, 10.0).value.real() == doctest::Approx(-0.025157115961514643).epsilon(1e-13));
  CHECK_THROWS_AS(log_zeta(0.5, 10.0, 50), precondition_error);
  CHECK_THROWS_AS(log_zeta(cplx(1.0, 3.0), 10.0, 50), precondition_error);
  CHECK_THROWS_AS(log_zeta(2.0, 1.0, 50), precondition_error);
}

TEST_CASE("log Z is the log of the Euler product") {
  const auto fams = geodesics::enumerate_primitive_families(200);
  const cplx s(1.7, 3.2);
  cplx product = 1.0;
  for (const auto& f : fams)
    for (int k = 0; k <= 40; ++k)
      product *= std::pow(1.0 - std::exp(-(s + double(k)) * f->log_norm0), f->count);
  const cplx lz = log_zeta(fams, s, 200, 40).value;
  CHECK(std::abs(std::exp(lz) - product) <= 1e-13 * std::abs(product));
}

TEST_CASE("default k cutoff") {
  const auto fams = geodesics::enumerate_primitive_families(100);
  const int K = default_k_cutoff(fams, 2.0);
  CHECK(std::exp(-(2.0 + K) * fams.front()->log_norm0) < 1e-16);
  CHECK(std::exp(-(2.0 + K - 1) * fams.front()->log_norm0) >= 1e-16);
  CHECK(default_k_cutoff({}, 2.0) == 0);
}

TEST_CASE("Z'/Z at small X") {
  CHECK(zeta_logderiv(2.0, 10.0).value.real() == doctest::Approx(0.04797173639841754).epsilon(1e-13));
  CHECK(zeta_logderiv(3.0, 10.0).value.real() == doctest::Approx(0.006998982016117559).epsilon(1e-13));
  CHECK(zeta_logderiv(cplx(2.0, 1.0), 5.0).value == cplx(0.0));
  CHECK(zeta_logderiv(2.0, 10.0).tail_estimate == doctest::Approx(0.1));
  CHECK_THROWS_AS(zeta_logderiv(1.0, 10.0), precondition_error);
  CHECK_THROWS_AS(zeta_logderiv(cplx(0.5, 9.5), 10.0), precondition_error);
}

TEST_CASE("derivative consistency") {
  const double X = 1e5;
  const auto fams = geodesics::enumerate_primitive_families(X);
  for (double s : {2.0, 3.0}) {
    const double h = 1e-4;
    const double fd = (log_zeta(fams, s + h, X, 50).value.real() - log_zeta(fams, s - h, X, 50).value.real()) / (2 * h);
    const double ld = zeta_logderiv(fams, s, X).value.real();
    INFO("s = " << s);
    CHECK(std::abs(fd - ld) <= 1e-6 * ld);
  }
}

TEST_CASE("monotone truncation and positivity") {
  const auto fams = geodesics::enumerate_primitive_families(1e5);
  const double bounds[] = {1e3, 1e4, 1e5};
  double vals[3];
  for (int i = 0; i < 3; ++i) vals[i] = zeta_logderiv(fams, 2.0, bounds[i]).value.real();
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      CHECK(vals[j] > vals[i]);
      CHECK(vals[j] - vals[i] <= zeta_logderiv(fams, 2.0, bounds[i]).tail_estimate);
    }
  }
  const LogDerivSeries series(fams, 1e5);
  CHECK(series.size() == geodesics::enumerate_classes(fams, 1e5).size());
  double prev = 0.0;
  for (double X = 7; X <= 1e5; X *= 1.5) {
    const double v = zeta_logderiv(fams, 1.5, X).value.real();
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("line evaluation agrees with direct evaluation") {
  const auto fams = geodesics::enumerate_primitive_families(1e4);
  LogDerivSeries series(fams, 1e4);
  series.prepare_line(1.25);
  for (double h : {0.0, 0.7, -13.0, 250.0}) {
    const cplx a = series.on_line(h);
    const cplx b = series(cplx(1.25, h));
    CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(b)));
  }
}

TEST_CASE("zero data") {
  const auto one = parse("1.0,0.0,1\n");
  REQUIRE(one.size() == 1);
  CHECK(one[0].s0 == cplx(1.0, 0.0));
  CHECK(one[0].order == 1);

  const auto maass = parse("0.5,9.5337,1\n");
  REQUIRE(maass.size() == 2);
  CHECK(maass[0].s0 == cplx(1.0, 0.0));
  CHECK(maass[0].label == "trivial s=1");
  CHECK(maass[1].s0 == cplx(0.5, 9.5337));

  const auto labelled = parse("# comment\n\n 0.5 , -9.5337 , 2 , Maass \n-0.5,0,-1,scattering\n");
  REQUIRE(labelled.size() == 3);
  CHECK(labelled[1].label == "Maass");
  CHECK(labelled[1].order == 2);
  CHECK(labelled[2].order == -1);

  CHECK(parse("").size() == 1);
  CHECK(error_line("abc,0,1\n") == 1);
  CHECK(error_line("1,0,1\n0.5,1\n") == 2);
  CHECK(error_line("0.5,1,0\n") == 1);
  CHECK(error_line("0.5,1,1.5\n") == 1);
  CHECK(error_line("0.5,1x,1\n") == 1);
  CHECK(error_line("# c\n0.5,1,1\n0.5,1,2\n") == 3);
  CHECK(error_line("1,2,3,4,5\n") == 1);
}
