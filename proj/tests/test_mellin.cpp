#include <doctest.h>

#include <cmath>

#include "psl2lab/error.hpp"
#include "psl2lab/mellin.hpp"

using namespace psl2lab;
using namespace psl2lab::mellin;
using cplx = std::complex<double>;

namespace {

// Same function as the reference family, but opaque, so mellin() has to integrate.
TestFunction opaque(const ReferenceTestFunction& r) {
  return GenericTestFunction{[r](double t) { return r(t); }, r.T, r.beta, r.k - 1};
}

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("evaluation") {
  const TestFunction psi = ReferenceTestFunction(3, 2, 1);
  CHECK(evaluate(psi, 2.0) == doctest::Approx(0.03125).epsilon(1e-15));
  CHECK(evaluate(psi, 1.0) == 0.0);
  CHECK(evaluate(psi, 0.5) == 0.0);
  CHECK(evaluate(ReferenceTestFunction(2.5, 3, 7.0), 7.0) == 0.0);
  CHECK_THROWS_AS(evaluate(psi, 0.0), precondition_error);
  CHECK_THROWS_AS(evaluate(psi, -1.0), precondition_error);
  CHECK_THROWS_AS(ReferenceTestFunction(0.0, 2, 1), precondition_error);
  CHECK_THROWS_AS(ReferenceTestFunction(3.0, -1, 1), precondition_error);
  CHECK_THROWS_AS(ReferenceTestFunction(3.0, 2, 0), precondition_error);
}

TEST_CASE("closed-form Mellin values") {
  CHECK(mellin::mellin(ReferenceTestFunction(3, 0, 1), 1.0).real() == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(mellin::mellin(ReferenceTestFunction(3, 1, 1), 0.0).real() == doctest::Approx(1.0 / 12).epsilon(1e-15));
  const cplx m = mellin::mellin(ReferenceTestFunction(4, 3, 1), 1.0);
  CHECK(m.real() == doctest::Approx(1.0 / 60).epsilon(1e-15));
  CHECK(m.imag() == 0.0);
  CHECK_THROWS_AS(mellin::mellin(ReferenceTestFunction(4, 3, 1), 4.0), precondition_error);
  CHECK_THROWS_AS(mellin::mellin(ReferenceTestFunction(4, 3, 1), cplx(4.5, 3)), precondition_error);
}

TEST_CASE("quadrature matches the closed form") {
  for (double beta : {2.0, 3.0, 4.0}) {
    for (int k : {2, 3}) {
      const ReferenceTestFunction r(beta, k, 1.0);
      const auto psi = opaque(r);
      for (double re : {0.0, 1.0}) {
        for (double im = -20; im <= 20; im += 2.5) {
          const cplx s(re, im);
          INFO("beta=" << beta << " k=" << k << " s=" << s);
          CHECK(rel(mellin::mellin(psi, s), r.mellin(s)) <= 1e-8);
        }
      }
    }
  }
  CHECK_THROWS_AS(mellin::mellin(opaque(ReferenceTestFunction(3, 2, 1)), 3.0), precondition_error);
}

TEST_CASE("scale covariance") {
  for (double T : {1.0, 2.5, 1e3}) {
    const ReferenceTestFunction r1(4, 3, 1.0);
    const ReferenceTestFunction rT(4, 3, T);
    for (cplx s : {cplx(1, 0), cplx(1.25, 7), cplx(-2, -3)}) {
      CHECK(rel(rT.mellin(s), std::pow(T, s) * r1.mellin(s)) <= 1e-12);
    }
  }
  const ReferenceTestFunction r(3, 2, 10.0);
  CHECK(rel(mellin_quadrature(r, cplx(0.5, 4)), std::pow(10.0, cplx(0.5, 4)) *
                                                    ReferenceTestFunction(3, 2, 1).mellin(cplx(0.5, 4))) <= 1e-8);
}

TEST_CASE("decay along vertical lines") {
  for (int k : {2, 3}) {
    const ReferenceTestFunction r(4, k, 1.0);
    double head = 0.0;
    double tail = 0.0;
    for (double h = 0; h <= 100; h += 0.5) {
      const double v = std::abs(r.mellin(cplx(1.25, h))) * std::pow(1 + std::abs(h), k - 1);
      (h <= 10 ? head : tail) = std::max(h <= 10 ? head : tail, v);
    }
    CHECK(std::isfinite(head));
    CHECK(tail <= head);
  }
}

TEST_CASE("inversion round trip") {
  const TestFunction psi = ReferenceTestFunction(3, 2, 1);
  for (double t : {1.5, 2.0, 10.0}) {
    const auto inv = inverse_mellin(psi, 0.0, 0.0, t);
    INFO("t = " << t << " height " << inv.height);
    CHECK(std::abs(inv.value - psi(t)) <= 1e-6);
  }
  CHECK(std::abs(inverse_mellin(psi, 0.0, 0.0, 0.5).value) <= 1e-6);
  CHECK(std::abs(inverse_mellin(psi, 1.5, 0.0, 2.0).value - 0.03125) <= 1e-6);

  const auto zero = TestFunction::zero();
  CHECK(inverse_mellin(zero, 0.0, 0.0, 2.0).value == 0.0);
  CHECK(inverse_mellin(zero, 0.0, 50.0, 0.3).value == 0.0);

  // a fixed low height is visibly truncated
  CHECK(std::abs(inverse_mellin(psi, 0.0, 2.0, 2.0).value - 0.03125) > 1e-6);

  CHECK_THROWS_AS(inverse_mellin(psi, 3.0, 0.0, 2.0), precondition_error);
  CHECK_THROWS_AS(inverse_mellin(psi, 0.0, 0.0, 0.0), precondition_error);
}

TEST_CASE("chamber bridge") {
  const TestFunction psi = ReferenceTestFunction(3, 2, 1);
  CHECK(chamber_function(psi, 1.0 / std::sqrt(2.0)) == doctest::Approx(0.03125).epsilon(1e-14));
  CHECK(chamber_function(psi, 1.0) == 0.0);
  CHECK(chamber_function(psi, 3.0) == 0.0);
  CHECK_THROWS_AS(chamber_function(psi, 0.0), precondition_error);
}

TEST_CASE("class membership") {
  const TestFunction psi = ReferenceTestFunction(3, 2, 1);
  const auto j1 = class_membership(psi, 6.0, 1);
  CHECK(j1.member);
  CHECK(j1.seminorms.size() == 2);
  const auto j2 = class_membership(psi, 6.0, 2);
  CHECK_FALSE(j2.member);
  CHECK_FALSE(j2.diagnostics.empty());
  CHECK_FALSE(class_membership(psi, 6.0, 3).member);
  CHECK_FALSE(class_membership(psi, 7.0, 0).member);
  CHECK(class_membership(psi, 5.0, 0).member);
  CHECK(class_membership(ReferenceTestFunction(4, 3, 1), 8.0, 2).member);

  const auto z = class_membership(TestFunction::zero(), 100.0, 5);
  CHECK(z.member);
  for (double n : z.seminorms) CHECK(n == 0.0);
  CHECK_THROWS_AS(class_membership(psi, 6.0, -1), precondition_error);
}
