#include <doctest.h>

#include <cmath>

#include "atomchain/analytic.hpp"
#include "oracles.hpp"

using namespace atomchain;

namespace {

double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace

TEST_CASE("one-neighbour closed form") {
  const auto a = one_neighbor(0.1);
  CHECK(a.t0 == doctest::Approx(1.0 / 1.2).epsilon(1e-15));
  CHECK(*a.t1 == doctest::Approx(1.1 / 1.2).epsilon(1e-15));
  CHECK_FALSE(a.t2.has_value());
  CHECK(a.order == AmplitudeMethod::one_neighbor);

  const auto b = one_neighbor(0.3);
  CHECK(std::abs(*b.t1 - 0.8125) < 1e-15);
  CHECK(std::abs(b.t0 - 0.625) < 1e-15);

  const auto c = one_neighbor(0.5);
  CHECK(std::abs(c.t0 - 0.5) < 1e-15);
  CHECK(std::abs(*c.t1 - 0.75) < 1e-15);
  CHECK_FALSE(c.extrapolated);
}

TEST_CASE("two-neighbour closed form") {
  const auto a = two_neighbor(0.1);
  CHECK(round3(a.t0) == doctest::Approx(0.816));
  CHECK(round3(*a.t1) == doctest::Approx(0.908));
  CHECK(round3(*a.t2) == doctest::Approx(0.817));

  const auto b = two_neighbor(0.5);
  CHECK(std::abs(b.t0 - 8.0 / 17.0) < 1e-12);
  CHECK(std::abs(*b.t2 - 1.0 / 3.0) < 1e-12);
  CHECK_THROWS_AS(two_neighbor(1.0), InvalidArgument);
}

TEST_CASE("free chain has unit amplitudes at every order") {
  for (const auto& a : {one_neighbor(0.0), two_neighbor(0.0), infinite_chain(0.0)}) {
    CHECK(a.t0 == 1.0);
    if (a.t1) CHECK(*a.t1 == 1.0);
    if (a.t2) CHECK(*a.t2 == 1.0);
  }
}

TEST_CASE("closed forms match the reference table to three decimals") {
  struct Row { double c, one_t1, one_t0, two_t1, two_t2, two_t0, inf_t0; };
  const Row rows[] = {
      {0.1, 0.917, 0.833, 0.908, 0.817, 0.816, 0.806},
      {0.2, 0.857, 0.714, 0.846, 0.675, 0.690, 0.675},
      {0.3, 0.813, 0.625, 0.807, 0.555, 0.597, 0.581},
      {0.4, 0.778, 0.556, 0.786, 0.445, 0.526, 0.510},
      {0.5, 0.750, 0.500, 0.784, 0.333, 0.471, 0.454},
  };
  for (const auto& r : rows) {
    INFO("C = " << r.c);
    const auto one = one_neighbor(r.c);
    const auto two = two_neighbor(r.c);
    CHECK(round3(*one.t1) == doctest::Approx(r.one_t1));
    CHECK(round3(one.t0) == doctest::Approx(r.one_t0));
    CHECK(round3(*two.t1) == doctest::Approx(r.two_t1));
    CHECK(round3(*two.t2) == doctest::Approx(r.two_t2));
    CHECK(round3(two.t0) == doctest::Approx(r.two_t0));
    // tabulated numerics for the interior, to table precision
    CHECK(std::abs(infinite_chain(r.c).t0 - r.inf_t0) < 0.002);
  }
}

TEST_CASE("infinite chain uses zeta(3)") {
  const double z3 = oracle::zeta3_partial_sum(200000);
  for (double c : {0.05, 0.2, 0.45})
    CHECK(std::abs(infinite_chain(c).t0 - 1.0 / (1.0 + 2.0 * c * z3)) < 1e-9);
  CHECK_FALSE(infinite_chain(0.3).t1.has_value());
}

TEST_CASE("extrapolation flag and negative coupling") {
  CHECK(one_neighbor(0.7).extrapolated);
  CHECK(infinite_chain(0.51).extrapolated);
  CHECK_FALSE(two_neighbor(0.49).extrapolated);
  CHECK_THROWS_AS(one_neighbor(-0.1), InvalidArgument);
  CHECK_THROWS_AS(infinite_chain(-1e-9), InvalidArgument);
}

TEST_CASE("longitudinal amplitude") {
  CHECK(z_amplitude(0.0, 1.0, ZMode::paper) == -2.0);
  CHECK(z_amplitude(0.2, 0.7, ZMode::paper) == doctest::Approx(-1.4));
  CHECK(z_amplitude(0.0, 1.0, ZMode::equation) == 1.0);
  CHECK(z_amplitude(0.1, 0.0, ZMode::equation, AmplitudeMethod::one_neighbor) ==
        doctest::Approx(1.0 / 0.6));
  CHECK(z_amplitude(0.1, 0.0, ZMode::equation, AmplitudeMethod::two_neighbor) ==
        doctest::Approx(1.0 / 0.55));
  CHECK(z_amplitude(0.1, 0.0, ZMode::equation) ==
        doctest::Approx(1.0 / (1.0 - 0.4 * oracle::zeta3_partial_sum(200000))).epsilon(1e-9));
  CHECK_THROWS_AS(z_amplitude(0.25, 0.0, ZMode::equation, AmplitudeMethod::one_neighbor),
                  InvalidArgument);
  CHECK_THROWS_AS(z_amplitude(0.1, 0.0, ZMode::equation, AmplitudeMethod::numeric),
                  InvalidArgument);
}
