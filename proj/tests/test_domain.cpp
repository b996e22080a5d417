#include <doctest.h>

#include <cmath>
#include <random>

#include "atomchain/domain.hpp"
#include "oracles.hpp"

using namespace atomchain;

TEST_CASE("zeta(3) value and bounds") {
  const double z = riemann_zeta3();
  CHECK(std::abs(std::round(z * 1000.0) / 1000.0 - 1.202) < 1e-12);
  CHECK(z == doctest::Approx(1.2020569031595942).epsilon(1e-15));
  CHECK(std::abs(z - oracle::zeta3_partial_sum(1'000'000)) < 1e-9);
  CHECK(z > 1.0);
  CHECK(z < pi * pi / 6.0);
}

TEST_CASE("atom positions run down the negative z axis") {
  const ChainSpec unit(629, 1.0, 628.0, 0.1);
  const auto p1 = atom_position(unit, 1);
  CHECK(p1[0] == 0.0);
  CHECK(p1[1] == 0.0);
  CHECK(p1[2] == 0.0);
  CHECK(atom_position(unit, 3)[2] == -2.0);
  CHECK(atom_position(unit, 629)[2] == -628.0);
  CHECK_THROWS_AS(atom_position(unit, 0), InvalidArgument);
  CHECK_THROWS_AS(atom_position(unit, 630), InvalidArgument);
}

TEST_CASE("chain validation") {
  CHECK_THROWS_AS(ChainSpec(0, 1.0, 628.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(ChainSpec(10, 0.0, 628.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(ChainSpec(10, -1.0, 628.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(ChainSpec(10, 1.0, 0.0, 0.1), InvalidArgument);
  CHECK_THROWS_AS(ChainSpec(10, 1.0, 628.0, -0.01), InvalidArgument);
  CHECK_NOTHROW(ChainSpec(1, 1.0, 628.0, 0.0));

  const ChainSpec demo(629, 1.0, 628.0, 0.1);
  CHECK(demo.ka0() == doctest::Approx(2.0 * pi / 628.0));
  CHECK(demo.warnings().empty());
  CHECK(demo.mid_index() == 315);
  CHECK(ChainSpec(10, 1.0, 20.0, 0.1).warnings().size() == 1);
}

TEST_CASE("mode vectors are orthonormal for random angles") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> th(0.0, pi), ph(0.0, 2.0 * pi);
  for (int trial = 0; trial < 200; ++trial) {
    const ModeSpec m(th(rng), Polarization::parallel, ph(rng));
    const auto s = m.direction();
    const auto ep = m.e_perpendicular();
    const auto el = m.e_parallel();
    CHECK(std::abs(norm(s) - 1.0) < 1e-12);
    CHECK(std::abs(norm(ep) - 1.0) < 1e-12);
    CHECK(std::abs(norm(el) - 1.0) < 1e-12);
    CHECK(std::abs(dot(ep, s)) < 1e-12);
    CHECK(std::abs(dot(el, s)) < 1e-12);
    CHECK(std::abs(dot(ep, el)) < 1e-12);
  }
}

TEST_CASE("phi = pi reduces to the axial-plane vectors") {
  for (double theta : {0.0, 0.3, pi / 2, 2.0, pi}) {
    const ModeSpec m(theta, Polarization::perpendicular);
    const auto s = m.direction();
    const auto ep = m.e_perpendicular();
    const auto el = m.e_parallel();
    CHECK(s[0] == doctest::Approx(-std::sin(theta)));
    CHECK(std::abs(s[1]) < 1e-15);
    CHECK(s[2] == doctest::Approx(std::cos(theta)));
    CHECK(std::abs(ep[0]) < 1e-15);
    CHECK(ep[1] == 1.0);
    CHECK(ep[2] == 0.0);
    CHECK(el[0] == doctest::Approx(std::cos(theta)));
    CHECK(std::abs(el[1]) < 1e-15);
    CHECK(el[2] == doctest::Approx(std::sin(theta)));
  }
}

TEST_CASE("dipole orientation and reference scales") {
  const DipoleOrientation o(0.7, 1.3);
  CHECK(std::abs(norm(o.unit()) - 1.0) < 1e-12);
  CHECK_THROWS_AS(DipoleOrientation(-0.1, 0.0), InvalidArgument);
  CHECK_THROWS_AS(DipoleOrientation(4.0, 0.0), InvalidArgument);
  CHECK_THROWS_AS(ModeSpec(-0.1, Polarization::parallel), InvalidArgument);

  CHECK_NOTHROW(ReferenceScales(26.0, std::nullopt));
  CHECK_THROWS_AS(ReferenceScales(0.0, std::nullopt), InvalidArgument);
  CHECK_THROWS_AS(ReferenceScales(std::nullopt, -1.0), InvalidArgument);
}

TEST_CASE("enum parsing") {
  CHECK(parse_z_mode("paper") == ZMode::paper);
  CHECK(parse_z_mode("equation") == ZMode::equation);
  CHECK_THROWS_AS(parse_z_mode("other"), InvalidArgument);
  CHECK(parse_polarization("parallel") == Polarization::parallel);
  CHECK_THROWS_AS(parse_polarization("circular"), InvalidArgument);
}
