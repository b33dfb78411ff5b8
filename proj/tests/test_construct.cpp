#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "slopelab/construct.hpp"
#include "slopelab/errors.hpp"
#include "slopelab/geometry.hpp"

using namespace slopelab;
using construct::ConstructionCertificate;
using construct::Direction;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

template <class Fn>
errc code_of(Fn&& fn) {
  try {
    fn();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected a slopelab::error");
  return errc::io_error;
}

// Built once; several cases below audit or tamper with it.
const ConstructionCertificate& cert2() {
  static const ConstructionCertificate cert = construct::build_counterexample(2);
  return cert;
}

}  // namespace

TEST_CASE("default epsilon schedule") {
  CHECK(construct::default_epsilon(1) == 0.5);
  CHECK(construct::default_epsilon(2) == 0.5);
  CHECK(construct::default_epsilon(3) == 0.25);
  CHECK(construct::default_epsilon(4) == 0.25);
  CHECK(construct::default_epsilon(5) == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(std::string(construct::name(Direction::Up)) == "Up");
  CHECK(std::string(construct::name(Direction::Down)) == "Down");
}

TEST_CASE("find_extension first stage") {
  construct::ExtensionQuery query;
  query.prefix = staircase::build_params({1.0}, {}, {});
  query.direction = Direction::Up;
  query.epsilon = 0.25;

  const auto res = construct::find_extension(query);

  // Ladder starts at max height 1 and doubles, so M is a power of two.
  const double k = std::log2(res.M);
  CHECK(k == doctest::Approx(std::round(k)).epsilon(1e-12));
  CHECK(res.M == 32.0);
  CHECK(res.xi > query.prefix.u_last());
  CHECK(res.xi < query.prefix.u_last() + res.M);
  CHECK(res.xi == doctest::Approx(6.84371).epsilon(1e-4));

  // The witness must clear the threshold with twice the map accuracy to spare.
  const double threshold = kHalfPi * (1.0 - query.epsilon);
  CHECK(res.map_accuracy > 0);
  CHECK(res.theta >= threshold + 2 * res.map_accuracy);
  CHECK(res.theta == doctest::Approx(1.21661).epsilon(2e-2));
}

TEST_CASE("find_extension rejects bad input") {
  construct::ExtensionQuery query;
  query.prefix = staircase::build_params({1.0}, {}, {});
  query.direction = Direction::Up;

  query.epsilon = 0.0;
  CHECK(code_of([&] { construct::find_extension(query); }) ==
        errc::invalid_argument);
  query.epsilon = 1.0;
  CHECK(code_of([&] { construct::find_extension(query); }) ==
        errc::invalid_argument);

  query.epsilon = 0.25;
  query.search.growth = 1.0;
  CHECK(code_of([&] { construct::find_extension(query); }) ==
        errc::invalid_argument);
}

TEST_CASE("find_extension reports a capped ladder") {
  construct::ExtensionQuery query;
  query.prefix = staircase::build_params({1.0}, {}, {});
  query.direction = Direction::Up;
  query.epsilon = 0.05;  // threshold 1.4923, hopeless for M <= 2
  query.search.cap_factor = 2.0;
  query.search.map_resolution = 300;
  CHECK(code_of([&] { construct::find_extension(query); }) ==
        errc::cap_exceeded);
}

TEST_CASE("build_counterexample rejects bad schedules") {
  CHECK(code_of([] { construct::build_counterexample(1); }) ==
        errc::invalid_argument);
  CHECK(code_of([] { construct::build_counterexample(2, {0.5}); }) ==
        errc::invalid_argument);
  CHECK(code_of([] { construct::build_counterexample(2, {1.5, 0.5}); }) ==
        errc::invalid_argument);
}

TEST_CASE("two stage certificate invariants") {
  const auto& cert = cert2();

  REQUIRE(cert.stages.size() == 2);
  const auto& s1 = cert.stages[0];
  const auto& s2 = cert.stages[1];

  CHECK(s1.n == 1);
  CHECK(s2.n == 2);
  CHECK(s1.direction == Direction::Up);
  CHECK(s2.direction == Direction::Down);
  CHECK(s1.epsilon_n == 0.5);
  CHECK(s2.epsilon_n == 0.5);

  // Ladder values are exact: stage 1 starts from height 1, stage 2 from 33.
  CHECK(s1.M_n == 32.0);
  CHECK(s2.M_n == 1056.0);
  CHECK(s1.u_n == 1.0);
  CHECK(s2.u_n == 33.0);

  // Witnesses interlace their extensions.
  CHECK(s1.xi_n > s1.u_n);
  CHECK(s1.xi_n < s1.u_n + s1.M_n);
  CHECK(s2.xi_n > s2.u_n);
  CHECK(s2.xi_n < s2.u_n + s2.M_n);
  CHECK(s1.xi_n == doctest::Approx(6.84371).epsilon(1e-4));
  CHECK(s2.xi_n == doctest::Approx(225.842).epsilon(1e-4));

  // Certified slopes on the finished domain clear the published thresholds.
  CHECK(s1.theta_n >= kHalfPi * (1.0 - s1.epsilon_n));
  CHECK(-s2.theta_n >= kHalfPi * (1.0 - s2.epsilon_n));
  CHECK(s1.theta_n == doctest::Approx(1.23179).epsilon(1e-3));
  CHECK(s2.theta_n == doctest::Approx(-1.22476).epsilon(1e-3));
  CHECK(s1.map_accuracy > 0);
  CHECK(s1.map_accuracy < 2e-4);
  CHECK(s2.map_accuracy == s1.map_accuracy);  // same final map

  // Height bookkeeping: up-stage raises the top, down-stage drops the bottom.
  CHECK(s1.v_n == 33.0);
  CHECK(s1.w_n == 1.0);
  CHECK(s2.v_n == 33.0);
  CHECK(s2.w_n == 1057.0);

  REQUIRE(cert.final_params.u.size() == 3);
  CHECK(cert.final_params.u == std::vector<double>{1.0, 33.0, 1089.0});
  CHECK(cert.final_params.v == std::vector<double>{33.0, 33.0});
  CHECK(cert.final_params.w == std::vector<double>{1.0, 1057.0});
}

TEST_CASE("verify_certificate accepts the builder output") {
  const auto report = construct::verify_certificate(cert2(), 1.0);

  CHECK(report.structural_ok);
  CHECK(report.pass);
  CHECK(report.detail == "all stages clear their thresholds");
  CHECK(report.map_accuracy > 0);
  REQUIRE(report.stages.size() == 2);
  for (const auto& check : report.stages) {
    CHECK(check.pass);
    CHECK(check.threshold == doctest::Approx(kHalfPi * 0.5).epsilon(1e-15));
    CHECK(check.margin > 0);
    CHECK(check.delta <= check.margin);
  }
  CHECK(report.stages[0].theta_recomputed > 0);
  CHECK(report.stages[1].theta_recomputed < 0);
}

TEST_CASE("verify_certificate rejects strictness below one") {
  CHECK(code_of([] {
    construct::verify_certificate(ConstructionCertificate{}, 0.5);
  }) == errc::invalid_argument);
}

TEST_CASE("verify_certificate structural audit") {
  auto contains = [](const std::string& hay, const char* needle) {
    return hay.find(needle) != std::string::npos;
  };

  {
    const auto report =
        construct::verify_certificate(ConstructionCertificate{}, 1.0);
    CHECK_FALSE(report.structural_ok);
    CHECK(contains(report.detail, "no stages"));
  }
  {
    auto cert = cert2();
    cert.final_params.u.pop_back();
    const auto report = construct::verify_certificate(cert, 1.0);
    CHECK_FALSE(report.structural_ok);
    CHECK(contains(report.detail, "ladder"));
  }
  {
    auto cert = cert2();
    cert.stages[1].n = 3;
    const auto report = construct::verify_certificate(cert, 1.0);
    CHECK_FALSE(report.structural_ok);
    CHECK(contains(report.detail, "numbering"));
  }
  {
    auto cert = cert2();
    cert.stages[1].direction = Direction::Up;
    const auto report = construct::verify_certificate(cert, 1.0);
    CHECK_FALSE(report.structural_ok);
    CHECK(contains(report.detail, "alternate"));
  }
  {
    auto cert = cert2();
    cert.stages[0].xi_n = cert.stages[0].u_n + cert.stages[0].M_n + 1.0;
    const auto report = construct::verify_certificate(cert, 1.0);
    CHECK_FALSE(report.structural_ok);
    CHECK(contains(report.detail, "interlacing"));
  }
  {
    auto cert = cert2();
    cert.final_params.u[1] += 1.0;
    const auto report = construct::verify_certificate(cert, 1.0);
    CHECK_FALSE(report.structural_ok);
    CHECK(contains(report.detail, "disagrees"));
  }
}

TEST_CASE("verify_certificate flags an unreachable threshold") {
  // Shrinking a recorded epsilon raises that stage's threshold to 1.5550,
  // which the certified geometry cannot meet; the audit itself stays clean.
  auto cert = cert2();
  cert.stages[0].epsilon_n = 0.01;
  const auto report = construct::verify_certificate(cert, 1.0);
  CHECK(report.structural_ok);
  CHECK_FALSE(report.pass);
  REQUIRE(report.stages.size() == 2);
  CHECK_FALSE(report.stages[0].pass);
  CHECK(report.stages[1].pass);
  CHECK(report.detail == "a recomputed slope missed its threshold");
}
