#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <stdexcept>

#include "stripsar/complex_matrix.hpp"
#include "stripsar/radar.hpp"

using namespace stripsar;

TEST_CASE("ers2 preset holds the published acquisition parameters") {
    RadarParams p = RadarParams::ers2();
    CHECK(p.fc == doctest::Approx(5.3e9).epsilon(1e-12));
    CHECK(p.fr == doctest::Approx(18.97e6).epsilon(1e-12));
    CHECK(p.prf == doctest::Approx(1679.0).epsilon(1e-12));
    CHECK(p.chirp == doctest::Approx(37.1e-6).epsilon(1e-12));
    CHECK(p.bandwidth == doctest::Approx(15.545e6).epsilon(1e-12));
    CHECK(p.v == doctest::Approx(7120.0).epsilon(1e-12));
    CHECK(p.r0 == doctest::Approx(830.9e3).epsilon(1e-12));
    // FM rate consistent with its own bandwidth and duration.
    CHECK(p.beta == doctest::Approx(p.bandwidth / p.chirp).epsilon(1e-14));
    CHECK(p.consistency_warning().empty());
    CHECK_NOTHROW(p.validate());
}

TEST_CASE("wavelength follows c / fc") {
    RadarParams p = RadarParams::ers2();
    CHECK(p.wavelength() == doctest::Approx(kSpeedOfLight / 5.3e9).epsilon(1e-14));
    CHECK(p.wavelength() == doctest::Approx(0.0565646).epsilon(1e-5));
}

TEST_CASE("validate rejects non-positive or inconsistent fields") {
    RadarParams p = RadarParams::ers2();
    p.fc = 0.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = RadarParams::ers2();
    p.v = -1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = RadarParams::ers2();
    p.bandwidth = p.fr * 1.5;  // undersampled chirp
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("consistency warning fires when beta disagrees with bandwidth") {
    RadarParams p = RadarParams::ers2();
    p.beta *= 10.0;
    CHECK_FALSE(p.consistency_warning().empty());
}

TEST_CASE("domain names are distinct") {
    CHECK(std::string(domain_name(Domain::signal)) == "signal");
    CHECK(std::string(domain_name(Domain::range_dechirped)) == "range_dechirped");
    CHECK(std::string(domain_name(Domain::freq2d)) == "freq2d");
    CHECK(std::string(domain_name(Domain::stolt_mapped)) == "stolt_mapped");
}

TEST_CASE("require_domain rejects empty and mistagged matrices") {
    ComplexMatrix empty;
    CHECK_THROWS_AS(require_domain(empty, Domain::signal, "test"), std::invalid_argument);
    ComplexMatrix m(2, 2);
    m.domain = Domain::freq2d;
    CHECK_THROWS_AS(require_domain(m, Domain::signal, "test"), std::invalid_argument);
    CHECK_NOTHROW(require_domain(m, Domain::freq2d, "test"));
}
