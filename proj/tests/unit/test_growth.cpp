#include <doctest.h>

#include <cmath>
#include <sstream>

#include "nds/errors.hpp"
#include "nds/growth.hpp"

using nds::BigCount;
using nds::GrowthSeries;

TEST_SUITE("growth") {
  TEST_CASE("log of big counts") {
    CHECK(nds::log_count(BigCount(1)) == 0.0);
    CHECK(nds::log_count(BigCount(1000)) == doctest::Approx(std::log(1000.0)));
    const BigCount huge = BigCount(1) << 5000;
    CHECK(nds::log_count(huge) == doctest::Approx(5000 * std::log(2.0)));
    CHECK_THROWS_AS(nds::log_count(BigCount(0)), nds::DomainError);
  }

  TEST_CASE("series invariants") {
    GrowthSeries s;
    s.push(1, 2);
    s.push(3, 8);
    CHECK_THROWS_AS(s.push(3, 9), nds::ConfigurationError);
    CHECK_THROWS_AS(s.push(2, 9), nds::ConfigurationError);
    CHECK_THROWS_AS(s.push(4, 0), nds::ConfigurationError);
    CHECK(s.size() == 2);
  }

  TEST_CASE("csv format") {
    GrowthSeries s;
    s.push(1, 1);
    s.push(2, 4);
    std::ostringstream os;
    s.write_csv(os);
    const std::string text = os.str();
    CHECK(text.rfind("n,count,log_count\n", 0) == 0);
    CHECK(text.find("\n1,1,0") != std::string::npos);
    CHECK(text.find("\n2,4,") != std::string::npos);
  }

  TEST_CASE("exact exponential growth fits its rate") {
    GrowthSeries s;
    for (long n = 1; n <= 10; ++n) s.push(n, BigCount(1) << n);
    const auto fit = nds::fit_growth_rate(s);
    CHECK(fit.slope == doctest::Approx(std::log(2.0)));
    CHECK(fit.stderr_ == doctest::Approx(0.0).epsilon(1e-9));
  }

  TEST_CASE("constant and short series fit to zero") {
    GrowthSeries c;
    for (long n = 1; n <= 6; ++n) c.push(n, 7);
    CHECK(nds::fit_growth_rate(c).slope == doctest::Approx(0.0));
    GrowthSeries one;
    one.push(3, 5);
    CHECK(nds::fit_growth_rate(one).slope == 0.0);
  }

  TEST_CASE("a transient at the smallest n is dropped") {
    GrowthSeries s;
    s.push(1, 1000);
    for (long n = 2; n <= 10; ++n) s.push(n, BigCount(3) << n);
    const auto fit = nds::fit_growth_rate(s);
    CHECK(fit.dropped == 1);
    CHECK(fit.slope == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("estimates are floored at zero") {
    GrowthSeries s;
    for (long n = 1; n <= 6; ++n) s.push(n, 100 - n);
    nds::BowenParams p{0.1, 1, 6, 100};
    const auto e = nds::make_estimate(s, p);
    CHECK(e.value == 0.0);
    CHECK(e.value_bits() == 0.0);
  }

  TEST_CASE("bits are nats over log 2") {
    GrowthSeries s;
    for (long n = 1; n <= 6; ++n) s.push(n, BigCount(1) << (2 * n));
    const auto e = nds::make_estimate(s, nds::BowenParams{0.1, 1, 6, 100});
    CHECK(e.value_bits() == doctest::Approx(2.0));
  }

  TEST_CASE("parameter validation") {
    CHECK_NOTHROW(nds::BowenParams{}.validate());
    CHECK_THROWS_AS((nds::BowenParams{0.0, 4, 12, 100}.validate()), nds::ConfigurationError);
    CHECK_THROWS_AS((nds::BowenParams{1.0, 4, 12, 100}.validate()), nds::ConfigurationError);
    CHECK_THROWS_AS((nds::BowenParams{0.1, 0, 12, 100}.validate()), nds::ConfigurationError);
    CHECK_THROWS_AS((nds::BowenParams{0.1, 4, 7, 100}.validate()), nds::ConfigurationError);
    CHECK_THROWS_AS((nds::BowenParams{0.1, 4, 12, 1}.validate()), nds::ConfigurationError);
  }
}
