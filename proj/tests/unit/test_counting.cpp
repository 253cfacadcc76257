#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "muflux/counting.hpp"
#include "muflux/errors.hpp"
#include "muflux/random.hpp"

using namespace muflux;

TEST_CASE("accidental rate at ground level") {
  const RateValue singles{701.57, 0.78};
  const auto na = accidental_rate(singles, singles, {20.0, 2.0});
  CHECK(na.rate == doctest::Approx(0.3281336432666667).epsilon(1e-12));
  CHECK(na.sigma == doctest::Approx(0.03281742007602028).epsilon(1e-10));
  CHECK(std::round(na.rate * 100) / 100 == doctest::Approx(0.33));
  CHECK(std::round(na.sigma * 100) / 100 == doctest::Approx(0.03));
}

TEST_CASE("accidental rate edge cases") {
  CHECK(accidental_rate({0.0, 0.0}, {701.57, 0.78}, {20.0, 2.0}).rate == 0.0);
  // Underground singles of 1047.4 CPM.
  const auto na = accidental_rate({1047.4, 0.0}, {1047.4, 0.0}, {20.0, 0.0});
  CHECK(na.rate == doctest::Approx(0.7313645066666669).epsilon(1e-12));
  CHECK(na.sigma == 0.0);
  CHECK_THROWS_AS(accidental_rate({1, 0}, {1, 0}, {0.0, 0.0}), DomainError);
}

TEST_CASE("accidental rate symmetry and homogeneity") {
  CounterRng rng(3, 0);
  const CoincidenceSetup setup{20.0, 2.0};
  for (int i = 0; i < 200; ++i) {
    const RateValue a{rng.uniform(0.0, 2000.0), rng.uniform(0.0, 5.0)};
    const RateValue b{rng.uniform(0.0, 2000.0), rng.uniform(0.0, 5.0)};
    const double c = rng.uniform(0.1, 10.0);
    const auto ab = accidental_rate(a, b, setup);
    const auto ba = accidental_rate(b, a, setup);
    CHECK(ab.rate == doctest::Approx(ba.rate).epsilon(1e-14));
    CHECK(ab.sigma == doctest::Approx(ba.sigma).epsilon(1e-14));
    const auto scaled = accidental_rate({c * a.rate, a.sigma}, {c * b.rate, b.sigma}, setup);
    CHECK(scaled.rate == doctest::Approx(c * c * ab.rate).epsilon(1e-12));
  }
}

TEST_CASE("poisson rates from counts") {
  const auto nc = rate_from_counts(48000, 1200.0);
  CHECK(nc.rate() == 40.0);
  CHECK(nc.sigma() == doctest::Approx(0.18257418583505539).epsilon(1e-12));
  CHECK(std::round(nc.sigma() * 100) / 100 == doctest::Approx(0.18));

  const auto ten = rate_from_counts(100, 10.0);
  CHECK(ten.rate() == 10.0);
  CHECK(ten.sigma() == 1.0);

  const auto zero = rate_from_counts(0, 60.0);
  CHECK(zero.rate() == 0.0);
  CHECK(zero.sigma() == 0.0);
  CHECK(zero.zero_counts());

  CHECK_THROWS_AS(rate_from_counts(10, 0.0), DomainError);
  CHECK_THROWS_AS(rate_from_counts(10, -5.0), DomainError);
}

TEST_CASE("relative poisson error is 1/sqrt(N)") {
  CounterRng rng(5, 0);
  for (int i = 0; i < 200; ++i) {
    const auto n = 1 + rng.next_u64() % 10000000;
    const auto m = rate_from_counts(n, rng.uniform(0.1, 1e5));
    CHECK(m.sigma() / m.rate() == doctest::Approx(1.0 / std::sqrt(static_cast<double>(n))));
  }
}

TEST_CASE("accidental subtraction") {
  const auto c = corrected_coincidence({40.0, 0.18}, {0.33, 0.03});
  CHECK(c.rate == doctest::Approx(39.67));
  CHECK(c.sigma == doctest::Approx(0.18248287590894657).epsilon(1e-12));
  CHECK_FALSE(c.accidental_dominated);

  const auto same = corrected_coincidence({12.5, 0.4}, {0.0, 0.0});
  CHECK(same.rate == 12.5);
  CHECK(same.sigma == 0.4);
  CHECK_FALSE(same.accidental_dominated);

  const auto deep = corrected_coincidence({1.4, 0.02}, {0.73, 0.08});
  CHECK(deep.rate == doctest::Approx(0.67));
  CHECK(deep.sigma == doctest::Approx(std::hypot(0.02, 0.08)));
  CHECK(deep.accidental_dominated);

  const auto swamped = corrected_coincidence({0.5, 0.1}, {0.73, 0.08});
  CHECK(swamped.rate == 0.0);
  CHECK(swamped.accidental_dominated);

  CHECK_THROWS_AS(corrected_coincidence({-1.0, 0.0}, {0.0, 0.0}), DomainError);
}

TEST_CASE("corrected rate is never negative") {
  CounterRng rng(8, 0);
  for (int i = 0; i < 500; ++i) {
    const auto c = corrected_coincidence({rng.uniform(0.0, 5.0), rng.uniform(0.0, 1.0)},
                                         {rng.uniform(0.0, 5.0), rng.uniform(0.0, 1.0)});
    CHECK(c.rate >= 0.0);
  }
}
