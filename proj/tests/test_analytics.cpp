/*
 * Copyright 2026 the mtccsim authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "mtcc/analytics.hpp"
#include "mtcc/content.hpp"

using namespace mtcc;
using doctest::Approx;

TEST_CASE("binomial coefficients") {
  CHECK(binom(0, 0) == 1.0);
  CHECK(binom(5, 2) == 10.0);
  CHECK(binom(5, 0) == 1.0);
  CHECK(binom(5, 5) == 1.0);
  CHECK(binom(4, 7) == 0.0);
  CHECK(binom(7, -1) == 0.0);
  CHECK(binom(62, 31) == static_cast<double>(binom_ll(62, 31)));
  CHECK(binom(80, 40) == Approx(1.0750720873333618e23).epsilon(1e-9));
}

TEST_CASE("normalized delay limit matches hand-computed rationals") {
  // K=3, L=2, p=1/3. Per level: C(3,a) p^(a-1) (1-p)^(4-a) * a/min(a+1,3):
  // a=1: 3*(8/27)*(1/2) = 12/27;  a=2: 3*(1/3)(4/9)*(2/3) = 8/27;
  // a=3: (1/9)(2/3)*1 = 2/27.  Total 22/27.
  CHECK(delay_infinite(3, 2, 1.0 / 3.0) == Approx(22.0 / 27.0).epsilon(1e-15));
  // K=4, L=2, p=1/2: the occupancy factor is (1/2)^4 at every level:
  // (4/16)(1/2) + (6/16)(2/3) + (4/16)(3/4) + (1/16)(1) = 10/16 = 5/8.
  CHECK(delay_infinite(4, 2, 0.5) == Approx(5.0 / 8.0).epsilon(1e-15));
}

TEST_CASE("single-antenna closed form equals the level sum") {
  for (int users = 1; users <= 12; ++users) {
    for (double p : {0.05, 0.1, 0.3, 0.5, 0.7, 0.9}) {
      CAPTURE(users); CAPTURE(p);
      CHECK(delay_infinite(users, 1, p) == Approx(delay_decentralized_l1(users, p)).epsilon(1e-12));
    }
  }
  CHECK(delay_decentralized_l1(5, 0.0) == 5.0);
  CHECK(delay_decentralized_l1(5, 1.0) == 0.0);
}

TEST_CASE("blockwise accounting reproduces the per-level limit") {
  for (int users = 1; users <= 12; ++users) {
    for (int transmitters = 1; transmitters <= 6; ++transmitters) {
      for (double p : {0.1, 0.3, 0.5, 0.7, 0.9}) {
        CAPTURE(users); CAPTURE(transmitters); CAPTURE(p);
        CHECK(delay_infinite_blockwise(users, transmitters, p) ==
              Approx(delay_infinite(users, transmitters, p)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("time-shared delay specializes to the single-antenna hybrid form") {
  // At L=1 the cap on the first group's gain stays slack whenever
  // kc(1-p) >= 1, which holds on this grid (kc = 1 is excluded).
  for (int kc : {0, 2, 4, 6, 8}) {
    for (double p : {0.1, 0.25, 0.5}) {
      const int kd = 8 - kc;
      CAPTURE(kc); CAPTURE(p);
      CHECK(delay_tdma(kc, kd, 1, p) == Approx(delay_hybrid_l1(kc, kd, p)).epsilon(1e-12));
    }
  }
  CHECK(delay_tdma(2, 2, 1, 0.5) == Approx(5.0 / 4.0).epsilon(1e-15));  // 1/2 + 3/4
}

TEST_CASE("closed-form edges") {
  CHECK(delay_hybrid_l1(3, 5, 0.0) == Approx(8.0).epsilon(1e-15));
  CHECK(delay_hybrid_l1(4, 0, 0.3) == Approx(delay_centralized_l1(4, 0.3)).epsilon(1e-15));
  CHECK(delay_hybrid_l1(0, 4, 0.3) == Approx(delay_decentralized_l1(4, 0.3)).epsilon(1e-15));
  CHECK(delay_centralized_l1(4, 0.5) == Approx(2.0 / 3.0).epsilon(1e-15));
  for (int users = 1; users <= 10; ++users) {
    for (int transmitters = 1; transmitters <= 4; ++transmitters) {
      CHECK(delay_infinite(users, transmitters, 0.0) ==
            Approx(static_cast<double>(users) / std::min(transmitters, users)).epsilon(1e-14));
    }
  }
}

TEST_CASE("the delay limit never grows with more antennas or bigger caches") {
  for (int users = 2; users <= 10; ++users) {
    for (double p : {0.1, 0.4, 0.7}) {
      double prev = delay_infinite(users, 1, p);
      for (int transmitters = 2; transmitters <= users + 2; ++transmitters) {
        const double cur = delay_infinite(users, transmitters, p);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
      }
      // Once every multicast set is everyone, extra antennas are idle.
      CHECK(delay_infinite(users, users + 3, p) ==
            Approx(delay_infinite(users, users, p)).epsilon(1e-14));
    }
    for (int transmitters : {1, 2, 3}) {
      double prev = delay_infinite(users, transmitters, 0.0);
      for (double p : {0.1, 0.2, 0.3, 0.5, 0.7, 0.9, 1.0}) {
        const double cur = delay_infinite(users, transmitters, p);
        CHECK(cur <= prev + 1e-12);
        prev = cur;
      }
    }
  }
}

TEST_CASE("gain-cap shortfall is nonnegative and grows with the antenna count") {
  for (int users = 2; users <= 10; ++users) {
    for (double p : {0.1, 0.4, 0.8}) {
      CHECK(delta_tc(users, 1, p) == 0.0);
      double prev = 0.0;
      for (int transmitters = 1; transmitters <= users; ++transmitters) {
        const double cur = delta_tc(users, transmitters, p);
        CAPTURE(users); CAPTURE(transmitters); CAPTURE(p);
        CHECK(cur >= prev - 1e-14);
        prev = cur;
        CHECK(tc_lower_bound(users, transmitters, p) <=
              delay_infinite(users, transmitters, p) + 1e-12);
      }
    }
  }
}

TEST_CASE("first-order expansions and the split comparison") {
  const TaylorDelays t = taylor_delays(4, 2, 0.01);
  CHECK(t.hybrid == Approx(4 - 0.01 * (4 + 4 + 1)).epsilon(1e-15));
  CHECK(t.centralized == Approx(4 - 0.01 * (16 + 4)).epsilon(1e-15));
  CHECK(t.decentralized == Approx(4 - 0.01 * (4 + 6)).epsilon(1e-15));

  CHECK_FALSE(hybrid_superior(8, 4));  // 16 + 6 vs 28
  CHECK(hybrid_superior(8, 6));        // 36 + 1 vs 28
  CHECK(hybrid_superior(8, 8));
}

TEST_CASE("schedule accounting on a handcrafted cache") {
  // Two users, four symbols. User 0 caches file0{0,1} and file1{0}; user 1
  // caches file1{3}. Demands: user 0 wants file 0, user 1 wants file 1.
  CacheMap cache(2, 2, 4);
  cache.add(0, 0, 0); cache.add(0, 0, 1); cache.add(0, 1, 0);
  cache.add(1, 1, 3);
  const PieceTable table = PieceTable::build(cache, {0, 1});
  // One antenna: each set pays its longest wanted piece: 2 + 2 + max(0,1).
  CHECK(finite_delay_sum(table, 1) == 5);
  // Two antennas: both users in one set at both levels: max(2,2) + 1.
  CHECK(finite_delay_sum(table, 2) == 3);
}

TEST_CASE("gamma fit recovers known parameters") {
  std::mt19937_64 gen(2024);
  std::gamma_distribution<double> dist(5.0, 2.0);
  std::vector<double> xs(20000);
  for (auto& x : xs) x = dist(gen);
  const GammaFit fit = fit_gamma(xs);
  CHECK(fit.used == 20000);
  CHECK(fit.dropped_zeros == 0);
  CHECK(fit.params.shape == Approx(5.0).epsilon(0.03));
  CHECK(fit.params.scale == Approx(2.0).epsilon(0.03));
  CHECK(ks_statistic(xs, fit.params) < 0.02);
}

TEST_CASE("gamma distribution functions against independent forms") {
  // shape 1 is the exponential distribution.
  for (double x : {0.1, 0.5, 1.0, 2.5, 7.0}) {
    CHECK(gamma_cdf(x, {1.0, 2.0}) == Approx(1.0 - std::exp(-x / 2.0)).epsilon(1e-12));
  }
  // shape 1/2, scale 1 is the square of a half-normal: CDF(x) = erf(sqrt(x)).
  for (double x : {0.05, 0.3, 1.0, 3.0}) {
    CHECK(gamma_cdf(x, {0.5, 1.0}) == Approx(std::erf(std::sqrt(x))).epsilon(1e-10));
  }
  CHECK(gamma_cdf(0.0, {2.0, 1.0}) == 0.0);

  // Density integrates to one (trapezoid over a 14-sigma range).
  const GammaParams g{3.7, 1.3};
  const double h = 0.001;
  double integral = 0.0;
  for (double x = 0.0; x < 40.0; x += h) {
    integral += 0.5 * h * (gamma_pdf(x, g) + gamma_pdf(x + h, g));
  }
  CHECK(integral == Approx(1.0).epsilon(1e-6));
}

TEST_CASE("the distance statistic separates near from far models") {
  std::mt19937_64 gen(7);
  std::gamma_distribution<double> dist(2.0, 1.0);
  std::vector<double> xs(5000);
  for (auto& x : xs) x = dist(gen);
  CHECK(ks_statistic(xs, {2.0, 1.0}) < 0.03);
  CHECK(ks_statistic(xs, {6.0, 1.0}) > 0.3);
}

TEST_CASE("degenerate samples are refused, zeros are dropped") {
  const std::vector<double> constant{3.0, 3.0, 3.0, 3.0};
  CHECK_THROWS_AS(fit_gamma(constant), DegenerateSample);
  const std::vector<double> single{0.0, 0.0, 5.0};
  CHECK_THROWS_AS(fit_gamma(single), DegenerateSample);

  const std::vector<double> mixed{0.0, 0.0, 1.0, 2.0, 3.0};
  const GammaFit fit = fit_gamma(mixed, /*refine_mle=*/false);
  CHECK(fit.dropped_zeros == 2);
  CHECK(fit.used == 3);

  // Method of moments alone on {1,2,3,4}: mean 2.5, population variance 1.25,
  // so shape 5 and scale 0.5 exactly.
  const std::vector<double> plain{1.0, 2.0, 3.0, 4.0};
  const GammaFit mom = fit_gamma(plain, /*refine_mle=*/false);
  CHECK(mom.params.shape == Approx(5.0).epsilon(1e-12));
  CHECK(mom.params.scale == Approx(0.5).epsilon(1e-12));
}
