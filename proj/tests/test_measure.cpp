#include "fracparts/measure.hpp"
#include "fracparts/quadrature.hpp"
#include "fracparts/rational.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstdlib>
#include <string>

using namespace fracparts;

TEST_CASE("densities pinned values") {
    CHECK(density_h(0.0) == 1.0);
    CHECK(density_h(0.5) == 0.0);
    CHECK(density_h(-1.0) == Catch::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(density_hM(-1.0, 2) == Catch::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(density_hM(-2.0, 1) == Catch::Approx(std::exp(-2.0)).epsilon(1e-14));
    CHECK(density_hM(0.25, 4) == 0.0);
}

TEST_CASE("h^(M) integrates to one for M up to 6") {
    for (int M = 1; M <= 6; ++M) {
        auto f = [M](double x) { return density_hM(x, M); };
        double I = integrate(f, -60.0, 0.0, 1e-11);
        CHECK(I == Catch::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("numerical self-convolution of h reproduces h^(2)") {
    for (int g = 0; g <= 100; ++g) {
        double x = -10.0 + 10.0 * g / 100.0;
        auto f = [x](double t) { return density_h(t) * density_h(x - t); };
        double conv = integrate(f, x, 0.0, 1e-9);
        CHECK(std::fabs(conv - density_hM(x, 2)) < 1e-6);
    }
}

TEST_CASE("small-product law pinned values and quadrature oracle") {
    CHECK(tail_small_product(0.3, 1) == Catch::Approx(0.3).epsilon(1e-14));
    for (int M = 1; M <= 5; ++M) CHECK(tail_small_product(1.0, M) == Catch::Approx(1.0).epsilon(1e-12));
    CHECK(tail_small_product(0.5, 2) == Catch::Approx(0.5 * (1.0 + std::log(2.0))).epsilon(1e-13));

    for (int M = 1; M <= 5; ++M) {
        for (double delta : {1.0, 2.0 / 3.0, 0.5, 0.1, 0.01}) {
            double closed = tail_small_product(delta, M);
            double quad = integral_neg_log_pow(delta, M - 1) /
                          std::exp(std::lgamma(static_cast<double>(M)));
            CHECK(closed == Catch::Approx(quad).epsilon(1e-8));
        }
    }
}

TEST_CASE("tail law pinned values and quadrature oracle") {
    for (int M = 1; M <= 5; ++M) CHECK(tail_F_exceeds(1.0, M) == 1.0);
    CHECK(tail_F_exceeds(2.0, 1) == 0.5);  // geometric: ||beta|| <= 1/4 has measure 1/2
    CHECK(tail_F_exceeds(std::exp(1.0), 2) == Catch::Approx(2.0 * std::exp(-1.0)).epsilon(1e-13));

    for (int M = 1; M <= 5; ++M) {
        for (double lambda : {1.0, 1.5, 2.0, 10.0, 100.0}) {
            double closed = tail_F_exceeds(lambda, M);
            double quad = integral_log_pow_over_x2(lambda, M - 1) /
                          std::exp(std::lgamma(static_cast<double>(M)));
            CHECK(closed == Catch::Approx(quad).epsilon(1e-8));
        }
    }

    TailLaw law{3};
    double prev = 1.0;
    for (double lambda : {1.0, 1.5, 2.0, 4.0, 16.0, 256.0}) {
        double v = law(lambda);
        CHECK(v <= prev + 1e-15);  // decreasing in lambda
        prev = v;
    }
}

TEST_CASE("union tail bound pinned values and the integral identity") {
    CHECK(thm65_bound(1.0, 5, 3) == 5.0);
    CHECK(thm65_bound(4.0, 1, 1) == Catch::Approx((1.0 + std::log(4.0)) / 4.0).epsilon(1e-13));

    for (int M = 1; M <= 4; ++M) {
        for (double lambda : {2.0, 10.0}) {
            double closed = thm65_bound(lambda, 1, M);
            double quad = integral_log_pow_over_x2(lambda, M) /
                          std::exp(std::lgamma(static_cast<double>(M) + 1.0));
            CHECK(closed == Catch::Approx(quad).epsilon(1e-8));
        }
    }
}

TEST_CASE("partial exponential product inequality in exact rationals") {
    CounterRng rng(31337);
    for (int trial = 0; trial < 50; ++trial) {
        int M = 1 + static_cast<int>(rng.next_unit() * 6);
        Rational a(1 + static_cast<long long>(rng.next_unit() * 40),
                   1 + static_cast<long long>(rng.next_unit() * 12));
        Rational b(1 + static_cast<long long>(rng.next_unit() * 40),
                   1 + static_cast<long long>(rng.next_unit() * 12));
        auto partial = [M](const Rational& t) {
            Rational term = 1, s = 1;
            for (int m = 1; m <= M; ++m) {
                term *= t;
                term /= m;
                s += term;
            }
            return s;
        };
        CHECK(partial(a + b) <= partial(a) * partial(b));
    }
}

TEST_CASE("threshold inversion round trip and envelopes") {
    CHECK(invert_threshold(0.25, 0) == Catch::Approx(4.0).epsilon(1e-12));
    for (int M : {1, 2, 3}) {
        for (double delta : {0.5, 0.1, 0.01}) {
            double lambda = invert_threshold(delta, M);
            double forward = thm65_bound(lambda, 1, M);
            CHECK(forward == Catch::Approx(delta).epsilon(1e-9));
            CHECK(lambda < std::pow(4.0, M) / (delta * delta));
        }
    }
}

TEST_CASE("epsilon threshold pinned values and chain consistency") {
    CHECK(thm13_threshold(0.5, 1, 0) == Catch::Approx(2.0).epsilon(1e-13));
    CHECK(thm13_threshold(0.5, 1, 1) ==
          Catch::Approx(8.0 * 2.0 * (1.0 + std::log(2.0))).epsilon(1e-13));
    for (int M : {1, 2}) {
        for (double eps : {0.5, 0.1}) {
            for (unsigned long long cardX : {1ull, 8ull, 64ull}) {
                double thr = thm13_threshold(eps, cardX, M);
                double lam = invert_threshold(eps / static_cast<double>(cardX), M);
                CHECK(thr >= lam);  // the printed threshold majorizes the exact cut
            }
        }
    }
}

TEST_CASE("mc single tail matches the exact law") {
    auto e1 = mc_single_tail({1}, 2.0, 1, 1, 1000000, 1);
    CHECK(std::fabs(e1.estimate - 0.5) <= 4.0 * e1.stderr_est);

    auto e2 = mc_single_tail({2, 3}, 5.0, 1, 2, 400000, 2);
    CHECK(std::fabs(e2.estimate - tail_F_exceeds(5.0, 1)) <= 4.0 * e2.stderr_est);

    auto e3 = mc_single_tail({1}, 1.0, 2, 1, 50000, 3);
    CHECK(e3.estimate == 1.0);  // F >= 1 everywhere
}

TEST_CASE("mc estimates are reproducible and thread-count invariant") {
    const char* saved = std::getenv("FRACPARTS_THREADS");
    std::string saved_value = saved ? saved : "";
    setenv("FRACPARTS_THREADS", "1", 1);
    auto a = mc_single_tail({1}, 2.0, 1, 1, 200000, 77);
    setenv("FRACPARTS_THREADS", "4", 1);
    auto b = mc_single_tail({1}, 2.0, 1, 1, 200000, 77);
    if (saved)
        setenv("FRACPARTS_THREADS", saved_value.c_str(), 1);
    else
        unsetenv("FRACPARTS_THREADS");
    CHECK(a.hits == b.hits);
}

TEST_CASE("mc z-scores over 100 seeds are standard-normal consistent") {
    const double p = 0.5;  // exact law at lambda = 2, M = N = 1
    const std::uint64_t n = 20000;
    double zsum = 0.0;
    int extreme = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        auto e = mc_single_tail({1}, 2.0, 1, 1, n, seed);
        double z = (e.estimate - p) / std::sqrt(p * (1 - p) / static_cast<double>(n));
        zsum += z;
        if (std::fabs(z) > 2.0) ++extreme;
    }
    CHECK(std::fabs(zsum / 100.0) < 0.5);
    CHECK(extreme < 12);
}

TEST_CASE("mc sum exceedance stays under the union tail bound") {
    auto X = LatticeSet::from_points({{1}, {2}, {3}, {4}, {5}, {6}, {7}, {8}});
    auto r0 = mc_sum_exceedance(X, 1.0, 1, 1, 20000, 5);
    CHECK(r0.mc.estimate == 1.0);  // the sum always reaches 1
    CHECK(r0.bound >= 1.0);

    auto r = mc_sum_exceedance(X, 100.0, 1, 1, 100000, 6);
    CHECK(r.ok);
    CHECK(r.mc.estimate - 4.0 * r.mc.stderr_est <= r.bound);

    // epsilon form: the fraction above the printed threshold stays below eps
    for (double eps : {0.5, 0.1}) {
        double thr = thm13_threshold(eps, X.size(), 1);
        auto re = mc_sum_exceedance(X, thr, 1, 1, 100000, 7);
        CHECK(re.mc.estimate - 4.0 * re.mc.stderr_est <= eps);
    }
}
