#include "fracparts/extremal.hpp"
#include "fracparts/quadrature.hpp"
#include "fracparts/rng.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>

using namespace fracparts;

namespace {

// offset grid per repo convention: x_g = (g + 1/2) / G
double grid_pt(int g, int G) { return (g + 0.5) / G; }

}  // namespace

TEST_CASE("K pinned values") {
    CHECK(eval_K(0.0) == 1.0);
    CHECK(eval_K(0.5) == Catch::Approx(4.0 / (kPi * kPi)).epsilon(1e-14));
    CHECK(eval_K(1.0) == 0.0);
    CHECK(eval_K(-3.0) == 0.0);
}

TEST_CASE("H oddness, zero, and the sign inequality") {
    CHECK(eval_H(0.0) == 0.0);
    for (double x : {0.3, 1.7, -2.4, 0.04, 11.5, -0.5}) {
        double sgn = x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0);
        CHECK(std::fabs(sgn - eval_H(x)) <= eval_K(x) + 1e-12);
        CHECK(eval_H(-x) == Catch::Approx(-eval_H(x)).margin(1e-13));
    }
    // integer points: K vanishes so H must hit the sign exactly
    CHECK(eval_H(1.0) == Catch::Approx(1.0).margin(1e-13));
    CHECK(eval_H(-2.0) == Catch::Approx(-1.0).margin(1e-13));
}

TEST_CASE("J from the series matches the Fourier-integral oracle") {
    // J(x) = int_{-1}^{1} hat J(t) e(t x) dt; hat J is even so the cosine form
    auto J_oracle = [](double x) {
        auto f = [&](double t) { return fourier_J(t) * std::cos(kTwoPi * t * x); };
        return 2.0 * integrate(f, 0.0, 1.0, 1e-13);
    };
    for (double x : {0.0, 0.3, 0.5, 1.0, 1.7, -2.4, 0.001, 0.9999, 5.25}) {
        CHECK(eval_J(x) == Catch::Approx(J_oracle(x)).margin(5e-12));
    }
}

TEST_CASE("J integrates to hat J(0) = 1 over the line") {
    auto j = [](double x) { return eval_J(x); };
    double integral = 2.0 * integrate(j, 0.0, 300.0, 1e-10);
    // |J| decays like 1/x^3 beyond the cut, so the dropped tail is ~1e-6/2
    CHECK(integral == Catch::Approx(1.0).margin(2e-6));
}

TEST_CASE("fourier_J and fourier_K pinned values and continuity at 0") {
    CHECK(fourier_K(0.5) == 0.5);
    CHECK(fourier_K(0.0) == 1.0);
    CHECK(fourier_K(1.2) == 0.0);
    CHECK(fourier_J(0.5) == Catch::Approx(0.5).margin(1e-15));
    CHECK(fourier_J(0.0) == 1.0);
    CHECK(fourier_J(1.2) == 0.0);
    CHECK(fourier_J(1.0) == 0.0);
    // series window joins the closed form smoothly
    CHECK(fourier_J(1e-4) == Catch::Approx(fourier_J(1.0000001e-4)).margin(1e-12));
    CHECK(fourier_J(2e-7) == Catch::Approx(1.0).margin(1e-6));
}

TEST_CASE("kernel coefficient tables") {
    TrigPoly k1 = kernel_kL(1);
    CHECK(k1.coeff(0).real() == 1.0);
    CHECK(k1.coeff(1).real() == 0.5);
    CHECK(k1.coeff(-1).real() == 0.5);

    for (int L : {1, 2, 7, 33}) {
        CHECK(kernel_jL(L).coeff(0).real() == 1.0);
        TrigPoly k = kernel_kL(L);
        for (int g = 0; g < 10000; ++g)
            CHECK(k.eval_real(grid_pt(g, 10000)) >= -1e-10);
    }
}

TEST_CASE("kernel tables recovered by inverse DFT from samples") {
    for (int L : {1, 5, 16}) {
        TrigPoly j = kernel_jL(L);
        TrigPoly k = kernel_kL(L);
        TrigPoly t = tau(std::max(L, 2));
        auto check_roundtrip = [](const TrigPoly& p) {
            TrigPoly q = trigpoly_from_samples([&](double x) { return p.eval(x); }, p.degree(),
                                               1.0 / (4.0 * (p.degree() + 1)));
            for (int l = -p.degree(); l <= p.degree(); ++l)
                CHECK(std::abs(q.coeff(l) - p.coeff(l)) < 1e-10);
        };
        check_roundtrip(j);
        check_roundtrip(k);
        check_roundtrip(t);
    }
}

TEST_CASE("psi * j_L is odd, dominated by psi, and close to it") {
    for (int L : {1, 3, 10, 32}) {
        TrigPoly conv = psi_conv_jL(L);
        TrigPoly k = kernel_kL(L);
        CHECK(std::abs(conv.coeff(0)) == 0.0);
        CHECK(conv.eval_real(0.0) == Catch::Approx(0.0).margin(1e-12));
        CHECK(conv.symmetry_defect() < 1e-15);
        for (int g = 0; g < 4000; ++g) {
            double x = grid_pt(g, 4000);
            double v = conv.eval_real(x);
            double p = eval_psi(x);
            CHECK(std::fabs(v) <= std::fabs(p) + 1e-10);
            CHECK(2.0 * std::fabs(p - v) <= k.eval_real(x) / (L + 1) + 1e-10);
        }
    }
}

TEST_CASE("tau pinned values") {
    TrigPoly t1 = tau(1);
    CHECK(t1.degree() == 0);
    CHECK(t1.coeff(0).real() == Catch::Approx(1.0).margin(1e-14));
    CHECK(t1.eval_real(0.37) == Catch::Approx(1.0).margin(1e-14));

    for (int L : {2, 5, 10}) {
        CHECK(tau(L).eval_real(0.0) == Catch::Approx(static_cast<double>(L)).margin(1e-11));
    }
}

TEST_CASE("tau coefficient bracket and positivity up to L = 200") {
    for (int L = 1; L <= 200; ++L) {
        TrigPoly t = tau(L);
        double t0 = t.coeff(0).real();
        CHECK(t0 >= std::log(L + 1.0) - 1e-12);
        CHECK(t0 <= 1.0 + std::log(static_cast<double>(L)) + 1e-12);
        for (int m = 0; m <= L - 1; ++m) CHECK(t.coeff(m).real() > 0.0);
    }
}

TEST_CASE("tau minorant chain on the offset grid") {
    const int G = 10000;
    for (int L : {1, 2, 3, 5, 8, 16, 32, 64}) {
        TrigPoly t = tau(L);
        double sup = -1.0;
        for (int g = 0; g < G; ++g) {
            double x = grid_pt(g, G);
            double v = t.eval_real(x);
            CHECK(v >= -1e-9);
            CHECK(2.0 * dist_to_nearest_int(x) * v <= 1.0 + 1e-9);
            CHECK(v <= L + 1e-9);
            sup = std::max(sup, v);
        }
        CHECK(sup <= L + 1e-9);
        CHECK(t.eval_real(0.0) == Catch::Approx(static_cast<double>(L)).margin(1e-9));
    }
}

TEST_CASE("tau ratio form agrees with the coefficient form") {
    for (int L : {2, 4, 9}) {
        TrigPoly coeffs = tau(L);
        for (int g = 0; g < 500; ++g) {
            double x = grid_pt(g, 500);
            CHECK(tau_eval_ratio(L, x, &coeffs) ==
                  Catch::Approx(coeffs.eval_real(x)).margin(1e-9));
        }
        // removable point at 1/2 and the guard fallback near 0
        CHECK(tau_eval_ratio(L, 0.5, &coeffs) == Catch::Approx(coeffs.eval_real(0.5)).margin(1e-9));
        CHECK(tau_eval_ratio(L, 1e-9, &coeffs) ==
              Catch::Approx(coeffs.eval_real(1e-9)).margin(1e-9));
    }
    CHECK(tau_eval_ratio(2, 0.25) == Catch::Approx(tau(2).eval_real(0.25)).margin(1e-9));
}

TEST_CASE("w pinned values and positivity") {
    CHECK(w_func(0.0) == 0.0);
    CHECK(w_func(0.5) == 1.0);
    CHECK(w_func(0.25) == Catch::Approx(kPi / 2.0).epsilon(1e-14));
    CHECK(w_func(0.5 + 1e-9) == Catch::Approx(1.0).margin(1e-12));
    for (int g = 1; g < 1000; ++g) CHECK(w_func(g / 1000.0) > 0.0);
}

TEST_CASE("sampling identity ties tau-hat(0) to w on the dual grid") {
    for (int L = 1; L <= 200; ++L) {
        double lhs = (L + 1) * tau(L).coeff(0).real();
        double rhs = L;
        for (int l = 1; l <= L; ++l) rhs += w_func(static_cast<double>(l) / (L + 1));
        CHECK(lhs == Catch::Approx(rhs).margin(1e-8));
    }
}

TEST_CASE("selberg pair pinned means and the sandwich") {
    SelbergPair p = selberg_pair({0.0, 0.5, 1, 0});
    CHECK(p.s.coeff(0).real() == Catch::Approx(0.0).margin(1e-12));
    CHECK(p.t.coeff(0).real() == Catch::Approx(1.0).margin(1e-12));

    CounterRng rng(2024);
    for (int trial = 0; trial < 40; ++trial) {
        double alpha = rng.next_unit() * 2.0 - 1.0;
        double beta = alpha + 0.05 + 0.9 * rng.next_unit();
        int L = 1 + static_cast<int>(rng.next_unit() * 24);
        SelbergPair q = selberg_pair({alpha, beta, L, 0});
        CHECK(q.s.coeff(0).real() ==
              Catch::Approx(beta - alpha - 1.0 / (L + 1)).margin(1e-12));
        CHECK(q.t.coeff(0).real() ==
              Catch::Approx(beta - alpha + 1.0 / (L + 1)).margin(1e-12));
        CHECK(q.t.coeff(0).real() - q.s.coeff(0).real() ==
              Catch::Approx(2.0 / (L + 1)).margin(1e-12));
        CHECK(q.s.symmetry_defect() < 1e-12);
        CHECK(q.t.symmetry_defect() < 1e-12);
        for (int g = 0; g < 2000; ++g) {
            double x = grid_pt(g, 2000);
            double phi = interval_indicator(alpha, beta, x);
            CHECK(q.s.eval_real(x) <= phi + 1e-9);
            CHECK(q.t.eval_real(x) >= phi - 1e-9);
        }
        // endpoints, where the indicator takes the value 1/2
        for (double x : {alpha, beta}) {
            CHECK(q.s.eval_real(x) <= 0.5 + 1e-9);
            CHECK(q.t.eval_real(x) >= 0.5 - 1e-9);
        }
    }
}

TEST_CASE("continuous pair sandwiches the step and has the right mass") {
    IntervalSpec spec{-0.4, 1.3, 0, 2.5};
    ContinuousPair cp = continuous_pair(spec);
    for (int g = 0; g < 3000; ++g) {
        double x = -6.0 + 12.0 * (g + 0.5) / 3000.0;
        double step = cp.chi(x);
        CHECK(cp.S(x) <= step + 1e-10);
        CHECK(cp.T(x) >= step - 1e-10);
        CHECK(cp.T(x) - cp.S(x) ==
              Catch::Approx(eval_K(spec.delta * (x - spec.alpha)) +
                            eval_K(spec.delta * (x - spec.beta)))
                  .margin(1e-12));
    }
    for (double x : {-0.1, 0.3, 0.9, 1.2}) CHECK(cp.S(x) <= 1.0 + 1e-12);

    // integral of T - S over R equals 2/delta
    auto diff = [&](double x) { return cp.T(x) - cp.S(x); };
    double I = integrate(diff, -80.0, 80.0, 1e-9);
    CHECK(I == Catch::Approx(2.0 / spec.delta).margin(1e-2));
}

TEST_CASE("fejer_riesz pinned factorizations") {
    // constant
    TrigPoly one(0);
    one.set_coeff(0, 1.0);
    TrigPoly u = fejer_riesz(one);
    CHECK(u.degree() == 0);
    CHECK(std::abs(u.coeff(0) - std::complex<double>(1.0)) < 1e-14);

    // Fejer kernel k_1: |u|^2 = k_1 with deg u = 1
    TrigPoly k1 = kernel_kL(1);
    TrigPoly uk = fejer_riesz(k1);
    CHECK(uk.degree() == 1);
    for (int g = 0; g < 1000; ++g) {
        double x = grid_pt(g, 1000);
        CHECK(std::norm(uk.eval(x)) == Catch::Approx(k1.eval_real(x)).margin(1e-12));
    }
}

TEST_CASE("fejer_riesz on selberg majorants and the mass identity") {
    CounterRng rng(5150);
    for (int trial = 0; trial < 25; ++trial) {
        double alpha = rng.next_unit();
        double beta = alpha + 0.1 + 0.8 * rng.next_unit();
        int L = 1 + static_cast<int>(rng.next_unit() * 31);
        SelbergPair p = selberg_pair({alpha, beta, L, 0});
        TrigPoly u = fejer_riesz(p.t);
        CHECK(u.degree() <= L);
        double worst = 0.0;
        for (int g = 0; g < 4 * L + 9; ++g) {
            double x = grid_pt(g, 4 * L + 9);
            worst = std::max(worst, std::fabs(std::norm(u.eval(x)) - p.t.eval_real(x)));
        }
        CHECK(worst < 1e-8);
        // int |u|^2 = sum |u_hat|^2 = hat t(0)
        double mass = 0.0;
        for (int l = 0; l <= u.degree(); ++l) mass += std::norm(u.coeff(l));
        CHECK(mass == Catch::Approx(p.t.coeff(0).real()).margin(1e-10));
    }
}

TEST_CASE("fejer_riesz autocorrelation round trip on random squares") {
    CounterRng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        int L = 1 + static_cast<int>(rng.next_unit() * 12);
        // build t = |v|^2 from a random one-sided v, so t is exactly nonnegative
        std::vector<std::complex<double>> v(static_cast<size_t>(L) + 1);
        for (auto& c : v) c = {rng.next_gaussian(), rng.next_gaussian()};
        TrigPoly t(L);
        for (int l = -L; l <= L; ++l) {
            std::complex<double> a = 0.0;
            for (int k = 0; k <= L; ++k) {
                int k2 = k + l;
                if (k2 < 0 || k2 > L) continue;
                a += std::conj(v[static_cast<size_t>(k)]) * v[static_cast<size_t>(k2)];
            }
            t.set_coeff(l, a);
        }
        TrigPoly u = fejer_riesz(t);
        // autocorrelation of u-hat must reproduce t-hat
        for (int l = -L; l <= L; ++l) {
            std::complex<double> a = 0.0;
            for (int k = 0; k <= u.degree(); ++k) {
                int k2 = k + l;
                if (k2 < 0 || k2 > u.degree()) continue;
                a += std::conj(u.coeff(k)) * u.coeff(k2);
            }
            CHECK(std::abs(a - t.coeff(l)) < 1e-8);
        }
    }
}

TEST_CASE("fejer_riesz rejects significantly negative input") {
    TrigPoly bad(1);
    bad.set_coeff(0, 0.1);
    bad.set_coeff(1, 0.5);
    bad.set_coeff(-1, 0.5);  // 0.1 + cos(2 pi x) dips to -0.9
    CHECK_THROWS_AS(fejer_riesz(bad), std::invalid_argument);
}
