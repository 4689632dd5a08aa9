#include "fracparts/mod1_matrix.hpp"
#include "fracparts/rng.hpp"
#include "fracparts/torus.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <fstream>

using namespace fracparts;

TEST_CASE("dist_to_nearest_int on pinned values") {
    CHECK(dist_to_nearest_int(0.5) == 0.5);
    CHECK(dist_to_nearest_int(1.25) == 0.25);
    CHECK(dist_to_nearest_int(-0.1) == Catch::Approx(0.1).margin(1e-15));
    CHECK(dist_to_nearest_int(0.0) == 0.0);
    CHECK(dist_to_nearest_int(7.0) == 0.0);
    CHECK_THROWS_AS(dist_to_nearest_int(std::nan("")), std::domain_error);
    CHECK_THROWS_AS(dist_to_nearest_int(INFINITY), std::domain_error);
}

TEST_CASE("dist is periodic and even over a dense grid and random reals") {
    CounterRng rng(42);
    for (int i = 0; i < 10000; ++i) {
        double x = (i + 0.5) / 10000.0;
        for (long long k : {-3ll, 1ll, 17ll}) {
            CHECK(dist_to_nearest_int(x + static_cast<double>(k)) ==
                  Catch::Approx(dist_to_nearest_int(x)).margin(1e-12));
        }
        CHECK(dist_to_nearest_int(-x) == Catch::Approx(dist_to_nearest_int(x)).margin(1e-15));
    }
    for (int i = 0; i < 1000; ++i) {
        double x = (rng.next_unit() - 0.5) * 2000.0;
        CHECK(dist_to_nearest_int(x) <= 0.5);
        CHECK(dist_to_nearest_int(-x) == Catch::Approx(dist_to_nearest_int(x)).margin(1e-12));
    }
}

TEST_CASE("TorusPoint canonical representative invariants") {
    CHECK(TorusPoint(1.25).rep() == 0.25);
    CHECK(TorusPoint(-0.25).rep() == 0.75);
    CHECK(TorusPoint(-1e-17).rep() == 0.0);  // reduction may round up to 1
    CounterRng rng(7);
    for (int i = 0; i < 2000; ++i) {
        double x = (rng.next_unit() - 0.5) * 100;
        TorusPoint p(x);
        CHECK(p.rep() >= 0.0);
        CHECK(p.rep() < 1.0);
        CHECK(p.dist() >= 0.0);
        CHECK(p.dist() <= 0.5);
        CHECK(p.dist() == Catch::Approx(dist_to_nearest_int(x)).margin(1e-12));
    }
}

TEST_CASE("mat_vec_mod1 pinned examples") {
    auto A = Mod1Matrix::from_reals(1, 1, {0.5});
    CHECK(mat_vec_mod1(A, {2})[0].rep() == 0.0);
    CHECK(mat_vec_mod1(A, {0})[0].rep() == 0.0);

    auto B = Mod1Matrix::from_reals(1, 2, {0.25, 0.5});
    CHECK(mat_vec_mod1(B, {1, 1})[0].rep() == Catch::Approx(0.75).margin(1e-15));

    CHECK_THROWS_AS(mat_vec_mod1(B, {1}), std::invalid_argument);
}

TEST_CASE("mat_vec_mod1 is a homomorphism") {
    CounterRng rng(11);
    // float mode: within 1e-12 after reduction
    auto A = Mod1Matrix::from_reals(2, 3, {rng.next_unit(), rng.next_unit(), rng.next_unit(),
                                           rng.next_unit(), rng.next_unit(), rng.next_unit()});
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<long long> x(3), y(3), s(3);
        for (int n = 0; n < 3; ++n) {
            x[n] = static_cast<long long>(rng.next_unit() * 200) - 100;
            y[n] = static_cast<long long>(rng.next_unit() * 200) - 100;
            s[n] = x[n] + y[n];
        }
        TorusVector lhs = mat_vec_mod1(A, s);
        TorusVector rhs = mat_vec_mod1(A, x) + mat_vec_mod1(A, y);
        for (int m = 0; m < 2; ++m) {
            double diff = dist_to_nearest_int(lhs[m].rep() - rhs[m].rep());
            CHECK(diff < 1e-12);
        }
    }
    // exact mode: equality of rationals
    auto E = Mod1Matrix::from_rationals(
        1, 2, {parse_rational("3/7"), parse_rational("5/11")});
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<long long> x(2), y(2), s(2);
        for (int n = 0; n < 2; ++n) {
            x[n] = static_cast<long long>(rng.next_unit() * 2000) - 1000;
            y[n] = static_cast<long long>(rng.next_unit() * 2000) - 1000;
            s[n] = x[n] + y[n];
        }
        auto l = E.apply_exact(s);
        auto a = E.apply_exact(x);
        auto b = E.apply_exact(y);
        CHECK(l[0] == mod1(a[0] + b[0]));
    }
}

TEST_CASE("exact and float entries stay consistent") {
    auto E = Mod1Matrix::from_rationals(1, 1, {parse_rational("2/3")});
    CHECK(E.has_exact());
    CHECK(std::fabs(E.rep(0, 0) - 2.0 / 3.0) < 1e-15);

    // exact reduction: 5 * 2/3 = 10/3 = 1/3 mod 1
    auto v = E.apply_exact({5});
    CHECK(v[0] == Rational(1, 3));
}

TEST_CASE("F and F_L pinned examples") {
    auto x55 = TorusVector::from_reals({0.5, 0.5});
    CHECK(F(x55).value == 1.0);
    CHECK_FALSE(F(x55).degenerate);

    auto x25 = TorusVector::from_reals({0.25});
    CHECK(F(x25).value == 2.0);

    auto x0 = TorusVector::from_reals({0.0});
    CHECK(F(x0).degenerate);
    CHECK(std::isinf(F(x0).value));

    CHECK(F_L(x0, {7}) == 7.0);
    CHECK(F_L(x25, {7}) == 2.0);
    CHECK(F_L(TorusVector::from_reals({0.0, 0.5}), {3, 3}) == 3.0);
    CHECK_THROWS_AS(F_L(x25, {0}), std::invalid_argument);
}

TEST_CASE("F_L sandwiched between 1 and both caps") {
    CounterRng rng(3);
    for (int trial = 0; trial < 3000; ++trial) {
        int M = 1 + static_cast<int>(rng.next_unit() * 3);
        std::vector<double> reps(static_cast<size_t>(M));
        std::vector<long long> L(static_cast<size_t>(M));
        double capprod = 1.0;
        for (int m = 0; m < M; ++m) {
            reps[static_cast<size_t>(m)] = rng.next_unit();
            L[static_cast<size_t>(m)] = 1 + static_cast<long long>(rng.next_unit() * 50);
            capprod *= static_cast<double>(L[static_cast<size_t>(m)]);
        }
        auto x = TorusVector::from_reals(reps);
        double fl = F_L(x, L);
        CHECK(fl >= 1.0 - 1e-12);
        CHECK(fl <= capprod * (1 + 1e-12));
        auto f = F(x);
        if (!f.degenerate) CHECK(fl <= f.value * (1 + 1e-12));
        // equality whenever every distance clears 1/(2 L_m)
        bool clear = true;
        for (int m = 0; m < M; ++m)
            clear = clear && x.dist(m) >= 1.0 / (2.0 * static_cast<double>(L[static_cast<size_t>(m)]));
        if (clear && !f.degenerate) CHECK(fl == Catch::Approx(f.value).epsilon(1e-12));
    }
}

TEST_CASE("P_M and Q_N pinned examples") {
    CHECK(P_M(TorusVector::from_reals({0.5, 0.5})) == 0.25);
    CHECK(Q_N({0, 0, 0}) == 1ull);
    CHECK(Q_N({1, -2}) == 6ull);
}

TEST_CASE("IntBox cardinalities and enumeration") {
    IntBox b({2, 1});
    CHECK(b.cardinality() == 6ull);
    CHECK(b.diff_cardinality() == 15ull);
    CHECK_FALSE(b.all_zero());
    CHECK(IntBox({0, 0}).all_zero());

    int count = 0;
    std::vector<long long> first, last;
    b.for_each([&](const std::vector<long long>& xi) {
        if (count == 0) first = xi;
        last = xi;
        ++count;
    });
    CHECK(count == 6);
    CHECK(first == std::vector<long long>{0, 0});
    CHECK(last == std::vector<long long>{2, 1});

    count = 0;
    b.for_each_centered([&](const std::vector<long long>&) { ++count; });
    CHECK(count == 15);
}

TEST_CASE("matrix file parsing accepts decimals and rationals") {
    {
        std::ofstream out("torus_test_matrix.txt");
        out << "2 2\n0.5 1/3\n0.25 2/7\n";
    }
    auto A = read_matrix_file("torus_test_matrix.txt");
    CHECK(A.rows() == 2);
    CHECK(A.cols() == 2);
    CHECK_FALSE(A.has_exact());  // mixed decimal entries stay float
    CHECK(A.rep(0, 1) == Catch::Approx(1.0 / 3.0));

    {
        std::ofstream out("torus_test_matrix2.txt");
        out << "1 2\n1/2 22/7\n";
    }
    auto B = read_matrix_file("torus_test_matrix2.txt");
    CHECK(B.has_exact());
    CHECK(B.exact(0, 1) == Rational(1, 7));  // 22/7 reduced mod 1

    CHECK_THROWS(read_matrix_file("missing_file_xyz.txt"));
}

TEST_CASE("builtin matrix generators") {
    auto golden = parse_matrix_source("quad:5");
    CHECK(golden.rows() == 1);
    CHECK(golden.rep(0, 0) == Catch::Approx((std::sqrt(5.0) - 1.0) / 2.0).margin(1e-15));

    auto gq = parse_matrix_source("gen:quad:5");
    CHECK(gq.rep(0, 0) == golden.rep(0, 0));

    // [0;1,1,1] = 2/3
    auto cf = parse_matrix_source("cf:1,1,1");
    CHECK(cf.has_exact());
    CHECK(cf.exact(0, 0) == Rational(2, 3));

    auto r = parse_matrix_source("rand:9:2x3");
    CHECK(r.rows() == 2);
    CHECK(r.cols() == 3);
    auto r2 = parse_matrix_source("rand:9:2x3");
    CHECK(r.rep(1, 2) == r2.rep(1, 2));  // seeded, reproducible
}
