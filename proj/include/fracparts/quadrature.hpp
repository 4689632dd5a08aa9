#pragma once

// Numerical quadrature of the tail-law integrals, kept independent of their
// closed forms so the two can be played against each other.

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <stdexcept>

namespace fracparts {

namespace detail {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

}  // namespace detail

// int_lambda^infty (log x)^k x^{-2} dx by adaptive Gauss-Kronrod on decade
// panels [lambda 10^j, lambda 10^{j+1}].  Panels run far enough out that the
// remainder beyond the last cut is below 1e-20 of the total (the integrand is
// < (log X)^k X^{-2}, so the remainder is under (log X + k)^k / X), and is
// dropped rather than patched with the closed form under test.
inline double integral_log_pow_over_x2(double lambda, int k) {
    if (lambda < 1.0) throw std::domain_error("integral_log_pow_over_x2: lambda must be >= 1");
    if (k < 0) throw std::domain_error("integral_log_pow_over_x2: negative exponent");
    auto f = [k](double x) { return std::pow(std::log(x), k) / (x * x); };
    const int decades = 32;
    double total = 0.0;
    // accumulate from the farthest (smallest) panel inward
    for (int j = decades - 1; j >= 0; --j) {
        double a = lambda * std::pow(10.0, j);
        double b = a * 10.0;
        total += detail::GK::integrate(f, a, b, 12, 1e-13);
    }
    return total;
}

// int_0^delta (-log x)^k dx on shrinking decade panels toward the
// logarithmic endpoint; remainder below 10^-30 delta is dropped.
inline double integral_neg_log_pow(double delta, int k) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::domain_error("integral_neg_log_pow: delta");
    if (k < 0) throw std::domain_error("integral_neg_log_pow: negative exponent");
    auto f = [k](double x) { return std::pow(-std::log(x), k); };
    const int decades = 30;
    double total = 0.0;
    for (int j = decades - 1; j >= 0; --j) {
        double b = delta * std::pow(10.0, -j);
        double a = b / 10.0;
        total += detail::GK::integrate(f, a, b, 12, 1e-13);
    }
    return total;
}

// general-purpose adaptive quadrature on a finite interval
template <class F>
double integrate(F&& f, double a, double b, double tol = 1e-10, int depth = 15) {
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, depth, tol);
}

}  // namespace fracparts
