#pragma once

// Sign-function extremal machinery on R and its periodizations:
//  - entire functions H, J, K and the transforms of J, K
//  - interval majorant/minorant pairs, continuous (S, T) and periodic (s, t)
//  - the kernels j_L, k_L, the odd polynomial psi*j_L, and the nonnegative
//    minorant tau_{L-1} of min{L, (2||x||)^{-1}}
//  - Fejer-Riesz factorization of nonnegative trig polynomials

#include "torus.hpp"
#include "trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace fracparts {

inline constexpr double kPi = 3.141592653589793238462643383279;

// sin(pi x) via exact range reduction: accurate near every integer, where the
// naive std::sin(pi*x) loses all relative precision.
inline double sinpi(double x) {
    int quo = 0;
    double r = std::remquo(x, 1.0, &quo);  // r in [-1/2, 1/2], x = n + r
    double s = std::sin(kPi * r);
    return (quo & 1) ? -s : s;
}

inline double cospi(double x) {
    int quo = 0;
    double r = std::remquo(x, 1.0, &quo);
    double c = std::cos(kPi * r);
    return (quo & 1) ? -c : c;
}

// sin(2 pi x), reduced the same way
inline double sin2pi(double x) { return sinpi(2.0 * x); }

// sawtooth psi(x) = x - [x] - 1/2, zero at integers
inline double eval_psi(double x) {
    double f = x - std::floor(x);
    if (f == 0.0 || f >= 1.0) return 0.0;
    return f - 0.5;
}

// K(x) = (sin(pi x) / (pi x))^2, K(0) = 1
inline double eval_K(double x) {
    if (x == 0.0) return 1.0;
    double u = sinpi(x) / (kPi * x);
    return u * u;
}

namespace detail {

// d/dx [ sin(pi x) / (pi x) ]; series below |x| = 0.01 where the closed form
// cancels catastrophically.
inline double sinc_pi_deriv(double x) {
    if (std::fabs(x) < 0.01) {
        double t2 = (kPi * x) * (kPi * x);
        return kPi * kPi * x * (-1.0 / 3.0 + t2 / 30.0 - t2 * t2 / 840.0);
    }
    return (kPi * x * cospi(x) - sinpi(x)) / (kPi * x * x);
}

inline double eval_K_deriv(double x) {
    double u = (x == 0.0) ? 1.0 : sinpi(x) / (kPi * x);
    return 2.0 * u * sinc_pi_deriv(x);
}

// The sign-weighted lattice sums behind H and J.  With n = round(x) and the
// singular m = |n| piece removed, both sums and their tails are smooth.
//
//   pair_sum(x)  = sum_{m>=1} [ (x-m)^{-2} - (x+m)^{-2} ]      (minus the
//   pair_dsum(x) = its derivative in x                          singular piece
//                                                               when n != 0)
//
// Truncation at T = |n| + 64 plus the Euler-Maclaurin midpoint tail
//   sum_{m>T} f(m) ~ int_{T+1/2} f + f'(T+1/2)/24
// keeps the absolute error near 1e-13 for |x| up to 1e6.
struct PairSums {
    double sum;   // regular part of sum_m sgn(m) (x-m)^{-2}
    double dsum;  // regular part of its derivative
};

inline PairSums pair_sums_regular(double x, long long n_skip) {
    long long absn = n_skip < 0 ? -n_skip : n_skip;
    long long T = absn + 64;
    double s = 0.0, ds = 0.0;
    for (long long m = 1; m <= T; ++m) {
        double dm = static_cast<double>(m);
        double a = x - dm;  // singular piece when m == |n|
        double b = x + dm;
        if (m == absn && n_skip > 0) {
            s += -1.0 / (b * b);
            ds += 2.0 / (b * b * b);
        } else if (m == absn && n_skip < 0) {
            s += 1.0 / (a * a);
            ds += -2.0 / (a * a * a);
        } else {
            s += 1.0 / (a * a) - 1.0 / (b * b);
            ds += -2.0 / (a * a * a) + 2.0 / (b * b * b);
        }
    }
    double t = static_cast<double>(T) + 0.5;  // t > |x| by construction
    double tm = t - x, tp = t + x;
    // integral parts
    s += 1.0 / tm - 1.0 / tp;
    ds += 1.0 / (tm * tm) + 1.0 / (tp * tp);
    // first Euler-Maclaurin corrections, f'(t+1/2)/24 for each series
    s += (-2.0 / (tm * tm * tm) + 2.0 / (tp * tp * tp)) / 24.0;
    ds += (-6.0 / (tm * tm * tm * tm) - 6.0 / (tp * tp * tp * tp)) / 24.0;
    return {s, ds};
}

}  // namespace detail

// H(x): odd, with |sgn(x) - H(x)| <= K(x) everywhere.  Evaluated as
//   H = 2x K(x) + sgn(n) K(x - n) + (sin(pi x)/pi)^2 * [regular pair sum],
// which has no cancelling singular terms near any integer n.
inline double eval_H(double x) {
    if (!std::isfinite(x)) throw std::domain_error("eval_H: input must be finite");
    if (x == 0.0) return 0.0;
    long long n = static_cast<long long>(std::llround(x));
    double h = 2.0 * x * eval_K(x);
    if (n != 0) h += (n > 0 ? 1.0 : -1.0) * eval_K(x - static_cast<double>(n));
    double sp = sinpi(x) / kPi;
    h += sp * sp * detail::pair_sums_regular(x, n).sum;
    return h;
}

// J(x) = H'(x) / 2, by analytic differentiation of the same decomposition.
inline double eval_J(double x) {
    if (!std::isfinite(x)) throw std::domain_error("eval_J: input must be finite");
    long long n = static_cast<long long>(std::llround(x));
    auto ps = detail::pair_sums_regular(x, n);
    double j = eval_K(x) + x * detail::eval_K_deriv(x);
    if (n != 0) j += 0.5 * (n > 0 ? 1.0 : -1.0) * detail::eval_K_deriv(x - static_cast<double>(n));
    double sp = sinpi(x) / kPi;
    j += 0.5 * (sin2pi(x) / kPi) * ps.sum + 0.5 * sp * sp * ps.dsum;
    return j;
}

// hat J(t) = pi t (1-|t|) cot(pi t) + |t| on 0 < |t| < 1, hat J(0) = 1,
// zero for |t| >= 1.  Below |t| = 1e-4 the cot singularity is handled with
// the series pi t cot(pi t) = 1 - (pi t)^2/3 - (pi t)^4/45 - ...
inline double fourier_J(double t) {
    double a = std::fabs(t);
    if (a >= 1.0) return 0.0;
    if (a < 1e-4) {
        double u = kPi * t;
        double u2 = u * u;
        double tcot = 1.0 - u2 / 3.0 - u2 * u2 / 45.0;  // pi t cot(pi t)
        return (1.0 - a) * tcot + a;
    }
    return kPi * t * (1.0 - a) * (cospi(t) / sinpi(t)) + a;
}

// hat K(t) = max(0, 1 - |t|)
inline double fourier_K(double t) {
    double a = std::fabs(t);
    return a >= 1.0 ? 0.0 : 1.0 - a;
}

// j_L: degree-L polynomial with hat j_L(l) = hat J(l / (L+1))
inline TrigPoly kernel_jL(int L) {
    if (L < 1) throw std::invalid_argument("kernel_jL: L must be >= 1");
    TrigPoly p(L);
    for (int l = -L; l <= L; ++l)
        p.set_coeff(l, fourier_J(static_cast<double>(l) / (L + 1)));
    return p;
}

// k_L: degree-L Fejer kernel with hat k_L(l) = 1 - |l| / (L+1)
inline TrigPoly kernel_kL(int L) {
    if (L < 1) throw std::invalid_argument("kernel_kL: L must be >= 1");
    TrigPoly p(L);
    for (int l = -L; l <= L; ++l)
        p.set_coeff(l, 1.0 - std::fabs(static_cast<double>(l)) / (L + 1));
    return p;
}

// psi * j_L: odd, real, coefficients (-2 pi i l)^{-1} hat J(l/(L+1)), zero at 0
inline TrigPoly psi_conv_jL(int L) {
    if (L < 1) throw std::invalid_argument("psi_conv_jL: L must be >= 1");
    TrigPoly p(L);
    for (int l = -L; l <= L; ++l) {
        if (l == 0) continue;
        double jl = fourier_J(static_cast<double>(l) / (L + 1));
        p.set_coeff(l, std::complex<double>(0.0, jl / (kTwoPi * l)));  // (-2 pi i l)^{-1} = i/(2 pi l)
    }
    return p;
}

// tau_{L-1}: nonnegative minorant of min{L, (2||x||)^{-1}} of degree L-1 with
// positive coefficients.  Coefficient table from the reorganized double sums:
//   hat tau(m) = sum_{j >= m+1, j = m+1 (mod 2)} (2/j) hat J(j/(L+1)).
inline TrigPoly tau(int L) {
    if (L < 1) throw std::invalid_argument("tau: L must be >= 1");
    std::vector<double> jhat(static_cast<size_t>(L) + 1, 0.0);
    for (int j = 1; j <= L; ++j)
        jhat[static_cast<size_t>(j)] = fourier_J(static_cast<double>(j) / (L + 1));
    TrigPoly p(L - 1);
    for (int m = 0; m <= L - 1; ++m) {
        double c = 0.0;
        for (int j = m + 1; j <= L; j += 2) c += (2.0 / j) * jhat[static_cast<size_t>(j)];
        p.set_coeff(m, c);
        if (m > 0) p.set_coeff(-m, c);
    }
    return p;
}

// Ratio-form evaluation tau_{L-1}(x) = -2 pi (psi*j_L)(x) / sin(2 pi x); the
// coefficient table is the source of truth, this path cross-validates it.
// Falls back to the coefficient form inside the singularity guard.
inline double tau_eval_ratio(int L, double x, const TrigPoly* coeff_form = nullptr) {
    double g1 = dist_to_nearest_int(x);
    double g2 = dist_to_nearest_int(x - 0.5);
    if (g1 <= 1e-6 || g2 <= 1e-6) {
        if (coeff_form) return coeff_form->eval_real(x);
        return tau(L).eval_real(x);
    }
    TrigPoly conv = psi_conv_jL(L);
    return -kTwoPi * conv.eval_real(x) / sin2pi(x);
}

// w(x) = -2 pi psi(x) / sin(2 pi x) with w(0) = 0 and w(1/2) = 1; the
// removable point at 1/2 is handled by the even series in (x - 1/2).
inline double w_func(double x) {
    double f = x - std::floor(x);
    if (f == 0.0 || f >= 1.0) return 0.0;
    double d = f - 0.5;
    if (std::fabs(d) < 1e-6) {
        double u = kTwoPi * d;
        return 1.0 + u * u / 6.0;  // 2 pi d / sin(2 pi d)
    }
    return -kTwoPi * (f - 0.5) / sin2pi(f);
}

// Interval data for the majorant/minorant constructions.
struct IntervalSpec {
    double alpha = 0.0;
    double beta = 0.0;
    int L = 1;           // degree budget (periodic case)
    double delta = 1.0;  // type budget / (2 pi) (continuous case)
};

struct SelbergPair {
    TrigPoly s;  // minorant of the normalized interval indicator
    TrigPoly t;  // majorant
};

// Normalized indicator of the torus interval (alpha, beta): 1 inside, 1/2 at
// the endpoints, 0 outside.
inline double interval_indicator(double alpha, double beta, double x) {
    return (beta - alpha) + eval_psi(alpha - x) + eval_psi(x - beta);
}

// Selberg polynomials of degree <= L with s <= phi_{alpha,beta} <= t and
// hat s(0) = beta - alpha - 1/(L+1), hat t(0) = beta - alpha + 1/(L+1).
inline SelbergPair selberg_pair(const IntervalSpec& spec) {
    double alpha = spec.alpha, beta = spec.beta;
    int L = spec.L;
    if (!(alpha < beta && beta < alpha + 1.0))
        throw std::invalid_argument("selberg_pair: need alpha < beta < alpha + 1");
    if (L < 1) throw std::invalid_argument("selberg_pair: L must be >= 1");

    TrigPoly jl = kernel_jL(L);
    TrigPoly conv(L);  // phi * j_L
    for (int l = -L; l <= L; ++l) {
        std::complex<double> phihat;
        if (l == 0) {
            phihat = beta - alpha;
        } else {
            phihat = (e_of(-l * alpha) - e_of(-l * beta)) /
                     std::complex<double>(0.0, kTwoPi * l);
        }
        conv.set_coeff(l, phihat * jl.coeff(l));
    }

    TrigPoly kl = kernel_kL(L);
    TrigPoly corr = (kl.reflected(alpha) + kl.translated(beta)).scaled(1.0 / (2.0 * L + 2.0));
    return {conv - corr, conv + corr};
}

// Entire majorant/minorant pair for chi_{alpha,beta} of exponential type
// 2 pi delta, assembled from H and K.
struct ContinuousPair {
    double alpha, beta, delta;

    double S(double x) const {
        return 0.5 * (eval_H(delta * (x - alpha)) - eval_H(delta * (x - beta)) -
                      eval_K(delta * (x - alpha)) - eval_K(delta * (x - beta)));
    }
    double T(double x) const {
        return 0.5 * (eval_H(delta * (x - alpha)) - eval_H(delta * (x - beta)) +
                      eval_K(delta * (x - alpha)) + eval_K(delta * (x - beta)));
    }
    // step function being sandwiched
    double chi(double x) const {
        if (x == alpha || x == beta) return 0.5;
        return (alpha < x && x < beta) ? 1.0 : 0.0;
    }
};

inline ContinuousPair continuous_pair(const IntervalSpec& spec) {
    if (!(spec.alpha < spec.beta)) throw std::invalid_argument("continuous_pair: need alpha < beta");
    if (!(spec.delta > 0.0)) throw std::invalid_argument("continuous_pair: need delta > 0");
    return {spec.alpha, spec.beta, spec.delta};
}

// ---------------------------------------------------------------------------
// Fejer-Riesz factorization
// ---------------------------------------------------------------------------

namespace detail {

// All roots of c_0 + c_1 z + ... + c_n z^n via the companion matrix.
inline std::vector<std::complex<double>> poly_roots(std::vector<std::complex<double>> c) {
    while (c.size() > 1 && std::abs(c.back()) == 0.0) c.pop_back();
    size_t n = c.size() - 1;
    if (n == 0) return {};
    Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(static_cast<long>(n), static_cast<long>(n));
    for (size_t i = 1; i < n; ++i) comp(static_cast<long>(i), static_cast<long>(i - 1)) = 1.0;
    for (size_t i = 0; i < n; ++i)
        comp(static_cast<long>(i), static_cast<long>(n - 1)) = -c[i] / c[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(n);
    for (size_t i = 0; i < n; ++i) roots[i] = es.eigenvalues()(static_cast<long>(i));
    return roots;
}

}  // namespace detail

// Writes a nonnegative real trig polynomial t as |u|^2 with hat u supported on
// {0..L}: roots of z^L t(z) are paired (zeta, 1/conj(zeta)), one root taken
// per pair (inside-disk convention; unit-circle double roots split evenly),
// and the scale recovered from the zero-lag autocorrelation.
inline TrigPoly fejer_riesz(const TrigPoly& t, double grid_tol = 1e-9) {
    // precondition: real-valued and (numerically) nonnegative
    if (t.symmetry_defect() > 1e-9)
        throw std::invalid_argument("fejer_riesz: input is not real-valued");
    int G = 4 * t.degree() + 8;
    for (int g = 0; g < G; ++g) {
        double x = (g + 0.5) / G;
        double v = t.eval_real(x);
        if (v < -grid_tol)
            throw std::invalid_argument("fejer_riesz: input negative at x = " + std::to_string(x) +
                                        " (value " + std::to_string(v) + ")");
    }

    // trim numerically zero outer coefficients (symmetrically)
    int D = t.degree();
    double cmax = 0.0;
    for (int l = 0; l <= D; ++l) cmax = std::max(cmax, std::abs(t.coeff(l)));
    while (D > 0 && std::abs(t.coeff(D)) <= 1e-13 * cmax && std::abs(t.coeff(-D)) <= 1e-13 * cmax)
        --D;

    if (D == 0) {
        double c0 = t.coeff(0).real();
        if (c0 < 0.0) c0 = 0.0;
        TrigPoly u(0);
        u.set_coeff(0, std::sqrt(c0));
        return u;
    }

    std::vector<std::complex<double>> coeffs(2 * static_cast<size_t>(D) + 1);
    for (int k = 0; k <= 2 * D; ++k) coeffs[static_cast<size_t>(k)] = t.coeff(k - D);
    auto roots = detail::poly_roots(coeffs);

    // Greedy reciprocal pairing: partner of zeta is the root closest to
    // 1/conj(zeta); keep the smaller-modulus member of each pair.  Split
    // unit-circle double roots fall into the same pair automatically.
    std::vector<bool> used(roots.size(), false);
    std::vector<std::complex<double>> picked;
    picked.reserve(roots.size() / 2);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        std::complex<double> target = 1.0 / std::conj(roots[i]);
        size_t best = roots.size();
        double bestd = 0.0;
        for (size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(roots[j] - target);
            if (best == roots.size() || d < bestd) {
                best = j;
                bestd = d;
            }
        }
        if (best == roots.size())
            throw std::runtime_error("fejer_riesz: unpaired root (input not nonnegative?)");
        used[best] = true;
        std::complex<double> a = roots[i], b = roots[best];
        std::complex<double> keep = (std::abs(a) <= std::abs(b)) ? a : b;
        // a true circle root that split into |z| = 1 +- eps: project back
        if (std::fabs(std::abs(a) - 1.0) < 1e-7 && std::fabs(std::abs(b) - 1.0) < 1e-7) {
            std::complex<double> m = 0.5 * (a / std::abs(a) + b / std::abs(b));
            keep = m / std::abs(m);
        }
        picked.push_back(keep);
    }

    // expand monic prod (z - zeta_j)
    std::vector<std::complex<double>> q(1, 1.0);
    for (auto zeta : picked) {
        std::vector<std::complex<double>> nq(q.size() + 1, 0.0);
        for (size_t k = 0; k < q.size(); ++k) {
            nq[k + 1] += q[k];
            nq[k] -= zeta * q[k];
        }
        q = std::move(nq);
    }

    double a0 = 0.0;
    for (auto& qk : q) a0 += std::norm(qk);
    double scale2 = t.coeff(0).real() / a0;  // |c|^2 so that int |u|^2 = hat t(0)
    if (scale2 < 0.0)
        throw std::runtime_error("fejer_riesz: negative scale (input not nonnegative?)");
    double scale = std::sqrt(scale2);

    TrigPoly u(static_cast<int>(q.size()) - 1);
    for (size_t k = 0; k < q.size(); ++k) u.set_coeff(static_cast<int>(k), scale * q[k]);
    return u;
}

}  // namespace fracparts
