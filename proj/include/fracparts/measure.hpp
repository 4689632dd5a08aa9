#pragma once

// Haar-measure tail laws for F(A xi) on (R/Z)^M, threshold inversion, and
// seeded Monte Carlo validation of the pushforward identities.

#include "mod1_matrix.hpp"
#include "reduce.hpp"
#include "rng.hpp"
#include "sums.hpp"
#include "torus.hpp"

#include <atomic>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fracparts {

// density of log(2 ||beta||) under Haar measure: e^x on x <= 0
inline double density_h(double x) { return x <= 0.0 ? std::exp(x) : 0.0; }

// M-fold convolution h^(M)(x) = (-x)^{M-1} e^x / (M-1)! on x <= 0
inline double density_hM(double x, int M) {
    if (M < 1) throw std::invalid_argument("density_hM: M must be >= 1");
    if (x > 0.0) return 0.0;
    double logfact = std::lgamma(static_cast<double>(M));
    if (x == 0.0) return M == 1 ? 1.0 : 0.0;
    return std::exp(static_cast<double>(M - 1) * std::log(-x) + x - logfact);
}

namespace detail {

// sum_{m=0}^{k} t^m / m!
inline double exp_partial_sum(double t, int k) {
    double term = 1.0, s = 1.0;
    for (int m = 1; m <= k; ++m) {
        term *= t / m;
        s += term;
    }
    return s;
}

}  // namespace detail

// mu_2{ prod (2||beta_m||) <= delta } = delta sum_{m=0}^{M-1} (log 1/delta)^m / m!
inline double tail_small_product(double delta, int M) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw std::domain_error("tail_small_product: delta out of (0,1]");
    if (M < 1) throw std::invalid_argument("tail_small_product: M must be >= 1");
    return delta * detail::exp_partial_sum(std::log(1.0 / delta), M - 1);
}

// mu{ lambda <= F } = lambda^{-1} sum_{m=0}^{M-1} (log lambda)^m / m!
inline double tail_F_exceeds(double lambda, int M) {
    if (lambda < 1.0) throw std::domain_error("tail_F_exceeds: lambda must be >= 1");
    if (M < 1) throw std::invalid_argument("tail_F_exceeds: M must be >= 1");
    return detail::exp_partial_sum(std::log(lambda), M - 1) / lambda;
}

// exact tail law lambda -> mu{ lambda <= F } for one dimension count
struct TailLaw {
    int M = 1;
    double operator()(double lambda) const { return tail_F_exceeds(lambda, M); }
};

// union-bound tail for the sum over X:
// (|X|/M!) int_lambda^infty (log x)^M x^{-2} dx = |X| lambda^{-1} sum_{m<=M} (log lambda)^m / m!
inline double thm65_bound(double lambda, unsigned long long cardX, int M) {
    if (lambda < 1.0) throw std::domain_error("thm65_bound: lambda must be >= 1");
    if (cardX < 1) throw std::invalid_argument("thm65_bound: empty X");
    return static_cast<double>(cardX) * detail::exp_partial_sum(std::log(lambda), M) / lambda;
}

// Solves delta = (1/M!) int_lambda^infty (log x)^M x^{-2} dx for lambda by
// monotone bisection, then checks the two printed envelopes.
inline double invert_threshold(double delta, int M) {
    if (!(delta > 0.0 && delta < 1.0)) throw std::domain_error("invert_threshold: delta");
    if (M < 0) throw std::invalid_argument("invert_threshold: negative M");
    if (M == 0) return 1.0 / delta;  // degenerate case inverts directly

    auto forward = [M](double lambda) {
        return detail::exp_partial_sum(std::log(lambda), M) / lambda;
    };
    double lo = 1.0;
    double hi = std::pow(4.0, M) / (delta * delta);
    // forward is decreasing; forward(lo) = 1 > delta, forward(hi) < delta
    for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
        double mid = 0.5 * (lo + hi);
        if (forward(mid) > delta)
            lo = mid;
        else
            hi = mid;
    }
    double lambda = 0.5 * (lo + hi);

    if (!(lambda < std::pow(4.0, M) / (delta * delta) * (1.0 + 1e-9)))
        throw std::runtime_error("invert_threshold: 4^M delta^{-2} envelope violated");
    double env = std::pow(8.0, M) / delta *
                 detail::exp_partial_sum(std::log(1.0 / delta), M);
    if (!(lambda <= env * (1.0 + 1e-9)))
        throw std::runtime_error("invert_threshold: 8^M envelope violated");
    return lambda;
}

// 8^M eps^{-1} |X| sum_{m=0}^{M} (log(eps^{-1} |X|))^m / m!
inline double thm13_threshold(double eps, unsigned long long cardX, int M) {
    if (!(eps > 0.0 && eps < 1.0)) throw std::domain_error("thm13_threshold: eps out of (0,1)");
    if (cardX < 1) throw std::invalid_argument("thm13_threshold: empty X");
    if (M < 0) throw std::invalid_argument("thm13_threshold: negative M");
    double t = std::log(static_cast<double>(cardX) / eps);
    return std::pow(8.0, M) * static_cast<double>(cardX) / eps * detail::exp_partial_sum(t, M);
}

struct MCEstimate {
    std::uint64_t samples = 0;
    std::uint64_t hits = 0;
    double estimate = 0.0;
    double stderr_est = 0.0;
    std::uint64_t seed = 0;
};

namespace detail {

inline MCEstimate finish_estimate(std::uint64_t samples, std::uint64_t hits, std::uint64_t seed) {
    MCEstimate e;
    e.samples = samples;
    e.hits = hits;
    e.seed = seed;
    e.estimate = static_cast<double>(hits) / static_cast<double>(samples);
    e.stderr_est = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(samples));
    return e;
}

// Chunked Bernoulli counting: hit is a pure function of (seed, sample index),
// so the count is thread-count invariant.
template <class HitFn>
MCEstimate mc_count(std::uint64_t samples, std::uint64_t seed, HitFn&& hit) {
    if (samples == 0) throw std::invalid_argument("mc: need at least one sample");
    std::atomic<std::uint64_t> hits{0};
    const std::uint64_t chunk = 1ull << 14;
    std::uint64_t nchunks = (samples + chunk - 1) / chunk;
    int workers = thread_cap();

    auto run = [&](std::uint64_t c0, std::uint64_t stride, std::decay_t<HitFn> fn) {
        std::uint64_t local = 0;
        for (std::uint64_t c = c0; c < nchunks; c += stride) {
            std::uint64_t lo = c * chunk;
            std::uint64_t hi = lo + chunk < samples ? lo + chunk : samples;
            for (std::uint64_t i = lo; i < hi; ++i)
                if (fn(i)) ++local;
        }
        hits.fetch_add(local, std::memory_order_relaxed);
    };

    if (workers <= 1 || nchunks == 1) {
        run(0, 1, hit);
    } else {
        std::vector<std::thread> pool;
        int w = workers < static_cast<int>(nchunks) ? workers : static_cast<int>(nchunks);
        for (int t = 0; t < w; ++t)
            pool.emplace_back(run, static_cast<std::uint64_t>(t), static_cast<std::uint64_t>(w),
                              hit);
        for (auto& th : pool) th.join();
    }
    return finish_estimate(samples, hits.load(), seed);
}

}  // namespace detail

// Estimates mu_1{ lambda <= F(A xi) } with A Haar-uniform (MN independent
// uniforms per sample).  Must match tail_F_exceeds(lambda, M) within a few
// standard errors; that is the empirical witness of measure preservation.
inline MCEstimate mc_single_tail(const std::vector<long long>& xi, double lambda, int M, int N,
                                 std::uint64_t samples, std::uint64_t seed = kDefaultSeed) {
    if (static_cast<int>(xi.size()) != N) throw std::invalid_argument("mc_single_tail: xi size");
    if (detail::is_zero(xi)) throw std::invalid_argument("mc_single_tail: xi must be nonzero");
    if (M < 1 || N < 1) throw std::invalid_argument("mc_single_tail: bad dimensions");

    return detail::mc_count(samples, seed, [=](std::uint64_t i) {
        CounterRng rng(seed, i);
        double prod = 1.0;
        for (int m = 0; m < M; ++m) {
            double s = 0.0;
            for (int n = 0; n < N; ++n)
                s += rng.next_unit() * static_cast<double>(xi[static_cast<size_t>(n)]);
            double d = dist_to_nearest_int(s);
            if (d == 0.0) return true;  // F infinite
            prod /= 2.0 * d;
        }
        return prod >= lambda;
    });
}

struct MCSumResult {
    MCEstimate mc;
    double bound = 0.0;  // thm65_bound(lambda, |X|, M)
    bool ok = true;      // estimate - 4 stderr <= bound
};

// Estimates mu_1{ lambda <= sum_{xi in X, xi != 0} F(A xi) } and checks it
// against the union-bound tail (which may be slack, never violated).
inline MCSumResult mc_sum_exceedance(const LatticeSet& X, double lambda, int M, int N,
                                     std::uint64_t samples, std::uint64_t seed = kDefaultSeed) {
    if (X.dim() != N) throw std::invalid_argument("mc_sum_exceedance: dimension mismatch");
    if (X.size() == 0) throw std::invalid_argument("mc_sum_exceedance: empty X");

    // materialize nonzero points once (MC sets are small by construction)
    std::vector<std::vector<long long>> pts;
    X.for_each([&](const std::vector<long long>& p) {
        if (!detail::is_zero(p)) pts.push_back(p);
    });
    if (pts.empty()) throw std::invalid_argument("mc_sum_exceedance: X has no nonzero points");

    MCSumResult out;
    unsigned long long card = pts.size();
    out.bound = thm65_bound(lambda, card, M);
    out.mc = detail::mc_count(samples, seed, [&pts, M, N, lambda, seed](std::uint64_t i) {
        CounterRng rng(seed, i);
        std::vector<double> A(static_cast<size_t>(M) * static_cast<size_t>(N));
        for (auto& a : A) a = rng.next_unit();
        double total = 0.0;
        for (const auto& xi : pts) {
            double prod = 1.0;
            for (int m = 0; m < M; ++m) {
                double s = 0.0;
                for (int n = 0; n < N; ++n)
                    s += A[static_cast<size_t>(m * N + n)] *
                         static_cast<double>(xi[static_cast<size_t>(n)]);
                double d = dist_to_nearest_int(s);
                if (d == 0.0) return true;  // infinite term
                prod /= 2.0 * d;
            }
            total += prod;
            if (total >= lambda) return true;
        }
        return total >= lambda;
    });
    out.ok = out.mc.estimate - 4.0 * out.mc.stderr_est <= out.bound;
    return out;
}

}  // namespace fracparts
