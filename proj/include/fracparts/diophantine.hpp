#pragma once

// Finite-box badness constants gamma(A, K), strongly-badly-approximable
// probes, dyadic cell counting, and the large sieve / box-count verifiers.

#include "mod1_matrix.hpp"
#include "rational.hpp"
#include "reduce.hpp"
#include "rng.hpp"
#include "torus.hpp"
#include "trigpoly.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace fracparts {

// Exhaustive enumeration refuses beyond this many points rather than sampling.
inline constexpr unsigned long long kEnumBudget = 100000000ull;

struct BudgetExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

// Scans the lexicographically-positive half of { xi : |xi_n| <= K_n } \ {0}
// (the other half follows by xi <-> -xi symmetry of every objective here).
// The visitor receives xi and the unreduced phases (A xi)_m.  Phases are
// carried as per-depth prefixes plus one fused multiply at the innermost
// step, so every phase is a pure function of xi and scans over different
// boxes agree bit for bit on shared points.
template <class Visitor>
void scan_half_centered(const Mod1Matrix& A, const IntBox& box, Visitor&& visit) {
    const int N = box.dims();
    const int M = A.rows();
    if (A.cols() != N) throw std::invalid_argument("scan: dimension mismatch");

    std::vector<long long> xi(static_cast<size_t>(N), 0);
    std::vector<double> phase(static_cast<size_t>(M) * static_cast<size_t>(N + 1), 0.0);
    // phase row d = sum over the first d coordinates
    auto phase_at = [&](int d, int m) -> double& {
        return phase[static_cast<size_t>(d) * static_cast<size_t>(M) + static_cast<size_t>(m)];
    };

    // depth-first over coordinates; at depth d, coordinates 0..d-1 are fixed
    std::function<void(int, bool)> rec = [&](int d, bool leading_zero) {
        if (d == N - 1) {
            long long K = box.limit(d);
            long long lo = leading_zero ? 1 : -K;  // all-zero prefix: start after 0
            std::vector<double> cur(static_cast<size_t>(M));
            for (long long v = lo; v <= K; ++v) {
                for (int m = 0; m < M; ++m)
                    cur[static_cast<size_t>(m)] =
                        std::fma(static_cast<double>(v), A.rep(m, d), phase_at(d, m));
                xi[static_cast<size_t>(d)] = v;
                visit(const_cast<const std::vector<long long>&>(xi), cur.data());
            }
            xi[static_cast<size_t>(d)] = 0;
            return;
        }
        long long K = box.limit(d);
        long long lo = leading_zero ? 0 : -K;
        for (long long v = lo; v <= K; ++v) {
            xi[static_cast<size_t>(d)] = v;
            for (int m = 0; m < M; ++m)
                phase_at(d + 1, m) =
                    std::fma(static_cast<double>(v), A.rep(m, d), phase_at(d, m));
            rec(d + 1, leading_zero && v == 0);
        }
        xi[static_cast<size_t>(d)] = 0;
    };
    rec(0, true);
}

struct ExactPhases {
    // phase_m = (sum_n p'_mn xi_n) mod D_m with all integers exact
    std::vector<long long> scaled_num;  // p'_mn, row-major
    std::vector<long long> denom;       // D_m
};

// Same traversal as scan_half_centered but with exact integer phase
// accumulators (numerators over the per-row common denominators).
template <class Visitor>
void scan_half_centered_exact(const ExactPhases& ep, int M, const IntBox& box,
                              Visitor&& visit) {
    const int N = box.dims();
    std::vector<long long> xi(static_cast<size_t>(N), 0);
    std::vector<long long> phase(static_cast<size_t>(M) * static_cast<size_t>(N + 1), 0);
    auto phase_at = [&](int d, int m) -> long long& {
        return phase[static_cast<size_t>(d) * static_cast<size_t>(M) + static_cast<size_t>(m)];
    };
    auto num = [&](int m, int n) {
        return ep.scaled_num[static_cast<size_t>(m) * static_cast<size_t>(N) +
                             static_cast<size_t>(n)];
    };

    std::function<void(int, bool)> rec = [&](int d, bool leading_zero) {
        if (d == N - 1) {
            long long K = box.limit(d);
            long long lo = leading_zero ? 1 : -K;
            std::vector<long long> cur(static_cast<size_t>(M));
            for (int m = 0; m < M; ++m) cur[static_cast<size_t>(m)] = phase_at(d, m) + lo * num(m, d);
            for (long long v = lo; v <= K; ++v) {
                xi[static_cast<size_t>(d)] = v;
                visit(const_cast<const std::vector<long long>&>(xi), cur.data());
                for (int m = 0; m < M; ++m) cur[static_cast<size_t>(m)] += num(m, d);
            }
            xi[static_cast<size_t>(d)] = 0;
            return;
        }
        long long K = box.limit(d);
        long long lo = leading_zero ? 0 : -K;
        for (long long v = lo; v <= K; ++v) {
            xi[static_cast<size_t>(d)] = v;
            for (int m = 0; m < M; ++m) phase_at(d + 1, m) = phase_at(d, m) + v * num(m, d);
            rec(d + 1, leading_zero && v == 0);
        }
        xi[static_cast<size_t>(d)] = 0;
    };
    rec(0, true);
}

// Integer form of the rational matrix over per-row common denominators.
// Throws when the accumulators could overflow 63 bits at this box size.
inline ExactPhases exact_phases(const Mod1Matrix& A, const IntBox& box) {
    if (!A.has_exact()) throw std::logic_error("exact mode requires a rational matrix");
    ExactPhases ep;
    const int M = A.rows(), N = A.cols();
    ep.scaled_num.resize(static_cast<size_t>(M) * static_cast<size_t>(N));
    ep.denom.resize(static_cast<size_t>(M));
    for (int m = 0; m < M; ++m) {
        BigInt D = 1;
        for (int n = 0; n < N; ++n)
            D = boost::multiprecision::lcm(D, boost::multiprecision::denominator(A.exact(m, n)));
        BigInt worst = 0;
        for (int n = 0; n < N; ++n) {
            BigInt p = boost::multiprecision::numerator(A.exact(m, n)) *
                       (D / boost::multiprecision::denominator(A.exact(m, n)));
            worst += p * box.limit(n);
            if (p > std::numeric_limits<long long>::max())
                throw std::overflow_error("exact mode: scaled numerator too wide");
            ep.scaled_num[static_cast<size_t>(m) * N + static_cast<size_t>(n)] =
                p.convert_to<long long>();
        }
        if (D > std::numeric_limits<long long>::max() ||
            worst > BigInt(std::numeric_limits<long long>::max() / 2))
            throw std::overflow_error("exact mode: accumulator too wide for this box");
        ep.denom[static_cast<size_t>(m)] = D.convert_to<long long>();
    }
    return ep;
}

}  // namespace detail

struct GammaReport {
    double gamma = 0.0;
    std::vector<long long> argmin;
    IntBox box;
    bool exhaustive = true;
    bool exact_zero = false;  // exact mode certified gamma = 0
    unsigned long long points_scanned = 0;
};

// gamma(A, K) = min of P_M(A xi) Q_N(xi) over nonzero xi in K - K, by
// exhaustive enumeration (xi <-> -xi halves the work).  With a rational
// matrix, exact arithmetic re-checks the near-zero candidates, so gamma = 0
// is decided exactly.
inline GammaReport gamma_AK(const Mod1Matrix& A, const IntBox& box) {
    if (box.all_zero()) throw std::invalid_argument("gamma_AK: box must not be all zero");
    if (box.diff_cardinality() > kEnumBudget)
        throw BudgetExceeded("gamma_AK: |K - K| exceeds the enumeration budget");

    GammaReport r;
    r.box = box;
    double best = std::numeric_limits<double>::infinity();
    std::vector<long long> argmin;
    const int M = A.rows();

    if (A.has_exact()) {
        // integer phases: distances are exact, zeros are certain
        auto ep = detail::exact_phases(A, box);
        detail::scan_half_centered_exact(ep, M, box, [&](const std::vector<long long>& xi,
                                                         const long long* num) {
            double p = 1.0;
            for (int m = 0; m < M; ++m) {
                long long D = ep.denom[static_cast<size_t>(m)];
                long long rme = num[m] % D;
                if (rme < 0) rme += D;
                long long dnum = rme < D - rme ? rme : D - rme;
                if (dnum == 0) {
                    p = 0.0;
                    break;
                }
                p *= static_cast<double>(dnum) / static_cast<double>(D);
            }
            if (p > 0.0) p *= static_cast<double>(Q_N(xi));
            if (p < best) {
                best = p;
                argmin = xi;
            }
            ++r.points_scanned;
        });
        r.gamma = best;
        r.argmin = argmin;
        r.exact_zero = best == 0.0;
    } else {
        detail::scan_half_centered(A, box, [&](const std::vector<long long>& xi, const double* ph) {
            double p = 1.0;
            for (int m = 0; m < M; ++m) p *= dist_to_nearest_int(ph[m]);
            p *= static_cast<double>(Q_N(xi));
            if (p < best) {
                best = p;
                argmin = xi;
            }
            ++r.points_scanned;
        });
        r.gamma = best;
        r.argmin = argmin;
    }
    if (!(r.gamma <= 1.0 + 1e-9))
        throw std::runtime_error("gamma_AK: Dirichlet bound gamma <= 1 violated");
    return r;
}

// min over nonzero xi of (max_m ||(A xi)_m||)^M (max_n |xi_n|)^N
inline double badness_constant(const Mod1Matrix& A, const IntBox& box) {
    if (box.all_zero()) throw std::invalid_argument("badness_constant: box must not be all zero");
    if (box.diff_cardinality() > kEnumBudget)
        throw BudgetExceeded("badness_constant: |K - K| exceeds the enumeration budget");
    const int M = A.rows(), N = A.cols();
    double best = std::numeric_limits<double>::infinity();
    detail::scan_half_centered(A, box, [&](const std::vector<long long>& xi, const double* ph) {
        double maxd = 0.0;
        for (int m = 0; m < M; ++m) maxd = std::max(maxd, dist_to_nearest_int(ph[m]));
        long long maxxi = 0;
        for (long long v : xi) maxxi = std::max(maxxi, v < 0 ? -v : v);
        double val = std::pow(maxd, M) * std::pow(static_cast<double>(maxxi), N);
        best = std::min(best, val);
    });
    return best;
}

struct TrajectoryPoint {
    int exponent = 0;  // box limit 2^exponent in every coordinate
    GammaReport report;
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    std::string verdict;     // "bounded-below (non-conclusive)" or "decay observed (non-conclusive)"
    double decay_exponent = 0.0;  // slope of log2(gamma) against t
};

// gamma(A, K_t) along the doubling schedule K_t = (2^t, ..., 2^t).
inline Trajectory gamma_trajectory(const Mod1Matrix& A, int max_exponent, int min_exponent = 2) {
    Trajectory tr;
    double prev = std::numeric_limits<double>::infinity();
    for (int t = min_exponent; t <= max_exponent; ++t) {
        std::vector<long long> lims(static_cast<size_t>(A.cols()), 1ll << t);
        GammaReport g = gamma_AK(A, IntBox(lims));
        if (g.gamma > prev + 1e-12)
            throw std::runtime_error("gamma_trajectory: monotonicity violated");
        prev = g.gamma;
        tr.points.push_back({t, std::move(g)});
        if (prev == 0.0) break;
    }
    // least-squares slope of log2 gamma in t, over the second half of the run
    size_t n = tr.points.size();
    size_t lo = n / 2;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    size_t cnt = 0;
    for (size_t i = lo; i < n; ++i) {
        if (tr.points[i].report.gamma <= 0.0) continue;
        double x = tr.points[i].exponent;
        double y = std::log2(tr.points[i].report.gamma);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++cnt;
    }
    if (cnt >= 2) {
        double denom = static_cast<double>(cnt) * sxx - sx * sx;
        tr.decay_exponent = denom != 0.0 ? (static_cast<double>(cnt) * sxy - sx * sy) / denom : 0.0;
    }
    bool hit_zero = !tr.points.empty() && tr.points.back().report.gamma == 0.0;
    tr.verdict = (!hit_zero && tr.decay_exponent > -0.05)
                     ? "bounded-below up to budget (non-conclusive)"
                     : "decay observed (non-conclusive)";
    return tr;
}

struct HeredityEntry {
    std::vector<int> rows, cols;
    double gamma_sub = 0.0;
    bool ok = true;  // gamma_sub >= gamma_full - tol
};

struct HeredityReport {
    double gamma_full = 0.0;
    std::vector<HeredityEntry> entries;
    bool ok = true;
};

// Every submatrix A(I, J), probed with support-restricted xi, must be at
// least as hard to approximate: gamma(A(I,J), K_J) >= gamma(A, K).
inline HeredityReport submatrix_heredity_check(const Mod1Matrix& A, const IntBox& box,
                                               double tol = 1e-9) {
    HeredityReport rep;
    rep.gamma_full = gamma_AK(A, box).gamma;
    const int M = A.rows(), N = A.cols();
    for (int rmask = 1; rmask < (1 << M); ++rmask)
        for (int cmask = 1; cmask < (1 << N); ++cmask) {
            HeredityEntry e;
            for (int m = 0; m < M; ++m)
                if (rmask & (1 << m)) e.rows.push_back(m);
            for (int n = 0; n < N; ++n)
                if (cmask & (1 << n)) e.cols.push_back(n);
            std::vector<long long> lims;
            for (int n : e.cols) lims.push_back(box.limit(n));
            e.gamma_sub = gamma_AK(A.submatrix(e.rows, e.cols), IntBox(lims)).gamma;
            e.ok = e.gamma_sub >= rep.gamma_full - tol;
            rep.ok = rep.ok && e.ok;
            rep.entries.push_back(std::move(e));
        }
    return rep;
}

struct RatioReport {
    double ratio = 0.0;
    double sum_F_value = 0.0;
    long long degenerate_hits = 0;
    double gamma = 0.0;
    unsigned long long cardK = 0;
};

// Empirical implied constant of the strongly-badly-approximable upper bound:
// sum over nonzero xi in the one-sided box K of F(A xi), divided by
// |K| (log 2|K|)^M.
inline RatioReport thm21_ratio(const Mod1Matrix& A, const IntBox& box) {
    GammaReport g = gamma_AK(A, box);
    if (g.gamma <= 0.0) throw std::domain_error("thm21_ratio: gamma(A, K) vanished");
    RatioReport r;
    r.gamma = g.gamma;
    r.cardK = box.cardinality();

    const int M = A.rows();
    PairwiseSum ps;
    long long degenerate = 0;
    box.for_each([&](const std::vector<long long>& xi) {
        bool zero = true;
        for (long long v : xi)
            if (v != 0) { zero = false; break; }
        if (zero) return;
        double prod = 1.0;
        for (int m = 0; m < M; ++m) {
            double s = 0.0;
            for (int n = 0; n < A.cols(); ++n)
                s += A.rep(m, n) * static_cast<double>(xi[static_cast<size_t>(n)]);
            double d = dist_to_nearest_int(s);
            if (d < kDegeneracyTol) { ++degenerate; return; }
            prod /= 2.0 * d;
        }
        ps.add(prod);
    });
    r.sum_F_value = ps.total();
    r.degenerate_hits = degenerate;
    double denom = static_cast<double>(r.cardK) *
                   std::pow(std::log(2.0 * static_cast<double>(r.cardK)), M);
    r.ratio = r.sum_F_value / denom;
    return r;
}

struct DyadicCell {
    std::vector<long long> d;
    bool valid = false;  // false: some ||x_m|| = 0, no cell

    long long total() const {
        long long t = 0;
        for (long long v : d) t += v;
        return t;
    }
};

// The unique d >= 1 with 2^{-d_m - 1} < ||x_m|| <= 2^{-d_m} per coordinate.
inline DyadicCell dyadic_cell_of(const TorusVector& x) {
    DyadicCell c;
    c.d.resize(static_cast<size_t>(x.dim()));
    for (int m = 0; m < x.dim(); ++m) {
        double t = x.dist(m);
        if (t == 0.0) return c;  // valid stays false
        long long d = static_cast<long long>(std::floor(-std::log2(t)));
        // fix boundary rounding so the defining inequalities hold exactly
        while (t > std::ldexp(1.0, static_cast<int>(-d))) --d;
        while (t <= std::ldexp(1.0, static_cast<int>(-d - 1))) ++d;
        if (d < 1) return c;  // cannot happen for ||.|| <= 1/2, kept as a guard
        c.d[static_cast<size_t>(m)] = d;
    }
    c.valid = true;
    return c;
}

// Counts {d : d_m >= 1, |d| <= R} directly and returns it next to C(R, M).
inline std::pair<unsigned long long, unsigned long long> dyadic_count_identity(int M, int R) {
    if (M < 1 || R < M) throw std::invalid_argument("dyadic_count_identity: need 1 <= M <= R");
    unsigned long long direct = 0;
    // odometer over d with d_m >= 1 and running sum <= R
    std::vector<long long> d(static_cast<size_t>(M), 1);
    std::function<void(int, long long)> rec = [&](int idx, long long used) {
        if (idx == M) {
            ++direct;
            return;
        }
        for (long long v = 1; used + v + (M - idx - 1) <= R; ++v) rec(idx + 1, used + v);
    };
    rec(0, 0);
    // binomial C(R, M) in exact integer arithmetic
    unsigned long long binom = 1;
    for (int i = 1; i <= M; ++i)
        binom = binom * static_cast<unsigned long long>(R - M + i) / static_cast<unsigned long long>(i);
    return {direct, binom};
}

struct CellCountReport {
    unsigned long long count = 0;
    double bound = 0.0;  // 4^M gamma^{-1} 2^{-|d|} |K| + 12^M
    double gamma = 0.0;
    bool ok = true;
};

// #{ xi in K : A xi in B(d) } against the dyadic-cell bound, with gamma(A, K)
// standing in for gamma(A) (it is at least as large, so the check is
// tighter than the printed inequality).
inline CellCountReport cell_count_bound(const Mod1Matrix& A, const IntBox& box,
                                        const DyadicCell& cell) {
    if (!cell.valid) throw std::invalid_argument("cell_count_bound: invalid cell");
    GammaReport g = gamma_AK(A, box);
    if (g.gamma <= 0.0) throw std::domain_error("cell_count_bound: gamma(A, K) vanished");
    const int M = A.rows();
    if (static_cast<int>(cell.d.size()) != M)
        throw std::invalid_argument("cell_count_bound: cell dimension");

    CellCountReport r;
    r.gamma = g.gamma;
    box.for_each([&](const std::vector<long long>& xi) {
        bool zero = true;
        for (long long v : xi)
            if (v != 0) { zero = false; break; }
        if (zero) return;
        for (int m = 0; m < M; ++m) {
            double s = 0.0;
            for (int n = 0; n < A.cols(); ++n)
                s += A.rep(m, n) * static_cast<double>(xi[static_cast<size_t>(n)]);
            double t = dist_to_nearest_int(s);
            long long dm = cell.d[static_cast<size_t>(m)];
            if (!(t > std::ldexp(1.0, static_cast<int>(-dm - 1)) &&
                  t <= std::ldexp(1.0, static_cast<int>(-dm))))
                return;
        }
        ++r.count;
    });
    r.bound = std::pow(4.0, M) / g.gamma *
                  std::ldexp(static_cast<double>(box.cardinality()), static_cast<int>(-cell.total())) +
              std::pow(12.0, M);
    r.ok = static_cast<double>(r.count) <= r.bound * (1.0 + 1e-12);
    return r;
}

struct CellPartitionReport {
    long long R = 0;
    unsigned long long in_range = 0;      // cells with |d| <= R
    unsigned long long out_of_range = 0;  // valid cells with |d| > R
    unsigned long long degenerate = 0;    // no cell (some coordinate distance 0)
    unsigned long long expected = 0;      // |K| - 1
    bool ok = true;
};

// Every nonzero xi in K lands in exactly one cell; with R from the dyadic cut
// 2^{R-1} <= 2^{-M} gamma^{-1} |K| < 2^R the in/out/degenerate split must
// account for all |K| - 1 points.
inline CellPartitionReport cell_partition_check(const Mod1Matrix& A, const IntBox& box) {
    GammaReport g = gamma_AK(A, box);
    if (g.gamma <= 0.0) throw std::domain_error("cell_partition_check: gamma vanished");
    CellPartitionReport rep;
    // unique R with 2^{R-1} <= 2^{-M} gamma^{-1} |K| < 2^R
    double target = std::ldexp(1.0 / g.gamma, -A.rows()) * static_cast<double>(box.cardinality());
    rep.R = 1;
    while (rep.R < 62 && std::ldexp(1.0, static_cast<int>(rep.R)) <= target) ++rep.R;

    const int M = A.rows();
    box.for_each([&](const std::vector<long long>& xi) {
        bool zero = true;
        for (long long v : xi)
            if (v != 0) { zero = false; break; }
        if (zero) return;
        std::vector<double> coords(static_cast<size_t>(M));
        for (int m = 0; m < M; ++m) {
            double s = 0.0;
            for (int n = 0; n < A.cols(); ++n)
                s += A.rep(m, n) * static_cast<double>(xi[static_cast<size_t>(n)]);
            coords[static_cast<size_t>(m)] = s;
        }
        DyadicCell c = dyadic_cell_of(TorusVector::from_reals(coords));
        if (!c.valid)
            ++rep.degenerate;
        else if (c.total() <= rep.R)
            ++rep.in_range;
        else
            ++rep.out_of_range;
    });
    rep.expected = box.cardinality() - 1;
    rep.ok = rep.in_range + rep.out_of_range + rep.degenerate == rep.expected;
    return rep;
}

enum class SieveCoeffMode { Basis, Random, Adversarial };

struct SieveReport {
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    double gamma = 0.0;
    bool ok = true;
};

// Large sieve check: for b on the one-sided box L in Z^M,
//   sum_{xi in K} |sum_eta b(eta) e(eta^T A xi)|^2
//     <= (gamma^{-1/M} |K|^{1/M} + |L|^{1/M})^M  sum |b|^2.
inline SieveReport large_sieve_check(const Mod1Matrix& A, const IntBox& boxK, const IntBox& boxL,
                                     SieveCoeffMode mode, std::uint64_t seed = kDefaultSeed) {
    const int M = A.rows();
    if (boxL.dims() != M) throw std::invalid_argument("large_sieve_check: L box dimension");
    GammaReport g = gamma_AK(A, boxK);
    if (g.gamma <= 0.0) throw std::domain_error("large_sieve_check: gamma(A, K) vanished");

    // coefficient table on the box L
    std::vector<std::vector<long long>> etas;
    boxL.for_each([&](const std::vector<long long>& e) { etas.push_back(e); });
    std::vector<std::complex<double>> b(etas.size());
    CounterRng rng(seed);
    switch (mode) {
        case SieveCoeffMode::Basis:
            for (size_t i = 0; i < b.size(); ++i) b[i] = 0.0;
            b[0] = 1.0;  // indicator of eta = 0 (first in lexicographic order)
            break;
        case SieveCoeffMode::Random:
            for (auto& v : b) v = {rng.next_gaussian(), rng.next_gaussian()};
            break;
        case SieveCoeffMode::Adversarial:
            // phases aligned at the xi = 0 row of the sum
            for (auto& v : b) v = 1.0;
            break;
    }

    double sumb2 = 0.0;
    for (const auto& v : b) sumb2 += std::norm(v);

    SieveReport r;
    r.gamma = g.gamma;
    PairwiseSum lhs;
    boxK.for_each([&](const std::vector<long long>& xi) {
        // eta^T (A xi): compute A xi once, then the M-dim inner products
        std::vector<double> ax(static_cast<size_t>(M));
        for (int m = 0; m < M; ++m) {
            double s = 0.0;
            for (int n = 0; n < A.cols(); ++n)
                s += A.rep(m, n) * static_cast<double>(xi[static_cast<size_t>(n)]);
            ax[static_cast<size_t>(m)] = s;
        }
        std::complex<double> B = 0.0;
        for (size_t i = 0; i < etas.size(); ++i) {
            double ph = 0.0;
            for (int m = 0; m < M; ++m)
                ph += static_cast<double>(etas[i][static_cast<size_t>(m)]) *
                      ax[static_cast<size_t>(m)];
            B += b[i] * e_of(ph);
        }
        lhs.add(std::norm(B));
    });
    r.lhs = lhs.total();
    double Minv = 1.0 / static_cast<double>(M);
    r.rhs = std::pow(std::pow(g.gamma, -Minv) *
                             std::pow(static_cast<double>(boxK.cardinality()), Minv) +
                         std::pow(static_cast<double>(boxL.cardinality()), Minv),
                     M) *
            sumb2;
    r.margin = r.rhs - r.lhs;
    r.ok = r.lhs <= r.rhs * (1.0 + 1e-9);
    return r;
}

struct BoxCountReport {
    unsigned long long count = 0;
    double bound = 0.0;  // 4^M gamma^{-1} (prod delta) |K| + 6^M
    double gamma = 0.0;
    bool ok = true;
};

// #{ xi in K : ||(A xi)_m - y_m|| <= delta_m / 2 for all m } against the
// box-count bound.
inline BoxCountReport box_count_lemma_check(const Mod1Matrix& A, const IntBox& boxK,
                                            const TorusVector& y,
                                            const std::vector<double>& delta) {
    const int M = A.rows();
    if (y.dim() != M || static_cast<int>(delta.size()) != M)
        throw std::invalid_argument("box_count_lemma_check: dimension mismatch");
    for (double dm : delta)
        if (!(dm > 0.0 && dm <= 1.0))
            throw std::invalid_argument("box_count_lemma_check: delta out of (0,1]");
    GammaReport g = gamma_AK(A, boxK);
    if (g.gamma <= 0.0) throw std::domain_error("box_count_lemma_check: gamma vanished");

    BoxCountReport r;
    r.gamma = g.gamma;
    boxK.for_each([&](const std::vector<long long>& xi) {
        for (int m = 0; m < M; ++m) {
            double s = 0.0;
            for (int n = 0; n < A.cols(); ++n)
                s += A.rep(m, n) * static_cast<double>(xi[static_cast<size_t>(n)]);
            if (dist_to_nearest_int(s - y[m].rep()) > 0.5 * delta[static_cast<size_t>(m)]) return;
        }
        ++r.count;
    });
    double vol = 1.0;
    for (double dm : delta) vol *= dm;
    r.bound = std::pow(4.0, M) / g.gamma * vol * static_cast<double>(boxK.cardinality()) +
              std::pow(6.0, M);
    r.ok = static_cast<double>(r.count) <= r.bound * (1.0 + 1e-12);
    return r;
}

}  // namespace fracparts
