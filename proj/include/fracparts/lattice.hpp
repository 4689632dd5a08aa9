#pragma once

// Transference machinery: the unit-determinant lattices Delta B Z^L attached
// to a real matrix A, their duals, successive minima under the sup and l1
// norms by exhaustive enumeration, and the Minkowski / Mahler checks.

#include "mod1_matrix.hpp"
#include "rational.hpp"
#include "torus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace fracparts {

inline constexpr int kMaxLatticeDim = 6;
inline constexpr unsigned long long kLatticeEnumBudget = 100000000ull;

enum class LatticeNorm { Sup, L1 };

// L x L real basis; columns generate the lattice.
struct LatticeBasis {
    int dim = 0;
    std::vector<double> a;  // row-major
    double det = 0.0;

    double at(int r, int c) const {
        return a[static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c)];
    }
    double& at(int r, int c) {
        return a[static_cast<size_t>(r) * static_cast<size_t>(dim) + static_cast<size_t>(c)];
    }

    static LatticeBasis from_rows(int dim, std::vector<double> rows) {
        if (dim < 1 || rows.size() != static_cast<size_t>(dim) * static_cast<size_t>(dim))
            throw std::invalid_argument("LatticeBasis: bad shape");
        LatticeBasis b;
        b.dim = dim;
        b.a = std::move(rows);
        Eigen::MatrixXd m(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m(r, c) = b.at(r, c);
        b.det = m.determinant();
        if (b.det == 0.0) throw std::invalid_argument("LatticeBasis: singular basis");
        return b;
    }

    Eigen::MatrixXd eigen() const {
        Eigen::MatrixXd m(dim, dim);
        for (int r = 0; r < dim; ++r)
            for (int c = 0; c < dim; ++c) m(r, c) = at(r, c);
        return m;
    }
};

// Real (lifted) M x N matrix for the section-8 constructions.
struct RealMatrix {
    int rows = 0, cols = 0;
    std::vector<double> a;  // row-major

    double at(int r, int c) const {
        return a[static_cast<size_t>(r) * static_cast<size_t>(cols) + static_cast<size_t>(c)];
    }

    static RealMatrix lift(const Mod1Matrix& m) {
        RealMatrix out;
        out.rows = m.rows();
        out.cols = m.cols();
        out.a.resize(static_cast<size_t>(out.rows) * static_cast<size_t>(out.cols));
        for (int r = 0; r < out.rows; ++r)
            for (int c = 0; c < out.cols; ++c)
                out.a[static_cast<size_t>(r) * out.cols + static_cast<size_t>(c)] = m.rep(r, c);
        return out;
    }

    RealMatrix transposed() const {
        RealMatrix t;
        t.rows = cols;
        t.cols = rows;
        t.a.resize(a.size());
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                t.a[static_cast<size_t>(c) * t.cols + static_cast<size_t>(r)] = at(r, c);
        return t;
    }
};

// B = [[I_M, A], [0, I_N]]; unit upper triangular, det = 1 exactly.
inline LatticeBasis build_B(const RealMatrix& A) {
    int L = A.rows + A.cols;
    std::vector<double> rows(static_cast<size_t>(L) * static_cast<size_t>(L), 0.0);
    for (int i = 0; i < L; ++i) rows[static_cast<size_t>(i) * L + static_cast<size_t>(i)] = 1.0;
    for (int m = 0; m < A.rows; ++m)
        for (int n = 0; n < A.cols; ++n)
            rows[static_cast<size_t>(m) * L + static_cast<size_t>(A.rows + n)] = A.at(m, n);
    LatticeBasis b = LatticeBasis::from_rows(L, std::move(rows));
    b.det = 1.0;  // exact for a unit triangular matrix
    return b;
}

// B^{-T} = [[I_M, 0], [-A^T, I_N]]
inline LatticeBasis build_B_dual(const RealMatrix& A) {
    int L = A.rows + A.cols;
    std::vector<double> rows(static_cast<size_t>(L) * static_cast<size_t>(L), 0.0);
    for (int i = 0; i < L; ++i) rows[static_cast<size_t>(i) * L + static_cast<size_t>(i)] = 1.0;
    for (int n = 0; n < A.cols; ++n)
        for (int m = 0; m < A.rows; ++m)
            rows[static_cast<size_t>(A.rows + n) * L + static_cast<size_t>(m)] = -A.at(m, n);
    LatticeBasis b = LatticeBasis::from_rows(L, std::move(rows));
    b.det = 1.0;
    return b;
}

struct DeltaChoice {
    std::vector<double> delta;        // L diagonal entries, prod = 1
    double R = 0.0;
    std::vector<long long> eta;       // nearest-integer vector
    std::vector<long long> psi;       // (eta; xi)
};

// The diagonal scaling attached to (A, xi): R^L = prod ||(A xi)_m|| prod (|xi_n|+1),
// delta_m = R / ||(A xi)_m||, delta_{M+n} = R / (|xi_n|+1).  Refuses when the
// distances make Delta anisotropic beyond 1e12.
inline DeltaChoice choose_delta(const RealMatrix& A, const std::vector<long long>& xi) {
    if (static_cast<int>(xi.size()) != A.cols)
        throw std::invalid_argument("choose_delta: xi dimension");
    bool nonzero = false;
    for (long long v : xi) nonzero = nonzero || v != 0;
    if (!nonzero) throw std::invalid_argument("choose_delta: xi must be nonzero");

    const int M = A.rows, N = A.cols, L = M + N;
    DeltaChoice out;
    out.eta.resize(static_cast<size_t>(M));
    std::vector<double> dist(static_cast<size_t>(M));
    double log_prod = 0.0;
    for (int m = 0; m < M; ++m) {
        double t = 0.0;
        for (int n = 0; n < N; ++n) t += A.at(m, n) * static_cast<double>(xi[static_cast<size_t>(n)]);
        out.eta[static_cast<size_t>(m)] = -static_cast<long long>(std::llround(t));
        double d = std::fabs(t + static_cast<double>(out.eta[static_cast<size_t>(m)]));
        if (d == 0.0) throw std::domain_error("choose_delta: ||(A xi)_m|| vanished");
        dist[static_cast<size_t>(m)] = d;
        log_prod += std::log(d);
    }
    for (int n = 0; n < N; ++n) {
        long long v = xi[static_cast<size_t>(n)];
        log_prod += std::log(static_cast<double>((v < 0 ? -v : v) + 1));
    }
    out.R = std::exp(log_prod / L);

    out.delta.resize(static_cast<size_t>(L));
    for (int m = 0; m < M; ++m) out.delta[static_cast<size_t>(m)] = out.R / dist[static_cast<size_t>(m)];
    for (int n = 0; n < N; ++n) {
        long long v = xi[static_cast<size_t>(n)];
        out.delta[static_cast<size_t>(M + n)] = out.R / static_cast<double>((v < 0 ? -v : v) + 1);
    }

    double dmin = out.delta[0], dmax = out.delta[0];
    for (double dv : out.delta) {
        dmin = std::min(dmin, dv);
        dmax = std::max(dmax, dv);
    }
    if (dmax > 1e12 * dmin)
        throw std::domain_error("choose_delta: scaling too anisotropic (delta ratio > 1e12)");

    out.psi.reserve(static_cast<size_t>(L));
    out.psi.insert(out.psi.end(), out.eta.begin(), out.eta.end());
    out.psi.insert(out.psi.end(), xi.begin(), xi.end());
    return out;
}

// Delta B as a lattice basis (det 1 up to roundoff, set exactly).
inline LatticeBasis scaled_basis(const LatticeBasis& B, const std::vector<double>& delta) {
    if (static_cast<int>(delta.size()) != B.dim)
        throw std::invalid_argument("scaled_basis: delta dimension");
    LatticeBasis out = B;
    for (int r = 0; r < B.dim; ++r)
        for (int c = 0; c < B.dim; ++c) out.at(r, c) *= delta[static_cast<size_t>(r)];
    out.det = B.det;  // prod delta = 1
    return out;
}

inline LatticeBasis inverse_scaled_basis(const LatticeBasis& Bdual, const std::vector<double>& delta) {
    LatticeBasis out = Bdual;
    for (int r = 0; r < Bdual.dim; ++r)
        for (int c = 0; c < Bdual.dim; ++c) out.at(r, c) /= delta[static_cast<size_t>(r)];
    out.det = Bdual.det;
    return out;
}

struct MinimaResult {
    std::vector<double> lambda;                    // nondecreasing
    std::vector<std::vector<long long>> witnesses;  // integer coefficient vectors
    bool certified = false;
    LatticeNorm norm = LatticeNorm::Sup;
    LatticeBasis basis;
};

namespace detail {

// Rank of an integer matrix by fraction-free (Bareiss) elimination.
template <class Int>
int bareiss_rank(std::vector<std::vector<Int>> m) {
    if (m.empty()) return 0;
    size_t rows = m.size(), cols = m[0].size();
    Int prev = 1;
    size_t rank = 0;
    for (size_t c = 0; c < cols && rank < rows; ++c) {
        size_t piv = rank;
        while (piv < rows && m[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(m[rank], m[piv]);
        for (size_t r = rank + 1; r < rows; ++r) {
            for (size_t k = c + 1; k < cols; ++k)
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return static_cast<int>(rank);
}

inline int integer_rank(const std::vector<std::vector<long long>>& rows) {
    long long worst = 0;
    for (const auto& r : rows)
        for (long long v : r) worst = std::max(worst, v < 0 ? -v : v);
    if (worst <= 1000000) {
        std::vector<std::vector<__int128>> wide(rows.size());
        for (size_t i = 0; i < rows.size(); ++i)
            wide[i].assign(rows[i].begin(), rows[i].end());
        return bareiss_rank(std::move(wide));
    }
    std::vector<std::vector<BigInt>> wide(rows.size());
    for (size_t i = 0; i < rows.size(); ++i)
        for (long long v : rows[i]) wide[i].push_back(BigInt(v));
    return bareiss_rank(std::move(wide));
}

inline double vec_norm(const std::vector<double>& x, LatticeNorm norm) {
    double s = 0.0;
    if (norm == LatticeNorm::Sup) {
        for (double v : x) s = std::max(s, std::fabs(v));
    } else {
        for (double v : x) s += std::fabs(v);
    }
    return s;
}

// Pairwise integer size reduction: repeatedly replaces col_i by
// col_i - k col_j when that shortens it, recording the unimodular transform
// U with new_basis = basis * U.  The lattice is unchanged; the enumeration
// box for a skewed basis (the Delta B lattices are very anisotropic) shrinks
// by many orders of magnitude.  No Gram-Schmidt, no LLL: exact column ops.
struct ReducedBasis {
    LatticeBasis basis;
    std::vector<std::vector<long long>> U;  // column-major transform, L x L
};

inline ReducedBasis size_reduce(const LatticeBasis& in) {
    const int L = in.dim;
    ReducedBasis out;
    out.basis = in;
    out.U.assign(static_cast<size_t>(L), std::vector<long long>(static_cast<size_t>(L), 0));
    for (int i = 0; i < L; ++i) out.U[static_cast<size_t>(i)][static_cast<size_t>(i)] = 1;

    auto col_norm2 = [&](int c) {
        double s = 0.0;
        for (int r = 0; r < L; ++r) s += out.basis.at(r, c) * out.basis.at(r, c);
        return s;
    };
    auto col_dot = [&](int c1, int c2) {
        double s = 0.0;
        for (int r = 0; r < L; ++r) s += out.basis.at(r, c1) * out.basis.at(r, c2);
        return s;
    };

    for (int sweep = 0; sweep < 200; ++sweep) {
        bool changed = false;
        for (int i = 0; i < L; ++i)
            for (int j = 0; j < L; ++j) {
                if (i == j) continue;
                double denom = col_norm2(j);
                if (denom == 0.0) continue;
                long long k = static_cast<long long>(std::llround(col_dot(i, j) / denom));
                if (k == 0) continue;
                double before = col_norm2(i);
                for (int r = 0; r < L; ++r)
                    out.basis.at(r, i) -= static_cast<double>(k) * out.basis.at(r, j);
                if (col_norm2(i) < before * (1.0 - 1e-12)) {
                    for (int r = 0; r < L; ++r)
                        out.U[static_cast<size_t>(r)][static_cast<size_t>(i)] -=
                            k * out.U[static_cast<size_t>(r)][static_cast<size_t>(j)];
                    changed = true;
                } else {
                    for (int r = 0; r < L; ++r)
                        out.basis.at(r, i) += static_cast<double>(k) * out.basis.at(r, j);
                }
            }
        if (!changed) break;
    }
    out.basis.det = in.det;
    return out;
}

struct Candidate {
    double norm;
    std::uint64_t rank;  // enumeration order, for deterministic ties
    std::vector<long long> coeffs;
};

}  // namespace detail

// Exact successive minima of basis * Z^L with respect to the sup or l1 unit
// ball, by exhaustive enumeration over a coefficient box that provably covers
// every lattice point of norm <= lambda_L.  Witnesses are chosen greedily by
// ascending norm with exact rational-independence tests.
inline MinimaResult successive_minima(const LatticeBasis& input_basis, LatticeNorm norm) {
    const int L = input_basis.dim;
    if (L > kMaxLatticeDim) throw std::invalid_argument("successive_minima: dim > 6");

    // enumerate in a size-reduced copy of the lattice; same minima, far
    // smaller coefficient boxes for anisotropic bases
    detail::ReducedBasis red = detail::size_reduce(input_basis);
    const LatticeBasis& basis = red.basis;

    Eigen::MatrixXd B = basis.eigen();
    Eigen::MatrixXd inv = B.inverse();

    // |m_i| <= lambda * rho_i for any lattice vector of norm <= lambda
    std::vector<double> rho(static_cast<size_t>(L), 0.0);
    for (int i = 0; i < L; ++i) {
        double s = 0.0;
        for (int j = 0; j < L; ++j) {
            double v = std::fabs(inv(i, j));
            s = (norm == LatticeNorm::Sup) ? s + v : std::max(s, v);
        }
        rho[static_cast<size_t>(i)] = s;
    }

    // the columns are L independent lattice vectors, so lambda_L <= max col norm
    double lambda_ub = 0.0;
    for (int c = 0; c < L; ++c) {
        std::vector<double> col(static_cast<size_t>(L));
        for (int r = 0; r < L; ++r) col[static_cast<size_t>(r)] = basis.at(r, c);
        lambda_ub = std::max(lambda_ub, detail::vec_norm(col, norm));
    }

    std::vector<long long> radius(static_cast<size_t>(L));
    bool truncated = false;
    for (;;) {
        long double cells = 1.0L;
        for (int i = 0; i < L; ++i) {
            radius[static_cast<size_t>(i)] = static_cast<long long>(
                std::ceil(lambda_ub * rho[static_cast<size_t>(i)] + 1e-9));
            if (radius[static_cast<size_t>(i)] < 1) radius[static_cast<size_t>(i)] = 1;
            cells *= 2.0L * radius[static_cast<size_t>(i)] + 1.0L;
        }
        if (cells <= static_cast<long double>(kLatticeEnumBudget)) break;
        lambda_ub *= 0.5;  // shrink until the box fits; result will be uncertified
        truncated = true;
    }

    // enumerate the positive half of the coefficient box, tracking a bounded
    // buffer of smallest candidates
    size_t buffer_cap = 4096;
    MinimaResult res;
    res.norm = norm;
    res.basis = input_basis;

    for (;;) {
        std::vector<detail::Candidate> cands;
        cands.reserve(buffer_cap + 1);
        std::uint64_t rank = 0;
        std::vector<long long> m(static_cast<size_t>(L), 0);
        std::vector<double> partial(static_cast<size_t>(L) * static_cast<size_t>(L + 1), 0.0);
        auto partial_at = [&](int d, int r) -> double& {
            return partial[static_cast<size_t>(d) * L + static_cast<size_t>(r)];
        };

        double cutoff = std::numeric_limits<double>::infinity();
        std::function<void(int, bool)> rec = [&](int d, bool leading_zero) {
            if (d == L) {
                if (leading_zero) return;  // skip m = 0
                std::vector<double> x(static_cast<size_t>(L));
                for (int r = 0; r < L; ++r) x[static_cast<size_t>(r)] = partial_at(L, r);
                double nv = detail::vec_norm(x, norm);
                ++rank;
                if (nv >= cutoff) return;
                detail::Candidate c{nv, rank, m};
                auto cmp = [](const detail::Candidate& a, const detail::Candidate& b) {
                    return a.norm < b.norm || (a.norm == b.norm && a.rank < b.rank);
                };
                cands.insert(std::upper_bound(cands.begin(), cands.end(), c, cmp), std::move(c));
                if (cands.size() > buffer_cap) {
                    cands.pop_back();
                    cutoff = cands.back().norm;
                }
                return;
            }
            long long rad = radius[static_cast<size_t>(d)];
            long long lo = leading_zero ? 0 : -rad;
            for (long long v = lo; v <= rad; ++v) {
                m[static_cast<size_t>(d)] = v;
                for (int r = 0; r < L; ++r)
                    partial_at(d + 1, r) =
                        partial_at(d, r) + static_cast<double>(v) * basis.at(r, d);
                rec(d + 1, leading_zero && v == 0);
            }
            m[static_cast<size_t>(d)] = 0;
        };
        rec(0, true);

        // greedy independent selection in ascending norm order; witnesses are
        // mapped back to coefficients of the caller's basis through U
        res.lambda.clear();
        res.witnesses.clear();
        std::vector<std::vector<long long>> chosen;
        for (const auto& c : cands) {
            auto trial = chosen;
            trial.push_back(c.coeffs);
            if (detail::integer_rank(trial) == static_cast<int>(trial.size())) {
                chosen = std::move(trial);
                res.lambda.push_back(c.norm);
                std::vector<long long> orig(static_cast<size_t>(L), 0);
                for (int r = 0; r < L; ++r)
                    for (int k = 0; k < L; ++k)
                        orig[static_cast<size_t>(r)] +=
                            red.U[static_cast<size_t>(r)][static_cast<size_t>(k)] *
                            c.coeffs[static_cast<size_t>(k)];
                res.witnesses.push_back(std::move(orig));
                if (static_cast<int>(chosen.size()) == L) break;
            }
        }
        if (static_cast<int>(res.witnesses.size()) == L) break;
        if (cands.size() < buffer_cap) {
            // the whole box is in the buffer and still no full rank: the box
            // was too small (over-truncated); give up as uncertified partial
            truncated = true;
            break;
        }
        buffer_cap *= 8;  // rare: many dependent short vectors crowding the buffer
    }

    // certified iff the enumeration box provably covers norm <= lambda_L
    if (static_cast<int>(res.witnesses.size()) == L && !truncated) {
        double lam = res.lambda.back();
        bool cover = true;
        for (int i = 0; i < L; ++i)
            cover = cover &&
                    static_cast<double>(radius[static_cast<size_t>(i)]) >=
                        lam * rho[static_cast<size_t>(i)] - 1e-9;
        res.certified = cover;
    }
    return res;
}

struct BoundReport {
    double value = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    bool ok = true;
    std::string what;
};

// Minkowski window for |det| = 1 bases: the product of the minima lies in
// [1/L!, 1] for the sup ball and in [1, L!] for the l1 ball.
inline BoundReport check_minkowski(const MinimaResult& res, double tol = 1e-9) {
    if (!res.certified) throw std::invalid_argument("check_minkowski: uncertified input refused");
    const int L = res.basis.dim;
    double fact = 1.0;
    for (int i = 2; i <= L; ++i) fact *= i;
    BoundReport r;
    r.value = 1.0;
    for (double l : res.lambda) r.value *= l;
    if (res.norm == LatticeNorm::Sup) {
        r.lower = 1.0 / fact;
        r.upper = 1.0;
        r.what = "minkowski-sup";
    } else {
        r.lower = 1.0;
        r.upper = fact;
        r.what = "minkowski-l1";
    }
    r.ok = r.value >= r.lower * (1.0 - tol) - tol && r.value <= r.upper * (1.0 + tol) + tol;
    return r;
}

struct MahlerReport {
    double lambda1 = 0.0;
    double dual_lambdaL = 0.0;
    double product = 0.0;       // lambda_1 * lambda_L^* >= 1
    double chain_lhs = 0.0;     // (lambda_1^*)^{L-1} / L!
    double gram_defect = 0.0;
    bool ok = true;
};

// Mahler's inequality 1 <= lambda_1 lambda_L^* for an exact dual pair
// (primal sup-ball minima against dual l1-ball minima), plus the derived
// chain (lambda_1^*)^{L-1} / L! <= lambda_1.
inline MahlerReport check_mahler(const MinimaResult& primal, const MinimaResult& dual,
                                 double tol = 1e-9) {
    if (!primal.certified || !dual.certified)
        throw std::invalid_argument("check_mahler: uncertified input refused");
    if (primal.norm != LatticeNorm::Sup || dual.norm != LatticeNorm::L1)
        throw std::invalid_argument("check_mahler: want primal sup and dual l1 minima");
    const int L = primal.basis.dim;
    if (dual.basis.dim != L) throw std::invalid_argument("check_mahler: dimension mismatch");

    // dual pair: primal^T * dual = identity
    Eigen::MatrixXd G = primal.basis.eigen().transpose() * dual.basis.eigen();
    double defect = (G - Eigen::MatrixXd::Identity(L, L)).cwiseAbs().maxCoeff();
    if (defect > 1e-10)
        throw std::invalid_argument("check_mahler: bases are not an exact dual pair");

    double fact = 1.0;
    for (int i = 2; i <= L; ++i) fact *= i;

    MahlerReport r;
    r.gram_defect = defect;
    r.lambda1 = primal.lambda.front();
    r.dual_lambdaL = dual.lambda.back();
    r.product = r.lambda1 * r.dual_lambdaL;
    r.chain_lhs = std::pow(dual.lambda.front(), L - 1) / fact;
    r.ok = r.product >= 1.0 - tol && r.chain_lhs <= r.lambda1 * (1.0 + tol) + tol;
    return r;
}

}  // namespace fracparts
