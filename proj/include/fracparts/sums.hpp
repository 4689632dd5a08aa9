#pragma once

// Fractional-part product sums over finite lattice sets, the |Y| log^M lower
// bound certificates, and the representation-count / product-polynomial
// objects used to validate the certificate proof chain.

#include "digest.hpp"
#include "extremal.hpp"
#include "mod1_matrix.hpp"
#include "reduce.hpp"
#include "torus.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracparts {

// Explicit difference sets are materialized only up to this many source
// points; box-shaped sets are enumerated analytically at any size.
inline constexpr unsigned long long kMaxExplicitDiffSource = 10000;

// A finite subset of Z^N.  Box-shaped sets (and their difference sets, which
// are centered boxes) are stored by shape and never materialized.
class LatticeSet {
public:
    enum class Kind { ExplicitList, Box, CenteredBox };

    static LatticeSet from_points(std::vector<std::vector<long long>> pts) {
        if (pts.empty()) throw std::invalid_argument("LatticeSet: empty point list");
        size_t dim = pts[0].size();
        for (const auto& p : pts)
            if (p.size() != dim) throw std::invalid_argument("LatticeSet: ragged points");
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
        LatticeSet s;
        s.kind_ = Kind::ExplicitList;
        s.dim_ = static_cast<int>(dim);
        s.points_ = std::move(pts);
        return s;
    }

    static LatticeSet from_box(IntBox box) {
        LatticeSet s;
        s.kind_ = Kind::Box;
        s.dim_ = box.dims();
        s.box_ = std::move(box);
        return s;
    }

    static LatticeSet centered_box(IntBox box) {
        LatticeSet s;
        s.kind_ = Kind::CenteredBox;
        s.dim_ = box.dims();
        s.box_ = std::move(box);
        s.is_difference_set_ = true;
        return s;
    }

    Kind kind() const { return kind_; }
    int dim() const { return dim_; }
    bool is_difference_set() const { return is_difference_set_; }
    const IntBox& box() const { return box_; }
    const std::vector<std::vector<long long>>& points() const {
        if (kind_ != Kind::ExplicitList) throw std::logic_error("LatticeSet: not materialized");
        return points_;
    }

    unsigned long long size() const {
        switch (kind_) {
            case Kind::ExplicitList: return points_.size();
            case Kind::Box: return box_.cardinality();
            case Kind::CenteredBox: return box_.diff_cardinality();
        }
        return 0;
    }

    bool contains_zero() const {
        switch (kind_) {
            case Kind::Box:
            case Kind::CenteredBox: return true;
            case Kind::ExplicitList: {
                std::vector<long long> z(static_cast<size_t>(dim_), 0);
                return std::binary_search(points_.begin(), points_.end(), z);
            }
        }
        return false;
    }

    // i-th point in lexicographic enumeration order, written into out.
    void point(unsigned long long i, std::vector<long long>& out) const {
        out.resize(static_cast<size_t>(dim_));
        switch (kind_) {
            case Kind::ExplicitList: {
                out = points_[static_cast<size_t>(i)];
                return;
            }
            case Kind::Box: {
                for (int n = dim_ - 1; n >= 0; --n) {
                    unsigned long long radix =
                        static_cast<unsigned long long>(box_.limit(n)) + 1ull;
                    out[static_cast<size_t>(n)] = static_cast<long long>(i % radix);
                    i /= radix;
                }
                return;
            }
            case Kind::CenteredBox: {
                for (int n = dim_ - 1; n >= 0; --n) {
                    unsigned long long radix =
                        2ull * static_cast<unsigned long long>(box_.limit(n)) + 1ull;
                    out[static_cast<size_t>(n)] =
                        static_cast<long long>(i % radix) - box_.limit(n);
                    i /= radix;
                }
                return;
            }
        }
    }

    template <class Fn>
    void for_each(Fn&& fn) const {
        switch (kind_) {
            case Kind::ExplicitList:
                for (const auto& p : points_) fn(p);
                return;
            case Kind::Box: box_.for_each(fn); return;
            case Kind::CenteredBox: box_.for_each_centered(fn); return;
        }
    }

    void mark_difference_set() { is_difference_set_ = true; }

    void add_to_digest(Digest& d) const {
        d.i64(static_cast<long long>(kind_));
        d.i64(dim_);
        if (kind_ == Kind::ExplicitList) {
            d.u64(points_.size());
            for (const auto& p : points_)
                for (long long v : p) d.i64(v);
        } else {
            for (long long k : box_.limits()) d.i64(k);
        }
    }

private:
    Kind kind_ = Kind::ExplicitList;
    int dim_ = 0;
    std::vector<std::vector<long long>> points_;  // sorted, deduped
    IntBox box_;
    bool is_difference_set_ = false;
};

// X = Y - Y.  Box sources become centered boxes without materialization.
inline LatticeSet difference_set(const LatticeSet& Y) {
    if (Y.size() == 0) throw std::invalid_argument("difference_set: empty Y");
    if (Y.kind() == LatticeSet::Kind::Box) return LatticeSet::centered_box(Y.box());
    if (Y.kind() == LatticeSet::Kind::CenteredBox) {
        std::vector<long long> twice = Y.box().limits();
        for (auto& k : twice) k *= 2;
        return LatticeSet::centered_box(IntBox(twice));
    }
    if (Y.size() > kMaxExplicitDiffSource)
        throw std::length_error("difference_set: explicit source exceeds materialization budget");
    const auto& pts = Y.points();
    std::vector<std::vector<long long>> diff;
    diff.reserve(pts.size() * pts.size());
    std::vector<long long> d(static_cast<size_t>(Y.dim()));
    for (const auto& a : pts)
        for (const auto& b : pts) {
            for (size_t n = 0; n < d.size(); ++n) d[n] = a[n] - b[n];
            diff.push_back(d);
        }
    LatticeSet X = LatticeSet::from_points(std::move(diff));
    X.mark_difference_set();
    return X;
}

// v(xi) = #{(y, y') in Y^2 : y - y' = xi}.  Analytic for box sources.
inline std::map<std::vector<long long>, long long> rep_counts(const LatticeSet& Y) {
    std::map<std::vector<long long>, long long> v;
    if (Y.kind() == LatticeSet::Kind::Box) {
        LatticeSet X = LatticeSet::centered_box(Y.box());
        X.for_each([&](const std::vector<long long>& xi) {
            long long cnt = 1;
            for (int n = 0; n < Y.dim(); ++n) {
                long long K = Y.box().limit(n);
                long long a = xi[static_cast<size_t>(n)];
                cnt *= K + 1 - (a < 0 ? -a : a);
            }
            v[xi] = cnt;
        });
        return v;
    }
    if (Y.size() > kMaxExplicitDiffSource)
        throw std::length_error("rep_counts: source exceeds materialization budget");
    const auto& pts = Y.points();
    std::vector<long long> d(static_cast<size_t>(Y.dim()));
    for (const auto& a : pts)
        for (const auto& b : pts) {
            for (size_t n = 0; n < d.size(); ++n) d[n] = a[n] - b[n];
            ++v[d];
        }
    return v;
}

namespace detail {

inline bool is_zero(const std::vector<long long>& xi) {
    for (long long v : xi)
        if (v != 0) return false;
    return true;
}

}  // namespace detail

// sum over nonzero xi in X of F_L(A xi); deterministic blocked pairwise sum.
inline double sum_FL(const Mod1Matrix& A, const LatticeSet& X,
                     const std::vector<long long>& L) {
    if (X.dim() != A.cols()) throw std::invalid_argument("sum_FL: dimension mismatch");
    if (static_cast<int>(L.size()) != A.rows()) throw std::invalid_argument("sum_FL: L size");
    for (long long lm : L)
        if (lm < 1) throw std::invalid_argument("sum_FL: L_m must be >= 1");
    const unsigned long long n = X.size();
    return det_parallel_sum(n, [&, xi = std::vector<long long>()](std::uint64_t i) mutable {
        X.point(i, xi);
        if (detail::is_zero(xi)) return 0.0;
        double prod = 1.0;
        for (int m = 0; m < A.rows(); ++m) {
            double s = 0.0;
            for (int c = 0; c < A.cols(); ++c)
                s += A.rep(m, c) * static_cast<double>(xi[static_cast<size_t>(c)]);
            prod *= capped_recip(dist_to_nearest_int(s), L[static_cast<size_t>(m)]);
        }
        return prod;
    });
}

struct SumFResult {
    double value = 0.0;          // sum over the non-degenerate terms
    bool infinite = false;       // exact mode found a term on the singular set
    long long degenerate_hits = 0;  // terms excluded by the float tolerance
};

// sum over nonzero xi in X of F(A xi).  Float mode excludes terms with some
// ||.|| below the degeneracy tolerance and counts them; exact mode (when the
// matrix carries rationals) detects genuine infinities instead.
inline SumFResult sum_F(const Mod1Matrix& A, const LatticeSet& X, bool exact_mode = false,
                        double degeneracy_tol = kDegeneracyTol) {
    if (X.dim() != A.cols()) throw std::invalid_argument("sum_F: dimension mismatch");
    SumFResult out;
    if (exact_mode) {
        if (!A.has_exact()) throw std::logic_error("sum_F: exact mode requires a rational matrix");
        PairwiseSum ps;
        std::vector<long long> xi;
        const unsigned long long n = X.size();
        for (unsigned long long i = 0; i < n; ++i) {
            X.point(i, xi);
            if (detail::is_zero(xi)) continue;
            auto coords = A.apply_exact(xi);
            bool zero = false;
            double prod = 1.0;
            for (const auto& c : coords) {
                Rational d = torus_dist_exact(c);
                if (d == 0) {
                    zero = true;
                    break;
                }
                prod *= 1.0 / (2.0 * to_double(d));
            }
            if (zero) {
                out.infinite = true;
                ++out.degenerate_hits;
            } else {
                ps.add(prod);
            }
        }
        out.value = ps.total();
        return out;
    }

    std::atomic<long long> degenerate{0};
    const unsigned long long n = X.size();
    out.value = det_parallel_sum(n, [&, xi = std::vector<long long>()](std::uint64_t i) mutable {
        X.point(i, xi);
        if (detail::is_zero(xi)) return 0.0;
        double prod = 1.0;
        for (int m = 0; m < A.rows(); ++m) {
            double s = 0.0;
            for (int c = 0; c < A.cols(); ++c)
                s += A.rep(m, c) * static_cast<double>(xi[static_cast<size_t>(c)]);
            double d = dist_to_nearest_int(s);
            if (d < degeneracy_tol) {
                degenerate.fetch_add(1, std::memory_order_relaxed);
                return 0.0;
            }
            prod *= 1.0 / (2.0 * d);
        }
        return prod;
    });
    out.degenerate_hits = degenerate.load();
    return out;
}

// |Y| prod log(L_m + 1) - prod L_m  (may be negative)
inline double thm11_lower_bound(unsigned long long cardY, const std::vector<long long>& L) {
    double logs = 1.0, caps = 1.0;
    for (long long lm : L) {
        if (lm < 1) throw std::invalid_argument("thm11_lower_bound: L_m must be >= 1");
        logs *= std::log(static_cast<double>(lm) + 1.0);
        caps *= static_cast<double>(lm);
    }
    return static_cast<double>(cardY) * logs - caps;
}

// L_m = [ |Y|^{1/M} ], the cap choice behind the corollary bound
inline long long cor12_L_choice(unsigned long long cardY, int M) {
    if (cardY < 1 || M < 1) throw std::invalid_argument("cor12_L_choice: bad arguments");
    long long L = static_cast<long long>(std::floor(
        std::pow(static_cast<double>(cardY), 1.0 / static_cast<double>(M))));
    if (L < 1) L = 1;
    auto powM = [&](long long b) {
        long double p = 1.0L;
        for (int i = 0; i < M; ++i) p *= static_cast<long double>(b);
        return p;
    };
    while (powM(L + 1) <= static_cast<long double>(cardY)) ++L;
    while (L > 1 && powM(L) > static_cast<long double>(cardY)) --L;
    return L;
}

// |Y| (log|Y| / M)^M - |Y|
inline double cor12_lower_bound(unsigned long long cardY, int M) {
    if (cardY < 1 || M < 1) throw std::invalid_argument("cor12_lower_bound: bad arguments");
    double y = static_cast<double>(cardY);
    return y * std::pow(std::log(y) / M, M) - y;
}

struct SumReport {
    double lhs_bound = 0.0;
    double sum_value = 0.0;
    double gap = 0.0;  // sum_value - lhs_bound; negative beyond tolerance is an alarm
    long long degenerate_hits = 0;
    unsigned long long card_Y = 0;
    unsigned long long card_X = 0;
    bool ok = true;
    std::string inputs_digest;
};

// Both sides of the capped-sum lower bound with X = Y - Y.  A gap below
// -1e-9 |Y| is a falsification alarm.
inline SumReport certify_thm11(const Mod1Matrix& A, const LatticeSet& Y,
                               const std::vector<long long>& L) {
    if (Y.size() == 0) throw std::invalid_argument("certify_thm11: empty Y");
    LatticeSet X = difference_set(Y);
    SumReport r;
    r.card_Y = Y.size();
    r.card_X = X.size();
    r.lhs_bound = thm11_lower_bound(Y.size(), L);
    r.sum_value = sum_FL(A, X, L);
    r.gap = r.sum_value - r.lhs_bound;
    r.ok = r.gap >= -1e-9 * static_cast<double>(Y.size());

    Digest d;
    d.str("thm11");
    d.i64(A.rows());
    d.i64(A.cols());
    for (int m = 0; m < A.rows(); ++m)
        for (int n = 0; n < A.cols(); ++n) d.f64(A.rep(m, n));
    Y.add_to_digest(d);
    for (long long lm : L) d.i64(lm);
    r.inputs_digest = d.hex();
    return r;
}

// sigma(x) = prod_m tau_{L_m - 1}(x_m), kept in factored (tensor) form.
class SigmaPoly {
public:
    explicit SigmaPoly(const std::vector<long long>& L) {
        if (L.empty()) throw std::invalid_argument("SigmaPoly: empty L");
        factors_.reserve(L.size());
        for (long long lm : L) {
            if (lm < 1) throw std::invalid_argument("SigmaPoly: L_m must be >= 1");
            factors_.push_back(tau(static_cast<int>(lm)));
        }
    }

    int dim() const { return static_cast<int>(factors_.size()); }
    const TrigPoly& factor(int m) const { return factors_[static_cast<size_t>(m)]; }

    double eval(const TorusVector& x) const {
        if (x.dim() != dim()) throw std::invalid_argument("SigmaPoly: dimension mismatch");
        double p = 1.0;
        for (int m = 0; m < dim(); ++m) p *= factors_[static_cast<size_t>(m)].eval_real(x[m].rep());
        return p;
    }

    // hat sigma(l) = prod hat tau(l_m); real and positive on its support
    double coeff(const std::vector<int>& ls) const {
        if (static_cast<int>(ls.size()) != dim())
            throw std::invalid_argument("SigmaPoly: coefficient index dimension");
        double p = 1.0;
        for (int m = 0; m < dim(); ++m)
            p *= factors_[static_cast<size_t>(m)].coeff(ls[static_cast<size_t>(m)]).real();
        return p;
    }

    double coeff0() const {
        double p = 1.0;
        for (const auto& f : factors_) p *= f.coeff(0).real();
        return p;
    }

private:
    std::vector<TrigPoly> factors_;
};

inline SigmaPoly sigma_poly(const std::vector<long long>& L) { return SigmaPoly(L); }

}  // namespace fracparts
