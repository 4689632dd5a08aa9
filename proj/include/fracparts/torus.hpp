#pragma once

// Canonical representations and elementary functionals on R/Z, (R/Z)^M and
// integer boxes in Z^N.  Everything here is pure and stateless.

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fracparts {

// Below this distance a coordinate is treated as sitting on the singular set
// in float mode; exact (rational) mode decides zero exactly instead.
inline constexpr double kDegeneracyTol = 1e-12;

// Distance from x to the nearest integer.  Uses round-to-nearest so that
// values just below an integer do not lose precision to cancellation.
inline double dist_to_nearest_int(double x) {
    if (!std::isfinite(x)) throw std::domain_error("dist_to_nearest_int: input must be finite");
    return std::fabs(x - std::round(x));
}

// A point of R/Z held by its canonical representative in [0,1).
class TorusPoint {
public:
    TorusPoint() = default;
    explicit TorusPoint(double x) : rep_(reduce(x)) {}

    static double reduce(double x) {
        if (!std::isfinite(x)) throw std::domain_error("TorusPoint: input must be finite");
        double r = x - std::floor(x);
        if (r >= 1.0) r = 0.0;  // rounding can land exactly on 1
        return r;
    }

    double rep() const { return rep_; }
    // ||x|| in [0, 1/2]
    double dist() const { return std::fabs(rep_ - std::round(rep_)); }

    TorusPoint operator+(TorusPoint o) const { return TorusPoint(rep_ + o.rep_); }
    TorusPoint operator-() const { return TorusPoint(-rep_); }

private:
    double rep_ = 0.0;
};

// Point of (R/Z)^M; length fixed at construction.
class TorusVector {
public:
    TorusVector() = default;
    explicit TorusVector(std::vector<TorusPoint> coords) : coords_(std::move(coords)) {
        if (coords_.empty()) throw std::invalid_argument("TorusVector: empty");
    }
    static TorusVector from_reals(const std::vector<double>& xs) {
        std::vector<TorusPoint> c;
        c.reserve(xs.size());
        for (double x : xs) c.emplace_back(x);
        return TorusVector(std::move(c));
    }

    int dim() const { return static_cast<int>(coords_.size()); }
    const TorusPoint& operator[](int m) const { return coords_[static_cast<size_t>(m)]; }
    double dist(int m) const { return coords_[static_cast<size_t>(m)].dist(); }

    TorusVector operator+(const TorusVector& o) const {
        if (dim() != o.dim()) throw std::invalid_argument("TorusVector: dimension mismatch");
        std::vector<TorusPoint> c(coords_);
        for (size_t m = 0; m < c.size(); ++m) c[m] = c[m] + o.coords_[m];
        return TorusVector(std::move(c));
    }

private:
    std::vector<TorusPoint> coords_;
};

// Value of a product functional that may blow up on the singular set.
// `value` is +inf whenever `degenerate` is set.
struct ProductValue {
    double value = 1.0;
    bool degenerate = false;
};

// F(x) = prod_m (2 ||x_m||)^{-1}, in [1, inf].
inline ProductValue F(const TorusVector& x, double degeneracy_tol = kDegeneracyTol) {
    ProductValue out;
    for (int m = 0; m < x.dim(); ++m) {
        double d = x.dist(m);
        if (d < degeneracy_tol) {
            out.degenerate = true;
            out.value = std::numeric_limits<double>::infinity();
            return out;
        }
        out.value *= 1.0 / (2.0 * d);
    }
    return out;
}

// F_L(x) = prod_m min{L_m, (2||x_m||)^{-1}}, always finite, in [1, prod L_m].
inline double F_L(const TorusVector& x, const std::vector<long long>& L) {
    if (static_cast<int>(L.size()) != x.dim())
        throw std::invalid_argument("F_L: dimension mismatch");
    double out = 1.0;
    for (int m = 0; m < x.dim(); ++m) {
        if (L[static_cast<size_t>(m)] < 1) throw std::invalid_argument("F_L: L_m must be >= 1");
        double cap = static_cast<double>(L[static_cast<size_t>(m)]);
        double d = x.dist(m);
        double v = (2.0 * d < 1.0 / cap) ? cap : 1.0 / (2.0 * d);
        out *= v;
    }
    return out;
}

// Scalar variant of the capped reciprocal distance, min{L, (2||x||)^{-1}}.
inline double capped_recip(double distance, long long L) {
    double cap = static_cast<double>(L);
    return (2.0 * distance < 1.0 / cap) ? cap : 1.0 / (2.0 * distance);
}

// P_M(x) = prod ||x_m||, in [0, 2^{-M}].
inline double P_M(const TorusVector& x) {
    double p = 1.0;
    for (int m = 0; m < x.dim(); ++m) p *= x.dist(m);
    return p;
}

// Q_N(y) = prod (|y_n| + 1), a positive integer.
inline unsigned long long Q_N(const std::vector<long long>& y) {
    unsigned long long q = 1;
    for (long long v : y) {
        unsigned long long f = static_cast<unsigned long long>(v < 0 ? -v : v) + 1ull;
        if (q > std::numeric_limits<unsigned long long>::max() / f)
            throw std::overflow_error("Q_N: product overflows 64 bits");
        q *= f;
    }
    return q;
}

// Box K = { xi in Z^N : 0 <= xi_n <= K_n }.
class IntBox {
public:
    IntBox() = default;
    explicit IntBox(std::vector<long long> limits) : limits_(std::move(limits)) {
        if (limits_.empty()) throw std::invalid_argument("IntBox: empty limits");
        for (long long k : limits_)
            if (k < 0) throw std::invalid_argument("IntBox: negative limit");
    }

    int dims() const { return static_cast<int>(limits_.size()); }
    long long limit(int n) const { return limits_[static_cast<size_t>(n)]; }
    const std::vector<long long>& limits() const { return limits_; }

    bool all_zero() const {
        for (long long k : limits_)
            if (k != 0) return false;
        return true;
    }

    // |K| = prod (K_n + 1)
    unsigned long long cardinality() const {
        unsigned long long c = 1;
        for (long long k : limits_) {
            unsigned long long f = static_cast<unsigned long long>(k) + 1ull;
            if (c > std::numeric_limits<unsigned long long>::max() / f)
                throw std::overflow_error("IntBox: cardinality overflows 64 bits");
            c *= f;
        }
        return c;
    }

    // |K - K| = prod (2 K_n + 1)
    unsigned long long diff_cardinality() const {
        unsigned long long c = 1;
        for (long long k : limits_) {
            unsigned long long f = 2ull * static_cast<unsigned long long>(k) + 1ull;
            if (c > std::numeric_limits<unsigned long long>::max() / f)
                throw std::overflow_error("IntBox: diff cardinality overflows 64 bits");
            c *= f;
        }
        return c;
    }

    // Visits every point of the box in lexicographic order; fn gets a reused buffer.
    template <class Fn>
    void for_each(Fn&& fn) const {
        std::vector<long long> xi(limits_.size(), 0);
        for (;;) {
            fn(const_cast<const std::vector<long long>&>(xi));
            int n = static_cast<int>(xi.size()) - 1;
            while (n >= 0 && xi[static_cast<size_t>(n)] == limits_[static_cast<size_t>(n)]) {
                xi[static_cast<size_t>(n)] = 0;
                --n;
            }
            if (n < 0) return;
            ++xi[static_cast<size_t>(n)];
        }
    }

    // Visits every point of K - K = { |xi_n| <= K_n } in lexicographic order.
    template <class Fn>
    void for_each_centered(Fn&& fn) const {
        std::vector<long long> xi(limits_.size());
        for (size_t n = 0; n < xi.size(); ++n) xi[n] = -limits_[n];
        for (;;) {
            fn(const_cast<const std::vector<long long>&>(xi));
            int n = static_cast<int>(xi.size()) - 1;
            while (n >= 0 && xi[static_cast<size_t>(n)] == limits_[static_cast<size_t>(n)]) {
                xi[static_cast<size_t>(n)] = -limits_[static_cast<size_t>(n)];
                --n;
            }
            if (n < 0) return;
            ++xi[static_cast<size_t>(n)];
        }
    }

private:
    std::vector<long long> limits_;
};

}  // namespace fracparts
