#pragma once

// M x N matrices over R/Z and the lattice-point action xi -> A xi.
// Entries carry an optional exact rational form (present when every entry was
// given as p/q); the float form is always derived from the exact one when it
// exists, so the two stay within an ulp of each other.

#include "rational.hpp"
#include "rng.hpp"
#include "torus.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracparts {

class Mod1Matrix {
public:
    Mod1Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {
        if (rows < 1 || cols < 1) throw std::invalid_argument("Mod1Matrix: bad shape");
    }

    static Mod1Matrix from_reals(int rows, int cols, const std::vector<double>& entries) {
        Mod1Matrix m(rows, cols);
        if (entries.size() != m.a_.size()) throw std::invalid_argument("Mod1Matrix: entry count");
        for (size_t i = 0; i < entries.size(); ++i) m.a_[i] = TorusPoint::reduce(entries[i]);
        return m;
    }

    static Mod1Matrix from_rationals(int rows, int cols, const std::vector<Rational>& entries) {
        Mod1Matrix m(rows, cols);
        if (entries.size() != m.a_.size()) throw std::invalid_argument("Mod1Matrix: entry count");
        m.exact_.resize(entries.size());
        for (size_t i = 0; i < entries.size(); ++i) {
            m.exact_[i] = mod1(entries[i]);
            m.a_[i] = to_double(m.exact_[i]);
        }
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool has_exact() const { return !exact_.empty(); }

    double rep(int m, int n) const { return a_[idx(m, n)]; }
    const Rational& exact(int m, int n) const {
        if (!has_exact()) throw std::logic_error("Mod1Matrix: no exact form");
        return exact_[idx(m, n)];
    }

    Mod1Matrix transposed() const {
        Mod1Matrix t(cols_, rows_);
        if (has_exact()) t.exact_.resize(a_.size());
        for (int m = 0; m < rows_; ++m)
            for (int n = 0; n < cols_; ++n) {
                t.a_[t.idx(n, m)] = a_[idx(m, n)];
                if (has_exact()) t.exact_[t.idx(n, m)] = exact_[idx(m, n)];
            }
        return t;
    }

    Mod1Matrix negated() const {
        Mod1Matrix t(rows_, cols_);
        if (has_exact()) t.exact_.resize(a_.size());
        for (size_t i = 0; i < a_.size(); ++i) {
            t.a_[i] = TorusPoint::reduce(-a_[i]);
            if (has_exact()) t.exact_[i] = mod1(-exact_[i]);
        }
        return t;
    }

    // Submatrix on row set I and column set J (0-based indices).
    Mod1Matrix submatrix(const std::vector<int>& I, const std::vector<int>& J) const {
        if (I.empty() || J.empty()) throw std::invalid_argument("Mod1Matrix: empty index set");
        Mod1Matrix s(static_cast<int>(I.size()), static_cast<int>(J.size()));
        if (has_exact()) s.exact_.resize(s.a_.size());
        for (size_t i = 0; i < I.size(); ++i)
            for (size_t j = 0; j < J.size(); ++j) {
                s.a_[s.idx(static_cast<int>(i), static_cast<int>(j))] = a_[idx(I[i], J[j])];
                if (has_exact())
                    s.exact_[s.idx(static_cast<int>(i), static_cast<int>(j))] =
                        exact_[idx(I[i], J[j])];
            }
        return s;
    }

    // xi -> A xi reduced mod 1, float path.
    TorusVector apply(const std::vector<long long>& xi) const {
        if (static_cast<int>(xi.size()) != cols_)
            throw std::invalid_argument("mat_vec_mod1: dimension mismatch");
        std::vector<TorusPoint> out;
        out.reserve(static_cast<size_t>(rows_));
        for (int m = 0; m < rows_; ++m) {
            double s = 0.0;
            for (int n = 0; n < cols_; ++n)
                s += a_[idx(m, n)] * static_cast<double>(xi[static_cast<size_t>(n)]);
            out.emplace_back(s);
        }
        return TorusVector(std::move(out));
    }

    // Exact path; reduction by gcd arithmetic on arbitrary-precision rationals.
    std::vector<Rational> apply_exact(const std::vector<long long>& xi) const {
        if (!has_exact()) throw std::logic_error("mat_vec_mod1: no exact form");
        if (static_cast<int>(xi.size()) != cols_)
            throw std::invalid_argument("mat_vec_mod1: dimension mismatch");
        std::vector<Rational> out(static_cast<size_t>(rows_));
        for (int m = 0; m < rows_; ++m) {
            Rational s = 0;
            for (int n = 0; n < cols_; ++n)
                s += exact_[idx(m, n)] * BigInt(xi[static_cast<size_t>(n)]);
            out[static_cast<size_t>(m)] = mod1(s);
        }
        return out;
    }

private:
    size_t idx(int m, int n) const {
        return static_cast<size_t>(m) * static_cast<size_t>(cols_) + static_cast<size_t>(n);
    }

    int rows_, cols_;
    std::vector<double> a_;
    std::vector<Rational> exact_;  // empty unless every entry was rational
};

inline TorusVector mat_vec_mod1(const Mod1Matrix& A, const std::vector<long long>& xi) {
    return A.apply(xi);
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace detail

// Matrix file: header line "M N", then M rows of N whitespace-separated
// entries, each a decimal literal or a p/q rational.
inline Mod1Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    int M = 0, N = 0;
    if (!(in >> M >> N) || M < 1 || N < 1)
        throw std::runtime_error("matrix file: bad header in " + path);
    std::vector<std::string> tokens;
    tokens.reserve(static_cast<size_t>(M) * N);
    std::string tok;
    while (static_cast<int>(tokens.size()) < M * N && (in >> tok)) tokens.push_back(tok);
    if (static_cast<int>(tokens.size()) != M * N)
        throw std::runtime_error("matrix file: expected " + std::to_string(M * N) + " entries");

    bool all_rational = true;
    for (const auto& t : tokens)
        if (t.find('/') == std::string::npos && t.find('.') != std::string::npos)
            all_rational = false;
    if (all_rational) {
        std::vector<Rational> entries;
        entries.reserve(tokens.size());
        for (const auto& t : tokens) entries.push_back(parse_rational(t));
        return Mod1Matrix::from_rationals(M, N, entries);
    }
    std::vector<double> entries;
    entries.reserve(tokens.size());
    for (const auto& t : tokens) {
        if (t.find('/') != std::string::npos)
            entries.push_back(to_double(parse_rational(t)));
        else
            entries.push_back(std::stod(t));
    }
    return Mod1Matrix::from_reals(M, N, entries);
}

// Builtin generators:
//   quad:D            1x1 matrix (sqrt(D)-1)/2 mod 1  (quad:5 is the golden point)
//   cf:a1,a2,...      1x1 exact rational [0; a1, a2, ...]
//   rand:SEED:MxN     M x N Haar-random matrix from the counter RNG
//   file:PATH         explicit file (a bare existing path also works)
// A leading "gen:" prefix is accepted and stripped.
inline Mod1Matrix parse_matrix_source(const std::string& spec) {
    std::string s = spec;
    if (s.rfind("gen:", 0) == 0) s = s.substr(4);

    if (s.rfind("quad:", 0) == 0) {
        long long d = std::stoll(s.substr(5));
        if (d < 1) throw std::invalid_argument("quad generator: D must be positive");
        double v = (std::sqrt(static_cast<double>(d)) - 1.0) / 2.0;
        return Mod1Matrix::from_reals(1, 1, {v - std::floor(v)});
    }
    if (s.rfind("cf:", 0) == 0) {
        auto parts = detail::split(s.substr(3), ',');
        if (parts.empty()) throw std::invalid_argument("cf generator: empty");
        // evaluate [0; a1, ..., ak] back to front
        Rational v = 0;
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
            BigInt a(*it);
            if (a < 1) throw std::invalid_argument("cf generator: partial quotients must be >= 1");
            v = Rational(1, 1) / (Rational(a) + v);
        }
        return Mod1Matrix::from_rationals(1, 1, {v});
    }
    if (s.rfind("rand:", 0) == 0) {
        auto parts = detail::split(s.substr(5), ':');
        if (parts.size() != 2) throw std::invalid_argument("rand generator: want rand:SEED:MxN");
        std::uint64_t seed = std::stoull(parts[0]);
        auto shape = detail::split(parts[1], 'x');
        if (shape.size() != 2) throw std::invalid_argument("rand generator: want rand:SEED:MxN");
        int M = std::stoi(shape[0]), N = std::stoi(shape[1]);
        CounterRng rng(seed);
        std::vector<double> entries(static_cast<size_t>(M) * N);
        for (auto& e : entries) e = rng.next_unit();
        return Mod1Matrix::from_reals(M, N, entries);
    }
    if (s.rfind("file:", 0) == 0) return read_matrix_file(s.substr(5));
    return read_matrix_file(s);
}

}  // namespace fracparts
