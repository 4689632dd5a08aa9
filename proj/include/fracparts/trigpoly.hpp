#pragma once

// Finitely supported Fourier coefficient tables on Z:
//   p(x) = sum_{|l| <= D} c(l) e(l x),  e(x) = exp(2 pi i x).

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace fracparts {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

inline std::complex<double> e_of(double x) {
    return {std::cos(kTwoPi * x), std::sin(kTwoPi * x)};
}

class TrigPoly {
public:
    TrigPoly() : degree_(0), c_(1, 0.0) {}
    explicit TrigPoly(int degree)
        : degree_(degree), c_(2 * static_cast<size_t>(degree) + 1, 0.0) {
        if (degree < 0) throw std::invalid_argument("TrigPoly: negative degree");
    }

    int degree() const { return degree_; }

    std::complex<double> coeff(int l) const {
        if (l < -degree_ || l > degree_) return 0.0;
        return c_[static_cast<size_t>(l + degree_)];
    }
    void set_coeff(int l, std::complex<double> v) {
        if (l < -degree_ || l > degree_) throw std::out_of_range("TrigPoly: coeff index");
        c_[static_cast<size_t>(l + degree_)] = v;
    }

    std::complex<double> eval(double x) const {
        // Horner on z = e(x) for the one-sided lift z^D p(x).
        std::complex<double> z = e_of(x);
        std::complex<double> acc = c_.back();
        for (size_t k = c_.size() - 1; k-- > 0;) acc = acc * z + c_[k];
        return acc * e_of(-degree_ * x);  // times z^{-D}
    }

    // Evaluation assuming the real symmetry c(-l) = conj(c(l)).
    double eval_real(double x) const {
        std::complex<double> z = e_of(x);
        std::complex<double> zl = z;
        double s = c_[static_cast<size_t>(degree_)].real();
        for (int l = 1; l <= degree_; ++l) {
            s += 2.0 * (coeff(l) * zl).real();
            zl *= z;
        }
        return s;
    }

    // max |c(-l) - conj(c(l))| over the support
    double symmetry_defect() const {
        double worst = 0.0;
        for (int l = 0; l <= degree_; ++l) {
            double d = std::abs(coeff(-l) - std::conj(coeff(l)));
            if (d > worst) worst = d;
        }
        return worst;
    }

    // x -> p(x - c)
    TrigPoly translated(double c) const {
        TrigPoly q(degree_);
        for (int l = -degree_; l <= degree_; ++l) q.set_coeff(l, coeff(l) * e_of(-l * c));
        return q;
    }

    // x -> p(c - x)
    TrigPoly reflected(double c) const {
        TrigPoly q(degree_);
        for (int l = -degree_; l <= degree_; ++l) q.set_coeff(l, coeff(-l) * e_of(-l * c));
        return q;
    }

    TrigPoly operator+(const TrigPoly& o) const {
        TrigPoly q(degree_ > o.degree_ ? degree_ : o.degree_);
        for (int l = -q.degree_; l <= q.degree_; ++l) q.set_coeff(l, coeff(l) + o.coeff(l));
        return q;
    }

    TrigPoly operator-(const TrigPoly& o) const {
        TrigPoly q(degree_ > o.degree_ ? degree_ : o.degree_);
        for (int l = -q.degree_; l <= q.degree_; ++l) q.set_coeff(l, coeff(l) - o.coeff(l));
        return q;
    }

    TrigPoly scaled(std::complex<double> s) const {
        TrigPoly q(degree_);
        for (int l = -degree_; l <= degree_; ++l) q.set_coeff(l, coeff(l) * s);
        return q;
    }

private:
    int degree_;
    std::vector<std::complex<double>> c_;  // c_[degree_ + l]
};

// Coefficient recovery by inverse DFT on 2D+1 samples of p.  Exact (up to
// roundoff) for any trig poly of degree <= D, for any sample-grid offset.
template <class F>
TrigPoly trigpoly_from_samples(F&& p, int D, double offset = 0.0) {
    int n = 2 * D + 1;
    std::vector<std::complex<double>> vals(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) vals[static_cast<size_t>(j)] = p(offset + static_cast<double>(j) / n);
    TrigPoly q(D);
    for (int l = -D; l <= D; ++l) {
        std::complex<double> s = 0.0;
        for (int j = 0; j < n; ++j) {
            double x = offset + static_cast<double>(j) / n;
            s += vals[static_cast<size_t>(j)] * e_of(-l * x);
        }
        q.set_coeff(l, s / static_cast<double>(n));
    }
    return q;
}

}  // namespace fracparts
