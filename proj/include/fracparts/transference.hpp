#pragma once

// The A versus A^T experiment: paired gamma trajectories plus the full set of
// lattice inequalities exercised on minimizing vectors from the primal side.

#include "diophantine.hpp"
#include "lattice.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace fracparts {

struct LatticeCheckRecord {
    std::vector<long long> xi;
    double R = 0.0;
    double delta_product = 0.0;   // want 1
    double sup_image_norm = 0.0;  // |Delta B psi|_inf, want R
    double lambda1 = 0.0;
    BoundReport minkowski_primal;
    BoundReport minkowski_dual;
    MahlerReport mahler;
    bool lambda1_le_R = true;
    bool ok = true;
};

// choose_delta + successive minima + every section-8 inequality on one xi.
inline LatticeCheckRecord lattice_checks_for_xi(const RealMatrix& A,
                                                const std::vector<long long>& xi,
                                                double tol = 1e-10) {
    LatticeCheckRecord rec;
    rec.xi = xi;
    DeltaChoice dc = choose_delta(A, xi);
    rec.R = dc.R;

    double prod = 1.0;
    for (double d : dc.delta) prod *= d;
    rec.delta_product = prod;

    LatticeBasis B = build_B(A);
    LatticeBasis M = scaled_basis(B, dc.delta);
    LatticeBasis Mdual = inverse_scaled_basis(build_B_dual(A), dc.delta);

    // |Delta B psi|_inf
    std::vector<double> img(static_cast<size_t>(M.dim), 0.0);
    for (int r = 0; r < M.dim; ++r) {
        double s = 0.0;
        for (int c = 0; c < M.dim; ++c)
            s += M.at(r, c) * static_cast<double>(dc.psi[static_cast<size_t>(c)]);
        img[static_cast<size_t>(r)] = s;
    }
    rec.sup_image_norm = detail::vec_norm(img, LatticeNorm::Sup);

    MinimaResult primal = successive_minima(M, LatticeNorm::Sup);
    MinimaResult dual = successive_minima(Mdual, LatticeNorm::L1);
    rec.lambda1 = primal.lambda.empty() ? 0.0 : primal.lambda.front();
    rec.minkowski_primal = check_minkowski(primal);
    rec.minkowski_dual = check_minkowski(dual);
    rec.mahler = check_mahler(primal, dual);
    rec.lambda1_le_R = rec.lambda1 <= rec.R * (1.0 + tol);

    rec.ok = std::fabs(rec.delta_product - 1.0) <= 1e-10 &&
             std::fabs(rec.sup_image_norm - rec.R) <= 1e-10 * std::max(1.0, rec.R) &&
             rec.minkowski_primal.ok && rec.minkowski_dual.ok && rec.mahler.ok &&
             rec.lambda1_le_R;
    return rec;
}

struct TransferenceReport {
    Trajectory primal;     // gamma(A, .)
    Trajectory transpose;  // gamma(A^T, .)
    std::vector<LatticeCheckRecord> lattice_checks;
    bool ok = true;
};

// Side-by-side decay of gamma(A, .) and gamma(A^T, .) with the section-8
// inequalities run on the primal minimizers.  Only positivity transfer is a
// theorem; the quantitative relation between the two decays is reported, not
// asserted.
inline TransferenceReport transference_experiment(const Mod1Matrix& A, int max_exponent,
                                                  int min_exponent = 2) {
    TransferenceReport rep;
    rep.primal = gamma_trajectory(A, max_exponent, min_exponent);
    rep.transpose = gamma_trajectory(A.transposed(), max_exponent, min_exponent);

    RealMatrix Areal = RealMatrix::lift(A);
    std::vector<std::vector<long long>> seen;
    for (const auto& pt : rep.primal.points) {
        if (pt.report.gamma <= 0.0) continue;
        const auto& xi = pt.report.argmin;
        bool dup = false;
        for (const auto& s : seen) dup = dup || s == xi;
        if (dup) continue;
        seen.push_back(xi);
        rep.lattice_checks.push_back(lattice_checks_for_xi(Areal, xi));
        rep.ok = rep.ok && rep.lattice_checks.back().ok;
    }
    return rep;
}

}  // namespace fracparts
