// Command-line surface over the library: every experiment takes a seedable
// config, emits one deterministic JSON document (or CSV for table modes) on
// stdout, and signals through the exit code:
//   0  pass
//   2  a checked inequality was falsified (the alarm channel)
//   3  an enumeration budget refusal
//   1  usage or I/O error
// Timing goes to stderr so identical runs give identical stdout bytes.

#include "fracparts/fracparts.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

using namespace fracparts;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFalsified = 2;
constexpr int kExitBudget = 3;

std::vector<long long> parse_ll_list(const std::string& s) {
    std::vector<long long> out;
    for (const auto& tok : detail::split(s, ',')) {
        if (tok.empty()) throw CLI::ValidationError("empty entry in list '" + s + "'");
        out.push_back(std::stoll(tok));
    }
    return out;
}

Json box_json(const IntBox& b) {
    Json arr = Json::array();
    for (long long k : b.limits()) arr.push(Json::num(k));
    return arr;
}

Json ll_vec_json(const std::vector<long long>& v) {
    Json arr = Json::array();
    for (long long k : v) arr.push(Json::num(k));
    return arr;
}

void emit(const std::string& command, Json config, Json payload, const std::string& status) {
    Json doc = Json::object();
    doc.set("schema", Json::num(kReportSchema));
    doc.set("version", Json::str(kLibraryVersion));
    doc.set("command", Json::str(command));
    doc.set("config", std::move(config));
    doc.set("status", Json::str(status));
    doc.set("payload", std::move(payload));
    std::printf("%s\n", doc.dump().c_str());
}

Json trajectory_json(const Trajectory& tr) {
    Json pts = Json::array();
    for (const auto& p : tr.points) {
        Json e = Json::object();
        e.set("exponent", Json::num(p.exponent));
        e.set("gamma", Json::num(p.report.gamma));
        e.set("argmin", ll_vec_json(p.report.argmin));
        pts.push(std::move(e));
    }
    Json out = Json::object();
    out.set("points", std::move(pts));
    out.set("verdict", Json::str(tr.verdict));
    out.set("decay_exponent", Json::num(tr.decay_exponent));
    return out;
}

Json minima_json(const MinimaResult& res) {
    Json out = Json::object();
    out.set("certified", Json::boolean(res.certified));
    out.set("norm", Json::str(res.norm == LatticeNorm::Sup ? "sup" : "l1"));
    Json lam = Json::array();
    for (double l : res.lambda) lam.push(Json::num(l));
    out.set("lambda", std::move(lam));
    Json wits = Json::array();
    for (const auto& w : res.witnesses) wits.push(ll_vec_json(w));
    out.set("witnesses", std::move(wits));
    return out;
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~Timer() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - start)
                      .count();
        std::fprintf(stderr, "wall_ms=%lld\n", static_cast<long long>(ms));
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fractional-part sums: extremal polynomials, tail laws, badness probes"};
    app.require_subcommand(1);
    app.set_config("--config", "", "flat key=value config file (flags take precedence)");

    auto* tau_cmd =
        app.add_subcommand("tau-table", "coefficient table of the capped-reciprocal minorant");
    long long tau_L = 8;
    tau_cmd->add_option("--L", tau_L, "degree parameter, table has L entries")->required();

    auto* sel_cmd = app.add_subcommand("selberg", "interval minorant/majorant pair");
    double sel_alpha = 0.0, sel_beta = 0.5;
    long long sel_L = 8;
    int sel_grid = 4096;
    sel_cmd->add_option("--alpha", sel_alpha)->required();
    sel_cmd->add_option("--beta", sel_beta)->required();
    sel_cmd->add_option("--L", sel_L)->required();
    sel_cmd->add_option("--grid", sel_grid, "sandwich verification grid size");

    auto* ext_cmd =
        app.add_subcommand("extremal-check", "minorant sandwich and sampling-identity battery");
    std::string ext_L_list = "1,2,3,5,8,16,32,64";
    int ext_grid = 10000;
    long long ext_ident_max = 200;
    ext_cmd->add_option("--L-list", ext_L_list, "comma-separated degree parameters");
    ext_cmd->add_option("--grid", ext_grid);
    ext_cmd->add_option("--identity-max", ext_ident_max, "check the sampling identity up to this L");

    auto* sum_cmd =
        app.add_subcommand("sum-lower-bound", "capped-sum certificate over a difference set");
    std::string sum_matrix, sum_box, sum_L;
    bool sum_exact = false;
    sum_cmd->add_option("--matrix", sum_matrix, "matrix file or generator")->required();
    sum_cmd->add_option("--box", sum_box, "box limits K1,..,KN for Y")->required();
    sum_cmd->add_option("--L", sum_L, "caps L1,..,LM")->required();
    sum_cmd->add_flag("--exact", sum_exact, "also evaluate the uncapped sum (exact when rational)");

    auto* mt_cmd = app.add_subcommand("measure-tail", "exact tail law against its quadrature oracle");
    int mt_M = 1;
    double mt_lambda = 2.0;
    mt_cmd->add_option("--M", mt_M)->required();
    mt_cmd->add_option("--lambda", mt_lambda)->required();

    auto* mc_cmd = app.add_subcommand("mc-tail", "Monte Carlo single-point tail estimate");
    std::string mc_xi = "1";
    int mc_M = 1;
    double mc_lambda = 2.0;
    std::uint64_t mc_samples = 1000000, mc_seed = kDefaultSeed;
    mc_cmd->add_option("--xi", mc_xi, "lattice point, comma-separated");
    mc_cmd->add_option("--M", mc_M);
    mc_cmd->add_option("--lambda", mc_lambda)->required();
    mc_cmd->add_option("--samples", mc_samples);
    mc_cmd->add_option("--seed", mc_seed);

    auto* ms_cmd =
        app.add_subcommand("mc-sum", "Monte Carlo sum-exceedance against the union tail bound");
    std::string ms_box = "8";
    int ms_M = 1;
    double ms_lambda = 100.0;
    std::uint64_t ms_samples = 100000, ms_seed = kDefaultSeed;
    bool ms_diffset = false;
    ms_cmd->add_option("--box", ms_box, "box limits for X");
    ms_cmd->add_option("--M", ms_M);
    ms_cmd->add_option("--lambda", ms_lambda)->required();
    ms_cmd->add_option("--samples", ms_samples);
    ms_cmd->add_option("--seed", ms_seed);
    ms_cmd->add_flag("--diffset", ms_diffset, "use the centered difference box");

    auto* g_cmd = app.add_subcommand("gamma", "finite-box badness constant");
    std::string g_matrix, g_box;
    bool g_traj = false;
    int g_max_exp = 16;
    g_cmd->add_option("--matrix", g_matrix)->required();
    g_cmd->add_option("--box", g_box, "box limits (ignored with --trajectory)");
    g_cmd->add_flag("--trajectory", g_traj, "doubling-box trajectory");
    g_cmd->add_option("--max-exp", g_max_exp, "trajectory stops at box 2^E");

    auto* sv_cmd = app.add_subcommand("sieve-check", "large sieve inequality check");
    std::string sv_matrix, sv_K, sv_L, sv_b = "random:0";
    sv_cmd->add_option("--matrix", sv_matrix)->required();
    sv_cmd->add_option("--K", sv_K, "xi box limits")->required();
    sv_cmd->add_option("--L", sv_L, "eta box limits")->required();
    sv_cmd->add_option("--b", sv_b, "coefficients: basis | random[:SEED] | adversarial");

    auto* cc_cmd = app.add_subcommand("cell-count", "dyadic cell count bound / partition");
    std::string cc_matrix, cc_box, cc_d;
    bool cc_partition = false;
    cc_cmd->add_option("--matrix", cc_matrix)->required();
    cc_cmd->add_option("--box", cc_box)->required();
    cc_cmd->add_option("--d", cc_d, "cell index d1,..,dM");
    cc_cmd->add_flag("--partition", cc_partition, "full partition accounting instead of one cell");

    auto* lm_cmd = app.add_subcommand("lattice-minima", "successive minima of a basis file");
    std::string lm_basis, lm_norm = "sup";
    lm_cmd->add_option("--basis", lm_basis, "file: first line L, then L rows")->required();
    lm_cmd->add_option("--norm", lm_norm)->check(CLI::IsMember({"sup", "l1"}));

    auto* tr_cmd = app.add_subcommand("transference", "paired gamma trajectories for A and A^T");
    std::string tr_matrix;
    int tr_max_exp = 10;
    tr_cmd->add_option("--matrix", tr_matrix)->required();
    tr_cmd->add_option("--max-exp", tr_max_exp);

    auto* sw_cmd = app.add_subcommand("sweep", "CSV parameter sweeps (plot data)");
    std::string sw_target = "tau0", sw_matrix = "quad:5";
    long long sw_lo = 1, sw_hi = 64;
    std::string sw_step = "x2";
    int sw_M = 2;
    sw_cmd->add_option("--target", sw_target)->check(CLI::IsMember({"tau0", "thm21", "tail"}));
    sw_cmd->add_option("--matrix", sw_matrix, "matrix for thm21");
    sw_cmd->add_option("--lo", sw_lo);
    sw_cmd->add_option("--hi", sw_hi);
    sw_cmd->add_option("--step", sw_step, "x<factor> or +<delta>");
    sw_cmd->add_option("--M", sw_M, "dimension for the tail sweep");

    CLI11_PARSE(app, argc, argv);
    Timer timer;

    try {
        if (*tau_cmd) {
            if (tau_L < 1) throw CLI::ValidationError("--L must be >= 1");
            TrigPoly t = tau(static_cast<int>(tau_L));
            std::printf("l,coefficient\n");
            for (int l = 0; l < static_cast<int>(tau_L); ++l)
                std::printf("%d,%s\n", l, json_double(t.coeff(l).real()).c_str());
            return kExitPass;
        }

        if (*sel_cmd) {
            SelbergPair p = selberg_pair({sel_alpha, sel_beta, static_cast<int>(sel_L), 0});
            double s0 = p.s.coeff(0).real(), t0 = p.t.coeff(0).real();
            double want_s0 = sel_beta - sel_alpha - 1.0 / (static_cast<double>(sel_L) + 1.0);
            double want_t0 = sel_beta - sel_alpha + 1.0 / (static_cast<double>(sel_L) + 1.0);
            double worst_lo = 0.0, worst_hi = 0.0;
            for (int g = 0; g < sel_grid; ++g) {
                double x = (g + 0.5) / sel_grid;
                double phi = interval_indicator(sel_alpha, sel_beta, x);
                worst_lo = std::max(worst_lo, p.s.eval_real(x) - phi);
                worst_hi = std::max(worst_hi, phi - p.t.eval_real(x));
            }
            TrigPoly u = fejer_riesz(p.t);
            double fr_err = 0.0;
            int fr_grid = 4 * static_cast<int>(sel_L) + 9;
            for (int g = 0; g < fr_grid; ++g) {
                double x = (g + 0.5) / fr_grid;
                fr_err = std::max(fr_err, std::fabs(std::norm(u.eval(x)) - p.t.eval_real(x)));
            }
            bool ok = std::fabs(s0 - want_s0) < 1e-12 && std::fabs(t0 - want_t0) < 1e-12 &&
                      worst_lo < 1e-9 && worst_hi < 1e-9 && fr_err < 1e-8;

            Json cfg = Json::object();
            cfg.set("alpha", Json::num(sel_alpha));
            cfg.set("beta", Json::num(sel_beta));
            cfg.set("L", Json::num(sel_L));
            cfg.set("grid", Json::num(sel_grid));
            Json pay = Json::object();
            pay.set("s0", Json::num(s0));
            pay.set("t0", Json::num(t0));
            pay.set("s0_expected", Json::num(want_s0));
            pay.set("t0_expected", Json::num(want_t0));
            pay.set("max_s_minus_phi", Json::num(worst_lo));
            pay.set("max_phi_minus_t", Json::num(worst_hi));
            pay.set("fejer_riesz_sup_error", Json::num(fr_err));
            emit("selberg", std::move(cfg), std::move(pay), ok ? "pass" : "alarm");
            return ok ? kExitPass : kExitFalsified;
        }

        if (*ext_cmd) {
            bool ok = true;
            Json per_L = Json::array();
            for (long long L : parse_ll_list(ext_L_list)) {
                TrigPoly t = tau(static_cast<int>(L));
                double min_v = 0.0, max_excess = 0.0;
                for (int g = 0; g < ext_grid; ++g) {
                    double x = (g + 0.5) / ext_grid;
                    double v = t.eval_real(x);
                    min_v = std::min(min_v, v);
                    max_excess =
                        std::max(max_excess, v - capped_recip(dist_to_nearest_int(x), L));
                }
                double t0 = t.coeff(0).real();
                double at0 = t.eval_real(0.0);
                bool row_ok = min_v >= -1e-9 && max_excess <= 1e-9 &&
                              std::fabs(at0 - static_cast<double>(L)) <= 1e-9 &&
                              t0 >= std::log(static_cast<double>(L) + 1.0) - 1e-12 &&
                              t0 <= 1.0 + std::log(static_cast<double>(L)) + 1e-12;
                ok = ok && row_ok;
                Json row = Json::object();
                row.set("L", Json::num(L));
                row.set("min_value", Json::num(min_v));
                row.set("max_excess_over_cap", Json::num(max_excess));
                row.set("value_at_zero", Json::num(at0));
                row.set("coeff0", Json::num(t0));
                row.set("ok", Json::boolean(row_ok));
                per_L.push(std::move(row));
            }
            double ident_worst = 0.0;
            for (long long L = 1; L <= ext_ident_max; ++L) {
                double lhs =
                    (static_cast<double>(L) + 1.0) * tau(static_cast<int>(L)).coeff(0).real();
                double rhs = static_cast<double>(L);
                for (long long l = 1; l <= L; ++l)
                    rhs += w_func(static_cast<double>(l) / (static_cast<double>(L) + 1.0));
                ident_worst = std::max(ident_worst, std::fabs(lhs - rhs));
            }
            ok = ok && ident_worst < 1e-8;

            Json cfg = Json::object();
            cfg.set("L_list", Json::str(ext_L_list));
            cfg.set("grid", Json::num(ext_grid));
            cfg.set("identity_max", Json::num(ext_ident_max));
            Json pay = Json::object();
            pay.set("per_L", std::move(per_L));
            pay.set("sampling_identity_worst", Json::num(ident_worst));
            emit("extremal-check", std::move(cfg), std::move(pay), ok ? "pass" : "alarm");
            return ok ? kExitPass : kExitFalsified;
        }

        if (*sum_cmd) {
            Mod1Matrix A = parse_matrix_source(sum_matrix);
            IntBox box(parse_ll_list(sum_box));
            std::vector<long long> L = parse_ll_list(sum_L);
            LatticeSet Y = LatticeSet::from_box(box);
            SumReport rep = certify_thm11(A, Y, L);

            Json cfg = Json::object();
            cfg.set("matrix", Json::str(sum_matrix));
            cfg.set("box", box_json(box));
            cfg.set("L", ll_vec_json(L));
            cfg.set("exact", Json::boolean(sum_exact));
            Json pay = Json::object();
            pay.set("card_Y", Json::num(rep.card_Y));
            pay.set("card_X", Json::num(rep.card_X));
            pay.set("lhs_bound", Json::num(rep.lhs_bound));
            pay.set("sum_value", Json::num(rep.sum_value));
            pay.set("gap", Json::num(rep.gap));
            pay.set("degenerate_hits", Json::num(rep.degenerate_hits));
            pay.set("inputs_digest", Json::str(rep.inputs_digest));
            if (sum_exact) {
                auto f = sum_F(A, difference_set(Y), A.has_exact());
                pay.set("sum_F_value", Json::num(f.value));
                pay.set("sum_F_infinite", Json::boolean(f.infinite));
                pay.set("sum_F_degenerate_hits", Json::num(f.degenerate_hits));
            }
            emit("sum-lower-bound", std::move(cfg), std::move(pay), rep.ok ? "pass" : "alarm");
            return rep.ok ? kExitPass : kExitFalsified;
        }

        if (*mt_cmd) {
            double exact = tail_F_exceeds(mt_lambda, mt_M);
            double quad = integral_log_pow_over_x2(mt_lambda, mt_M - 1) /
                          std::exp(std::lgamma(static_cast<double>(mt_M)));
            double diff = exact - quad;
            bool ok = std::fabs(diff) <= 1e-8 * std::max(1e-300, std::fabs(exact));
            Json cfg = Json::object();
            cfg.set("M", Json::num(mt_M));
            cfg.set("lambda", Json::num(mt_lambda));
            Json pay = Json::object();
            pay.set("exact", Json::num(exact));
            pay.set("quadrature", Json::num(quad));
            pay.set("diff", Json::num(diff));
            emit("measure-tail", std::move(cfg), std::move(pay), ok ? "pass" : "alarm");
            return ok ? kExitPass : kExitFalsified;
        }

        if (*mc_cmd) {
            std::vector<long long> xi = parse_ll_list(mc_xi);
            MCEstimate e = mc_single_tail(xi, mc_lambda, mc_M, static_cast<int>(xi.size()),
                                          mc_samples, mc_seed);
            double exact = tail_F_exceeds(mc_lambda, mc_M);
            bool ok = std::fabs(e.estimate - exact) <= 4.0 * e.stderr_est + 1e-12;
            Json cfg = Json::object();
            cfg.set("xi", ll_vec_json(xi));
            cfg.set("M", Json::num(mc_M));
            cfg.set("lambda", Json::num(mc_lambda));
            cfg.set("samples", Json::num(mc_samples));
            cfg.set("seed", Json::num(mc_seed));
            Json pay = Json::object();
            pay.set("samples", Json::num(e.samples));
            pay.set("hits", Json::num(e.hits));
            pay.set("estimate", Json::num(e.estimate));
            pay.set("stderr", Json::num(e.stderr_est));
            pay.set("exact_law", Json::num(exact));
            pay.set("z", Json::num(e.stderr_est > 0 ? (e.estimate - exact) / e.stderr_est : 0.0));
            emit("mc-tail", std::move(cfg), std::move(pay), ok ? "pass" : "alarm");
            return ok ? kExitPass : kExitFalsified;
        }

        if (*ms_cmd) {
            IntBox box(parse_ll_list(ms_box));
            LatticeSet X = ms_diffset ? LatticeSet::centered_box(box) : LatticeSet::from_box(box);
            MCSumResult r = mc_sum_exceedance(X, ms_lambda, ms_M, box.dims(), ms_samples, ms_seed);
            Json cfg = Json::object();
            cfg.set("box", box_json(box));
            cfg.set("diffset", Json::boolean(ms_diffset));
            cfg.set("M", Json::num(ms_M));
            cfg.set("lambda", Json::num(ms_lambda));
            cfg.set("samples", Json::num(ms_samples));
            cfg.set("seed", Json::num(ms_seed));
            Json pay = Json::object();
            pay.set("estimate", Json::num(r.mc.estimate));
            pay.set("stderr", Json::num(r.mc.stderr_est));
            pay.set("hits", Json::num(r.mc.hits));
            pay.set("bound", Json::num(r.bound));
            pay.set("margin", Json::num(r.bound - r.mc.estimate));
            emit("mc-sum", std::move(cfg), std::move(pay), r.ok ? "pass" : "alarm");
            return r.ok ? kExitPass : kExitFalsified;
        }

        if (*g_cmd) {
            Mod1Matrix A = parse_matrix_source(g_matrix);
            Json cfg = Json::object();
            cfg.set("matrix", Json::str(g_matrix));
            if (g_traj) {
                cfg.set("max_exp", Json::num(g_max_exp));
                Trajectory tr = gamma_trajectory(A, g_max_exp);
                emit("gamma", std::move(cfg), trajectory_json(tr), "pass");
                return kExitPass;
            }
            if (g_box.empty()) throw CLI::ValidationError("--box is required without --trajectory");
            IntBox box(parse_ll_list(g_box));
            GammaReport r = gamma_AK(A, box);
            cfg.set("box", box_json(box));
            Json pay = Json::object();
            pay.set("gamma", Json::num(r.gamma));
            pay.set("argmin", ll_vec_json(r.argmin));
            pay.set("exhaustive", Json::boolean(r.exhaustive));
            pay.set("exact_zero", Json::boolean(r.exact_zero));
            pay.set("points_scanned", Json::num(r.points_scanned));
            emit("gamma", std::move(cfg), std::move(pay), "pass");
            return kExitPass;
        }

        if (*sv_cmd) {
            Mod1Matrix A = parse_matrix_source(sv_matrix);
            IntBox K(parse_ll_list(sv_K));
            IntBox L(parse_ll_list(sv_L));
            SieveCoeffMode mode = SieveCoeffMode::Random;
            std::uint64_t seed = kDefaultSeed;
            if (sv_b == "basis") {
                mode = SieveCoeffMode::Basis;
            } else if (sv_b == "adversarial") {
                mode = SieveCoeffMode::Adversarial;
            } else if (sv_b.rfind("random:", 0) == 0) {
                seed = std::stoull(sv_b.substr(7));
            } else if (sv_b != "random") {
                throw CLI::ValidationError("--b must be basis | random[:SEED] | adversarial");
            }
            SieveReport r = large_sieve_check(A, K, L, mode, seed);
            Json cfg = Json::object();
            cfg.set("matrix", Json::str(sv_matrix));
            cfg.set("K", box_json(K));
            cfg.set("L", box_json(L));
            cfg.set("b", Json::str(sv_b));
            Json pay = Json::object();
            pay.set("lhs", Json::num(r.lhs));
            pay.set("rhs", Json::num(r.rhs));
            pay.set("margin", Json::num(r.margin));
            pay.set("gamma", Json::num(r.gamma));
            emit("sieve-check", std::move(cfg), std::move(pay), r.ok ? "pass" : "alarm");
            return r.ok ? kExitPass : kExitFalsified;
        }

        if (*cc_cmd) {
            Mod1Matrix A = parse_matrix_source(cc_matrix);
            IntBox box(parse_ll_list(cc_box));
            Json cfg = Json::object();
            cfg.set("matrix", Json::str(cc_matrix));
            cfg.set("box", box_json(box));
            if (cc_partition) {
                CellPartitionReport p = cell_partition_check(A, box);
                Json pay = Json::object();
                pay.set("R", Json::num(p.R));
                pay.set("in_range", Json::num(p.in_range));
                pay.set("out_of_range", Json::num(p.out_of_range));
                pay.set("degenerate", Json::num(p.degenerate));
                pay.set("expected", Json::num(p.expected));
                emit("cell-count", std::move(cfg), std::move(pay), p.ok ? "pass" : "alarm");
                return p.ok ? kExitPass : kExitFalsified;
            }
            if (cc_d.empty()) throw CLI::ValidationError("--d is required without --partition");
            DyadicCell cell;
            cell.d = parse_ll_list(cc_d);
            cell.valid = true;
            CellCountReport r = cell_count_bound(A, box, cell);
            cfg.set("d", ll_vec_json(cell.d));
            Json pay = Json::object();
            pay.set("count", Json::num(r.count));
            pay.set("bound", Json::num(r.bound));
            pay.set("gamma", Json::num(r.gamma));
            pay.set("margin", Json::num(r.bound - static_cast<double>(r.count)));
            emit("cell-count", std::move(cfg), std::move(pay), r.ok ? "pass" : "alarm");
            return r.ok ? kExitPass : kExitFalsified;
        }

        if (*lm_cmd) {
            std::ifstream in(lm_basis);
            if (!in) throw std::runtime_error("cannot open basis file: " + lm_basis);
            int L = 0;
            if (!(in >> L) || L < 1) throw std::runtime_error("basis file: bad dimension line");
            std::vector<double> rows(static_cast<size_t>(L) * static_cast<size_t>(L));
            for (auto& v : rows)
                if (!(in >> v)) throw std::runtime_error("basis file: expected L*L entries");
            LatticeBasis basis = LatticeBasis::from_rows(L, std::move(rows));
            MinimaResult res =
                successive_minima(basis, lm_norm == "sup" ? LatticeNorm::Sup : LatticeNorm::L1);
            Json cfg = Json::object();
            cfg.set("basis", Json::str(lm_basis));
            cfg.set("norm", Json::str(lm_norm));
            emit("lattice-minima", std::move(cfg), minima_json(res),
                 res.certified ? "pass" : "refused");
            return res.certified ? kExitPass : kExitBudget;
        }

        if (*tr_cmd) {
            Mod1Matrix A = parse_matrix_source(tr_matrix);
            TransferenceReport rep = transference_experiment(A, tr_max_exp);
            Json cfg = Json::object();
            cfg.set("matrix", Json::str(tr_matrix));
            cfg.set("max_exp", Json::num(tr_max_exp));
            Json pay = Json::object();
            pay.set("primal", trajectory_json(rep.primal));
            pay.set("transpose", trajectory_json(rep.transpose));
            Json checks = Json::array();
            for (const auto& rc : rep.lattice_checks) {
                Json e = Json::object();
                e.set("xi", ll_vec_json(rc.xi));
                e.set("R", Json::num(rc.R));
                e.set("delta_product", Json::num(rc.delta_product));
                e.set("sup_image_norm", Json::num(rc.sup_image_norm));
                e.set("lambda1", Json::num(rc.lambda1));
                e.set("minkowski_primal", Json::num(rc.minkowski_primal.value));
                e.set("minkowski_dual", Json::num(rc.minkowski_dual.value));
                e.set("mahler_product", Json::num(rc.mahler.product));
                e.set("ok", Json::boolean(rc.ok));
                checks.push(std::move(e));
            }
            pay.set("lattice_checks", std::move(checks));
            emit("transference", std::move(cfg), std::move(pay), rep.ok ? "pass" : "alarm");
            return rep.ok ? kExitPass : kExitFalsified;
        }

        if (*sw_cmd) {
            auto next = [&](long long v) -> long long {
                if (sw_step.size() > 1 && sw_step[0] == 'x') return v * std::stoll(sw_step.substr(1));
                if (sw_step.size() > 1 && sw_step[0] == '+') return v + std::stoll(sw_step.substr(1));
                throw CLI::ValidationError("--step must be x<factor> or +<delta>");
            };
            if (sw_target == "tau0") {
                std::printf("L,tau0,log_Lp1,one_plus_logL\n");
                for (long long L = sw_lo; L <= sw_hi; L = next(L))
                    std::printf("%lld,%s,%s,%s\n", L,
                                json_double(tau(static_cast<int>(L)).coeff(0).real()).c_str(),
                                json_double(std::log(static_cast<double>(L) + 1.0)).c_str(),
                                json_double(1.0 + std::log(static_cast<double>(L))).c_str());
            } else if (sw_target == "thm21") {
                Mod1Matrix A = parse_matrix_source(sw_matrix);
                std::printf("K,ratio,sum_F,gamma\n");
                for (long long K = sw_lo; K <= sw_hi; K = next(K)) {
                    auto r = thm21_ratio(A, IntBox({K}));
                    std::printf("%lld,%s,%s,%s\n", K, json_double(r.ratio).c_str(),
                                json_double(r.sum_F_value).c_str(), json_double(r.gamma).c_str());
                }
            } else {  // tail
                std::printf("lambda,exact,quadrature\n");
                for (long long l = sw_lo; l <= sw_hi; l = next(l)) {
                    double lam = static_cast<double>(l);
                    std::printf("%lld,%s,%s\n", l, json_double(tail_F_exceeds(lam, sw_M)).c_str(),
                                json_double(integral_log_pow_over_x2(lam, sw_M - 1) /
                                            std::exp(std::lgamma(static_cast<double>(sw_M))))
                                    .c_str());
                }
            }
            return kExitPass;
        }
    } catch (const BudgetExceeded& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return kExitBudget;
    } catch (const std::length_error& e) {
        std::fprintf(stderr, "refused: %s\n", e.what());
        return kExitBudget;
    } catch (const CLI::Error& e) {
        std::fprintf(stderr, "usage error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
