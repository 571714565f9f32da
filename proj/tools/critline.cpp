// critline: mollified second moments of the Riemann zeta function, the
// critical-line proportion bound they imply, mollifier optimization, and
// desk-scale numerical verification of the moment asymptotic and the
// approximate functional equation.
//
// Subcommands: mainterm, optimize, moment, verify-afe, verify-arith,
// reproduce.  All emit CSV with a header row and %.17g round-trip floats.
// Exit codes: 0 success, 1 acceptance failure, 2 usage error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "critline/afe.hpp"
#include "critline/mainterm.hpp"
#include "critline/momentlab.hpp"
#include "critline/optimizer.hpp"
#include "critline/quadrature.hpp"
#include "critline/zeta.hpp"

using namespace critline;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// --out is a bare/relative name and CRITLINE_OUT_DIR is set -> join them.
std::string resolve_out(const std::string& path) {
    if (path.empty() || path.front() == '/') return path;
    const char* dir = std::getenv("CRITLINE_OUT_DIR");
    if (!dir || !*dir) return path;
    return std::string(dir) + "/" + path;
}

struct OutStream {
    FILE* f = stdout;
    bool own = false;
    explicit OutStream(const std::string& path) {
        if (!path.empty()) {
            std::string full = resolve_out(path);
            f = std::fopen(full.c_str(), "w");
            if (!f) throw std::runtime_error("cannot open output file: " + full);
            own = true;
        }
    }
    ~OutStream() {
        if (own) std::fclose(f);
    }
};

// Flat "key = value" config ('#' comments); returned as an argument list so
// the command line can override it.  Unknown keys become unknown options and
// fail parsing, which is what we want.
std::vector<std::string> config_as_args(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::vector<std::string> args;
    std::string line;
    int lineno = 0;
    auto trim = [](std::string s) {
        size_t b = s.find_first_not_of(" \t\r");
        size_t e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                     ": expected 'key = value'");
        std::string key = trim(t.substr(0, eq));
        std::string val = trim(t.substr(eq + 1));
        if (key.empty())
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
        args.push_back("--" + key);
        args.push_back(val);
    }
    return args;
}

Polynomial parse_poly_flag(const std::string& text, const char* flag) {
    try {
        return Polynomial::parse(text);
    } catch (const std::invalid_argument& e) {
        throw CLI::ValidationError(std::string(flag) + ": " + e.what());
    }
}

void warn_theta_boundary(double theta) {
    if (theta == 0.5)
        std::fprintf(stderr,
                     "warning: theta = 0.5 sits on the boundary of the admissible "
                     "range (0, 1/2); proceeding as the headline evaluation does\n");
}

struct IdentityResiduals {
    double c1_symmetry;
    double c1_forms;
    double exp_moment_identity;
    double operator_path;
};

IdentityResiduals identity_residuals(const MainTermParams& params, double T) {
    const double logT = std::log(T);
    const double logM = params.theta * logT;
    const cplx alpha = cplx(1.0, 0.5) / logT;
    const cplx beta = cplx(0.5, -0.25) / logT;
    ShiftPair sh{alpha, beta, logT, logM};
    ShiftPair shm{-beta, -alpha, logT, logM};

    IdentityResiduals r;
    r.c1_symmetry =
        std::abs(c1_integral_form(sh, params.P) + c1_integral_form(shm, params.P) - 1.0);
    r.c1_forms = std::abs(c1_integral_form(sh, params.P) - c1_derivative_form(sh, params.P));

    const cplx z = (alpha + beta) * logT;
    const cplx lhs = (1.0 - std::exp(-z)) / ((alpha + beta) * logM);
    auto integrand_re = [&](double v) { return std::exp(-z * v).real(); };
    auto integrand_im = [&](double v) { return std::exp(-z * v).imag(); };
    const cplx rhs = cplx(gl_integrate(integrand_re, 0.0, 1.0, 0.25, 32),
                          gl_integrate(integrand_im, 0.0, 1.0, 0.25, 32)) /
                     params.theta;
    r.exp_moment_identity = std::abs(lhs - rhs);

    r.operator_path =
        std::abs(main_term_via_operator(params) - main_term_closed(params).c_value);
    return r;
}

int run_mainterm(const std::string& p_str, const std::string& q_str, double R,
                 double theta, double T, const std::string& out, long seed) {
    MainTermParams params{parse_poly_flag(p_str, "--P"), parse_poly_flag(q_str, "--Q"), R,
                          theta};
    params.validate();
    warn_theta_boundary(theta);

    MainTermResult closed = main_term_closed(params);
    MainTermResult quad = main_term_quadrature(params, 64);
    IdentityResiduals ir = identity_residuals(params, T);

    OutStream os(out);
    std::fprintf(os.f,
                 "c_closed,c_quadrature,kappa,resid_c1_symmetry,resid_c1_forms,"
                 "resid_exp_moment,resid_operator_path,seed\n");
    std::fprintf(os.f, "%s,%s,%s,%s,%s,%s,%s,%ld\n", fmt(closed.c_value).c_str(),
                 fmt(quad.c_value).c_str(), fmt(closed.kappa).c_str(),
                 fmt(ir.c1_symmetry).c_str(), fmt(ir.c1_forms).c_str(),
                 fmt(ir.exp_moment_identity).c_str(), fmt(ir.operator_path).c_str(), seed);
    return 0;
}

int run_optimize(const OptimizeSpec& spec, const std::string& out, long seed) {
    spec.validate();
    warn_theta_boundary(spec.theta);
    OptimizeResult res = optimize_alternating(spec);

    OutStream os(out);
    std::fprintf(os.f, "R,c,kappa,seed\n");
    for (const TracePoint& tp : res.trace)
        std::fprintf(os.f, "%s,%s,%s,%ld\n", fmt(tp.R).c_str(), fmt(tp.c).c_str(),
                     fmt(tp.kappa).c_str(), seed);
    std::fprintf(os.f, "# P_opt = %s\n", res.P_opt.to_csv().c_str());
    std::fprintf(os.f, "# Q_opt = %s\n", res.Q_opt.to_csv().c_str());
    std::fprintf(os.f, "# R_opt = %s\n", fmt(res.R_opt).c_str());
    std::fprintf(os.f, "# c_opt = %s\n", fmt(res.c_opt).c_str());
    std::fprintf(os.f, "# kappa_opt = %s\n", fmt(res.kappa_opt).c_str());
    std::fprintf(os.f, "# iterations = %d\n", res.iterations);
    std::fprintf(os.f, "# converged = %d\n", res.converged ? 1 : 0);
    if (res.degenerate) std::fprintf(os.f, "# degenerate_subproblem = 1\n");
    return 0;
}

int run_moment(MomentRunConfig cfg, const std::string& mode, const std::string& out,
               const std::string& panel_dump, long seed) {
    cfg.validate();
    warn_theta_boundary(cfg.theta);
    const bool smoothed = mode == "smoothed";
    MomentResult r = smoothed ? smoothed_moment(cfg) : sharp_moment(cfg);

    OutStream os(out);
    std::fprintf(os.f, "T,M,sigma0,moment,main_term,ratio,runtime_seconds");
    if (cfg.check_step) std::fprintf(os.f, ",halved_moment,step_converged");
    std::fprintf(os.f, ",seed\n");
    std::fprintf(os.f, "%s,%lld,%s,%s,%s,%s,%s", fmt(r.T).c_str(),
                 static_cast<long long>(r.M), fmt(r.sigma0).c_str(), fmt(r.value).c_str(),
                 fmt(r.main_term).c_str(), fmt(r.ratio).c_str(),
                 fmt(r.runtime_seconds).c_str());
    if (cfg.check_step)
        std::fprintf(os.f, ",%s,%d", fmt(r.halved_value).c_str(), r.step_converged ? 1 : 0);
    std::fprintf(os.f, ",%ld\n", seed);

    if (!panel_dump.empty()) {
        OutStream pd(panel_dump);
        std::fprintf(pd.f, "t_lo,t_hi,contribution\n");
        double lo, hi;
        if (smoothed) {
            WindowSpec ws = cfg.window;
            ws.T = cfg.T;
            ws.fill_defaults();
            lo = std::max(1.0, ws.support_lo);
            hi = ws.support_hi;
        } else {
            lo = 1.0;
            hi = cfg.T;
        }
        const int segments = 100;
        const double h = (hi - lo) / segments;
        for (int i = 0; i < segments; ++i) {
            double a = lo + i * h, b = (i == segments - 1) ? hi : lo + (i + 1) * h;
            double v = band_integral(cfg, a, b, smoothed);
            std::fprintf(pd.f, "%s,%s,%s\n", fmt(a).c_str(), fmt(b).c_str(), fmt(v).c_str());
        }
    }
    return 0;
}

int run_verify_afe(double t, double alpha, double beta, long long truncation,
                   const std::string& out, long seed) {
    AfeShifts shifts{cplx(alpha, 0.0), cplx(beta, 0.0)};
    ZetaContext ctx = ZetaContext::accurate(t);
    double residual = afe_residual(t, shifts, truncation, ctx);
    OutStream os(out);
    std::fprintf(os.f, "t,alpha,beta,truncation,residual,seed\n");
    std::fprintf(os.f, "%s,%s,%s,%lld,%s,%ld\n", fmt(t).c_str(), fmt(alpha).c_str(),
                 fmt(beta).c_str(), truncation, fmt(residual).c_str(), seed);
    return 0;
}

int run_verify_arith(double s_re, long long cap, const std::string& out, long seed) {
    double value = arith_factor_check(s_re, cap);
    OutStream os(out);
    std::fprintf(os.f, "cap,s_re,value,abs_error,seed\n");
    std::fprintf(os.f, "%lld,%s,%s,%s,%ld\n", cap, fmt(s_re).c_str(), fmt(value).c_str(),
                 fmt(std::abs(value - 1.0)).c_str(), seed);
    return 0;
}

int run_reproduce(bool check_identities, bool as_json, long seed) {
    const auto t0 = std::chrono::steady_clock::now();
    MainTermParams params{Polynomial::parse("0,1"), Polynomial::parse("1,-1"), 1.3, 0.5};
    params.validate();

    MainTermResult closed = main_term_closed(params);
    MainTermResult quad = main_term_quadrature(params, 64);
    const bool c_ok = closed.c_value >= 2.34 && closed.c_value <= 2.36;
    const bool kappa_ok = closed.kappa >= 0.340 && closed.kappa <= 0.346;

    IdentityResiduals ir = identity_residuals(params, 1e4);
    double max_random_resid = 0.0;
    if (check_identities) {
        std::mt19937_64 rng(static_cast<uint64_t>(seed));
        std::uniform_real_distribution<double> coef(-1.0, 1.0);
        const double logT = std::log(1e4), logM = 0.5 * logT;
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<double> c(5);
            double sum = 0.0;
            do {
                c[0] = 0.0;
                sum = 0.0;
                for (size_t j = 1; j < c.size(); ++j) {
                    c[j] = coef(rng);
                    sum += c[j];
                }
            } while (std::abs(sum) < 0.1);
            for (size_t j = 1; j < c.size(); ++j) c[j] /= sum;   // P(1) = 1
            Polynomial P{c};
            cplx alpha(coef(rng) / logT, coef(rng) / logT);
            cplx beta(coef(rng) / logT, coef(rng) / logT);
            if (std::abs(alpha + beta) * logM < 1e-3) alpha += 0.5 / logT;
            ShiftPair sh{alpha, beta, logT, logM};
            ShiftPair shm{-beta, -alpha, logT, logM};
            max_random_resid = std::max(
                max_random_resid,
                std::abs(c1_integral_form(sh, P) + c1_integral_form(shm, P) - 1.0));
            max_random_resid = std::max(
                max_random_resid,
                std::abs(c1_integral_form(sh, P) - c1_derivative_form(sh, P)));
        }
    }
    const double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (as_json) {
        nlohmann::json j;
        j["c_closed"] = closed.c_value;
        j["c_quadrature"] = quad.c_value;
        j["kappa"] = closed.kappa;
        j["c_bracket"] = {2.34, 2.36};
        j["kappa_bracket"] = {0.340, 0.346};
        j["c_in_bracket"] = c_ok;
        j["kappa_in_bracket"] = kappa_ok;
        j["resid_c1_symmetry"] = ir.c1_symmetry;
        j["resid_c1_forms"] = ir.c1_forms;
        j["resid_exp_moment"] = ir.exp_moment_identity;
        j["resid_operator_path"] = ir.operator_path;
        if (check_identities) j["resid_randomized_max"] = max_random_resid;
        j["runtime_seconds"] = runtime;
        j["seed"] = seed;
        std::printf("%s\n", j.dump(2).c_str());
    } else {
        std::printf("c(P=x, Q=1-x, R=1.3, theta=0.5) = %.12f   (bracket [2.34, 2.36] %s)\n",
                    closed.c_value, c_ok ? "ok" : "FAILED");
        std::printf("kappa >= %.12f                        (bracket [0.340, 0.346] %s)\n",
                    closed.kappa, kappa_ok ? "ok" : "FAILED");
        std::printf("cross-check: quadrature c = %.12f  (|diff| = %.3e)\n", quad.c_value,
                    std::abs(quad.c_value - closed.c_value));
        std::printf("identity residuals: c1 symmetry %.3e, c1 forms %.3e, "
                    "exp-moment %.3e, operator path %.3e\n",
                    ir.c1_symmetry, ir.c1_forms, ir.exp_moment_identity, ir.operator_path);
        if (check_identities)
            std::printf("randomized identity sweep (50 trials, seed %ld): max residual %.3e\n",
                        seed, max_random_resid);
        std::printf("runtime: %.3f s\n", runtime);
    }
    if (!c_ok || !kappa_ok) {
        std::fprintf(stderr, "reproduce: headline values outside acceptance brackets\n");
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"mollified zeta moments, kappa bounds, and desk-scale verification"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    std::string out_path, config_path;
    long seed = 12345;
    int threads = 0;
    app.add_option("--out", out_path, "output CSV path (default stdout)");
    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--seed", seed, "seed for randomized sweeps, recorded in output");
    app.add_option("--threads", threads, "worker thread cap (0 = all)");

    auto* cmd_mainterm = app.add_subcommand("mainterm", "evaluate c(P,Q,R,theta) and kappa");
    std::string p_str = "0,1", q_str = "1,-1";
    double R = 1.3, theta = 0.5, T = 1e4;
    cmd_mainterm->add_option("--P", p_str, "P coefficients, lowest degree first");
    cmd_mainterm->add_option("--Q", q_str, "Q coefficients, lowest degree first");
    cmd_mainterm->add_option("--R", R, "shift scale R > 0");
    cmd_mainterm->add_option("--theta", theta, "mollifier length exponent");
    cmd_mainterm->add_option("--T", T, "height used for the identity checks");

    auto* cmd_opt = app.add_subcommand("optimize", "optimize P, Q, R for the kappa bound");
    OptimizeSpec spec;
    cmd_opt->add_option("--degP", spec.degP, "degree of P");
    cmd_opt->add_option("--degQ", spec.degQ, "degree of Q");
    cmd_opt->add_option("--theta", spec.theta, "mollifier length exponent");
    cmd_opt->add_option("--R-min", spec.R_lo, "lower end of the R search range");
    cmd_opt->add_option("--R-max", spec.R_hi, "upper end of the R search range");
    cmd_opt->add_option("--tol", spec.tol, "convergence threshold on c");
    cmd_opt->add_option("--max-iters", spec.max_alt_iters, "alternating iteration cap");
    cmd_opt->add_option("--grid", spec.r_grid, "dense R guard-grid size");

    auto* cmd_moment = app.add_subcommand("moment", "numerical moment experiment");
    MomentRunConfig mcfg;
    std::string mp_str = "0,1", mq_str = "1,-1", window_kind = "majorant", mode = "sharp",
                panel_dump;
    cmd_moment->add_option("--T", mcfg.T, "height T (desk scale, <= 2e5)");
    cmd_moment->add_option("--theta", mcfg.theta, "mollifier length exponent");
    cmd_moment->add_option("--R", mcfg.R, "sigma0 = 1/2 - R/log T");
    cmd_moment->add_option("--P", mp_str, "P coefficients");
    cmd_moment->add_option("--Q", mq_str, "Q coefficients");
    cmd_moment->add_option("--window", window_kind, "majorant|minorant|bump")
        ->check(CLI::IsMember({"majorant", "minorant", "bump"}));
    cmd_moment->add_option("--step", mcfg.quad_step, "Gauss-Legendre panel width");
    cmd_moment->add_option("--nodes", mcfg.nodes, "nodes per panel");
    cmd_moment->add_option("--mode", mode, "smoothed|sharp")
        ->check(CLI::IsMember({"smoothed", "sharp"}));
    cmd_moment->add_flag("--check-step", mcfg.check_step, "re-run at half step and compare");
    cmd_moment->add_option("--panel-dump", panel_dump, "per-segment contribution CSV");

    auto* cmd_afe = app.add_subcommand("verify-afe", "approximate functional equation residual");
    double afe_t = 100.0, afe_alpha = 0.01, afe_beta = 0.01;
    long long truncation = 100000;
    cmd_afe->add_option("--t", afe_t, "height t in [50, 1e4]");
    cmd_afe->add_option("--alpha", afe_alpha, "shift alpha");
    cmd_afe->add_option("--beta", afe_beta, "shift beta");
    cmd_afe->add_option("--truncation", truncation, "sum cutoff for mn");

    auto* cmd_arith = app.add_subcommand("verify-arith", "diagonal arithmetical-factor identity");
    double s_re = 0.5;
    long long cap = 10000;
    cmd_arith->add_option("--s-re", s_re, "Re(s) > 0");
    cmd_arith->add_option("--cap", cap, "block cutoff for N = hm = kn");

    auto* cmd_rep = app.add_subcommand("reproduce", "headline preset and acceptance brackets");
    bool check_identities = false, as_json = false;
    cmd_rep->add_flag("--check-identities", check_identities, "run the identity suite too");
    cmd_rep->add_flag("--json", as_json, "machine-readable report");

    // global options (--out, --seed, --config, ...) may appear after the
    // subcommand name
    for (CLI::App* sub : {cmd_mainterm, cmd_opt, cmd_moment, cmd_afe, cmd_arith, cmd_rep})
        sub->fallthrough();

    // Inject config-file values ahead of the explicit flags so flags win.
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    try {
        for (size_t i = 0; i < args.size(); ++i) {
            std::string val;
            if (args[i] == "--config" && i + 1 < args.size())
                val = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                val = args[i].substr(9);
            else
                continue;
            // insert right after the subcommand token (the first non-flag)
            std::vector<std::string> cfg = config_as_args(val);
            size_t pos = 0;
            while (pos < args.size() && !args[pos].empty() && args[pos][0] == '-') ++pos;
            if (pos < args.size()) ++pos;
            args.insert(args.begin() + pos, cfg.begin(), cfg.end());
            break;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    mcfg.threads = threads;

    try {
        if (*cmd_mainterm) return run_mainterm(p_str, q_str, R, theta, T, out_path, seed);
        if (*cmd_opt) return run_optimize(spec, out_path, seed);
        if (*cmd_moment) {
            mcfg.P = parse_poly_flag(mp_str, "--P");
            mcfg.Q = parse_poly_flag(mq_str, "--Q");
            if (window_kind == "majorant")
                mcfg.window = WindowSpec::majorant(mcfg.T);
            else if (window_kind == "minorant")
                mcfg.window = WindowSpec::minorant(mcfg.T);
            else
                mcfg.window = WindowSpec::bump(mcfg.T);
            return run_moment(mcfg, mode, out_path, panel_dump, seed);
        }
        if (*cmd_afe) return run_verify_afe(afe_t, afe_alpha, afe_beta, truncation, out_path, seed);
        if (*cmd_arith) return run_verify_arith(s_re, cap, out_path, seed);
        if (*cmd_rep) return run_reproduce(check_identities, as_json, seed);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
