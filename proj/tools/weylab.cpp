// weylab command-line front end.
//
// Subcommands: sum-eval, scan-c1, mean-value, exponent-fit, kernel-verify,
// level-set, audit-duality, verify-outputs.  Exit status: 0 success,
// 1 usage/resource error, 2 assertion-style check failure.
//
// Options resolve as CLI > --config file > built-in defaults.  Output files
// land in --out (default $WEYLAB_OUT, then ".").

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "weylab/exp_sum.hpp"
#include "weylab/kernel_decomp.hpp"
#include "weylab/level_set.hpp"
#include "weylab/mean_value.hpp"
#include "weylab/output.hpp"
#include "weylab/svg.hpp"
#include "weylab/weyl_bounds.hpp"

namespace fs = std::filesystem;
using weylab::out::json;

namespace {

struct CommonOpts {
    std::string config_path;
    std::string out_dir;
    unsigned parallelism = 0;
};

void add_common(CLI::App* sub, CommonOpts& opts) {
    sub->add_option("--config", opts.config_path, "JSON config file (CLI flags win)");
    sub->add_option("--out", opts.out_dir, "output directory (default $WEYLAB_OUT, then .)");
    sub->add_option("--parallelism", opts.parallelism, "worker threads (0 = auto)");
}

fs::path resolve_out_dir(const CommonOpts& opts) {
    std::string dir = opts.out_dir;
    if (dir.empty()) {
        const char* env = std::getenv("WEYLAB_OUT");
        dir = env ? env : ".";
    }
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

json load_config_file(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file " + path);
    json j = json::parse(f, nullptr, false);
    if (j.is_discarded()) throw std::runtime_error("config file is not valid JSON: " + path);
    return j;
}

// file value wins over the default, CLI wins over the file
template <typename T>
void apply_file_value(CLI::App* sub, const json& cfg, const std::string& flag,
                      const std::string& key, T& value) {
    if (sub->count(flag) == 0 && cfg.contains(key)) value = cfg[key].get<T>();
}

weylab::Phase parse_phase(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        std::size_t used_a = 0, used_q = 0;
        long long a = std::stoll(text.substr(0, slash), &used_a);
        unsigned long long q = std::stoull(text.substr(slash + 1), &used_q);
        if (used_a != slash || used_q != text.size() - slash - 1)
            throw std::invalid_argument("malformed fraction '" + text + "'");
        if (q == 0) throw std::invalid_argument("fraction '" + text + "' has zero denominator");
        return weylab::Phase(weylab::RationalPhase::reduced(a, q));
    }
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument("malformed number '" + text + "'");
    return weylab::Phase(weylab::TorusPoint(v));
}

json phase_to_json(const std::string& text) {
    auto slash = text.find('/');
    if (slash != std::string::npos)
        return json{{"num", std::stoll(text.substr(0, slash))},
                    {"den", std::stoull(text.substr(slash + 1))}};
    return json(std::stod(text));
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        out.push_back(std::stod(text.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

std::vector<long long> parse_ll_list(const std::string& text) {
    std::vector<long long> out;
    for (double v : parse_double_list(text)) out.push_back(static_cast<long long>(v));
    return out;
}

// ---------------------------------------------------------------------------

int run_sum_eval(int d, long long N, const std::string& t_text, const std::string& x_text,
                 bool record, const CommonOpts& common) {
    weylab::Phase t = parse_phase(t_text);
    weylab::Phase x = parse_phase(x_text);
    weylab::TorusPoint xp(weylab::phase_value(x));
    weylab::Cplx v = weylab::eval_kernel(weylab::KernelParams{d, N}, t, xp);
    std::cout << "re= " << std::setprecision(17) << v.real() << "\n"
              << "im= " << v.imag() << "\n"
              << "modulus= " << std::abs(v) << "\n";
    if (record) {
        json params{{"cmd", "sum-eval"}, {"d", d}, {"N", N}, {"t", phase_to_json(t_text)},
                    {"x", phase_to_json(x_text)}};
        json rec{{"re", v.real()}, {"im", v.imag()}, {"modulus", std::abs(v)}};
        weylab::out::write_stamped_jsonl(resolve_out_dir(common) / "sum_eval.jsonl", params, {rec},
                                         {resolve_out_dir(common).string(), common.parallelism});
    }
    return 0;
}

int run_scan_c1(int d, long long N, std::size_t q_samples, std::size_t a_samples,
                std::uint64_t seed, const CommonOpts& common) {
    weylab::QPolicy qpol{q_samples == 0, q_samples};
    weylab::APolicy apol{a_samples == 0, a_samples};
    weylab::ScanResult res =
        weylab::scan_conjecture1(d, N, qpol, apol, seed, common.parallelism);

    json params{{"cmd", "scan-c1"}, {"d", d}, {"N", N},
                {"q_samples", q_samples}, {"a_samples", a_samples}, {"seed", seed}};
    std::vector<json> payload;
    payload.reserve(res.records.size() + 1);
    for (const auto& rec : res.records) payload.push_back(weylab::out::to_json(rec));
    payload.push_back(weylab::out::to_json(res.summary));
    fs::path dir = resolve_out_dir(common);
    weylab::out::write_stamped_jsonl(dir / "scan_c1.jsonl", params, payload,
                                     {dir.string(), common.parallelism});

    weylab::svg::Series series;
    series.label = "max|K|/q^{1/d}";
    series.markers = true;
    for (const auto& rec : res.records)
        series.points.emplace_back(static_cast<double>(rec.q), rec.ratio);
    weylab::svg::PlotSpec spec;
    spec.title = "scan-c1 d=" + std::to_string(d) + " N=" + std::to_string(N);
    spec.x_label = "q";
    spec.y_label = "ratio";
    weylab::out::write_stamped_svg(dir / "scan_c1.svg", params,
                                   weylab::svg::line_plot(spec, {series}));

    std::cout << "records= " << res.summary.record_count << "\n"
              << "max_ratio= " << res.summary.max_ratio << " at q= " << res.summary.argmax_q
              << " a= " << res.summary.argmax_a << "\n";
    return 0;
}

int run_mean_value(int d, long long N, double p, const std::string& methods, std::size_t samples,
                   std::uint64_t seed, const CommonOpts& common) {
    bool want_count = methods.find("count") != std::string::npos;
    bool want_quad = methods.find("quadrature") != std::string::npos;
    bool want_mc = methods.find("monte_carlo") != std::string::npos ||
                   methods.find("mc") != std::string::npos;
    if (!want_count && !want_quad && !want_mc)
        throw std::invalid_argument("mean-value: no known method in '" + methods + "'");
    bool p_is_integer = p == std::floor(p) && p >= 1;
    if ((want_count || want_quad) && !p_is_integer)
        throw std::invalid_argument("mean-value: count/quadrature need integer p");

    json params{{"cmd", "mean-value"}, {"d", d}, {"N", N}, {"p", p}, {"methods", methods},
                {"samples", samples}, {"seed", seed}};
    std::vector<json> payload;
    weylab::MeanValueResult count_res, quad_res;
    if (want_count) {
        count_res = weylab::count_solutions(d, N, static_cast<int>(p));
        payload.push_back(weylab::out::to_json(count_res));
        std::cout << "count: S = " << count_res.exact_value.str() << "\n";
    }
    if (want_quad) {
        quad_res = weylab::quadrature_integer_p(d, N, static_cast<int>(p), 0, 0, common.parallelism);
        payload.push_back(weylab::out::to_json(quad_res));
        std::cout << "quadrature: S = " << std::setprecision(17) << quad_res.float_value << "\n";
    }
    if (want_mc) {
        auto mc = weylab::monte_carlo(d, N, p, samples, seed, common.parallelism);
        payload.push_back(weylab::out::to_json(mc));
        std::cout << "monte_carlo: S = " << mc.float_value << " +- " << mc.stderr_value << "\n";
    }
    fs::path dir = resolve_out_dir(common);
    weylab::out::write_stamped_jsonl(dir / "mean_value.jsonl", params, payload,
                                     {dir.string(), common.parallelism});

    if (want_count && want_quad) {
        double rel = std::abs(quad_res.float_value - count_res.float_value) /
                     std::max(count_res.float_value, 1.0);
        if (rel > 1e-6) {
            std::cerr << "CHECK FAILED: counting vs quadrature disagree, rel err = " << rel << "\n";
            return 2;
        }
        std::cout << "check: counting = quadrature within 1e-6\n";
    }
    return 0;
}

int run_exponent_fit(int d, int p, const std::string& n_list_text, const CommonOpts& common) {
    std::vector<long long> Ns = parse_ll_list(n_list_text);
    weylab::ExponentFit fit = weylab::exponent_fit(d, p, Ns, common.parallelism);

    json params{{"cmd", "exponent-fit"}, {"d", d}, {"p", p}, {"N_list", Ns}};
    fs::path dir = resolve_out_dir(common);
    weylab::out::write_stamped_jsonl(dir / "exponent_fit.jsonl", params,
                                     {weylab::out::to_json(fit)},
                                     {dir.string(), common.parallelism});

    std::vector<std::string> rows;
    for (const auto& pt : fit.points) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%lld,%s,%.17g,%.17g", pt.N, pt.S.str().c_str(), pt.logN,
                      pt.logS);
        rows.emplace_back(buf);
    }
    char summary[200];
    std::snprintf(summary, sizeof(summary), "summary slope=%.10g intercept=%.10g target=%.10g",
                  fit.slope, fit.intercept, fit.conjectured_slope);
    weylab::out::write_stamped_csv(dir / "exponent_fit.csv", params, "N,S,logN,logS", rows,
                                   {summary});

    weylab::svg::Series data{"S(N,p)", {}, "#1f77b4", true};
    weylab::svg::Series fitline{"fit", {}, "#d62728", false};
    for (const auto& pt : fit.points) {
        data.points.emplace_back(static_cast<double>(pt.N), std::exp(pt.logS));
        fitline.points.emplace_back(static_cast<double>(pt.N),
                                    std::exp(fit.intercept + fit.slope * pt.logN));
    }
    weylab::svg::PlotSpec spec;
    spec.title = "S(N," + std::to_string(p) + ") vs N (d=" + std::to_string(d) + "), slope " +
                 std::to_string(fit.slope);
    spec.x_label = "N";
    spec.y_label = "S";
    spec.log_x = true;
    spec.log_y = true;
    weylab::out::write_stamped_svg(dir / "exponent_fit.svg", params,
                                   weylab::svg::line_plot(spec, {data, fitline}));

    std::cout << "slope= " << fit.slope << " (target " << fit.conjectured_slope << ")\n";
    return 0;
}

int run_kernel_verify(double Q, long long kmax, int d, long long N, long long n2_lo,
                      long long n2_hi, const std::string& phihat0_qs, const CommonOpts& common) {
    json params{{"cmd", "kernel-verify"}, {"Q", Q}, {"kmax", kmax}, {"d", d}, {"N", N},
                {"n2_lo", n2_lo}, {"n2_hi", n2_hi}, {"phihat0_Q", phihat0_qs}};
    std::vector<json> payload;

    weylab::DecompositionContext ctx(Q, d, N);
    weylab::Lemma21Report rep21 = weylab::verify_lemma21(ctx, kmax, common.parallelism, true);
    payload.push_back(weylab::out::to_json(rep21));
    std::cout << "phi_hat decay: sup |Phi_hat(k)|*Q = " << rep21.sup_ratio << " at k= "
              << rep21.argmax_k << "\n";

    if (d >= 2 && N >= 1) {
        weylab::Lemma22Report rep22 = weylab::verify_lemma22(ctx, n2_lo, n2_hi, common.parallelism);
        payload.push_back(weylab::out::to_json(rep22));
        std::cout << "k2q_hat band: sup = " << rep22.sup_abs << " ratio(Q/logQ)= " << rep22.ratio
                  << "\n";
    }
    if (!phihat0_qs.empty()) {
        for (const auto& row : weylab::verify_phihat0_asymptotic(parse_double_list(phihat0_qs))) {
            payload.push_back(weylab::out::to_json(row));
            std::cout << "phi_hat0 Q= " << row.Q << " ratio= " << row.ratio << "\n";
        }
    }

    fs::path dir = resolve_out_dir(common);
    weylab::out::write_stamped_jsonl(dir / "kernel_verify.jsonl", params, payload,
                                     {dir.string(), common.parallelism});

    std::vector<std::string> rows;
    rows.reserve(rep21.sweep.size());
    for (std::size_t i = 0; i < rep21.sweep.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof(buf), "%zu,%.17g", i + 1, rep21.sweep[i]);
        rows.emplace_back(buf);
    }
    weylab::out::write_stamped_csv(dir / "lemma21_sweep.csv", params, "k,ratio", rows);

    weylab::svg::Series series{"|Phi_hat(k)|*Q", {}, "#1f77b4", false};
    for (std::size_t i = 0; i < rep21.sweep.size(); ++i)
        series.points.emplace_back(static_cast<double>(i + 1), rep21.sweep[i]);
    weylab::svg::PlotSpec spec;
    spec.title = "Fourier decay of the comb, Q=" + std::to_string(Q);
    spec.x_label = "k";
    spec.y_label = "|Phi_hat(k)|*Q";
    weylab::out::write_stamped_svg(dir / "lemma21.svg", params,
                                   weylab::svg::line_plot(spec, {series}));
    return 0;
}

int run_level_set(int d, long long N, const std::string& lambdas_text, const std::string& estimator,
                  std::size_t Mx, std::size_t Mt, std::size_t samples, std::uint64_t seed,
                  const std::string& fit_text, double eps, const CommonOpts& common) {
    std::vector<double> lambdas = parse_double_list(lambdas_text);
    weylab::EstimatorConfig cfg;
    cfg.kind = estimator == "mc" || estimator == "monte_carlo" ? weylab::EstimatorKind::monte_carlo
                                                               : weylab::EstimatorKind::grid;
    cfg.Mx = Mx;
    cfg.Mt = Mt;
    cfg.samples = samples;
    cfg.seed = seed;
    cfg.parallelism = common.parallelism;

    weylab::LevelProfile profile = weylab::level_profile(d, N, lambdas, cfg);
    weylab::ChebyshevReport cheb = weylab::chebyshev_check(profile);

    json params{{"cmd", "level-set"}, {"d", d}, {"N", N}, {"lambdas", lambdas},
                {"estimator", estimator}, {"Mx", Mx}, {"Mt", Mt}, {"samples", samples},
                {"seed", seed}, {"fit", fit_text}, {"eps", eps}};
    std::vector<json> payload;
    for (const auto& e : profile.entries) payload.push_back(weylab::out::to_json(e));
    payload.push_back(weylab::out::to_json(cheb));
    payload.push_back(json{{"kind", "regime"},
                           {"eps", eps},
                           {"lambda_lo", weylab::decay_window_lo(N, eps)},
                           {"lambda_hi", static_cast<double>(N)}});
    if (!fit_text.empty()) {
        std::vector<double> fit_args = parse_double_list(fit_text);
        if (fit_args.size() != 3)
            throw std::invalid_argument("--fit wants lo,hi,points");
        auto fit = weylab::conditional_decay_fit(d, N, fit_args[0], fit_args[1],
                                                 static_cast<std::size_t>(fit_args[2]), cfg);
        payload.push_back(json{{"kind", "decay_fit"},
                               {"slope", fit.slope},
                               {"intercept", fit.intercept},
                               {"points_used", fit.points_used},
                               {"chebyshev_reference_slope", -2.0}});
        std::cout << "decay fit slope= " << fit.slope << " (Chebyshev reference -2)\n";
    }

    fs::path dir = resolve_out_dir(common);
    weylab::out::write_stamped_jsonl(dir / "level_set.jsonl", params, payload,
                                     {dir.string(), common.parallelism});

    std::vector<std::string> rows;
    for (const auto& e : profile.entries) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%s", e.lambda, e.est.measure,
                      e.est.uncertainty,
                      e.est.used == weylab::EstimatorKind::grid ? "grid" : "monte_carlo");
        rows.emplace_back(buf);
    }
    weylab::out::write_stamped_csv(dir / "level_profile.csv", params,
                                   "lambda,measure,uncertainty,estimator", rows);

    weylab::svg::Series series{"|G_lambda|", {}, "#1f77b4", true};
    for (const auto& e : profile.entries) series.points.emplace_back(e.lambda, e.est.measure);
    weylab::svg::PlotSpec spec;
    spec.title = "level profile d=" + std::to_string(d) + " N=" + std::to_string(N);
    spec.x_label = "lambda";
    spec.y_label = "measure";
    weylab::out::write_stamped_svg(dir / "level_profile.svg", params,
                                   weylab::svg::line_plot(spec, {series}));

    std::cout << "entries= " << profile.entries.size()
              << " chebyshev max ratio= " << cheb.max_ratio << "\n";
    if (!cheb.all_pass) {
        std::cerr << "CHECK FAILED: Chebyshev lambda^2|G| <= N violated beyond estimator error\n";
        return 2;
    }
    return 0;
}

int run_audit_duality(int d, long long N, const std::string& lambdas_text, std::size_t Mx,
                      std::size_t Mt, double tol, const CommonOpts& common) {
    std::vector<double> lambdas = parse_double_list(lambdas_text);
    json params{{"cmd", "audit-duality"}, {"d", d}, {"N", N}, {"lambdas", lambdas},
                {"Mx", Mx}, {"Mt", Mt}, {"tol", tol}};
    std::vector<json> payload;
    bool all_ok = true;
    for (double lambda : lambdas) {
        auto rep = weylab::duality_audit(d, N, lambda, Mx, Mt, tol, common.parallelism);
        payload.push_back(weylab::out::to_json(rep));
        std::cout << "lambda= " << lambda << " lhs= " << rep.refined.lhs << " mid= "
                  << rep.refined.mid << " rhs= " << rep.refined.rhs.real()
                  << (rep.lhs_ok && rep.pairing_ok ? " ok" : " FAIL") << "\n";
        all_ok = all_ok && rep.lhs_ok && rep.pairing_ok;
    }
    fs::path dir = resolve_out_dir(common);
    weylab::out::write_stamped_jsonl(dir / "duality.jsonl", params, payload,
                                     {dir.string(), common.parallelism});
    if (!all_ok) {
        std::cerr << "CHECK FAILED: duality inequality or pairing identity violated\n";
        return 2;
    }
    return 0;
}

int run_verify_outputs(const std::vector<std::string>& files, const std::string& dir_text) {
    std::vector<fs::path> targets;
    for (const auto& f : files) targets.emplace_back(f);
    if (!dir_text.empty()) {
        for (const auto& entry : fs::directory_iterator(dir_text)) {
            auto ext = entry.path().extension().string();
            if (ext == ".jsonl" || ext == ".csv" || ext == ".svg") targets.push_back(entry.path());
        }
        std::sort(targets.begin(), targets.end());
    }
    if (targets.empty()) throw std::invalid_argument("verify-outputs: no files given");
    bool all_ok = true;
    for (const auto& p : targets) {
        auto res = weylab::out::verify_stamped_file(p);
        std::cout << (res.ok ? "OK   " : "FAIL ") << p.string();
        if (!res.ok) std::cout << "  (" << res.reason << ")";
        std::cout << "\n";
        all_ok = all_ok && res.ok;
    }
    return all_ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"computational laboratory for two-frequency Weyl sums"};
    app.require_subcommand(1);

    // sum-eval
    auto* sum_eval = app.add_subcommand("sum-eval", "evaluate K_N(x, t) at one point");
    CommonOpts se_common;
    int se_d = 2;
    long long se_N = 1;
    std::string se_t = "0", se_x = "0";
    bool se_record = false;
    sum_eval->add_option("--d", se_d, "degree");
    sum_eval->add_option("--N", se_N, "sum length");
    sum_eval->add_option("--t", se_t, "t as a/q or decimal");
    sum_eval->add_option("--x", se_x, "x as a/q or decimal");
    sum_eval->add_flag("--record", se_record, "also write sum_eval.jsonl");
    add_common(sum_eval, se_common);

    // scan-c1
    auto* scan = app.add_subcommand("scan-c1", "ratio scan over primes in [N^{d/2}, N^d]");
    CommonOpts sc_common;
    int sc_d = 2;
    long long sc_N = 4;
    std::size_t sc_qs = 0, sc_as = 0;
    std::uint64_t sc_seed = 1;
    scan->add_option("--d", sc_d, "degree");
    scan->add_option("--N", sc_N, "sum length");
    scan->add_option("--q-samples", sc_qs, "primes kept per dyadic block (0 = exhaustive)");
    scan->add_option("--a-samples", sc_as, "residues kept per q (0 = exhaustive)");
    scan->add_option("--seed", sc_seed, "sampling seed");
    add_common(scan, sc_common);

    // mean-value
    auto* mv = app.add_subcommand("mean-value", "S(N,p) by count/quadrature/monte_carlo");
    CommonOpts mv_common;
    int mv_d = 2;
    long long mv_N = 2;
    double mv_p = 2;
    std::string mv_methods = "count,quadrature";
    std::size_t mv_samples = 1'000'000;
    std::uint64_t mv_seed = 1;
    mv->add_option("--d", mv_d, "degree");
    mv->add_option("--N", mv_N, "sum length");
    mv->add_option("--p", mv_p, "moment parameter (integer except for monte_carlo)");
    mv->add_option("--method", mv_methods, "comma list: count,quadrature,monte_carlo");
    mv->add_option("--samples", mv_samples, "monte carlo samples");
    mv->add_option("--seed", mv_seed, "monte carlo seed");
    add_common(mv, mv_common);

    // exponent-fit
    auto* ef = app.add_subcommand("exponent-fit", "log-log slope of S(N,p) over an N list");
    CommonOpts ef_common;
    int ef_d = 2, ef_p = 3;
    std::string ef_Ns = "8,16,32,64";
    ef->add_option("--d", ef_d, "degree");
    ef->add_option("--p", ef_p, "moment parameter (integer)");
    ef->add_option("--N", ef_Ns, "comma list of N, strictly increasing");
    add_common(ef, ef_common);

    // kernel-verify
    auto* kv = app.add_subcommand("kernel-verify", "comb Fourier decay and decomposition reports");
    CommonOpts kv_common;
    double kv_Q = 50;
    long long kv_kmax = 10000;
    int kv_d = 0;
    long long kv_N = 0, kv_n2lo = 0, kv_n2hi = 0;
    std::string kv_phihat0;
    kv->add_option("--Q", kv_Q, "comb scale (primes in [Q, 3Q])");
    kv->add_option("--kmax", kv_kmax, "sweep 1 <= k <= kmax");
    kv->add_option("--d", kv_d, "degree (enables the k2q band report)");
    kv->add_option("--N", kv_N, "sum length (enables the k2q band report)");
    kv->add_option("--n2-lo", kv_n2lo, "k2q band: n2 window lower end");
    kv->add_option("--n2-hi", kv_n2hi, "k2q band: n2 window upper end");
    kv->add_option("--phihat0-Q", kv_phihat0, "comma list of Q for the Phi_hat(0) table");
    add_common(kv, kv_common);

    // level-set
    auto* ls = app.add_subcommand("level-set", "measure superlevel sets of |K_N|");
    CommonOpts ls_common;
    int ls_d = 2;
    long long ls_N = 2;
    std::string ls_lambdas = "0.5,1.0,1.5";
    std::string ls_estimator = "grid";
    std::size_t ls_Mx = 0, ls_Mt = 0, ls_samples = 1'000'000;
    std::uint64_t ls_seed = 1;
    std::string ls_fit;
    double ls_eps = 0.1;
    ls->add_option("--d", ls_d, "degree");
    ls->add_option("--N", ls_N, "sum length");
    ls->add_option("--lambdas", ls_lambdas, "comma list of lambda");
    ls->add_option("--estimator", ls_estimator, "grid or mc");
    ls->add_option("--Mx", ls_Mx, "grid columns (0 = minimal 8N)");
    ls->add_option("--Mt", ls_Mt, "grid rows (0 = minimal 8N^d)");
    ls->add_option("--samples", ls_samples, "mc samples");
    ls->add_option("--seed", ls_seed, "mc seed");
    ls->add_option("--fit", ls_fit, "decay fit window: lo,hi,points");
    ls->add_option("--eps", ls_eps, "epsilon for the regime report");
    add_common(ls, ls_common);

    // audit-duality
    auto* ad = app.add_subcommand("audit-duality", "lambda|G| <= pairing with K_N, small N");
    CommonOpts ad_common;
    int ad_d = 2;
    long long ad_N = 2;
    std::string ad_lambdas = "0.5,1.0,1.5";
    std::size_t ad_Mx = 0, ad_Mt = 0;
    double ad_tol = 1e-3;
    ad->add_option("--d", ad_d, "degree (must be 2)");
    ad->add_option("--N", ad_N, "sum length (<= 4)");
    ad->add_option("--lambdas", ad_lambdas, "comma list of lambda");
    ad->add_option("--Mx", ad_Mx, "coarse grid columns (0 = 32x Nyquist)");
    ad->add_option("--Mt", ad_Mt, "coarse grid rows (0 = 32x Nyquist)");
    ad->add_option("--tol", ad_tol, "relative tolerance for the refined identity");
    add_common(ad, ad_common);

    // verify-outputs
    auto* vo = app.add_subcommand("verify-outputs", "recheck config/payload hashes of output files");
    std::vector<std::string> vo_files;
    std::string vo_dir;
    vo->add_option("files", vo_files, "stamped files to verify");
    vo->add_option("--dir", vo_dir, "verify every stamped file in a directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage errors exit 1; help/version exit 0
    }

    try {
        if (*sum_eval) {
            json cfg = load_config_file(se_common.config_path);
            apply_file_value(sum_eval, cfg, "--d", "d", se_d);
            apply_file_value(sum_eval, cfg, "--N", "N", se_N);
            apply_file_value(sum_eval, cfg, "--t", "t", se_t);
            apply_file_value(sum_eval, cfg, "--x", "x", se_x);
            return run_sum_eval(se_d, se_N, se_t, se_x, se_record, se_common);
        }
        if (*scan) {
            json cfg = load_config_file(sc_common.config_path);
            apply_file_value(scan, cfg, "--d", "d", sc_d);
            apply_file_value(scan, cfg, "--N", "N", sc_N);
            apply_file_value(scan, cfg, "--q-samples", "q_samples", sc_qs);
            apply_file_value(scan, cfg, "--a-samples", "a_samples", sc_as);
            apply_file_value(scan, cfg, "--seed", "seed", sc_seed);
            return run_scan_c1(sc_d, sc_N, sc_qs, sc_as, sc_seed, sc_common);
        }
        if (*mv) {
            json cfg = load_config_file(mv_common.config_path);
            apply_file_value(mv, cfg, "--d", "d", mv_d);
            apply_file_value(mv, cfg, "--N", "N", mv_N);
            apply_file_value(mv, cfg, "--p", "p", mv_p);
            apply_file_value(mv, cfg, "--method", "methods", mv_methods);
            apply_file_value(mv, cfg, "--samples", "samples", mv_samples);
            apply_file_value(mv, cfg, "--seed", "seed", mv_seed);
            return run_mean_value(mv_d, mv_N, mv_p, mv_methods, mv_samples, mv_seed, mv_common);
        }
        if (*ef) {
            json cfg = load_config_file(ef_common.config_path);
            apply_file_value(ef, cfg, "--d", "d", ef_d);
            apply_file_value(ef, cfg, "--p", "p", ef_p);
            apply_file_value(ef, cfg, "--N", "N_list", ef_Ns);
            return run_exponent_fit(ef_d, ef_p, ef_Ns, ef_common);
        }
        if (*kv) {
            json cfg = load_config_file(kv_common.config_path);
            apply_file_value(kv, cfg, "--Q", "Q", kv_Q);
            apply_file_value(kv, cfg, "--kmax", "kmax", kv_kmax);
            apply_file_value(kv, cfg, "--d", "d", kv_d);
            apply_file_value(kv, cfg, "--N", "N", kv_N);
            apply_file_value(kv, cfg, "--n2-lo", "n2_lo", kv_n2lo);
            apply_file_value(kv, cfg, "--n2-hi", "n2_hi", kv_n2hi);
            apply_file_value(kv, cfg, "--phihat0-Q", "phihat0_Q", kv_phihat0);
            return run_kernel_verify(kv_Q, kv_kmax, kv_d, kv_N, kv_n2lo, kv_n2hi, kv_phihat0,
                                     kv_common);
        }
        if (*ls) {
            json cfg = load_config_file(ls_common.config_path);
            apply_file_value(ls, cfg, "--d", "d", ls_d);
            apply_file_value(ls, cfg, "--N", "N", ls_N);
            apply_file_value(ls, cfg, "--lambdas", "lambdas", ls_lambdas);
            apply_file_value(ls, cfg, "--estimator", "estimator", ls_estimator);
            apply_file_value(ls, cfg, "--Mx", "Mx", ls_Mx);
            apply_file_value(ls, cfg, "--Mt", "Mt", ls_Mt);
            apply_file_value(ls, cfg, "--samples", "samples", ls_samples);
            apply_file_value(ls, cfg, "--seed", "seed", ls_seed);
            apply_file_value(ls, cfg, "--fit", "fit", ls_fit);
            apply_file_value(ls, cfg, "--eps", "eps", ls_eps);
            return run_level_set(ls_d, ls_N, ls_lambdas, ls_estimator, ls_Mx, ls_Mt, ls_samples,
                                 ls_seed, ls_fit, ls_eps, ls_common);
        }
        if (*ad) {
            json cfg = load_config_file(ad_common.config_path);
            apply_file_value(ad, cfg, "--d", "d", ad_d);
            apply_file_value(ad, cfg, "--N", "N", ad_N);
            apply_file_value(ad, cfg, "--lambdas", "lambdas", ad_lambdas);
            apply_file_value(ad, cfg, "--Mx", "Mx", ad_Mx);
            apply_file_value(ad, cfg, "--Mt", "Mt", ad_Mt);
            apply_file_value(ad, cfg, "--tol", "tol", ad_tol);
            return run_audit_duality(ad_d, ad_N, ad_lambdas, ad_Mx, ad_Mt, ad_tol, ad_common);
        }
        if (*vo) return run_verify_outputs(vo_files, vo_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
