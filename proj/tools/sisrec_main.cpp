// sisrec: estimation and detection of signals obeying an unknown linear
// recurrence, via reproducing-filter fits. Subcommands: synth, oracle,
// denoise, detect, bench, check.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "sisrec/detection.hpp"
#include "sisrec/estimator.hpp"
#include "sisrec/filter_oracle.hpp"
#include "sisrec/harness.hpp"
#include "sisrec/json_io.hpp"
#include "sisrec/rng.hpp"

using nlohmann::json;
using namespace sisrec;

namespace {

json filter_to_json(const TwoSidedSequence& phi) {
    json j;
    j["lo"] = phi.lo();
    std::vector<double> re, im;
    for (const cplx& z : phi.values()) {
        re.push_back(z.real());
        im.push_back(z.imag());
    }
    j["re"] = re;
    j["im"] = im;
    return j;
}

int run_synth(const std::string& spec_path, std::int64_t n, double sigma, std::uint64_t seed,
              const std::string& coeffs_path, bool normalize, const std::string& out) {
    const SisSpec spec = spec_from_json(load_json_file(spec_path));
    std::vector<cplx> coeffs;
    if (!coeffs_path.empty()) {
        const json cj = load_json_file(coeffs_path);
        const auto re = cj.at("re").get<std::vector<double>>();
        const auto im = cj.at("im").get<std::vector<double>>();
        if (re.size() != im.size() || static_cast<std::int64_t>(re.size()) != spec.order())
            throw std::invalid_argument("coeffs: need s = " + std::to_string(spec.order()) +
                                        " entries");
        for (std::size_t i = 0; i < re.size(); ++i) coeffs.emplace_back(re[i], im[i]);
    } else {
        Rng rng(mix_seed(seed, 0xC0));
        double nrm = 0.0;
        for (std::int64_t i = 0; i < spec.order(); ++i) {
            coeffs.push_back(rng.cgaussian());
            nrm += std::norm(coeffs.back());
        }
        for (auto& c : coeffs) c /= std::sqrt(nrm);
    }
    TwoSidedSequence x = synthesize(spec, coeffs, -n, n);
    if (normalize) {
        const double xn = seminorm(x, n, 2.0);
        if (xn > 0.0) x = x.scaled(cplx{1.0 / xn, 0.0});
    }
    const ObservationWindow y = add_noise(x, n, sigma, seed);
    save_json_file(signal_to_json(y.y, n, sigma), out);
    return 0;
}

int run_oracle(const std::string& spec_path, std::int64_t m, bool causal, double c1,
               const std::string& out) {
    const SisSpec spec = spec_from_json(load_json_file(spec_path));
    const std::int64_t n = 9 * m;
    const TwoSidedSequence phi =
        causal ? hybrid_filter_causal(spec, m, c1) : hybrid_filter(spec, m);
    const FilterCertificates c =
        causal ? measure_certificates_causal(phi, n) : measure_certificates(phi, n);
    json j = filter_to_json(phi);
    j["m"] = m;
    j["n"] = n;
    j["causal"] = causal;
    j["certificates"] = {{"l1", c.l1}, {"l2", c.l2}, {"linf", c.linf}};
    const FilterBudget budget =
        causal ? FilterBudget::causal(spec.order(), n, c1) : FilterBudget::two_sided(spec.order(), n);
    j["budget"] = {{"R1", budget.R1}, {"R2", budget.R2}, {"Rinf", budget.Rinf}};
    save_json_file(j, out);
    return 0;
}

int run_denoise(const std::string& input, std::int64_t s, const std::string& mode, double delta,
                double tol, int max_iter, double c1, std::int64_t lead, const std::string& out) {
    std::int64_t N = 0;
    double sigma = 0.0;
    const TwoSidedSequence yseq = signal_from_json(load_json_file(input), &N, &sigma);
    const ObservationWindow y{yseq, N, sigma};
    SolverConfig sc;
    sc.tol = tol;
    sc.max_iter = max_iter;

    TwoSidedSequence xh;
    FitResult fit;
    bool all_conv = true;
    std::int64_t out_n = 0;
    if (mode == "core") {
        xh = estimate_core(y, s, sc, &fit);
        out_n = N / 2;
        all_conv = fit.converged;
    } else if (mode == "full") {
        xh = estimate_full(y, s, sc, &fit, &all_conv);
        out_n = N;
    } else if (mode == "causal") {
        xh = estimate_onesided(y, s, c1, sc, lead, &fit);
        out_n = N;  // values live on [0, 2n]; serialized over [-2n, 2n]
        all_conv = fit.converged;
    } else {
        throw std::invalid_argument("denoise: mode must be core|full|causal");
    }

    json j;
    j["estimate"] = signal_to_json(xh, out_n, sigma);
    j["delta"] = delta;
    j["mode"] = mode;
    j["filter_spectrum"] =
        spectrum_to_json(SpectrumVec{(static_cast<std::int64_t>(fit.spectrum.size()) - 1) / 2,
                                     fit.spectrum});
    j["objective"] = fit.objective;
    j["iterations"] = fit.iterations;
    j["converged"] = all_conv;
    save_json_file(j, out);
    return 0;
}

int run_detect(const std::string& input, std::int64_t s, double sigma, double delta, double tol,
               int max_iter) {
    std::int64_t N = 0;
    double file_sigma = 0.0;
    const TwoSidedSequence yseq = signal_from_json(load_json_file(input), &N, &file_sigma);
    if (sigma < 0.0) sigma = file_sigma;
    const ObservationWindow y{yseq, N, sigma};
    SolverConfig sc;
    sc.tol = tol;
    sc.max_iter = max_iter;
    const DetectionResult r = detect(y, s, sigma, delta, sc);
    json j{{"statistic", r.statistic}, {"threshold", r.threshold}, {"reject", r.reject}};
    std::cout << j.dump() << "\n";
    return 0;
}

int run_bench(const std::string& config_path, std::string out_csv) {
    const json cj = load_json_file(config_path);
    BenchConfig cfg;
    cfg.trials = cj.value("trials", cfg.trials);
    if (cj.contains("n_list")) cfg.n_list = cj.at("n_list").get<std::vector<std::int64_t>>();
    if (cj.contains("s_list")) cfg.s_list = cj.at("s_list").get<std::vector<std::int64_t>>();
    cfg.sigma = cj.value("sigma", cfg.sigma);
    cfg.delta = cj.value("delta", cfg.delta);
    cfg.root_mode = root_mode_from_string(cj.value("root_mode", "unit-circle"));
    cfg.seed = cj.value("seed", static_cast<std::uint64_t>(1));
    cfg.estimator_mode = estimator_mode_from_string(cj.value("estimator_mode", "core"));
    cfg.normalize = cj.value("normalize", true);
    cfg.out_path = cj.value("out_path", std::string{});
    if (cj.contains("solver")) {
        cfg.solver.max_iter = cj["solver"].value("max_iter", cfg.solver.max_iter);
        cfg.solver.tol = cj["solver"].value("tol", cfg.solver.tol);
    }
    if (out_csv.empty()) out_csv = cfg.out_path;
    if (out_csv.empty()) throw std::invalid_argument("bench: no output path (--out or out_path)");

    const RiskReport report = run_monte_carlo(cfg);
    export_csv(report, out_csv);
    std::printf("trials=%zu failures=%d empirical_%.3g_risk=%.6g -> %s\n",
                report.records.size(), report.failures, 1.0 - report.delta,
                report.empirical_delta_risk, out_csv.c_str());
    return 0;
}

int run_check(const std::vector<std::int64_t>& sizes) {
    const TheoryReport rep = theory_checks(sizes);
    for (const TheoryCheck& c : rep.checks)
        std::printf("%-28s %s  measured=%.6g bound=%.6g %s\n", c.name.c_str(),
                    c.pass ? "PASS" : "FAIL", c.measured, c.bound, c.note.c_str());
    return rep.all_pass() ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"shift-invariant subspace denoising and detection"};
    app.require_subcommand(1);

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a noisy observation window");
    std::string spec_path, coeffs_path, out_path;
    std::int64_t n = 27;
    double sigma = 0.0;
    std::uint64_t seed = 1;
    bool normalize = false;
    synth->add_option("--spec", spec_path, "SIS spec JSON")->required();
    synth->add_option("--n", n, "half-width of the window [-n, n]")->required();
    synth->add_option("--sigma", sigma, "noise level");
    synth->add_option("--seed", seed, "noise / coefficient seed");
    synth->add_option("--coeffs", coeffs_path, "coefficient JSON {re:[],im:[]}; random if absent");
    synth->add_flag("--normalize", normalize, "scale x to ||x||_{n,2} = 1");
    synth->add_option("--out", out_path, "output observation JSON")->required();

    // oracle
    auto* oracle = app.add_subcommand("oracle", "construct the reproducing filter with certificates");
    std::string o_spec, o_out;
    std::int64_t o_m = 9;
    bool o_causal = false;
    double o_c1 = 1.0;
    oracle->add_option("--spec", o_spec, "SIS spec JSON")->required();
    oracle->add_option("--m", o_m, "base half-width m (filter lives in C_{9m})")->required();
    oracle->add_flag("--causal", o_causal, "one-sided filter on [0, 18m]");
    oracle->add_option("--c1", o_c1, "causal l1 budget constant");
    oracle->add_option("--out", o_out, "output filter JSON")->required();

    // denoise
    auto* denoise = app.add_subcommand("denoise", "fit a filter and estimate the signal");
    std::string d_in, d_mode = "core", d_out;
    std::int64_t d_s = 1, d_lead = 0;
    double d_delta = 0.1, d_tol = 1e-8, d_c1 = 1.0;
    int d_iter = 2000;
    denoise->add_option("--input", d_in, "observation JSON")->required();
    denoise->add_option("--s", d_s, "recurrence order")->required();
    denoise->add_option("--mode", d_mode, "core|full|causal");
    denoise->add_option("--delta", d_delta, "confidence parameter (reported)");
    denoise->add_option("--solver-tol", d_tol, "relative objective decrease tolerance");
    denoise->add_option("--max-iter", d_iter, "iteration cap");
    denoise->add_option("--c1", d_c1, "causal budget constant");
    denoise->add_option("--lead", d_lead, "prediction lead (causal)");
    denoise->add_option("--out", d_out, "output JSON")->required();

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "test for the presence of a signal");
    std::string t_in;
    std::int64_t t_s = 1;
    double t_sigma = -1.0, t_delta = 0.1, t_tol = 1e-8;
    int t_iter = 2000;
    detect_cmd->add_option("--input", t_in, "observation JSON")->required();
    detect_cmd->add_option("--s", t_s, "recurrence order")->required();
    detect_cmd->add_option("--sigma", t_sigma, "noise level (file value if omitted)");
    detect_cmd->add_option("--delta", t_delta, "confidence parameter");
    detect_cmd->add_option("--solver-tol", t_tol, "solver tolerance");
    detect_cmd->add_option("--max-iter", t_iter, "iteration cap");

    // bench
    auto* bench = app.add_subcommand("bench", "Monte Carlo risk run");
    std::string b_config, b_out;
    bench->add_option("--config", b_config, "BenchConfig JSON")->required();
    bench->add_option("--out", b_out, "output CSV (overrides config out_path)");

    // check
    auto* check = app.add_subcommand("check", "run the theory-check suite");
    std::vector<std::int64_t> c_sizes{8, 32, 128};
    check->add_option("--sizes", c_sizes, "grid sizes");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed())
            return run_synth(spec_path, n, sigma, seed, coeffs_path, normalize, out_path);
        if (oracle->parsed()) return run_oracle(o_spec, o_m, o_causal, o_c1, o_out);
        if (denoise->parsed())
            return run_denoise(d_in, d_s, d_mode, d_delta, d_tol, d_iter, d_c1, d_lead, d_out);
        if (detect_cmd->parsed()) return run_detect(t_in, t_s, t_sigma, t_delta, t_tol, t_iter);
        if (bench->parsed()) return run_bench(b_config, b_out);
        if (check->parsed()) return run_check(c_sizes);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
