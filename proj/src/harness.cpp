#include "sisrec/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "sisrec/detection.hpp"
#include "sisrec/filter_oracle.hpp"
#include "sisrec/rng.hpp"
#include "sisrec/spectral.hpp"

namespace sisrec {

using nlohmann::json;

RootMode root_mode_from_string(const std::string& s) {
    if (s == "unit-circle") return RootMode::UnitCircle;
    if (s == "disk") return RootMode::Disk;
    if (s == "clustered") return RootMode::Clustered;
    if (s == "dft-grid") return RootMode::DftGrid;
    throw std::invalid_argument("unknown root mode: " + s);
}

std::string to_string(RootMode m) {
    switch (m) {
        case RootMode::UnitCircle: return "unit-circle";
        case RootMode::Disk: return "disk";
        case RootMode::Clustered: return "clustered";
        case RootMode::DftGrid: return "dft-grid";
    }
    return "?";
}

EstimatorMode estimator_mode_from_string(const std::string& s) {
    if (s == "core") return EstimatorMode::Core;
    if (s == "full") return EstimatorMode::Full;
    if (s == "causal") return EstimatorMode::Causal;
    throw std::invalid_argument("unknown estimator mode: " + s);
}

std::string to_string(EstimatorMode m) {
    switch (m) {
        case EstimatorMode::Core: return "core";
        case EstimatorMode::Full: return "full";
        case EstimatorMode::Causal: return "causal";
    }
    return "?";
}

int worker_count() {
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("SISREC_THREADS")) {
        const int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

namespace {

/// Runs fn(i) for i in [0, count) on worker_count() threads; every index is
/// independent and seeded on its own, so the schedule cannot change results.
void parallel_for(int count, const std::function<void(int)>& fn) {
    const int workers = std::min(worker_count(), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& t : pool) t.join();
}

}  // namespace

double empirical_quantile(std::vector<double> values, double delta) {
    if (values.empty()) return 0.0;
    std::sort(values.begin(), values.end());
    const std::size_t T = values.size();
    std::size_t k = static_cast<std::size_t>(
        std::ceil((1.0 - delta) * static_cast<double>(T)));
    k = std::clamp<std::size_t>(k, 1, T);
    return values[k - 1];
}

SisSpec generate_random_sis(std::int64_t s, RootMode mode, std::uint64_t seed, std::int64_t n) {
    if (s < 1) throw std::invalid_argument("generate_random_sis: s must be >= 1");
    Rng rng(seed);
    std::vector<Root> roots;
    auto push_distinct = [&](cplx w) {
        for (const Root& r : roots)
            if (r.w == w) return false;
        roots.push_back(Root{w, 1});
        return true;
    };
    switch (mode) {
        case RootMode::UnitCircle:
            while (static_cast<std::int64_t>(roots.size()) < s) push_distinct(rng.unit_phase());
            break;
        case RootMode::Disk:
            while (static_cast<std::int64_t>(roots.size()) < s) {
                const double r = std::sqrt(rng.uniform());
                if (r < 1e-8) continue;
                push_distinct(r * rng.unit_phase());
            }
            break;
        case RootMode::Clustered:
            while (static_cast<std::int64_t>(roots.size()) < s) {
                const double th = 2.0 * std::numbers::pi * rng.uniform();
                push_distinct(cplx{std::cos(th), std::sin(th)});
                if (static_cast<std::int64_t>(roots.size()) < s)
                    push_distinct(cplx{std::cos(th + 1e-3), std::sin(th + 1e-3)});
            }
            break;
        case RootMode::DftGrid: {
            if (n < 1) throw std::invalid_argument("generate_random_sis: dft-grid mode needs n");
            const std::int64_t L = 2 * n + 1;
            if (s > L) throw std::invalid_argument("generate_random_sis: s exceeds grid size");
            std::vector<std::int64_t> idx(static_cast<std::size_t>(L));
            for (std::int64_t i = 0; i < L; ++i) idx[static_cast<std::size_t>(i)] = i;
            for (std::int64_t i = 0; i < s; ++i) {
                const std::int64_t j = i + rng.uniform_int(L - i);
                std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
            }
            for (std::int64_t i = 0; i < s; ++i) {
                const double th = 2.0 * std::numbers::pi *
                                  static_cast<double>(idx[static_cast<std::size_t>(i)]) /
                                  static_cast<double>(L);
                roots.push_back(Root{cplx{std::cos(th), std::sin(th)}, 1});
            }
            break;
        }
    }
    return SisSpec(std::move(roots));
}

namespace {

/// Random unit-coefficient member of X(spec) on [-W, W]; optionally scaled to
/// ||x||_{W,2} = 1.
TwoSidedSequence draw_signal(const SisSpec& spec, std::int64_t W, bool normalize, Rng& rng) {
    std::vector<cplx> c(static_cast<std::size_t>(spec.order()));
    double nrm = 0.0;
    for (auto& z : c) {
        z = rng.cgaussian();
        nrm += std::norm(z);
    }
    nrm = std::sqrt(nrm);
    for (auto& z : c) z /= nrm;
    TwoSidedSequence x = synthesize(spec, c, -W, W);
    if (normalize) {
        const double xn = seminorm(x, W, 2.0);
        if (xn > 0.0) x = x.scaled(cplx{1.0 / xn, 0.0});
    }
    return x;
}

}  // namespace

RiskReport run_monte_carlo(const BenchConfig& config) {
    if (config.trials < 1) throw std::invalid_argument("run_monte_carlo: trials must be >= 1");
    RiskReport report;
    report.delta = config.delta;

    const int pairs = static_cast<int>(config.n_list.size() * config.s_list.size());
    const int total = pairs * config.trials;
    report.records.resize(static_cast<std::size_t>(total));

    parallel_for(total, [&](int g) {
        const int pair = g / config.trials;
        const int trial = g % config.trials;
        const std::int64_t n = config.n_list[static_cast<std::size_t>(pair) / config.s_list.size()];
        const std::int64_t s = config.s_list[static_cast<std::size_t>(pair) % config.s_list.size()];
        TrialRecord rec;
        rec.trial = trial;
        rec.n = n;
        rec.s = s;
        rec.sigma = config.sigma;
        rec.mode = to_string(config.estimator_mode);
        try {
            const std::uint64_t trial_seed = mix_seed(config.seed, static_cast<std::uint64_t>(g));
            const SisSpec spec = generate_random_sis(s, config.root_mode, trial_seed, n);
            Rng crng(mix_seed(trial_seed, 1));
            const TwoSidedSequence x = draw_signal(spec, 2 * n, config.normalize, crng);
            const ObservationWindow y = add_noise(x, 2 * n, config.sigma, mix_seed(trial_seed, 2));

            TwoSidedSequence xh;
            std::int64_t wlo = 0, whi = 0;
            FitResult fit;
            bool conv = true;
            switch (config.estimator_mode) {
                case EstimatorMode::Core:
                    xh = estimate_core(y, s, config.solver, &fit);
                    conv = fit.converged;
                    wlo = -n;
                    whi = n;
                    break;
                case EstimatorMode::Full:
                    xh = estimate_full(y, s, config.solver, nullptr, &conv);
                    wlo = -2 * n;
                    whi = 2 * n;
                    break;
                case EstimatorMode::Causal:
                    xh = estimate_onesided(y, s, 1.0, config.solver, 0, &fit);
                    conv = fit.converged;
                    wlo = 0;
                    whi = 2 * n;
                    break;
            }
            double err = 0.0;
            for (std::int64_t t = wlo; t <= whi; ++t) err += std::norm(xh.at(t) - x.at(t));
            rec.mse = err / static_cast<double>(whi - wlo + 1);
            rec.converged = conv;
        } catch (const std::exception& e) {
            rec.failed = true;
            rec.error = e.what();
            rec.mse = std::nan("");
        }
        report.records[static_cast<std::size_t>(g)] = std::move(rec);
    });

    for (const TrialRecord& r : report.records) {
        if (r.failed)
            ++report.failures;
        else
            report.per_trial_mse.push_back(r.mse);
    }
    report.empirical_delta_risk = empirical_quantile(report.per_trial_mse, report.delta);
    return report;
}

RiskReport run_detection_mc(std::int64_t s, std::int64_t n, double sigma, double delta,
                            int trials, std::uint64_t seed, const SolverConfig& config) {
    RiskReport report;
    report.delta = delta;
    const DetectionSetup setup{n, s, sigma, delta};
    const double r0 = std::sqrt(setup.r0_squared());

    std::vector<int> t1(static_cast<std::size_t>(trials), 0), t2(static_cast<std::size_t>(trials), 0);
    std::vector<int> fail(static_cast<std::size_t>(trials), 0);
    parallel_for(trials, [&](int t) {
        try {
            // null: pure noise
            const std::uint64_t s0 = mix_seed(seed, 2 * static_cast<std::uint64_t>(t));
            const ObservationWindow y0 = add_noise(TwoSidedSequence::zero(), 2 * n, sigma, s0);
            if (detect(y0, s, sigma, delta, config).reject) t1[static_cast<std::size_t>(t)] = 1;
            // alternative: ||x||_{2n,2} = r0
            const std::uint64_t s1 = mix_seed(seed, 2 * static_cast<std::uint64_t>(t) + 1);
            const SisSpec spec = generate_random_sis(s, RootMode::UnitCircle, s1);
            Rng crng(mix_seed(s1, 1));
            TwoSidedSequence x = draw_signal(spec, 2 * n, /*normalize=*/true, crng);
            x = x.scaled(cplx{r0, 0.0});
            const ObservationWindow y1 = add_noise(x, 2 * n, sigma, mix_seed(s1, 2));
            if (!detect(y1, s, sigma, delta, config).reject) t2[static_cast<std::size_t>(t)] = 1;
        } catch (const std::exception&) {
            fail[static_cast<std::size_t>(t)] = 1;
        }
    });
    for (int t = 0; t < trials; ++t) {
        report.type1_errors += t1[static_cast<std::size_t>(t)];
        report.type2_errors += t2[static_cast<std::size_t>(t)];
        report.failures += fail[static_cast<std::size_t>(t)];
    }
    return report;
}

RateCheckResult rate_check_protocol(std::uint64_t seed, int trials) {
    // Pinned protocol: dft-grid spec with s = 2 on the T_729 grid, sigma = 0.1,
    // fixed weak coefficients (amplitude 5 sigma / sqrt(4 n + 1)), core
    // estimator at n = 729 and 3n = 2187, median MSE over `trials` runs each.
    RateCheckResult out;
    out.trials = trials;
    const std::int64_t s = 2;
    const double sigma = 0.1;
    const SisSpec spec = generate_random_sis(s, RootMode::DftGrid, mix_seed(seed, 0), out.n_small);
    const double amp = 5.0 * sigma / std::sqrt(static_cast<double>(4 * out.n_small + 1));
    Rng prng(mix_seed(seed, 1));
    std::vector<cplx> coeffs{amp * prng.unit_phase(), amp * prng.unit_phase()};

    SolverConfig sc;
    sc.max_iter = 300;
    sc.tol = 1e-9;

    double med[2] = {0.0, 0.0};
    const std::int64_t sizes[2] = {out.n_small, out.n_big};
    for (int which = 0; which < 2; ++which) {
        const std::int64_t nn = sizes[which];
        const TwoSidedSequence x = synthesize(spec, coeffs, -2 * nn, 2 * nn);
        std::vector<double> mses(static_cast<std::size_t>(trials), 0.0);
        parallel_for(trials, [&](int t) {
            const std::uint64_t ts =
                mix_seed(seed, 1000 + static_cast<std::uint64_t>(which) * 100000 +
                                  static_cast<std::uint64_t>(t));
            const ObservationWindow y = add_noise(x, 2 * nn, sigma, ts);
            const TwoSidedSequence xh = estimate_core(y, s, sc);
            double err = 0.0;
            for (std::int64_t u = -nn; u <= nn; ++u) err += std::norm(xh.at(u) - x.at(u));
            mses[static_cast<std::size_t>(t)] = err / static_cast<double>(2 * nn + 1);
        });
        std::sort(mses.begin(), mses.end());
        med[which] = mses[mses.size() / 2];
    }
    out.mse_small = med[0];
    out.mse_big = med[1];
    out.ratio = med[0] / med[1];
    return out;
}

bool TheoryReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const TheoryCheck& c) { return c.pass; });
}

namespace {

void add_check(TheoryReport& rep, const std::string& name, double measured, double bound,
               std::string note = {}) {
    rep.checks.push_back(TheoryCheck{name, measured, bound, measured <= bound, std::move(note)});
}

double harmonic(std::int64_t N) {
    double h = 0.0;
    for (std::int64_t k = 1; k <= N; ++k) h += 1.0 / static_cast<double>(k);
    return h;
}

}  // namespace

TheoryReport theory_checks(const std::vector<std::int64_t>& sizes) {
    TheoryReport rep;
    Rng rng(0xC0FFEE);
    const double pi = std::numbers::pi;

    // Parseval / inner-product preservation on random pairs
    {
        double worst = 0.0;
        for (std::int64_t n : sizes) {
            std::vector<cplx> uv(static_cast<std::size_t>(2 * n + 1)), vv(uv.size());
            for (auto& z : uv) z = rng.cgaussian();
            for (auto& z : vv) z = rng.cgaussian();
            TwoSidedSequence u(-n, uv), v(-n, vv);
            const cplx lhs = inner_product(u, v, n);
            const SpectrumVec fu = dft(u, n), fv = dft(v, n);
            cplx rhs{0.0, 0.0};
            for (std::size_t i = 0; i < fu.values.size(); ++i)
                rhs += std::conj(fu.values[i]) * fv.values[i];
            worst = std::max(worst, std::abs(lhs - rhs));
        }
        add_check(rep, "parseval-inner-product", worst, 1e-12);
    }

    // Dirichlet orthogonality: Dir_n on T_n = (2n+1, 0, ..., 0)
    {
        double worst = 0.0;
        for (std::int64_t n : sizes) {
            const std::vector<cplx> g = eval_grid(dirichlet(n), n);
            worst = std::max(worst, std::abs(g[0] - cplx{static_cast<double>(2 * n + 1), 0.0}));
            for (std::size_t k = 1; k < g.size(); ++k) worst = std::max(worst, std::abs(g[k]));
        }
        add_check(rep, "dirichlet-orthogonality", worst, 1e-9);
    }

    // Kernel grid summation (Dirichlet and Fejer bounds)
    {
        double worst_gap_dir = 1e300, worst_gap_fej = 1e300;
        bool ok = true;
        for (std::int64_t n : sizes) {
            const TwoSidedSequence dir = dirichlet(n), fej = fejer(n);
            for (std::int64_t N : sizes) {
                for (int rep_i = 0; rep_i < 32; ++rep_i) {
                    const cplx a = rng.unit_phase();
                    const double sd = kernel_grid_sum(dir, N, a);
                    const double bd = static_cast<double>(4 * n + 2) /
                                          static_cast<double>(2 * N + 1) +
                                      harmonic(N);
                    const double sf = kernel_grid_sum(fej, N, a);
                    const double bf = static_cast<double>(2 * n + 2) /
                                          static_cast<double>(2 * N + 1) +
                                      static_cast<double>(2 * N + 1) /
                                          static_cast<double>(2 * n + 2) * pi * pi / 6.0;
                    ok = ok && sd <= bd && sf <= bf;
                    worst_gap_dir = std::min(worst_gap_dir, bd - sd);
                    worst_gap_fej = std::min(worst_gap_fej, bf - sf);
                }
            }
        }
        add_check(rep, "kernel-sum-dirichlet", ok ? 0.0 : 1.0, 0.5,
                  "min slack " + std::to_string(worst_gap_dir));
        add_check(rep, "kernel-sum-fejer", ok ? 0.0 : 1.0, 0.5,
                  "min slack " + std::to_string(worst_gap_fej));
    }

    // |Fej+| summation equals |Fej| summation on every grid
    {
        double worst = 0.0;
        for (std::int64_t n : sizes) {
            const cplx a = rng.unit_phase();
            const double s1 = kernel_grid_sum(fejer(n), 2 * n, a);
            const double s2 = kernel_grid_sum(fejer_causal(n), 2 * n, a);
            worst = std::max(worst, std::abs(s1 - s2));
        }
        add_check(rep, "fejer-causal-modulus", worst, 1e-9);
    }

    // l1 oversampling (Dirichlet-kernel route)
    {
        bool ok = true;
        double min_gap = 1e300;
        for (std::int64_t n : sizes) {
            for (std::int64_t N : sizes) {
                if (N < n) continue;
                std::vector<cplx> pv(static_cast<std::size_t>(2 * n + 1));
                for (auto& z : pv) z = rng.cgaussian();
                const TwoSidedSequence phi(-n, pv);
                const double r1N = norm_l1(dft(phi, N).values);
                const double r1n = norm_l1(dft(phi, n).values);
                const double ratio = r1N / r1n;
                const double bound =
                    std::sqrt(static_cast<double>(2 * N + 1) / static_cast<double>(2 * n + 1)) *
                        std::log(std::numbers::e * static_cast<double>(N)) +
                    2.0 * std::sqrt(static_cast<double>(2 * n + 1) /
                                    static_cast<double>(2 * N + 1));
                ok = ok && ratio <= bound;
                min_gap = std::min(min_gap, bound - ratio);
            }
        }
        add_check(rep, "oversampling-l1", ok ? 0.0 : 1.0, 0.5,
                  "min slack " + std::to_string(min_gap));
    }

    // linf oversampling (Lebesgue-type bound)
    {
        bool ok = true;
        for (std::int64_t n : sizes) {
            for (std::int64_t N : sizes) {
                if (N < n) continue;
                std::vector<cplx> pv(static_cast<std::size_t>(2 * n + 1));
                for (auto& z : pv) z = rng.cgaussian();
                const TwoSidedSequence phi(-n, pv);
                const double ratio =
                    norm_linf(dft(phi, N).values) / norm_linf(dft(phi, n).values);
                const double bound = std::sqrt(static_cast<double>(2 * n + 1) /
                                               static_cast<double>(2 * N + 1)) *
                                     (harmonic(n) + 2.0);
                ok = ok && ratio <= bound;
            }
        }
        add_check(rep, "oversampling-linf", ok ? 0.0 : 1.0, 0.5);
    }

    // sparse linf oversampling
    {
        bool ok = true;
        for (std::int64_t n : sizes) {
            const std::int64_t N = 2 * n;
            for (int rep_i = 0; rep_i < 8; ++rep_i) {
                const std::int64_t js = std::min<std::int64_t>(6, 2 * n + 1);
                std::vector<std::int64_t> J;
                while (static_cast<std::int64_t>(J.size()) < js) {
                    const std::int64_t j = rng.uniform_int(2 * n + 1);
                    if (std::find(J.begin(), J.end(), j) == J.end()) J.push_back(j);
                }
                double worst = 0.0;
                for (std::int64_t k = 0; k <= 2 * N; k += std::max<std::int64_t>(1, N / 8))
                    worst = std::max(worst, sparse_oversampling_ratio(n, N, J, k));
                const double bound =
                    std::sqrt(static_cast<double>(2 * n + 1) / static_cast<double>(2 * N + 1)) *
                    (std::log(std::ceil(static_cast<double>(js) / 2.0)) + 3.0);
                ok = ok && worst <= bound;
            }
        }
        add_check(rep, "oversampling-linf-sparse", ok ? 0.0 : 1.0, 0.5);
    }

    // hybrid filter certificates + interpolant sup norm (spot sample)
    {
        double worst_ratio = 0.0, worst_sup = 0.0, worst_rep = 0.0;
        for (std::int64_t s = 1; s <= 4; ++s) {
            const SisSpec spec = generate_random_sis(
                s, s % 2 ? RootMode::UnitCircle : RootMode::Disk, 77 + static_cast<std::uint64_t>(s));
            const std::int64_t m = 9;
            const TwoSidedSequence phiX = hybrid_filter(spec, m);
            const FilterCertificates c = measure_certificates(phiX, 9 * m);
            const double cs = FilterBudget::c_star;
            worst_ratio = std::max({worst_ratio, c.l1 / (18.0 * cs * static_cast<double>(s)),
                                    c.l2 / (3.0 * cs * std::sqrt(2.0 * static_cast<double>(s))),
                                    c.linf / cs});
            const TwoSidedSequence rho =
                fejer_interpolant(projector_row_filter(spec, m), m, false);
            if (!rho.is_zero()) worst_sup = std::max(worst_sup, sup_on_circle(rho, 16));
            worst_rep = std::max(worst_rep, verify_reproducing(phiX, spec, 3, 9 * m));
        }
        add_check(rep, "hybrid-certificates", worst_ratio, 1.0);
        add_check(rep, "interpolant-sup-norm", worst_sup, 1.08 * pi * pi + 2.0);
        add_check(rep, "hybrid-reproducing", worst_rep, 1e-7);
    }

    // Hoelder chain on a constructed filter
    {
        const SisSpec spec = generate_random_sis(3, RootMode::UnitCircle, 5);
        const SpectrumVec w = dft(hybrid_filter(spec, 9), 81);
        double worst = 0.0;
        for (double p : {1.5, 2.0, 3.0}) {
            double lp = 0.0;
            for (const cplx& z : w.values) lp += std::pow(std::abs(z), p);
            const double rhs = norm_l1(w.values) * std::pow(norm_linf(w.values), p - 1.0);
            worst = std::max(worst, lp - rhs);
        }
        add_check(rep, "hoelder-chain", worst, 1e-12);
    }

    // convolution power constants c2 = 2, c3 = 3 sqrt(3), c4 = 8
    {
        const SisSpec spec = generate_random_sis(2, RootMode::UnitCircle, 11);
        const std::int64_t m = 8;
        const TwoSidedSequence phi = projector_row_filter(spec, m);
        const double R = std::sqrt(static_cast<double>(2 * m + 1)) * seminorm(phi, m, 2.0);
        const double cks[5] = {0.0, 1.0, 2.0, 3.0 * std::sqrt(3.0), 8.0};
        bool ok = true;
        double min_gap = 1e300;
        for (int k = 2; k <= 4; ++k) {
            const TwoSidedSequence pk = autoconvolve_power(phi, k);
            const double lhs = norm_l1(dft(pk, k * m).values) *
                               std::sqrt(static_cast<double>(2 * k * m + 1));
            const double bound = cks[k] * std::pow(R, k);
            ok = ok && lhs <= bound;
            min_gap = std::min(min_gap, bound - lhs);
        }
        add_check(rep, "convolution-powers", ok ? 0.0 : 1.0, 0.5,
                  "min slack " + std::to_string(min_gap));
    }

    // minimal-norm causal filter: m ||psi||^2 decreasing toward s^2
    {
        bool ok = true;
        std::string note;
        for (std::int64_t s = 1; s <= 2; ++s) {
            const SisSpec spec({Root{cplx{1.0, 0.0}, static_cast<int>(s)}});
            double prev = 1e300;
            for (std::int64_t m : {64, 256, 1024}) {
                const TwoSidedSequence psi = min_norm_causal_filter(spec, m, /*strict=*/true);
                const double v = static_cast<double>(m) * std::pow(seminorm(psi, m, 2.0), 2.0);
                ok = ok && v <= prev + 1e-9;
                prev = v;
                note += "s=" + std::to_string(s) + ",m=" + std::to_string(m) + ":" +
                        std::to_string(v) + " ";
            }
            const double lim = static_cast<double>(s * s);
            ok = ok && std::abs(prev - lim) <= 0.05 * lim;
        }
        add_check(rep, "hilbert-limit", ok ? 0.0 : 1.0, 0.5, note);
    }

    // extreme-point spectrum equalities
    {
        const std::int64_t s = 2, n = 27;
        const TwoSidedSequence phi = sample_extreme_point(s, n, 99);
        const FilterCertificates c = measure_certificates(phi, n);
        const double cs = FilterBudget::c_star;
        const double err = std::max(std::abs(c.l1 - 18.0 * cs * static_cast<double>(s)),
                                    std::abs(c.linf - cs));
        add_check(rep, "extreme-point-norms", err, 1e-10);
    }

    return rep;
}

void export_csv(const RiskReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_csv: cannot open " + path);
    out << "trial,n,s,sigma,mode,mse,converged\n";
    char buf[64];
    for (const TrialRecord& r : report.records) {
        std::snprintf(buf, sizeof(buf), "%.17g", r.sigma);
        out << r.trial << "," << r.n << "," << r.s << "," << buf << "," << r.mode << ",";
        std::snprintf(buf, sizeof(buf), "%.17g", r.mse);
        out << buf << "," << (r.converged ? 1 : 0) << "\n";
    }
    if (!out) throw std::runtime_error("export_csv: write failed for " + path);
}

namespace {

json report_to_json(const RiskReport& r) {
    json j;
    j["delta"] = r.delta;
    j["empirical_delta_risk"] = r.empirical_delta_risk;
    j["per_trial_mse"] = r.per_trial_mse;
    j["type1_errors"] = r.type1_errors;
    j["type2_errors"] = r.type2_errors;
    j["failures"] = r.failures;
    json recs = json::array();
    for (const TrialRecord& t : r.records)
        recs.push_back({{"trial", t.trial},
                        {"n", t.n},
                        {"s", t.s},
                        {"sigma", t.sigma},
                        {"mode", t.mode},
                        {"mse", t.mse},
                        {"converged", t.converged},
                        {"failed", t.failed},
                        {"error", t.error}});
    j["records"] = recs;
    return j;
}

}  // namespace

void export_json(const RiskReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_json: cannot open " + path);
    out << report_to_json(report).dump(2) << "\n";
}

RiskReport import_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("import_json: cannot open " + path);
    json j;
    in >> j;
    RiskReport r;
    r.delta = j.at("delta").get<double>();
    r.empirical_delta_risk = j.at("empirical_delta_risk").get<double>();
    r.per_trial_mse = j.at("per_trial_mse").get<std::vector<double>>();
    r.type1_errors = j.at("type1_errors").get<int>();
    r.type2_errors = j.at("type2_errors").get<int>();
    r.failures = j.at("failures").get<int>();
    for (const auto& t : j.at("records")) {
        TrialRecord rec;
        rec.trial = t.at("trial").get<int>();
        rec.n = t.at("n").get<std::int64_t>();
        rec.s = t.at("s").get<std::int64_t>();
        rec.sigma = t.at("sigma").get<double>();
        rec.mode = t.at("mode").get<std::string>();
        rec.mse = t.at("mse").is_null() ? std::nan("") : t.at("mse").get<double>();
        rec.converged = t.at("converged").get<bool>();
        rec.failed = t.at("failed").get<bool>();
        rec.error = t.at("error").get<std::string>();
        r.records.push_back(std::move(rec));
    }
    return r;
}

}  // namespace sisrec
