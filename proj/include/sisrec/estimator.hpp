#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sisrec/filter_oracle.hpp"
#include "sisrec/sequence.hpp"
#include "sisrec/sis.hpp"

namespace sisrec {

/// Euclidean projection of w onto {v : ||v||_1 <= R1, ||v||_inf <= Rinf}.
/// Phases are preserved; magnitudes are projected onto the real polytope
/// {u >= 0, u_i <= Rinf, sum u <= R1} via u_i = clamp(a_i - lambda, 0, Rinf)
/// with lambda located exactly on the sorted breakpoint grid.
std::vector<cplx> project_l1_linf(const std::vector<cplx>& w, double R1, double Rinf);

struct SolverConfig {
    int max_iter = 2000;
    double tol = 1e-8;  // relative objective decrease; 0 disables early stop
    bool restart = true;
    int lipschitz_iters = 30;
    std::uint64_t power_seed = 0x5EEDF17ULL;
    /// Optional warm start (e.g. the oracle filter's spectrum in tests);
    /// projected onto the feasible set before use.
    std::optional<std::vector<cplx>> initial_spectrum;
};

/// One constrained least-squares fit: filter taps in C_n(Z) (or, when causal,
/// on [lead, 2n+lead]), residual scored over the window [shift-n, shift+n].
struct FitProblem {
    ObservationWindow y;
    std::int64_t n = 0;
    FilterBudget budget;
    std::int64_t shift = 0;
    bool causal = false;
    std::int64_t lead = 0;  // prediction lead h >= 0 (causal only)
};

struct FitResult {
    TwoSidedSequence filter;
    std::vector<cplx> spectrum;
    double objective = 0.0;
    bool converged = false;
    int iterations = 0;
};

/// ||Delta^{-shift}[phi * y - y]||_{n,2}^2, the residual of the fit problem at
/// a given filter. Throws if phi violates the problem's support class.
double residual_objective(const TwoSidedSequence& phi, const FitProblem& problem);

/// Accelerated projected-gradient solve of the constrained least-squares fit
/// in the spectral domain. Deterministic given (problem, config); the result
/// is always feasible and its objective never exceeds the zero filter's.
FitResult fit_filter(const FitProblem& problem, const SolverConfig& config = {});

/// Core estimate on [-n, n] from observations on [-2n, 2n]. When fit_out is
/// given it receives the underlying fit (filter, spectrum, convergence).
TwoSidedSequence estimate_core(const ObservationWindow& y, std::int64_t s,
                               const SolverConfig& config = {}, FitResult* fit_out = nullptr);

/// Triadic multiscale plan: side intervals I^{(k,+-)} with n_k = n 3^{-k},
/// h_k = 2n(1 - 3^{-k}), k = 1..K, n_K = 9s.
struct ScaleInterval {
    std::int64_t k = 0;
    int sign = +1;
    std::int64_t n_k = 0;
    std::int64_t h_k = 0;
};

struct MultiscalePlan {
    std::int64_t n = 0, s = 0, K = 0;
    bool triadic = false;
    std::vector<ScaleInterval> intervals;
    // non-triadic cover (Remark-style): up to 3 sub-runs of half-width 2n0
    std::int64_t n0 = 0, s0 = 0;
    std::vector<std::int64_t> centers;
};

MultiscalePlan make_multiscale_plan(std::int64_t n, std::int64_t s);

/// Full-domain estimate on [-2n, 2n] from observations on [-2n, 2n]:
/// core + shrinking side intervals + raw observations on the outer fringe;
/// non-triadic (n, s) are handled by three overlapping covering runs whose
/// estimates are averaged on overlaps.
TwoSidedSequence estimate_full(const ObservationWindow& y, std::int64_t s,
                               const SolverConfig& config = {}, FitResult* core_fit_out = nullptr,
                               bool* all_converged = nullptr);

/// Causal estimate on the right half-window [0, 2n]; lead >= 0 constrains the
/// filter taps to lags >= lead (prediction).
TwoSidedSequence estimate_onesided(const ObservationWindow& y, std::int64_t s, double c1 = 1.0,
                                   const SolverConfig& config = {}, std::int64_t lead = 0,
                                   FitResult* fit_out = nullptr);

/// Extreme point of the core feasible set: an 18s-sparse spectrum with
/// constant magnitude c*/sqrt(2n+1) and random phases. Requires 18s <= 2n+1.
TwoSidedSequence sample_extreme_point(std::int64_t s, std::int64_t n, std::uint64_t seed);

}  // namespace sisrec
