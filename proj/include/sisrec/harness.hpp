#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sisrec/estimator.hpp"
#include "sisrec/sequence.hpp"
#include "sisrec/sis.hpp"

namespace sisrec {

enum class RootMode { UnitCircle, Disk, Clustered, DftGrid };
enum class EstimatorMode { Core, Full, Causal };

RootMode root_mode_from_string(const std::string& s);
std::string to_string(RootMode m);
EstimatorMode estimator_mode_from_string(const std::string& s);
std::string to_string(EstimatorMode m);

struct BenchConfig {
    int trials = 100;
    std::vector<std::int64_t> n_list{27};
    std::vector<std::int64_t> s_list{1};
    double sigma = 0.1;
    double delta = 0.1;
    RootMode root_mode = RootMode::UnitCircle;
    std::uint64_t seed = 1;
    EstimatorMode estimator_mode = EstimatorMode::Core;
    std::string out_path;
    bool normalize = true;  // scale x so ||x||_{2n,2} = 1
    SolverConfig solver;
};

struct TrialRecord {
    int trial = 0;
    std::int64_t n = 0, s = 0;
    double sigma = 0.0;
    std::string mode;
    double mse = 0.0;
    bool converged = false;
    bool failed = false;
    std::string error;
};

/// Per-trial squared errors plus the empirical delta-risk quantile;
/// type1/type2 counts are filled by detection runs only.
struct RiskReport {
    std::vector<TrialRecord> records;
    std::vector<double> per_trial_mse;
    double delta = 0.1;
    double empirical_delta_risk = 0.0;
    int type1_errors = 0;
    int type2_errors = 0;
    int failures = 0;
};

/// Empirical (1-delta)-risk: the ceil((1-delta) T)-th order statistic.
double empirical_quantile(std::vector<double> values, double delta);

/// unit-circle: iid uniform phases; disk: uniform over the closed disk;
/// clustered: pairs at arc distance 1e-3; dft-grid: distinct nodes of T_n
/// (n required for dft-grid).
SisSpec generate_random_sis(std::int64_t s, RootMode mode, std::uint64_t seed,
                            std::int64_t n = 0);

/// Deterministic Monte Carlo estimation risk run over the (n, s) grid.
RiskReport run_monte_carlo(const BenchConfig& config);

/// Detection error counts at (s, n): `trials` runs under the null and
/// `trials` under the alternative scaled to ||x||_{2n,2} = r0.
RiskReport run_detection_mc(std::int64_t s, std::int64_t n, double sigma, double delta,
                            int trials, std::uint64_t seed, const SolverConfig& config = {});

/// The fixed dft-grid risk-curve protocol: spec on the T_729 grid with s = 2,
/// sigma = 0.1, weak fixed coefficients, median MSE of the core estimator at
/// n = 729 and n = 2187.
struct RateCheckResult {
    std::int64_t n_small = 729, n_big = 2187;
    double mse_small = 0.0, mse_big = 0.0, ratio = 0.0;
    int trials = 0;
};
RateCheckResult rate_check_protocol(std::uint64_t seed, int trials = 200);

/// One theory-check line: an inequality from the appendix/proposition suite,
/// its measured value and bound, and the verdict.
struct TheoryCheck {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool pass = false;
    std::string note;
};

struct TheoryReport {
    std::vector<TheoryCheck> checks;
    bool all_pass() const;
};

/// Runs the numbered inequality checks (kernel summation, oversampling,
/// certificates, convolution powers, Hilbert limit, Parseval) at the given
/// grid sizes. Failures become report entries, not exceptions.
TheoryReport theory_checks(const std::vector<std::int64_t>& sizes = {8, 32, 128});

/// CSV columns: trial,n,s,sigma,mode,mse,converged. UTF-8, '.' decimals, \n.
void export_csv(const RiskReport& report, const std::string& path);
void export_json(const RiskReport& report, const std::string& path);
RiskReport import_json(const std::string& path);

/// Worker cap: min(hardware, SISREC_THREADS if set).
int worker_count();

}  // namespace sisrec
