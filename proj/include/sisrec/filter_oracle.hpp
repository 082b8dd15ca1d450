#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "sisrec/sequence.hpp"
#include "sisrec/sis.hpp"
#include "sisrec/spectral.hpp"

namespace sisrec {

/// Norm caps on ||F_n phi||_p * sqrt(2n+1) for p = 1, 2, inf.
struct FilterBudget {
    std::int64_t n = 0;
    double R1 = 0.0;
    double R2 = 0.0;
    double Rinf = 0.0;

    static constexpr double c_star = 2.16 * std::numbers::pi * std::numbers::pi + 6.0;

    /// Two-sided budget at order s: (18 c* s, 3 c* sqrt(2s), c*).
    static FilterBudget two_sided(std::int64_t s, std::int64_t n);

    /// Causal budget at order s: (c1 c* s^2 log(e n), c* sqrt(c1 s^2 log(e n)), c*).
    static FilterBudget causal(std::int64_t s, std::int64_t n, double c1 = 1.0);
};

/// Grid nodes of T_n where |phi| >= 1 (boundary included, no tolerance).
struct SupportSet {
    std::int64_t n = 0;
    std::vector<std::int64_t> indices;  // sorted, in {0..2n}

    bool empty() const { return indices.empty(); }
    std::size_t size() const { return indices.size(); }
};

/// Measured norms ||F_n phi||_p * sqrt(2n+1); the certificates block.
struct FilterCertificates {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

FilterCertificates measure_certificates(const TwoSidedSequence& phi, std::int64_t n);

/// Norms of the one-sided DFT F+_{2n}[phi] = F_n[Delta^{-n} phi] for a filter
/// supported on [0, 2n], times sqrt(2n+1).
FilterCertificates measure_certificates_causal(const TwoSidedSequence& phi, std::int64_t n);

/// Reproducing filter in C_m(Z) with ||phi||_2^2 <= 2s/(2m+1): the minimal-norm
/// row of the orthogonal projector onto the slice of X on {0..m}, time-reversed
/// and recentered. Requires m >= s - 1.
TwoSidedSequence projector_row_filter(const SisSpec& spec, std::int64_t m);

/// k-fold convolution power phi * phi * ... * phi (k >= 1).
TwoSidedSequence autoconvolve_power(const TwoSidedSequence& phi, int k);

SupportSet approx_support(const TwoSidedSequence& phi, std::int64_t n);

/// Trigonometric interpolant rho in C_{5m}(Z) (or C_{10m}^+(Z) when causal)
/// with rho(w) phi^2(w) = 1 on the approximate support S_n(phi), n = 9m,
/// expanded in Fejer-kernel translates. The translate coefficients solve the
/// positive-definite Gram system; with a single support node this reduces to
/// the plain Fejer interpolation formula. Empty support yields the zero
/// polynomial.
TwoSidedSequence fejer_interpolant(const TwoSidedSequence& phi, std::int64_t m,
                                   bool causal = false);

/// Two-sided hybrid filter in C_{9m}(Z) reproducing X(spec):
/// phiX(z) = phi^2(z) + rho(z) (phi^2(z) - phi^4(z)). Requires m >= s - 1.
TwoSidedSequence hybrid_filter(const SisSpec& spec, std::int64_t m);

/// Minimal-2-norm one-sided reproducing filter with taps on {0..m}
/// (strict: {1..m}). Requires m >= s and a quasi-stable spec.
TwoSidedSequence min_norm_causal_filter(const SisSpec& spec, std::int64_t m,
                                        bool strict = false);

/// Causal hybrid filter in C_{18m}^+(Z), built from the minimal-norm causal
/// base filter on {0..2m} and the causal Fejer interpolant. c1 scales the
/// reported l1 budget only.
TwoSidedSequence hybrid_filter_causal(const SisSpec& spec, std::int64_t m, double c1 = 1.0);

/// Max over random unit-coefficient x in X(spec) and t in [-window, window]
/// of |(phi * x - x)_t| relative to the largest member value entering the
/// convolution at t. Root blocks are rescaled inside X so the synthesis stays
/// representable for |w| != 1; the per-point normalization keeps the check
/// meaningful for roots strictly inside the disk.
double verify_reproducing(const TwoSidedSequence& phi, const SisSpec& spec, int trials,
                          std::int64_t window, std::uint64_t seed = 12345);

}  // namespace sisrec
