#include "sisrec/filter_oracle.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sisrec/rng.hpp"

namespace sisrec {

namespace {

constexpr double kRankTol = 1e-10;  // relative to the largest singular value

cplx grid_node(std::int64_t k, std::int64_t n) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) /
                      static_cast<double>(2 * n + 1);
    return cplx{std::cos(th), std::sin(th)};
}

/// fej_m(omega) = (1/(m+1)) (sin((m+1) omega/2) / sin(omega/2))^2
double fejer_closed_form(std::int64_t m, double omega) {
    const double h = 0.5 * omega;
    const double sh = std::sin(h);
    if (std::abs(sh) < 1e-12) return static_cast<double>(m + 1);
    const double r = std::sin((m + 1) * h) / sh;
    return r * r / static_cast<double>(m + 1);
}

}  // namespace

FilterBudget FilterBudget::two_sided(std::int64_t s, std::int64_t n) {
    const double sd = static_cast<double>(s);
    return FilterBudget{n, 18.0 * c_star * sd, 3.0 * c_star * std::sqrt(2.0 * sd), c_star};
}

FilterBudget FilterBudget::causal(std::int64_t s, std::int64_t n, double c1) {
    const double sd = static_cast<double>(s);
    const double cap = c1 * sd * sd * std::log(std::numbers::e * static_cast<double>(n));
    return FilterBudget{n, c_star * cap, c_star * std::sqrt(cap), c_star};
}

FilterCertificates measure_certificates(const TwoSidedSequence& phi, std::int64_t n) {
    const SpectrumVec w = dft(phi, n);
    const double r = std::sqrt(static_cast<double>(2 * n + 1));
    return FilterCertificates{norm_l1(w.values) * r, norm_l2(w.values) * r,
                              norm_linf(w.values) * r};
}

FilterCertificates measure_certificates_causal(const TwoSidedSequence& phi, std::int64_t n) {
    return measure_certificates(phi.delayed(-n), n);
}

namespace {

/// Slice basis of X(spec) sampled on t in [t_lo, t_hi], one column per basis
/// signal, each root block rescaled by a power of w so entries stay bounded,
/// then column-normalized. Rescaling stays inside X.
Eigen::MatrixXcd slice_basis(const SisSpec& spec, std::int64_t t_lo, std::int64_t t_hi) {
    const std::int64_t len = t_hi - t_lo + 1;
    Eigen::MatrixXcd B(len, spec.order());
    std::int64_t col = 0;
    for (const Root& r : spec.roots()) {
        // anchor the power at whichever end |w^t| peaks
        const std::int64_t t_peak = (std::abs(r.w) <= 1.0) ? t_lo : t_hi;
        for (int j = 0; j < r.multiplicity; ++j, ++col) {
            for (std::int64_t t = t_lo; t <= t_hi; ++t) {
                const double td = static_cast<double>(t);
                const cplx wt = std::pow(r.w, cplx{static_cast<double>(t - t_peak), 0.0});
                const double tj = (j == 0) ? 1.0 : std::pow(td, j);
                B(t - t_lo, col) = tj * wt;
            }
            const double nrm = B.col(col).norm();
            if (nrm > 0.0) B.col(col) /= nrm;
        }
    }
    return B;
}

}  // namespace

TwoSidedSequence projector_row_filter(const SisSpec& spec, std::int64_t m) {
    const std::int64_t s = spec.order();
    if (m < s - 1) throw std::invalid_argument("projector_row_filter: requires m >= s - 1");

    Eigen::MatrixXcd B = slice_basis(spec, 0, m);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(B, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    std::int64_t rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
        if (sv(i) > kRankTol * sv(0)) ++rank;
    if (rank < s)
        throw ConditioningError("projector_row_filter: slice basis numerically rank-deficient for roots " +
                                spec.describe());

    const Eigen::MatrixXcd U = svd.matrixU().leftCols(rank);
    const Eigen::MatrixXcd P = U * U.adjoint();

    // minimal-norm row, ties broken by the smallest index
    std::int64_t t0 = 0;
    double best = P.row(0).norm();
    for (std::int64_t t = 1; t <= m; ++t) {
        const double rn = P.row(t).norm();
        if (rn < best - 1e-12) {
            best = rn;
            t0 = t;
        }
    }

    // x_{t0} = sum_tau P(t0, tau) x_tau  =>  phi_j = P(t0, t0 - j), support [t0-m, t0]
    std::vector<cplx> v(static_cast<std::size_t>(m + 1));
    for (std::int64_t j = t0 - m; j <= t0; ++j)
        v[static_cast<std::size_t>(j - (t0 - m))] = P(t0, t0 - j);
    return TwoSidedSequence(t0 - m, std::move(v)).trimmed();
}

TwoSidedSequence autoconvolve_power(const TwoSidedSequence& phi, int k) {
    if (k < 1) throw std::invalid_argument("autoconvolve_power: k must be >= 1");
    TwoSidedSequence acc = phi;
    for (int i = 1; i < k; ++i) acc = convolve(acc, phi);
    return acc;
}

SupportSet approx_support(const TwoSidedSequence& phi, std::int64_t n) {
    const std::vector<cplx> g = eval_grid(phi, n);
    SupportSet out;
    out.n = n;
    for (std::int64_t k = 0; k <= 2 * n; ++k)
        if (std::abs(g[static_cast<std::size_t>(k)]) >= 1.0) out.indices.push_back(k);
    return out;
}

TwoSidedSequence fejer_interpolant(const TwoSidedSequence& phi, std::int64_t m, bool causal) {
    const std::int64_t n = 9 * m;
    const SupportSet S = approx_support(phi, n);
    if (S.empty()) return TwoSidedSequence::zero();

    const std::vector<cplx> g = eval_grid(phi, n);
    const auto count = static_cast<Eigen::Index>(S.size());
    const double K = static_cast<double>(5 * m + 1);

    // target values 1/phi(w)^2 and Gram of the (possibly shifted) Fejer
    // translates; the shift only twists phases, so the Gram stays Hermitian PD.
    Eigen::VectorXcd target(count);
    Eigen::MatrixXcd M(count, count);
    for (Eigen::Index i = 0; i < count; ++i) {
        const cplx gi = g[static_cast<std::size_t>(S.indices[i])];
        target(i) = 1.0 / (gi * gi);
        for (Eigen::Index j = 0; j < count; ++j) {
            const std::int64_t dk = S.indices[i] - S.indices[j];
            const double om = 2.0 * std::numbers::pi * static_cast<double>(dk) /
                              static_cast<double>(2 * n + 1);
            cplx val = fejer_closed_form(5 * m, om) / K;
            if (causal) {
                // Fej+(z) = z^{-5m} Fej(z) in the z-transform convention
                const double ph = -5.0 * static_cast<double>(m) * om;
                val *= cplx{std::cos(ph), std::sin(ph)};
            }
            M(i, j) = val;
        }
    }

    Eigen::LDLT<Eigen::MatrixXcd> ldlt(M);
    Eigen::VectorXcd d = ldlt.solve(target);
    for (int refine = 0; refine < 2; ++refine) d += ldlt.solve(target - M * d);

    // rho = sum_j d_j * translate(kernel, w_j) / (5m+1); translate by w
    // modulates the coefficients by w^tau.
    const TwoSidedSequence kernel = causal ? fejer_causal(5 * m) : fejer(5 * m);
    std::vector<cplx> v(kernel.length(), cplx{0.0, 0.0});
    for (Eigen::Index j = 0; j < count; ++j) {
        const cplx w = grid_node(S.indices[j], n);
        cplx wt = std::pow(w, cplx{static_cast<double>(kernel.lo()), 0.0});
        for (std::int64_t tau = kernel.lo(); tau <= kernel.hi(); ++tau) {
            v[static_cast<std::size_t>(tau - kernel.lo())] += d(j) * kernel.at(tau) * wt / K;
            wt *= w;
        }
    }
    return TwoSidedSequence(kernel.lo(), std::move(v));
}

namespace {

TwoSidedSequence hybrid_from_base(const TwoSidedSequence& base, std::int64_t m, bool causal) {
    const TwoSidedSequence phi2 = convolve(base, base);
    const TwoSidedSequence phi4 = convolve(phi2, phi2);
    const TwoSidedSequence rho = fejer_interpolant(base, m, causal);
    return phi2 + convolve(rho, phi2 - phi4);
}

}  // namespace

TwoSidedSequence hybrid_filter(const SisSpec& spec, std::int64_t m) {
    if (m < spec.order() - 1) throw std::invalid_argument("hybrid_filter: requires m >= s - 1");
    return hybrid_from_base(projector_row_filter(spec, m), m, /*causal=*/false);
}

TwoSidedSequence min_norm_causal_filter(const SisSpec& spec, std::int64_t m, bool strict) {
    const std::int64_t s = spec.order();
    if (m < s) throw std::invalid_argument("min_norm_causal_filter: requires m >= s");
    if (!spec.quasi_stable())
        throw std::invalid_argument("min_norm_causal_filter: spec must be quasi-stable, roots " +
                                    spec.describe());

    // Reproduction at t = 0 for a basis of X: sum_tau phi_tau x_{-tau} = x_0.
    // Shift-invariance then gives phi * x = x everywhere on X.
    const std::int64_t lo_tap = strict ? 1 : 0;
    const std::int64_t ntaps = m - lo_tap + 1;
    Eigen::MatrixXcd A(spec.order(), ntaps);
    Eigen::VectorXcd b(spec.order());
    std::int64_t row = 0;
    for (const Root& r : spec.roots()) {
        for (int j = 0; j < r.multiplicity; ++j, ++row) {
            // basis signal q(t) w^t sampled at t = -tau, rescaled by w^m so
            // entries stay bounded on the past window
            for (std::int64_t tau = lo_tap; tau <= m; ++tau) {
                const double td = static_cast<double>(-tau);
                const cplx wt = std::pow(r.w, cplx{static_cast<double>(m - tau), 0.0});
                const double tj = (j == 0) ? 1.0 : std::pow(td, j);
                A(row, tau - lo_tap) = tj * wt;
            }
            const cplx x0 = (j == 0) ? std::pow(r.w, cplx{static_cast<double>(m), 0.0})
                                     : cplx{0.0, 0.0};
            b(row) = x0;
            const double nrm = std::sqrt(A.row(row).squaredNorm() + std::norm(x0));
            if (nrm > 0.0) {
                A.row(row) /= nrm;
                b(row) /= nrm;
            }
        }
    }

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(kRankTol);
    const Eigen::VectorXcd phi = svd.solve(b);  // pseudoinverse: minimum-norm solution

    // Solutions must exist: check the residual of the constraint system.
    const double resid = (A * phi - b).norm();
    if (resid > 1e-6)
        throw ConditioningError("min_norm_causal_filter: constraint system unsolvable for roots " +
                                spec.describe());

    std::vector<cplx> v(static_cast<std::size_t>(ntaps));
    for (std::int64_t i = 0; i < ntaps; ++i) v[static_cast<std::size_t>(i)] = phi(i);
    return TwoSidedSequence(lo_tap, std::move(v));
}

TwoSidedSequence hybrid_filter_causal(const SisSpec& spec, std::int64_t m, double /*c1*/) {
    const TwoSidedSequence base = min_norm_causal_filter(spec, 2 * m, /*strict=*/false);
    return hybrid_from_base(base, m, /*causal=*/true);
}

namespace {

/// Random x in X with unit-normalized coefficients, each root block rescaled
/// (inside X) so the synthesis stays bounded on [t_lo, t_hi].
TwoSidedSequence random_member_scaled(const SisSpec& spec, std::int64_t t_lo, std::int64_t t_hi,
                                      Rng& rng) {
    std::vector<cplx> c(static_cast<std::size_t>(spec.order()));
    double nrm = 0.0;
    for (auto& z : c) {
        z = rng.cgaussian();
        nrm += std::norm(z);
    }
    nrm = std::sqrt(nrm);
    for (auto& z : c) z /= nrm;

    std::vector<cplx> v(static_cast<std::size_t>(t_hi - t_lo + 1), cplx{0.0, 0.0});
    std::size_t ci = 0;
    for (const Root& r : spec.roots()) {
        const std::int64_t t_peak = (std::abs(r.w) <= 1.0) ? t_lo : t_hi;
        for (int j = 0; j < r.multiplicity; ++j, ++ci) {
            for (std::int64_t t = t_lo; t <= t_hi; ++t) {
                const double td = static_cast<double>(t);
                const cplx wt = std::pow(r.w, cplx{static_cast<double>(t - t_peak), 0.0});
                const double tj = (j == 0) ? 1.0 : std::pow(td, j);
                v[static_cast<std::size_t>(t - t_lo)] += c[ci] * tj * wt;
            }
        }
    }
    return TwoSidedSequence(t_lo, std::move(v));
}

}  // namespace

double verify_reproducing(const TwoSidedSequence& phi, const SisSpec& spec, int trials,
                          std::int64_t window, std::uint64_t seed) {
    Rng rng(seed);
    double worst = 0.0;
    for (int tr = 0; tr < trials; ++tr) {
        const TwoSidedSequence x =
            random_member_scaled(spec, -window - phi.hi(), window - phi.lo(), rng);
        const TwoSidedSequence px = convolve(phi, x);
        // Per-point backward-relative residual: the deviation at t is compared
        // with the largest member value the convolution at t actually touches.
        // Roots inside the disk make any global normalization vacuous (the
        // member spans |w|^{-support} in magnitude across the window).
        for (std::int64_t t = -window; t <= window; ++t) {
            const double num = std::abs(px.at(t) - x.at(t));
            double den = std::abs(x.at(t));
            for (std::int64_t u = t - phi.hi(); u <= t - phi.lo(); ++u)
                den = std::max(den, std::abs(x.at(u)));
            if (den > 0.0)
                worst = std::max(worst, num / den);
            else
                worst = std::max(worst, num);
        }
    }
    return worst;
}

}  // namespace sisrec
