#include "sisrec/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sisrec/rng.hpp"
#include "sisrec/spectral.hpp"

namespace sisrec {

std::vector<cplx> project_l1_linf(const std::vector<cplx>& w, double R1, double Rinf) {
    const std::size_t d = w.size();
    std::vector<cplx> out(d, cplx{0.0, 0.0});
    if (R1 <= 0.0 || Rinf <= 0.0) return out;

    std::vector<double> a(d);
    for (std::size_t i = 0; i < d; ++i) a[i] = std::abs(w[i]);

    auto clamped_sum = [&](double lam) {
        double s = 0.0;
        for (double ai : a) s += std::clamp(ai - lam, 0.0, Rinf);
        return s;
    };

    double lam = 0.0;
    if (clamped_sum(0.0) > R1) {
        // S(lam) is piecewise linear and nonincreasing with breakpoints at
        // a_i and a_i - Rinf; locate the crossing segment, then solve exactly.
        std::vector<double> knots;
        knots.reserve(2 * d + 1);
        knots.push_back(0.0);
        for (double ai : a) {
            if (ai > 0.0) knots.push_back(ai);
            if (ai - Rinf > 0.0) knots.push_back(ai - Rinf);
        }
        std::sort(knots.begin(), knots.end());
        std::size_t lo = 0, hi = knots.size() - 1;  // S(knots[lo]) > R1 >= S(end)
        while (lo + 1 < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (clamped_sum(knots[mid]) > R1)
                lo = mid;
            else
                hi = mid;
        }
        const double s_lo = clamped_sum(knots[lo]), s_hi = clamped_sum(knots[hi]);
        if (s_lo <= s_hi + 0.0)  // flat segment; any point works
            lam = knots[hi];
        else
            lam = knots[lo] + (s_lo - R1) * (knots[hi] - knots[lo]) / (s_lo - s_hi);
        lam = std::max(lam, 0.0);
    }

    for (std::size_t i = 0; i < d; ++i) {
        const double u = std::clamp(a[i] - lam, 0.0, Rinf);
        out[i] = (a[i] > 0.0) ? w[i] * (u / a[i]) : cplx{0.0, 0.0};
    }
    return out;
}

namespace {

/// Matrix-free residual operator of one fit problem, FFT-applied.
/// A w = [conv(filter(w), y)]_t over the scored window, filter(w) = the
/// sequence with spectrum w placed on [tap_shift - n, tap_shift + n].
class ResidualOp {
public:
    ResidualOp(const FitProblem& p)
        : n_(p.n),
          tap_shift_(p.causal ? p.n + p.lead : 0),
          scored_lo_(p.shift - p.n),
          y_lo_(p.y.y.lo()),
          y_hi_(p.y.y.hi()) {
        const std::size_t dim = static_cast<std::size_t>(2 * n_ + 1);
        const std::size_t conv_len = dim + p.y.y.length() - 1;
        F_ = next_fast_fft_size(conv_len);
        Fy_.assign(F_, cplx{0.0, 0.0});
        std::copy(p.y.y.values().begin(), p.y.y.values().end(), Fy_.begin());
        fft_forward(Fy_);
        const TwoSidedSequence yrev = p.y.y.conj_reversed();
        Fyrev_.assign(F_, cplx{0.0, 0.0});
        std::copy(yrev.values().begin(), yrev.values().end(), Fyrev_.begin());
        fft_forward(Fyrev_);
        b_.resize(dim);
        for (std::int64_t i = 0; i < 2 * n_ + 1; ++i)
            b_[static_cast<std::size_t>(i)] = p.y.y.at(scored_lo_ + i);
        scratch_.resize(F_);
    }

    std::size_t dim() const { return static_cast<std::size_t>(2 * n_ + 1); }
    const std::vector<cplx>& b() const { return b_; }

    /// r = A w (scored-window values of conv(filter, y)).
    void apply(const std::vector<cplx>& w, std::vector<cplx>& r) {
        TwoSidedSequence phi = idft(SpectrumVec{n_, w});
        std::fill(scratch_.begin(), scratch_.end(), cplx{0.0, 0.0});
        std::copy(phi.values().begin(), phi.values().end(), scratch_.begin());
        fft_forward(scratch_);
        for (std::size_t i = 0; i < F_; ++i) scratch_[i] *= Fy_[i] * inv_f();
        fft_inverse(scratch_);
        // conv support starts at (-n + tap_shift) + y_lo; slicing the delayed
        // convolution at scored_lo is reading the raw one at scored_lo - tap_shift
        const std::int64_t conv_lo = -n_ + y_lo_;
        r.resize(dim());
        for (std::int64_t i = 0; i < 2 * n_ + 1; ++i) {
            const std::int64_t idx = scored_lo_ - tap_shift_ + i - conv_lo;
            r[static_cast<std::size_t>(i)] =
                (idx >= 0 && idx < static_cast<std::int64_t>(conv_len()))
                    ? scratch_[static_cast<std::size_t>(idx)]
                    : cplx{0.0, 0.0};
        }
    }

    /// g = A^H r.
    void apply_adjoint(const std::vector<cplx>& r, std::vector<cplx>& g) {
        std::fill(scratch_.begin(), scratch_.end(), cplx{0.0, 0.0});
        std::copy(r.begin(), r.end(), scratch_.begin());
        fft_forward(scratch_);
        for (std::size_t i = 0; i < F_; ++i) scratch_[i] *= Fyrev_[i] * inv_f();
        fft_inverse(scratch_);
        // correlation support starts at (scored_lo - tap_shift) - y_hi;
        // truncate to [-n, n] and transform
        const std::int64_t corr_lo = scored_lo_ - tap_shift_ - y_hi_;
        std::vector<cplx> u(dim(), cplx{0.0, 0.0});
        for (std::int64_t t = -n_; t <= n_; ++t) {
            const std::int64_t idx = t - corr_lo;
            if (idx >= 0 && idx < static_cast<std::int64_t>(F_))
                u[static_cast<std::size_t>(t + n_)] = scratch_[static_cast<std::size_t>(idx)];
        }
        SpectrumVec s = dft(TwoSidedSequence(-n_, std::move(u)), n_);
        g = std::move(s.values);
    }

    TwoSidedSequence filter_of(const std::vector<cplx>& w) const {
        return idft(SpectrumVec{n_, w}).delayed(tap_shift_);
    }

private:
    double inv_f() const { return 1.0 / static_cast<double>(F_); }
    std::size_t conv_len() const { return static_cast<std::size_t>(2 * n_ + 1) +
                                          static_cast<std::size_t>(y_hi_ - y_lo_ + 1) - 1; }

    std::int64_t n_, tap_shift_, scored_lo_, y_lo_, y_hi_;
    std::size_t F_ = 0;
    std::vector<cplx> Fy_, Fyrev_, b_, scratch_;
};

double sq_norm_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::norm(a[i] - b[i]);
    return s;
}

}  // namespace

double residual_objective(const TwoSidedSequence& phi, const FitProblem& problem) {
    const TwoSidedSequence t = phi.trimmed();
    if (problem.causal) {
        if (!t.is_zero() && (t.lo() < problem.lead || t.hi() > 2 * problem.n + problem.lead))
            throw std::invalid_argument("residual_objective: filter not in the causal tap window");
    } else if (!t.in_window(problem.n)) {
        throw std::invalid_argument("residual_objective: filter support exceeds C_n(Z)");
    }
    const TwoSidedSequence r = convolve(phi, problem.y.y) - problem.y.y;
    double s = 0.0;
    for (std::int64_t i = -problem.n; i <= problem.n; ++i) s += std::norm(r.at(problem.shift + i));
    return s;
}

FitResult fit_filter(const FitProblem& problem, const SolverConfig& config) {
    ResidualOp op(problem);
    const std::size_t d = op.dim();
    const double scale = std::sqrt(static_cast<double>(2 * problem.n + 1));
    const double R1 = problem.budget.R1 / scale;
    const double Rinf = problem.budget.Rinf / scale;

    FitResult out;
    out.spectrum.assign(d, cplx{0.0, 0.0});

    const double f_zero = [&] {
        double s = 0.0;
        for (const cplx& z : op.b()) s += std::norm(z);
        return s;
    }();

    // degenerate budget: the zero filter is the only sensible point
    if (R1 < 1e-300 || Rinf < 1e-300) {
        out.filter = TwoSidedSequence::zero();
        out.objective = f_zero;
        out.converged = true;
        return out;
    }

    // Lipschitz constant of the normal operator by power iteration
    Rng prng(config.power_seed);
    std::vector<cplx> v(d), Av, AHAv;
    for (auto& z : v) z = prng.cgaussian();
    double L = 0.0;
    for (int i = 0; i < config.lipschitz_iters; ++i) {
        op.apply(v, Av);
        op.apply_adjoint(Av, AHAv);
        L = norm_l2(AHAv);
        if (L == 0.0) break;
        for (std::size_t j = 0; j < d; ++j) v[j] = AHAv[j] / L;
    }
    if (L == 0.0) {
        out.filter = TwoSidedSequence::zero();
        out.objective = f_zero;
        out.converged = true;
        return out;
    }
    const double step = 1.0 / (1.05 * L);

    std::vector<cplx> w(d, cplx{0.0, 0.0});
    if (config.initial_spectrum) {
        if (config.initial_spectrum->size() != d)
            throw std::invalid_argument("fit_filter: initial_spectrum has wrong dimension");
        w = project_l1_linf(*config.initial_spectrum, R1, Rinf);
    }
    std::vector<cplx> z = w, g, r, w_new(d), best_w = w;

    auto objective = [&](const std::vector<cplx>& ww) {
        op.apply(ww, r);
        return sq_norm_diff(r, op.b());
    };

    double f_prev = objective(w);
    double best_f = f_prev;
    double theta = 1.0;
    int stall = 0;

    auto grad_at = [&](const std::vector<cplx>& zz) {
        op.apply(zz, r);
        for (std::size_t i = 0; i < d; ++i) r[i] -= op.b()[i];
        op.apply_adjoint(r, g);
    };

    int it = 0;
    for (; it < config.max_iter; ++it) {
        grad_at(z);
        for (std::size_t i = 0; i < d; ++i) w_new[i] = z[i] - step * g[i];
        w_new = project_l1_linf(w_new, R1, Rinf);
        double f = objective(w_new);
        if (config.restart && f > f_prev) {
            // adaptive restart: drop momentum and step from the last iterate
            theta = 1.0;
            z = w;
            grad_at(z);
            for (std::size_t i = 0; i < d; ++i) w_new[i] = z[i] - step * g[i];
            w_new = project_l1_linf(w_new, R1, Rinf);
            f = objective(w_new);
        }
        const double theta_new = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * theta * theta));
        const double mom = (theta - 1.0) / theta_new;
        for (std::size_t i = 0; i < d; ++i) z[i] = w_new[i] + mom * (w_new[i] - w[i]);
        std::swap(w, w_new);
        theta = theta_new;
        if (f < best_f) {
            best_f = f;
            best_w = w;
        }
        // the objective cannot be meaningfully improved below fp noise
        if (f <= 1e-14 * f_zero) {
            ++it;
            break;
        }
        const bool stalled = std::abs(f_prev - f) <= config.tol * std::max(f_prev, 1e-300);
        f_prev = f;
        if (config.tol > 0.0) {
            stall = stalled ? stall + 1 : 0;
            if (stall >= 3) {
                ++it;
                break;
            }
        }
    }

    out.converged = (it < config.max_iter) || (best_f <= config.tol * f_zero);
    out.iterations = it;
    if (best_f <= f_zero) {
        out.spectrum = best_w;
        out.objective = best_f;
    } else {  // never return worse than the zero filter
        out.spectrum.assign(d, cplx{0.0, 0.0});
        out.objective = f_zero;
    }
    out.filter = op.filter_of(out.spectrum).trimmed();
    return out;
}

namespace {

std::int64_t half_width_of(const ObservationWindow& y, const char* who) {
    if (y.N % 2 != 0)
        throw std::invalid_argument(std::string(who) + ": observation half-width must be even (2n)");
    return y.N / 2;
}

TwoSidedSequence slice(const TwoSidedSequence& u, std::int64_t lo, std::int64_t hi) {
    std::vector<cplx> v(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t t = lo; t <= hi; ++t) v[static_cast<std::size_t>(t - lo)] = u.at(t);
    return TwoSidedSequence(lo, std::move(v));
}

}  // namespace

TwoSidedSequence estimate_core(const ObservationWindow& y, std::int64_t s,
                               const SolverConfig& config, FitResult* fit_out) {
    if (s < 1) throw std::invalid_argument("estimate_core: order s must be >= 1");
    const std::int64_t n = half_width_of(y, "estimate_core");
    if (2 * n + 1 < 9 * (s - 1))
        throw std::invalid_argument("estimate_core: requires 2n+1 >= 9(s-1)");
    FitProblem p{y, n, FilterBudget::two_sided(s, n), 0, false, 0};
    FitResult fit = fit_filter(p, config);
    TwoSidedSequence out = slice(convolve(fit.filter, y.y), -n, n);
    if (fit_out) *fit_out = std::move(fit);
    return out;
}

namespace {

bool is_power_of_3(std::int64_t x) {
    if (x < 1) return false;
    while (x % 3 == 0) x /= 3;
    return x == 1;
}

std::int64_t log3_floor(std::int64_t x) {
    std::int64_t k = 0;
    while (x >= 3) {
        x /= 3;
        ++k;
    }
    return k;
}

std::int64_t pow3(std::int64_t k) {
    std::int64_t r = 1;
    while (k-- > 0) r *= 3;
    return r;
}

}  // namespace

MultiscalePlan make_multiscale_plan(std::int64_t n, std::int64_t s) {
    if (s < 1 || n < 1) throw std::invalid_argument("make_multiscale_plan: need n, s >= 1");
    MultiscalePlan plan;
    plan.n = n;
    plan.s = s;
    plan.triadic = is_power_of_3(n) && is_power_of_3(s) && n >= 9 * s;
    if (plan.triadic) {
        plan.n0 = n;
        plan.s0 = s;
        plan.centers = {0};
    } else {
        plan.s0 = pow3(log3_floor(s) + (is_power_of_3(s) ? 0 : 1));
        plan.n0 = pow3(log3_floor(n));
        if (plan.n0 < 9 * plan.s0)
            throw std::invalid_argument("estimate_full: n < 9s (after triadic rounding)");
        const std::int64_t c = 2 * n - 2 * plan.n0;
        plan.centers = {-c, 0, c};
        if (c == 0) plan.centers = {0};
    }
    plan.K = log3_floor(plan.n0 / (9 * plan.s0));
    for (std::int64_t k = 1; k <= plan.K; ++k) {
        const std::int64_t nk = plan.n0 / pow3(k);
        const std::int64_t hk = 2 * plan.n0 - 2 * nk;
        plan.intervals.push_back(ScaleInterval{k, +1, nk, hk});
        plan.intervals.push_back(ScaleInterval{k, -1, nk, hk});
    }
    return plan;
}

namespace {

/// One triadic run at center c with parameters (nc, sc); accumulates the
/// estimate on c + [-2nc, 2nc] into (sum, cnt) indexed by t + 2n.
void run_triadic(const ObservationWindow& y, std::int64_t n, std::int64_t nc, std::int64_t sc,
                 std::int64_t c, const SolverConfig& config, std::vector<cplx>& sum,
                 std::vector<int>& cnt, FitResult* core_fit_out, bool* all_converged) {
    auto deposit = [&](std::int64_t t, cplx v) {
        sum[static_cast<std::size_t>(t + 2 * n)] += v;
        cnt[static_cast<std::size_t>(t + 2 * n)] += 1;
    };

    // core on c + [-nc, nc]
    {
        FitProblem p{y, nc, FilterBudget::two_sided(sc, nc), c, false, 0};
        FitResult fit = fit_filter(p, config);
        const TwoSidedSequence xh = convolve(fit.filter, y.y);
        for (std::int64_t t = c - nc; t <= c + nc; ++t) deposit(t, xh.at(t));
        if (all_converged && !fit.converged) *all_converged = false;
        if (core_fit_out && c == 0) *core_fit_out = std::move(fit);
    }
    // shrinking side intervals
    const std::int64_t K = log3_floor(nc / (9 * sc));
    for (std::int64_t k = 1; k <= K; ++k) {
        const std::int64_t nk = nc / pow3(k);
        const std::int64_t hk = 2 * nc - 2 * nk;
        for (int sign : {+1, -1}) {
            FitProblem p{y, nk, FilterBudget::two_sided(sc, nk), c + sign * hk, false, 0};
            const FitResult fit = fit_filter(p, config);
            if (all_converged && !fit.converged) *all_converged = false;
            const TwoSidedSequence xh = convolve(fit.filter, y.y);
            if (sign > 0)
                for (std::int64_t t = c + hk - nk + 1; t <= c + hk + nk; ++t) deposit(t, xh.at(t));
            else
                for (std::int64_t t = c - hk - nk; t <= c - hk + nk - 1; ++t) deposit(t, xh.at(t));
        }
    }
    // outer fringe: raw observations
    for (std::int64_t u = 2 * nc - 9 * sc + 1; u <= 2 * nc; ++u) {
        deposit(c + u, y.y.at(c + u));
        deposit(c - u, y.y.at(c - u));
    }
}

}  // namespace

TwoSidedSequence estimate_full(const ObservationWindow& y, std::int64_t s,
                               const SolverConfig& config, FitResult* core_fit_out,
                               bool* all_converged) {
    if (s < 1) throw std::invalid_argument("estimate_full: order s must be >= 1");
    const std::int64_t n = half_width_of(y, "estimate_full");
    const MultiscalePlan plan = make_multiscale_plan(n, s);

    if (all_converged) *all_converged = true;
    std::vector<cplx> sum(static_cast<std::size_t>(4 * n + 1), cplx{0.0, 0.0});
    std::vector<int> cnt(static_cast<std::size_t>(4 * n + 1), 0);
    for (std::int64_t c : plan.centers)
        run_triadic(y, n, plan.n0, plan.s0, c, config, sum, cnt, core_fit_out, all_converged);

    std::vector<cplx> v(static_cast<std::size_t>(4 * n + 1));
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (cnt[i] == 0) throw std::logic_error("estimate_full: covering left a gap");
        v[i] = sum[i] / static_cast<double>(cnt[i]);
    }
    return TwoSidedSequence(-2 * n, std::move(v));
}

TwoSidedSequence estimate_onesided(const ObservationWindow& y, std::int64_t s, double c1,
                                   const SolverConfig& config, std::int64_t lead,
                                   FitResult* fit_out) {
    if (s < 1) throw std::invalid_argument("estimate_onesided: order s must be >= 1");
    if (lead < 0) throw std::invalid_argument("estimate_onesided: lead must be >= 0");
    const std::int64_t n = half_width_of(y, "estimate_onesided");
    FitProblem p{y, n, FilterBudget::causal(s, n, c1), n, true, lead};
    FitResult fit = fit_filter(p, config);
    TwoSidedSequence out = slice(convolve(fit.filter, y.y), 0, 2 * n);
    if (fit_out) *fit_out = std::move(fit);
    return out;
}

TwoSidedSequence sample_extreme_point(std::int64_t s, std::int64_t n, std::uint64_t seed) {
    if (18 * s > 2 * n + 1)
        throw std::invalid_argument("sample_extreme_point: requires 18s <= 2n+1");
    Rng rng(seed);
    const std::int64_t d = 2 * n + 1;
    std::vector<std::int64_t> idx(static_cast<std::size_t>(d));
    for (std::int64_t i = 0; i < d; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (std::int64_t i = 0; i < 18 * s; ++i) {  // partial Fisher-Yates
        const std::int64_t j = i + rng.uniform_int(d - i);
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    std::vector<cplx> w(static_cast<std::size_t>(d), cplx{0.0, 0.0});
    const double mag = FilterBudget::c_star / std::sqrt(static_cast<double>(d));
    for (std::int64_t k = 0; k < 18 * s; ++k)
        w[static_cast<std::size_t>(idx[static_cast<std::size_t>(k)])] = mag * rng.unit_phase();
    return idft(SpectrumVec{n, std::move(w)});
}

}  // namespace sisrec
