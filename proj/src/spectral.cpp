#include "sisrec/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace sisrec {

namespace {

// Plan cache. FFTW planning is not thread-safe; new-array execution is,
// provided the plan was created with FFTW_UNALIGNED.
class FftEngine {
public:
    static FftEngine& instance() {
        static FftEngine e;
        return e;
    }

    void execute(std::vector<cplx>& data, int sign) {
        fftw_plan p;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto& slot = plans_[{data.size(), sign}];
            if (!slot) {
                std::vector<cplx> tmp(data.size());
                slot = fftw_plan_dft_1d(static_cast<int>(data.size()),
                                        reinterpret_cast<fftw_complex*>(tmp.data()),
                                        reinterpret_cast<fftw_complex*>(tmp.data()), sign,
                                        FFTW_ESTIMATE | FFTW_UNALIGNED);
                if (!slot) throw std::runtime_error("fftw_plan_dft_1d failed");
            }
            p = slot;
        }
        fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(data.data()),
                         reinterpret_cast<fftw_complex*>(data.data()));
    }

private:
    FftEngine() = default;
    ~FftEngine() {
        for (auto& [key, p] : plans_)
            if (p) fftw_destroy_plan(p);
    }
    std::mutex mu_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

}  // namespace

void fft_forward(std::vector<cplx>& data) { FftEngine::instance().execute(data, FFTW_FORWARD); }
void fft_inverse(std::vector<cplx>& data) { FftEngine::instance().execute(data, FFTW_BACKWARD); }

std::size_t next_fast_fft_size(std::size_t len) {
    auto smooth = [](std::size_t x) {
        for (std::size_t f : {2, 3, 5}) {
            while (x % f == 0) x /= f;
        }
        return x == 1;
    };
    while (!smooth(len)) ++len;
    return len;
}

double norm_l1(const std::vector<cplx>& v) {
    double s = 0.0;
    for (cplx z : v) s += std::abs(z);
    return s;
}

double norm_l2(const std::vector<cplx>& v) {
    double s = 0.0;
    for (cplx z : v) s += std::norm(z);
    return std::sqrt(s);
}

double norm_linf(const std::vector<cplx>& v) {
    double s = 0.0;
    for (cplx z : v) s = std::max(s, std::abs(z));
    return s;
}

SpectrumVec dft(const TwoSidedSequence& u, std::int64_t n) {
    const std::size_t L = static_cast<std::size_t>(2 * n + 1);
    std::vector<cplx> x(L, cplx{0.0, 0.0});
    const std::int64_t a = std::max(u.lo(), -n), b = std::min(u.hi(), n);
    for (std::int64_t t = a; t <= b; ++t) {
        // circular index: t mod (2n+1)
        const std::size_t j = static_cast<std::size_t>(((t % (2 * n + 1)) + 2 * n + 1) % (2 * n + 1));
        x[j] = u.at(t);
    }
    fft_forward(x);
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    for (auto& z : x) z *= scale;
    return SpectrumVec{n, std::move(x)};
}

TwoSidedSequence idft(const SpectrumVec& a) {
    const std::int64_t n = a.n;
    const std::size_t L = static_cast<std::size_t>(2 * n + 1);
    if (a.values.size() != L) throw std::invalid_argument("idft: size mismatch with n");
    std::vector<cplx> x = a.values;
    fft_inverse(x);
    const double scale = 1.0 / std::sqrt(static_cast<double>(L));
    std::vector<cplx> v(L);
    for (std::int64_t t = -n; t <= n; ++t) {
        const std::size_t j = static_cast<std::size_t>(((t % (2 * n + 1)) + 2 * n + 1) % (2 * n + 1));
        v[static_cast<std::size_t>(t + n)] = x[j] * scale;
    }
    return TwoSidedSequence(-n, std::move(v));
}

std::vector<cplx> eval_grid(const TwoSidedSequence& u, std::int64_t N) {
    if (!u.trimmed().in_window(N))
        throw std::invalid_argument("eval_grid: support of u exceeds [-N, N]");
    SpectrumVec s = dft(u, N);
    const double r = std::sqrt(static_cast<double>(2 * N + 1));
    for (auto& z : s.values) z *= r;
    return std::move(s.values);
}

cplx eval_at(const TwoSidedSequence& u, cplx z) {
    // Horner: sum_t u_t z^{-t} = z^{-hi} (u_hi + z (u_{hi-1} + ... + z u_lo))
    cplx acc{0.0, 0.0};
    for (std::int64_t t = u.lo(); t <= u.hi(); ++t) acc = acc * z + u.at(t);
    return acc * std::pow(z, cplx(static_cast<double>(-u.hi()), 0.0));
}

namespace {

std::vector<cplx> direct_conv(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    std::vector<cplx> out(a.size() + b.size() - 1, cplx{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == cplx{0.0, 0.0}) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

std::vector<cplx> fft_conv(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    const std::size_t L = a.size() + b.size() - 1;
    const std::size_t F = next_fast_fft_size(L);
    std::vector<cplx> fa(F, cplx{0.0, 0.0}), fb(F, cplx{0.0, 0.0});
    std::copy(a.begin(), a.end(), fa.begin());
    std::copy(b.begin(), b.end(), fb.begin());
    fft_forward(fa);
    fft_forward(fb);
    for (std::size_t i = 0; i < F; ++i) fa[i] *= fb[i];
    fft_inverse(fa);
    fa.resize(L);
    const double scale = 1.0 / static_cast<double>(F);
    for (auto& z : fa) z *= scale;
    return fa;
}

}  // namespace

TwoSidedSequence convolve(const TwoSidedSequence& u, const TwoSidedSequence& v,
                          std::size_t crossover) {
    const auto& a = u.values();
    const auto& b = v.values();
    std::vector<cplx> out = (std::min(a.size(), b.size()) <= crossover) ? direct_conv(a, b)
                                                                        : fft_conv(a, b);
    return TwoSidedSequence(u.lo() + v.lo(), std::move(out));
}

TwoSidedSequence dirichlet(std::int64_t m) {
    return TwoSidedSequence(-m, std::vector<cplx>(static_cast<std::size_t>(2 * m + 1),
                                                  cplx{1.0, 0.0}));
}

TwoSidedSequence fejer(std::int64_t m) {
    std::vector<cplx> v(static_cast<std::size_t>(2 * m + 1));
    for (std::int64_t k = -m; k <= m; ++k)
        v[static_cast<std::size_t>(k + m)] =
            cplx{1.0 - static_cast<double>(std::abs(k)) / static_cast<double>(m + 1), 0.0};
    return TwoSidedSequence(-m, std::move(v));
}

TwoSidedSequence fejer_causal(std::int64_t m) {
    TwoSidedSequence f = fejer(m);
    return f.delayed(m);  // support [0, 2m]
}

double dirichlet_closed_form(std::int64_t m, double omega) {
    const double h = 0.5 * omega;
    if (std::abs(std::sin(h)) < 1e-300) return static_cast<double>(2 * m + 1);
    return std::sin((2 * m + 1) * h) / std::sin(h);
}

double kernel_grid_sum(const TwoSidedSequence& kernel, std::int64_t N, cplx a) {
    double s = 0.0;
    for (std::int64_t k = 0; k <= 2 * N; ++k) {
        const double th = 2.0 * std::numbers::pi * static_cast<double>(k) /
                          static_cast<double>(2 * N + 1);
        const cplx w{std::cos(th), std::sin(th)};
        s += std::abs(eval_at(kernel, w / a));
    }
    return s / static_cast<double>(2 * N + 1);
}

double sparse_oversampling_ratio(std::int64_t n, std::int64_t N,
                                 const std::vector<std::int64_t>& J, std::int64_t k) {
    const TwoSidedSequence dir = dirichlet(n);
    const double thk = 2.0 * std::numbers::pi * static_cast<double>(k) /
                       static_cast<double>(2 * N + 1);
    const cplx wk{std::cos(thk), std::sin(thk)};
    double s = 0.0;
    for (std::int64_t j : J) {
        const double thj = 2.0 * std::numbers::pi * static_cast<double>(j) /
                           static_cast<double>(2 * n + 1);
        const cplx wj{std::cos(thj), std::sin(thj)};
        s += std::abs(eval_at(dir, wj / wk));
    }
    return s / std::sqrt(static_cast<double>(2 * N + 1) * static_cast<double>(2 * n + 1));
}

double sup_on_circle(const TwoSidedSequence& u, int factor) {
    const TwoSidedSequence t = u.trimmed();
    const std::int64_t n = std::max(std::abs(t.lo()), std::abs(t.hi()));
    const std::int64_t G = factor * (2 * n + 1);
    // u at all G circle points at once: forward FFT with circular placement.
    std::vector<cplx> x(static_cast<std::size_t>(G), cplx{0.0, 0.0});
    for (std::int64_t tt = t.lo(); tt <= t.hi(); ++tt)
        x[static_cast<std::size_t>(((tt % G) + G) % G)] += t.at(tt);
    fft_forward(x);
    return norm_linf(x);
}

}  // namespace sisrec
