#include "sisrec/sis.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include "sisrec/rng.hpp"

namespace sisrec {

SisSpec::SisSpec(std::vector<Root> roots) : roots_(std::move(roots)) {
    if (roots_.empty()) throw std::invalid_argument("SisSpec: at least one root required");
    s_ = 0;
    for (const Root& r : roots_) {
        if (r.multiplicity < 1) throw std::invalid_argument("SisSpec: multiplicity must be >= 1");
        if (r.w == cplx{0.0, 0.0})
            throw std::invalid_argument("SisSpec: root w = 0 degenerates the characteristic polynomial");
        s_ += r.multiplicity;
    }
    for (std::size_t i = 0; i < roots_.size(); ++i)
        for (std::size_t j = i + 1; j < roots_.size(); ++j)
            if (roots_[i].w == roots_[j].w)
                throw std::invalid_argument("SisSpec: roots must be pairwise distinct");
}

std::vector<cplx> SisSpec::char_poly() const {
    std::vector<cplx> f{cplx{1.0, 0.0}};
    for (const Root& r : roots_) {
        for (int k = 0; k < r.multiplicity; ++k) {
            // multiply by (1 - w z)
            std::vector<cplx> g(f.size() + 1, cplx{0.0, 0.0});
            for (std::size_t i = 0; i < f.size(); ++i) {
                g[i] += f[i];
                g[i + 1] -= r.w * f[i];
            }
            f = std::move(g);
        }
    }
    return f;
}

bool SisSpec::quasi_stable() const {
    for (const Root& r : roots_)
        if (std::abs(r.w) > 1.0 + 1e-12) return false;
    return true;
}

std::string SisSpec::describe() const {
    std::ostringstream os;
    os << "{";
    for (std::size_t i = 0; i < roots_.size(); ++i) {
        if (i) os << ", ";
        os << "(" << roots_[i].w.real() << (roots_[i].w.imag() < 0 ? "-" : "+")
           << std::abs(roots_[i].w.imag()) << "i)^" << roots_[i].multiplicity;
    }
    os << "}";
    return os.str();
}

TwoSidedSequence synthesize(const SisSpec& spec, const std::vector<cplx>& coeffs,
                            std::int64_t t_lo, std::int64_t t_hi) {
    if (t_lo > t_hi) throw std::invalid_argument("synthesize: t_lo > t_hi");
    if (static_cast<std::int64_t>(coeffs.size()) != spec.order())
        throw std::invalid_argument("synthesize: coefficient count must equal the order s");

    // Overflow guard: |w|^|t| must stay representable across the window.
    const double max_abs_t = static_cast<double>(std::max(std::abs(t_lo), std::abs(t_hi)));
    for (const Root& r : spec.roots()) {
        const double lg = max_abs_t * std::abs(std::log(std::abs(r.w)));
        if (lg > 0.9 * std::log(std::numeric_limits<double>::max()))
            throw std::overflow_error("synthesize: |w|^|t| overflows for root " + spec.describe());
    }

    std::vector<cplx> v(static_cast<std::size_t>(t_hi - t_lo + 1), cplx{0.0, 0.0});
    std::size_t ci = 0;
    for (const Root& r : spec.roots()) {
        for (int j = 0; j < r.multiplicity; ++j, ++ci) {
            const cplx c = coeffs[ci];
            if (c == cplx{0.0, 0.0}) continue;
            for (std::int64_t t = t_lo; t <= t_hi; ++t) {
                const double td = static_cast<double>(t);
                const cplx wt = std::pow(r.w, cplx{td, 0.0});
                const double tj = (j == 0) ? 1.0 : std::pow(td, j);
                v[static_cast<std::size_t>(t - t_lo)] += c * tj * wt;
            }
        }
    }
    return TwoSidedSequence(t_lo, std::move(v));
}

TwoSidedSequence apply_recurrence(const SisSpec& spec, const TwoSidedSequence& x) {
    const std::int64_t s = spec.order();
    if (static_cast<std::int64_t>(x.length()) <= s)
        throw std::invalid_argument("apply_recurrence: window too short for the order");
    const std::vector<cplx> f = spec.char_poly();
    // (f(Delta) x)_t = sum_j f_j x_{t-j}; valid t: [x.lo + s, x.hi]
    std::vector<cplx> out(static_cast<std::size_t>(x.hi() - (x.lo() + s) + 1), cplx{0.0, 0.0});
    for (std::int64_t t = x.lo() + s; t <= x.hi(); ++t) {
        cplx acc{0.0, 0.0};
        for (std::int64_t j = 0; j <= s; ++j) acc += f[static_cast<std::size_t>(j)] * x.at(t - j);
        out[static_cast<std::size_t>(t - x.lo() - s)] = acc;
    }
    return TwoSidedSequence(x.lo() + s, std::move(out));
}

ObservationWindow add_noise(const TwoSidedSequence& x, std::int64_t N, double sigma,
                            std::uint64_t seed) {
    if (N < 1) throw std::invalid_argument("add_noise: N must be >= 1");
    if (sigma < 0.0) throw std::invalid_argument("add_noise: sigma must be >= 0");
    Rng rng(seed);
    std::vector<cplx> v(static_cast<std::size_t>(2 * N + 1));
    for (std::int64_t t = -N; t <= N; ++t)
        v[static_cast<std::size_t>(t + N)] = x.at(t) + sigma * rng.cgaussian();
    return ObservationWindow{TwoSidedSequence(-N, std::move(v)), N, sigma};
}

}  // namespace sisrec
