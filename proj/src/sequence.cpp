#include "sisrec/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sisrec {

TwoSidedSequence::TwoSidedSequence(std::int64_t lo, std::vector<cplx> values)
    : lo_(lo), values_(std::move(values)) {
    if (values_.empty()) {
        lo_ = 0;
        values_.assign(1, cplx{0.0, 0.0});
    }
}

TwoSidedSequence TwoSidedSequence::unit_pulse(std::int64_t t) {
    return TwoSidedSequence(t, {cplx{1.0, 0.0}});
}

bool TwoSidedSequence::is_zero() const {
    return std::all_of(values_.begin(), values_.end(),
                       [](cplx v) { return v == cplx{0.0, 0.0}; });
}

TwoSidedSequence TwoSidedSequence::trimmed() const {
    std::size_t a = 0, b = values_.size();
    while (a + 1 < b && values_[a] == cplx{0.0, 0.0}) ++a;
    while (b > a + 1 && values_[b - 1] == cplx{0.0, 0.0}) --b;
    return TwoSidedSequence(lo_ + static_cast<std::int64_t>(a),
                            std::vector<cplx>(values_.begin() + a, values_.begin() + b));
}

TwoSidedSequence TwoSidedSequence::delayed(std::int64_t k) const {
    return TwoSidedSequence(lo_ + k, values_);
}

TwoSidedSequence TwoSidedSequence::conj_reversed() const {
    std::vector<cplx> v(values_.rbegin(), values_.rend());
    for (auto& z : v) z = std::conj(z);
    return TwoSidedSequence(-hi(), std::move(v));
}

TwoSidedSequence TwoSidedSequence::scaled(cplx a) const {
    std::vector<cplx> v = values_;
    for (auto& z : v) z *= a;
    return TwoSidedSequence(lo_, std::move(v));
}

TwoSidedSequence operator+(const TwoSidedSequence& a, const TwoSidedSequence& b) {
    const std::int64_t lo = std::min(a.lo(), b.lo());
    const std::int64_t hi = std::max(a.hi(), b.hi());
    std::vector<cplx> v(static_cast<std::size_t>(hi - lo + 1), cplx{0.0, 0.0});
    for (std::int64_t t = a.lo(); t <= a.hi(); ++t) v[static_cast<std::size_t>(t - lo)] += a.at(t);
    for (std::int64_t t = b.lo(); t <= b.hi(); ++t) v[static_cast<std::size_t>(t - lo)] += b.at(t);
    return TwoSidedSequence(lo, std::move(v));
}

TwoSidedSequence operator-(const TwoSidedSequence& a, const TwoSidedSequence& b) {
    return a + b.scaled(cplx{-1.0, 0.0});
}

double seminorm(const TwoSidedSequence& x, std::int64_t n, double p) {
    if (n < 0) throw std::invalid_argument("seminorm: n must be nonnegative");
    const std::int64_t a = std::max(x.lo(), -n);
    const std::int64_t b = std::min(x.hi(), n);
    if (std::isinf(p)) {
        double m = 0.0;
        for (std::int64_t t = a; t <= b; ++t) m = std::max(m, std::abs(x.at(t)));
        return m;
    }
    if (p < 1.0) throw std::invalid_argument("seminorm: p must be in [1, inf]");
    if (p == 2.0) {
        double s = 0.0;
        for (std::int64_t t = a; t <= b; ++t) s += std::norm(x.at(t));
        return std::sqrt(s);
    }
    double s = 0.0;
    for (std::int64_t t = a; t <= b; ++t) s += std::pow(std::abs(x.at(t)), p);
    return std::pow(s, 1.0 / p);
}

cplx inner_product(const TwoSidedSequence& u, const TwoSidedSequence& v, std::int64_t n) {
    cplx s{0.0, 0.0};
    const std::int64_t a = std::max({u.lo(), v.lo(), -n});
    const std::int64_t b = std::min({u.hi(), v.hi(), n});
    for (std::int64_t t = a; t <= b; ++t) s += std::conj(u.at(t)) * v.at(t);
    return s;
}

}  // namespace sisrec
