#pragma once

#include <complex>
#include <cstdint>
#include <vector>

namespace sisrec {

using cplx = std::complex<double>;

/// Finitely supported two-sided complex sequence.
///
/// Values outside [lo(), hi()] are implicitly zero. The sequence lives in
/// C_n(Z) iff lo() >= -n and hi() <= n, and in C_n^+(Z) iff lo() >= 0 and
/// hi() <= n. Trimming exact zeros at either end never changes results.
class TwoSidedSequence {
public:
    TwoSidedSequence() : lo_(0), values_(1, cplx{0.0, 0.0}) {}
    TwoSidedSequence(std::int64_t lo, std::vector<cplx> values);

    static TwoSidedSequence zero() { return TwoSidedSequence(); }
    static TwoSidedSequence unit_pulse(std::int64_t t = 0);

    std::int64_t lo() const { return lo_; }
    std::int64_t hi() const { return lo_ + static_cast<std::int64_t>(values_.size()) - 1; }
    std::size_t length() const { return values_.size(); }

    cplx at(std::int64_t t) const {
        const std::int64_t i = t - lo_;
        if (i < 0 || i >= static_cast<std::int64_t>(values_.size())) return {0.0, 0.0};
        return values_[static_cast<std::size_t>(i)];
    }

    const std::vector<cplx>& values() const { return values_; }
    std::vector<cplx>& values() { return values_; }

    /// True iff every tap is exactly zero.
    bool is_zero() const;

    /// Drop exactly-zero leading/trailing taps (keeps at least one tap).
    TwoSidedSequence trimmed() const;

    /// Sequence shifted in time: result_t = this_{t - k}  (Delta^k).
    TwoSidedSequence delayed(std::int64_t k) const;

    /// conj(u_{-t}); convolving with it computes cross-correlation.
    TwoSidedSequence conj_reversed() const;

    TwoSidedSequence scaled(cplx a) const;

    friend TwoSidedSequence operator+(const TwoSidedSequence& a, const TwoSidedSequence& b);
    friend TwoSidedSequence operator-(const TwoSidedSequence& a, const TwoSidedSequence& b);

    bool in_window(std::int64_t n) const { return lo_ >= -n && hi() <= n; }
    bool is_causal(std::int64_t n) const { return lo_ >= 0 && hi() <= n; }

private:
    std::int64_t lo_;
    std::vector<cplx> values_;
};

/// Windowed p-seminorm ||x||_{n,p} over t in [-n, n]; p may be infinity.
double seminorm(const TwoSidedSequence& x, std::int64_t n, double p);

/// <u, v>_n = sum_{|t|<=n} conj(u_t) v_t.
cplx inner_product(const TwoSidedSequence& u, const TwoSidedSequence& v, std::int64_t n);

}  // namespace sisrec
