#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sisrec/sequence.hpp"

namespace sisrec {

/// Conditioning failure in a root-dependent factorization; carries the
/// offending roots in the message.
class ConditioningError : public std::runtime_error {
public:
    explicit ConditioningError(const std::string& what) : std::runtime_error(what) {}
};

struct Root {
    cplx w;
    int multiplicity = 1;
};

/// Root multiset defining the shift-invariant subspace X(w_1, ..., w_s):
/// solutions of f(Delta) x = 0 with f(z) = prod_k (1 - w_k z)^{m_k}.
class SisSpec {
public:
    SisSpec() = default;
    explicit SisSpec(std::vector<Root> roots);

    const std::vector<Root>& roots() const { return roots_; }
    std::int64_t order() const { return s_; }  // s = sum of multiplicities

    /// Coefficients f_0..f_s of the characteristic polynomial, f_0 = 1.
    std::vector<cplx> char_poly() const;

    /// True iff all roots lie in the closed unit disk.
    bool quasi_stable() const;

    std::string describe() const;

private:
    std::vector<Root> roots_;
    std::int64_t s_ = 0;
};

/// x_t = sum_k q_k(t) w_k^t on [t_lo, t_hi]. Coefficient layout follows the
/// root order: (w_1: 1, t, ..., t^{m_1 - 1}; w_2: ...), monomial basis.
/// Throws on coefficient-length mismatch or when |w_k|^|t| overflows.
TwoSidedSequence synthesize(const SisSpec& spec, const std::vector<cplx>& coeffs,
                            std::int64_t t_lo, std::int64_t t_hi);

/// f(Delta) x on the indices where all s+1 taps are inside x's support.
TwoSidedSequence apply_recurrence(const SisSpec& spec, const TwoSidedSequence& x);

/// Noisy observations y_t = x_t + sigma xi_t on [-N, N], xi ~ CN(0,1) iid.
struct ObservationWindow {
    TwoSidedSequence y;
    std::int64_t N = 0;
    double sigma = 0.0;
};

ObservationWindow add_noise(const TwoSidedSequence& x, std::int64_t N, double sigma,
                            std::uint64_t seed);

}  // namespace sisrec
