#pragma once

#include <cstdint>
#include <vector>

#include "sisrec/sequence.hpp"

namespace sisrec {

/// Length-(2n+1) spectrum of a sequence in C_n(Z), entry k attached to the
/// grid node chi_{k,n} = exp(i 2 pi k / (2n+1)), k = 0..2n.
struct SpectrumVec {
    std::int64_t n = 0;
    std::vector<cplx> values;

    std::size_t size() const { return values.size(); }
};

double norm_l1(const std::vector<cplx>& v);
double norm_l2(const std::vector<cplx>& v);
double norm_linf(const std::vector<cplx>& v);

/// Unitary DFT on C_n(Z): (F_n u)_k = (2n+1)^{-1/2} sum_{|tau|<=n} u_tau chi_{k,n}^{-tau}.
/// Equivalently (F_n u)_k = u(chi_{k,n}) / sqrt(2n+1) for the z-transform
/// u(z) = sum u_tau z^{-tau}. The input is truncated to [-n, n] first.
SpectrumVec dft(const TwoSidedSequence& u, std::int64_t n);

/// Generalized inverse; the result lies in C_n(Z) and dft(idft(a)) == a.
TwoSidedSequence idft(const SpectrumVec& a);

/// u(chi_{k,N}) for k = 0..2N, equal to sqrt(2N+1) * dft(u, N).
/// Throws if the support of u exceeds [-N, N].
std::vector<cplx> eval_grid(const TwoSidedSequence& u, std::int64_t N);

/// Horner evaluation of the Laurent polynomial u(z) = sum u_tau z^{-tau}.
cplx eval_at(const TwoSidedSequence& u, cplx z);

/// Full linear convolution; FFT path above the crossover, direct below.
/// Support of the result is [u.lo + v.lo, u.hi + v.hi].
TwoSidedSequence convolve(const TwoSidedSequence& u, const TwoSidedSequence& v,
                          std::size_t crossover = 64);

/// Rectangular window: all-ones on [-m, m].
TwoSidedSequence dirichlet(std::int64_t m);
/// Triangular window: 1 - |k|/(m+1) on [-m, m].
TwoSidedSequence fejer(std::int64_t m);
/// Fejer kernel shifted to [0, 2m]; |Fej+(z)| = |Fej_m(z)| on the circle.
TwoSidedSequence fejer_causal(std::int64_t m);

/// dir_m(w) = sin((2m+1) w/2) / sin(w/2), the Dirichlet kernel on the circle.
double dirichlet_closed_form(std::int64_t m, double omega);

/// (1/(2N+1)) sum_{w in T_N} |kernel(w / a)| for |a| = 1.
double kernel_grid_sum(const TwoSidedSequence& kernel, std::int64_t N, cplx a);

/// (1/sqrt((2N+1)(2n+1))) sum_{j in J} |Dir_n(chi_{j,n} / chi_{k,N})|.
double sparse_oversampling_ratio(std::int64_t n, std::int64_t N,
                                 const std::vector<std::int64_t>& J, std::int64_t k);

/// max |u(z)| over `factor * (2n+1)` equispaced circle points, where n is the
/// half-width of u's support. Certification grid per the oversampling bounds.
double sup_on_circle(const TwoSidedSequence& u, int factor = 16);

/// Power-of-235 FFT size >= len (FFTW is efficient at smooth sizes).
std::size_t next_fast_fft_size(std::size_t len);

/// Low-level FFT used by the solver: in-place-capable complex transforms of
/// arbitrary length. Plans are cached per length and guarded by a mutex;
/// execution is thread-safe.
void fft_forward(std::vector<cplx>& data);
void fft_inverse(std::vector<cplx>& data);  // unnormalized inverse

}  // namespace sisrec
