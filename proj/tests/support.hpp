#pragma once

// Shared test support: independent oracles and random-instance helpers.
// Everything here is deliberately written along a different path from the
// library code it checks.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "sisrec/rng.hpp"
#include "sisrec/sequence.hpp"
#include "sisrec/sis.hpp"

namespace sisrec::test {

inline cplx unit_node(std::int64_t k, std::int64_t n) {
    const double th = 2.0 * std::numbers::pi * static_cast<double>(k) /
                      static_cast<double>(2 * n + 1);
    return cplx{std::cos(th), std::sin(th)};
}

/// Brute-force Euclidean projection of magnitudes a onto
/// {u >= 0, u_i <= Rinf, sum u <= R1} by exhaustive activity-pattern
/// enumeration (dims <= 4): for each assignment of coordinates to
/// {zero, interior, cap} and each sum-constraint activity, solve the KKT
/// system and keep the best feasible candidate.
inline std::vector<double> face_oracle_magnitudes(const std::vector<double>& a, double R1,
                                                  double Rinf) {
    const std::size_t d = a.size();
    std::vector<double> best;
    double best_dist = 1e300;
    std::vector<int> pat(d, 0);
    const auto total = static_cast<std::size_t>(std::pow(3.0, static_cast<double>(d)));
    for (std::size_t code = 0; code < total; ++code) {
        std::size_t c = code;
        for (std::size_t i = 0; i < d; ++i) {
            pat[i] = static_cast<int>(c % 3);
            c /= 3;
        }
        for (int sum_active = 0; sum_active <= 1; ++sum_active) {
            double lam = 0.0;
            std::size_t n_int = 0, n_cap = 0;
            double sum_int = 0.0;
            for (std::size_t i = 0; i < d; ++i) {
                if (pat[i] == 1) {
                    ++n_int;
                    sum_int += a[i];
                } else if (pat[i] == 2) {
                    ++n_cap;
                }
            }
            if (sum_active) {
                if (n_int == 0) continue;
                lam = (sum_int + Rinf * static_cast<double>(n_cap) - R1) /
                      static_cast<double>(n_int);
                if (lam < -1e-12) continue;
            }
            std::vector<double> u(d);
            bool ok = true;
            for (std::size_t i = 0; i < d; ++i) {
                if (pat[i] == 0) {
                    u[i] = 0.0;
                    if (a[i] - lam > 1e-9) ok = false;  // KKT: would want to grow
                } else if (pat[i] == 2) {
                    u[i] = Rinf;
                    if (a[i] - lam < Rinf - 1e-9) ok = false;
                } else {
                    u[i] = a[i] - lam;
                    if (u[i] < -1e-9 || u[i] > Rinf + 1e-9) ok = false;
                }
            }
            if (!ok) continue;
            double s = 0.0;
            for (double ui : u) s += ui;
            if (s > R1 + 1e-9) continue;
            if (sum_active && std::abs(s - R1) > 1e-6) continue;
            double dist = 0.0;
            for (std::size_t i = 0; i < d; ++i) dist += (u[i] - a[i]) * (u[i] - a[i]);
            if (dist < best_dist) {
                best_dist = dist;
                best = u;
            }
        }
    }
    return best;
}

inline std::vector<cplx> face_oracle(const std::vector<cplx>& w, double R1, double Rinf) {
    std::vector<double> a(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) a[i] = std::abs(w[i]);
    const std::vector<double> u = face_oracle_magnitudes(a, R1, Rinf);
    std::vector<cplx> out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        out[i] = (a[i] > 0.0) ? w[i] * (u[i] / a[i]) : cplx{0.0, 0.0};
    return out;
}

/// Random spec with s simple roots: uniform phases on the circle, or uniform
/// over the disk (area measure).
inline SisSpec random_unit_spec(std::int64_t s, Rng& rng) {
    std::vector<Root> roots;
    while (static_cast<std::int64_t>(roots.size()) < s) {
        const cplx w = rng.unit_phase();
        bool dup = false;
        for (const Root& r : roots) dup = dup || r.w == w;
        if (!dup) roots.push_back(Root{w, 1});
    }
    return SisSpec(std::move(roots));
}

/// Random x in X(spec) with unit-norm coefficients on [t_lo, t_hi] (roots on
/// or near the circle assumed).
inline TwoSidedSequence random_signal(const SisSpec& spec, std::int64_t t_lo, std::int64_t t_hi,
                                      Rng& rng) {
    std::vector<cplx> c(static_cast<std::size_t>(spec.order()));
    double nrm = 0.0;
    for (auto& z : c) {
        z = rng.cgaussian();
        nrm += std::norm(z);
    }
    for (auto& z : c) z /= std::sqrt(nrm);
    return synthesize(spec, c, t_lo, t_hi);
}

}  // namespace sisrec::test
