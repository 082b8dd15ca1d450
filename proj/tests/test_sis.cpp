#include <doctest.h>

#include <cmath>

#include "sisrec/rng.hpp"
#include "sisrec/sis.hpp"
#include "support.hpp"

using namespace sisrec;

TEST_CASE("synthesize hand examples") {
    // constants
    const SisSpec ones({Root{{1, 0}, 1}});
    const TwoSidedSequence c = synthesize(ones, {{1, 0}}, -3, 3);
    for (std::int64_t t = -3; t <= 3; ++t) CHECK(std::abs(c.at(t) - cplx{1, 0}) < 1e-14);

    // powers of i
    const SisSpec rot({Root{{0, 1}, 1}});
    const TwoSidedSequence p = synthesize(rot, {{1, 0}}, 0, 3);
    CHECK(std::abs(p.at(0) - cplx{1, 0}) < 1e-14);
    CHECK(std::abs(p.at(1) - cplx{0, 1}) < 1e-14);
    CHECK(std::abs(p.at(2) - cplx{-1, 0}) < 1e-14);
    CHECK(std::abs(p.at(3) - cplx{0, -1}) < 1e-14);

    // the ramp q(t) = t from a double root at 1
    const SisSpec dbl({Root{{1, 0}, 2}});
    const TwoSidedSequence r = synthesize(dbl, {{0, 0}, {1, 0}}, 0, 3);
    for (std::int64_t t = 0; t <= 3; ++t)
        CHECK(std::abs(r.at(t) - cplx{static_cast<double>(t), 0}) < 1e-14);
}

TEST_CASE("synthesize rejects bad input") {
    const SisSpec ones({Root{{1, 0}, 1}});
    CHECK_THROWS(synthesize(ones, {{1, 0}, {2, 0}}, 0, 3));       // wrong count
    CHECK_THROWS(synthesize(ones, {{1, 0}}, 3, 0));               // empty window
    const SisSpec big({Root{{2, 0}, 1}});
    CHECK_THROWS(synthesize(big, {{1, 0}}, -2000, 2000));         // overflow guard
    CHECK_THROWS(SisSpec({Root{{1, 0}, 1}, Root{{1, 0}, 1}}));    // duplicate roots
    CHECK_THROWS(SisSpec({Root{{0, 0}, 1}}));                     // zero root
    CHECK_THROWS(SisSpec({Root{{1, 0}, 0}}));                     // zero multiplicity
}

TEST_CASE("apply_recurrence annihilates members") {
    const SisSpec ones({Root{{1, 0}, 1}});
    const TwoSidedSequence c = synthesize(ones, {{1, 0}}, -3, 3);
    const TwoSidedSequence d = apply_recurrence(ones, c);
    CHECK(d.lo() == -2);
    for (std::int64_t t = d.lo(); t <= d.hi(); ++t) CHECK(std::abs(d.at(t)) < 1e-14);

    const SisSpec rot({Root{{0, 1}, 1}});
    const TwoSidedSequence p = synthesize(rot, {{1, 0}}, 0, 3);
    const TwoSidedSequence dp = apply_recurrence(rot, p);
    for (std::int64_t t = dp.lo(); t <= dp.hi(); ++t) CHECK(std::abs(dp.at(t)) < 1e-14);

    const SisSpec dbl({Root{{1, 0}, 2}});
    const TwoSidedSequence r = synthesize(dbl, {{0, 0}, {1, 0}}, 0, 5);
    const TwoSidedSequence dr = apply_recurrence(dbl, r);
    for (std::int64_t t = dr.lo(); t <= dr.hi(); ++t) CHECK(std::abs(dr.at(t)) < 1e-13);

    CHECK_THROWS(apply_recurrence(dbl, TwoSidedSequence(0, {{1, 0}, {1, 0}})));  // too short
}

TEST_CASE("apply_recurrence(synthesize) vanishes for random specs") {
    Rng rng(29);
    for (int rep = 0; rep < 12; ++rep) {
        std::vector<Root> roots;
        const int groups = 1 + static_cast<int>(rng.uniform_int(3));
        for (int g = 0; g < groups; ++g)
            roots.push_back(Root{rng.unit_phase(), 1 + static_cast<int>(rng.uniform_int(3))});
        const SisSpec spec(roots);
        std::vector<cplx> coeffs(static_cast<std::size_t>(spec.order()));
        for (auto& z : coeffs) z = rng.cgaussian();
        const TwoSidedSequence x = synthesize(spec, coeffs, -20, 20);
        const TwoSidedSequence d = apply_recurrence(spec, x);
        double scale = seminorm(x, 20, std::numeric_limits<double>::infinity());
        for (std::int64_t t = d.lo(); t <= d.hi(); ++t)
            CHECK(std::abs(d.at(t)) <= 1e-9 * scale);
    }
}

TEST_CASE("char_poly normalization") {
    const SisSpec spec({Root{{0.5, 0.25}, 2}, Root{{-0.3, 0.1}, 1}});
    const auto f = spec.char_poly();
    CHECK(f.size() == 4);
    CHECK(std::abs(f[0] - cplx{1, 0}) < 1e-15);
    CHECK(spec.order() == 3);
    CHECK(spec.quasi_stable());
}

TEST_CASE("add_noise contract") {
    const SisSpec ones({Root{{1, 0}, 1}});
    const TwoSidedSequence x = synthesize(ones, {{1, 0}}, -8, 8);

    // sigma = 0 reproduces x exactly
    const ObservationWindow clean = add_noise(x, 8, 0.0, 123);
    for (std::int64_t t = -8; t <= 8; ++t) CHECK(clean.y.at(t) == x.at(t));

    // identical seeds give bitwise-identical output
    const ObservationWindow a = add_noise(x, 8, 0.7, 99);
    const ObservationWindow b = add_noise(x, 8, 0.7, 99);
    for (std::int64_t t = -8; t <= 8; ++t) CHECK(a.y.at(t) == b.y.at(t));

    // doubling sigma doubles the noise draws exactly
    const ObservationWindow c = add_noise(x, 8, 1.4, 99);
    for (std::int64_t t = -8; t <= 8; ++t)
        CHECK(std::abs((c.y.at(t) - x.at(t)) - 2.0 * (a.y.at(t) - x.at(t))) < 1e-15);

    CHECK_THROWS(add_noise(x, 0, 1.0, 1));
    CHECK_THROWS(add_noise(x, 8, -1.0, 1));
}

TEST_CASE("noise generator moments") {
    // E|xi|^2 = 1 within 5% over 1e4 draws
    const TwoSidedSequence zero = TwoSidedSequence::zero();
    double e2 = 0.0;
    const std::int64_t N = 5000;
    const ObservationWindow w = add_noise(zero, N, 1.0, 2024);
    for (std::int64_t t = -N; t <= N; ++t) e2 += std::norm(w.y.at(t));
    e2 /= static_cast<double>(2 * N + 1);
    CHECK(e2 == doctest::Approx(1.0).epsilon(0.05));

    // covariance of (Re, Im) is diag(1/2, 1/2) within 0.02 over 1e5 draws
    Rng rng(555);
    double srr = 0, sii = 0, sri = 0;
    const int M = 100000;
    for (int i = 0; i < M; ++i) {
        const cplx z = rng.cgaussian();
        srr += z.real() * z.real();
        sii += z.imag() * z.imag();
        sri += z.real() * z.imag();
    }
    CHECK(srr / M == doctest::Approx(0.5).epsilon(0.04));
    CHECK(sii / M == doctest::Approx(0.5).epsilon(0.04));
    CHECK(std::abs(sri / M) < 0.02);
}
