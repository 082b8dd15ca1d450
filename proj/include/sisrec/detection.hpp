#pragma once

#include <cstdint>

#include "sisrec/estimator.hpp"
#include "sisrec/sequence.hpp"
#include "sisrec/sis.hpp"

namespace sisrec {

/// Test of "no signal" against an s-dimensional SIS alternative on [-2n, 2n].
struct DetectionSetup {
    std::int64_t n = 0;
    std::int64_t s = 0;
    double sigma = 0.0;
    double delta = 0.1;

    /// Closed-form squared detection radius r0^2.
    double r0_squared() const;
};

/// T(y) = ||y||_{2n,2}^2 - ||y - x_full||_{2n,2}^2; may be negative.
double test_statistic(const ObservationWindow& y, const TwoSidedSequence& x_full);

/// r0^2; the decision rule rejects when the statistic exceeds (5/8) r0^2.
double detection_threshold(const DetectionSetup& setup);

struct DetectionResult {
    bool reject = false;
    double statistic = 0.0;
    double threshold = 0.0;
};

/// Runs the full-domain estimator and rejects iff T > (5/8) r0^2.
DetectionResult detect(const ObservationWindow& y, std::int64_t s, double sigma, double delta,
                       const SolverConfig& config = {});

}  // namespace sisrec
