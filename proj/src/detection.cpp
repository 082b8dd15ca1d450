#include "sisrec/detection.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sisrec/filter_oracle.hpp"

namespace sisrec {

double DetectionSetup::r0_squared() const {
    if (n < 9 * s) throw std::invalid_argument("DetectionSetup: requires n >= 9s");
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("DetectionSetup: delta must be in (0,1)");
    const double cs = FilterBudget::c_star;
    const double sd = static_cast<double>(s);
    const double nd = static_cast<double>(n);
    // log_3(n/s) with real division, natural logs throughout
    const double log3_ns = std::log(nd / sd) / std::log(3.0);
    const double e3s = std::log(9.0 * sd) + 3.0;  // log(9 e^3 s)
    const double e4s = std::log(9.0 * sd) + 4.0;  // log(9 e^4 s)
    const double inner = 6.0 * sd + 3.0 * sd * std::log(2.0 * nd + 1.0) +
                         e3s * std::log(6.0 * log3_ns / delta);
    return 128.0 * cs * cs * sigma * sigma * inner * e4s * log3_ns;
}

double test_statistic(const ObservationWindow& y, const TwoSidedSequence& x_full) {
    const std::int64_t W = y.N;
    if (x_full.lo() < -W || x_full.hi() > W)
        throw std::invalid_argument("test_statistic: estimate exceeds the observation window");
    const double a = seminorm(y.y, W, 2.0);
    const double b = seminorm(y.y - x_full, W, 2.0);
    return a * a - b * b;
}

double detection_threshold(const DetectionSetup& setup) { return setup.r0_squared(); }

DetectionResult detect(const ObservationWindow& y, std::int64_t s, double sigma, double delta,
                       const SolverConfig& config) {
    if (y.N % 2 != 0)
        throw std::invalid_argument("detect: observation half-width must be even (2n)");
    const DetectionSetup setup{y.N / 2, s, sigma, delta};
    const double r0sq = setup.r0_squared();
    const TwoSidedSequence x_full = estimate_full(y, s, config);
    const double stat = test_statistic(y, x_full);
    return DetectionResult{stat > 0.625 * r0sq, stat, 0.625 * r0sq};
}

}  // namespace sisrec
