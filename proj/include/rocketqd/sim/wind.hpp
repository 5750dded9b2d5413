#ifndef ROCKETQD_SIM_WIND_HPP
#define ROCKETQD_SIM_WIND_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace rocketqd {

    struct WindCondition {
        double mean = 0.0;   // m/s
        double stdev = 0.0;  // m/s
        double period = 0.1; // s between updates
    };

    /// Calm, moderate, and gusty conditions used for every evaluation.
    inline constexpr WindCondition kWindConditions[3] = {
        {2.0, 0.2, 0.1},
        {3.5667, 1.4667, 0.1},
        {5.1333, 2.7333, 0.1},
    };

    /// Discrete Gauss-Markov wind speed, held constant between updates:
    ///
    ///     v0 = mean
    ///     v <- max(0, v + 0.05 (mean - v) + N(0, stdev sqrt(period)))   every `period` seconds
    ///
    /// The trace is generated lazily and sequentially, so any query order yields the same
    /// values for a given seed.
    class WindTrace {
    public:
        WindTrace(const WindCondition& condition, std::uint64_t seed) : _cond(condition), _rng(seed)
        {
            if (condition.mean < 0.0 || condition.stdev < 0.0)
                throw std::invalid_argument("wind mean and stdev must be non-negative");
            if (!(condition.period > 0.0))
                throw std::invalid_argument("wind update period must be positive");
            _speeds.push_back(condition.mean);
        }

        double speed(double t)
        {
            if (t < 0.0)
                throw std::domain_error("wind queried at negative time");
            const auto k = static_cast<std::size_t>(std::floor(t / _cond.period));
            while (_speeds.size() <= k) {
                const double noise = _cond.stdev > 0.0 ? _normal(_rng) * _cond.stdev * std::sqrt(_cond.period) : 0.0;
                _speeds.push_back(std::max(0.0, _speeds.back() + 0.05 * (_cond.mean - _speeds.back()) + noise));
            }
            return _speeds[k];
        }

        const WindCondition& condition() const { return _cond; }

    private:
        WindCondition _cond;
        std::mt19937_64 _rng;
        std::normal_distribution<double> _normal{0.0, 1.0};
        std::vector<double> _speeds;
    };

    inline double wind_speed(const WindCondition& condition, double t, std::uint64_t seed)
    {
        WindTrace trace(condition, seed);
        return trace.speed(t);
    }

} // namespace rocketqd

#endif
