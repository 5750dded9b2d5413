#ifndef ROCKETQD_SIM_EVALUATE_HPP
#define ROCKETQD_SIM_EVALUATE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <stdexcept>

#include <rocketqd/rocket/barrowman.hpp>
#include <rocketqd/rocket/genome.hpp>
#include <rocketqd/rocket/mass.hpp>
#include <rocketqd/rocket/materials.hpp>
#include <rocketqd/sim/drag.hpp>
#include <rocketqd/sim/flight.hpp>
#include <rocketqd/sim/motor.hpp>
#include <rocketqd/sim/wind.hpp>
#include <rocketqd/util/seed.hpp>

namespace rocketqd {

    inline constexpr double kMaxFitness = 40.0;
    inline constexpr double kStabilityMin = 1.0;
    inline constexpr double kStabilityMax = 3.0;
    inline constexpr double kNoseSlotBuffer = 0.5;

    /// Everything the evaluator needs besides the genome.
    struct ModelConfig {
        Materials materials;
        DragCalibration drag;
        MotorModel motor = estes_a8_3();
        SimOptions sim;
        std::array<WindCondition, 3> winds{kWindConditions[0], kWindConditions[1], kWindConditions[2]};
    };

    struct Evaluation {
        double fitness = 0.0;
        double measure_x = 0.0;
        double measure_y = 0.0;
        std::array<double, 3> altitudes{};
        double calibers = 0.0;
        int nose_index = 0;
        bool failed = false;
    };

    /// Population standard deviation.
    inline double stdev(std::span<const double> values)
    {
        if (values.empty())
            throw std::invalid_argument("stdev of an empty set");
        if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); }))
            return 0.0; // the rounded mean of equal values need not equal them
        const double n = static_cast<double>(values.size());
        const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
        double ss = 0.0;
        for (double v : values)
            ss += (v - mean) * (v - mean);
        return std::sqrt(ss / n);
    }

    /// Combined nose-type / stability coordinate: each nose type owns a slot of width
    /// (stab_max - stab_min) separated by a 0.5 buffer.
    inline double nose_stability_measure(int nose_idx, double calibers)
    {
        const double stab = std::clamp(calibers, kStabilityMin, kStabilityMax);
        return nose_idx * (kNoseSlotBuffer + (kStabilityMax - kStabilityMin)) + (stab - kStabilityMin);
    }

    /// 40 minus the spread of apogees, floored at zero; unstable rockets score zero.
    inline double consistency_fitness(std::span<const double> altitudes, double calibers)
    {
        if (!(calibers >= kStabilityMin))
            return 0.0;
        const double f = kMaxFitness - stdev(altitudes);
        return std::isfinite(f) ? std::max(0.0, f) : 0.0;
    }

    /// Wind seeds for one solution: mix(mix(mix(mix(run) ^ gen) ^ index) ^ condition).
    inline std::array<std::uint64_t, 3> derive_wind_seeds(std::uint64_t run_seed, std::uint64_t generation, std::uint64_t index)
    {
        const std::uint64_t base = mix64(mix64(mix64(run_seed) ^ generation) ^ index);
        return {mix64(base ^ 0), mix64(base ^ 1), mix64(base ^ 2)};
    }

    inline FlightParams flight_params(const RocketDesign& d, const MassProperties& mass, const ModelConfig& cfg)
    {
        FlightParams p;
        p.dry_mass = mass.total - cfg.motor.total_mass;
        p.drag_coefficient = drag_coefficient(d, cfg.drag, cfg.materials.fin_thickness);
        p.reference_area = reference_area();
        return p;
    }

    inline Evaluation evaluate_design(const RocketDesign& d, std::span<const std::uint64_t, 3> seeds, const ModelConfig& cfg)
    {
        Evaluation ev;
        ev.nose_index = nose_index(d.nose.type);
        const MassProperties mass = mass_properties(d, cfg.materials, cfg.motor);
        const StabilityReport stab = stability(d, mass);
        ev.calibers = stab.degenerate ? 0.0 : stab.calibers;

        const FlightParams params = flight_params(d, mass, cfg);
        for (std::size_t i = 0; i < 3; ++i) {
            WindTrace wind(cfg.winds[i], seeds[i]);
            const SimOutcome o = simulate(params, cfg.motor, wind, cfg.sim);
            ev.failed = ev.failed || o.failed();
            ev.altitudes[i] = o.failed() ? 0.0 : o.apogee;
        }
        ev.measure_y = (ev.altitudes[0] + ev.altitudes[1] + ev.altitudes[2]) / 3.0;
        ev.measure_x = nose_stability_measure(ev.nose_index, ev.calibers);
        ev.fitness = (ev.failed || stab.degenerate) ? 0.0 : consistency_fitness(ev.altitudes, ev.calibers);
        return ev;
    }

    inline Evaluation evaluate(const Genome& genome, std::span<const std::uint64_t, 3> seeds, const ModelConfig& cfg = {})
    {
        return evaluate_design(decode(genome), seeds, cfg);
    }

} // namespace rocketqd

#endif
