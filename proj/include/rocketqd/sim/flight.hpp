#ifndef ROCKETQD_SIM_FLIGHT_HPP
#define ROCKETQD_SIM_FLIGHT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include <rocketqd/sim/motor.hpp>
#include <rocketqd/sim/wind.hpp>

namespace rocketqd {

    inline constexpr double kGravity = 9.80665;
    inline constexpr double kAirDensity = 1.225;

    struct FlightParams {
        double dry_mass = 0.0;         // kg, everything except the motor
        double drag_coefficient = 0.0; // referenced to `reference_area`
        double reference_area = 0.0;   // m^2
    };

    struct SimOptions {
        double dt = 0.01;
        double rail_length = 1.0;
        double max_time = 120.0;
        bool constant_mass = false; // hold the launch mass; used by analytic checks
        bool record_trajectory = false;
    };

    struct TrajectorySample {
        double t, x, z, u, w, mass;
    };

    enum class SimStatus { Ok, NoLiftoff, BlowUp, Timeout };

    struct SimOutcome {
        double apogee = 0.0;
        double time_to_apogee = 0.0;
        double max_speed = 0.0;
        SimStatus status = SimStatus::Ok;
        std::vector<TrajectorySample> trajectory;

        bool failed() const { return status == SimStatus::BlowUp || status == SimStatus::Timeout; }
    };

    namespace detail {
        struct FlightState {
            double x, z, u, w;
        };

        struct FlightDeriv {
            double dx, dz, du, dw;
        };

        inline FlightState advance(const FlightState& s, const FlightDeriv& d, double h)
        {
            return {s.x + h * d.dx, s.z + h * d.dz, s.u + h * d.du, s.w + h * d.dw};
        }
    } // namespace detail

    /// Planar point-mass flight to apogee, integrated with fixed-step RK4.
    ///
    /// Thrust acts along the air-relative velocity (gravity turn into the wind); drag
    /// opposes it. For the first `rail_length` meters motion is vertical and crosswind is
    /// ignored. The rocket sits on the pad until thrust exceeds weight. The run ends when
    /// vertical velocity drops to zero after liftoff; apogee is refined by assuming
    /// constant deceleration over the final step.
    inline SimOutcome simulate(const FlightParams& params, const MotorModel& motor, WindTrace& wind, const SimOptions& opt = {})
    {
        using detail::FlightDeriv;
        using detail::FlightState;

        SimOutcome out;
        const double k_drag = 0.5 * kAirDensity * params.drag_coefficient * params.reference_area;
        const double launch_mass = params.dry_mass + motor.total_mass;
        auto mass_at = [&](double t) { return opt.constant_mass ? launch_mass : params.dry_mass + motor.mass(t); };

        bool on_rail = true;
        bool lifted = false;

        auto deriv = [&](double t, const FlightState& s) -> FlightDeriv {
            const double m = mass_at(t);
            const double thrust = motor.thrust(t);
            if (on_rail) {
                const double drag = k_drag * s.w * std::abs(s.w);
                double a = (thrust - drag) / m - kGravity;
                if (s.z <= 0.0 && s.w <= 0.0 && a < 0.0)
                    a = 0.0; // resting on the pad
                return {0.0, s.w, 0.0, a};
            }
            const double vx = s.u - wind.speed(t);
            const double vz = s.w;
            const double v = std::hypot(vx, vz);
            double ex = 0.0, ez = 1.0;
            if (v > 1e-9) {
                ex = vx / v;
                ez = vz / v;
            }
            const double along = (thrust - k_drag * v * v) / m;
            return {s.u, s.w, along * ex, along * ez - kGravity};
        };

        FlightState s{0.0, 0.0, 0.0, 0.0};
        double t = 0.0;
        const double h = opt.dt;
        auto record = [&](double time, const FlightState& st) {
            if (opt.record_trajectory)
                out.trajectory.push_back({time, st.x, st.z, st.u, st.w, mass_at(time)});
        };
        record(t, s);

        const double idle_limit = motor.burn_time() + h;
        // end stages sit just inside the step so a thrust step on a step boundary is
        // integrated from the correct side
        const double inset = 1e-9 * h;
        while (true) {
            const FlightDeriv k1 = deriv(t + inset, s);
            const FlightDeriv k2 = deriv(t + h / 2.0, detail::advance(s, k1, h / 2.0));
            const FlightDeriv k3 = deriv(t + h / 2.0, detail::advance(s, k2, h / 2.0));
            const FlightDeriv k4 = deriv(t + h - inset, detail::advance(s, k3, h));
            FlightState next{
                s.x + h / 6.0 * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
                s.z + h / 6.0 * (k1.dz + 2.0 * k2.dz + 2.0 * k3.dz + k4.dz),
                s.u + h / 6.0 * (k1.du + 2.0 * k2.du + 2.0 * k3.du + k4.du),
                s.w + h / 6.0 * (k1.dw + 2.0 * k2.dw + 2.0 * k3.dw + k4.dw),
            };
            const double t_next = t + h;

            if (!std::isfinite(next.x) || !std::isfinite(next.z) || !std::isfinite(next.u) || !std::isfinite(next.w)) {
                out.status = SimStatus::BlowUp;
                out.apogee = 0.0;
                return out;
            }

            if (!lifted) {
                if (next.z > 0.0 && next.w > 0.0) {
                    lifted = true;
                } else {
                    next = {0.0, 0.0, 0.0, 0.0};
                    if (t_next > idle_limit) {
                        out.status = SimStatus::NoLiftoff;
                        record(t_next, next);
                        return out;
                    }
                }
            }

            out.max_speed = std::max(out.max_speed, std::hypot(next.u, next.w));

            if (lifted && next.w <= 0.0) {
                // constant deceleration over the step: z peaks where w crosses zero
                const double dw = s.w - next.w;
                double tau = dw > 0.0 ? h * s.w / dw : h;
                tau = std::clamp(tau, 0.0, h);
                const double z_peak = s.z + 0.5 * s.w * tau;
                out.apogee = std::max({z_peak, s.z, next.z, 0.0});
                out.time_to_apogee = t + tau;
                record(t_next, next);
                return out;
            }

            s = next;
            t = t_next;
            record(t, s);
            if (on_rail && s.z >= opt.rail_length)
                on_rail = false;
            if (t >= opt.max_time) {
                out.status = SimStatus::Timeout;
                out.apogee = std::max(0.0, s.z);
                return out;
            }
        }
    }

} // namespace rocketqd

#endif
