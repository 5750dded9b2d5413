#ifndef ROCKETQD_ROCKET_BARROWMAN_HPP
#define ROCKETQD_ROCKET_BARROWMAN_HPP

#include <algorithm>
#include <cmath>
#include <numbers>

#include <rocketqd/rocket/design.hpp>
#include <rocketqd/rocket/mass.hpp>
#include <rocketqd/rocket/nose.hpp>

namespace rocketqd {

    inline constexpr double kOgiveTangentCpFraction = 0.466;
    inline constexpr double kMinStableCalibers = 1.0;

    struct AeroComponent {
        double cn_alpha = 0.0;
        double x_cp = 0.0; // m from the nose tip
    };

    /// Trapezoid equivalent of a four-point fin, as used by the Barrowman fin terms.
    struct FinTrapezoid {
        double root_chord = 0.0;
        double tip_chord = 0.0;
        double span = 0.0;
        double sweep = 0.0;     // tip leading edge aft of root leading edge
        double mid_chord = 0.0; // length of the mid-chord line
    };

    struct StabilityReport {
        double cp = 0.0;
        double cn_alpha = 0.0;
        double cg = 0.0;
        double calibers = 0.0;
        bool degenerate = false;

        bool unstable() const { return degenerate || !(calibers >= kMinStableCalibers); }
    };

    /// Fraction of nose length at which the nose normal force acts.
    ///
    /// CONICAL is exactly 2/3 and OGIVE interpolates linearly in kappa from the cone to the
    /// tangent-ogive value 0.466. The remaining shapes use Barrowman's volume relation
    /// x_cp = L - V / A_base with V integrated numerically from the profile.
    inline double nose_cp_fraction(const NoseCone& nose)
    {
        switch (nose.type) {
        case NoseType::Conical:
            return 2.0 / 3.0;
        case NoseType::Ogive:
            return 2.0 / 3.0 - std::clamp(nose.shape, 0.0, 1.0) * (2.0 / 3.0 - kOgiveTangentCpFraction);
        default: {
            const double base_area = std::numbers::pi * kBodyRadius * kBodyRadius;
            const double volume = integrate_nose(nose).solid_volume;
            return 1.0 - volume / (base_area * nose.length);
        }
        }
    }

    inline AeroComponent nose_aero(const NoseCone& nose) { return {2.0, nose_cp_fraction(nose) * nose.length}; }

    inline FinTrapezoid fin_trapezoid(const FinPoints& p)
    {
        FinTrapezoid t;
        t.root_chord = p[3].x;
        t.tip_chord = std::abs(p[2].x - p[1].x);
        t.span = std::max(p[1].y, p[2].y);
        t.sweep = std::min(p[1].x, p[2].x);
        const double dx = t.sweep + t.tip_chord / 2.0 - t.root_chord / 2.0;
        t.mid_chord = std::sqrt(t.span * t.span + dx * dx);
        return t;
    }

    /// Barrowman fin-set normal force slope (with body interference) and its location.
    inline AeroComponent fin_aero(const RocketDesign& d)
    {
        const FinTrapezoid t = fin_trapezoid(d.fins.points);
        const double a = t.root_chord;
        const double b = t.tip_chord;
        const double chord_sum = a + b;
        if (!(chord_sum > 0.0) || !(t.span > 0.0))
            return {0.0, d.fin_root_position()};
        const double ref_d = kBodyOuterDiameter;
        const double r = kBodyRadius;
        const double n = d.fins.count;
        const double ratio = 2.0 * t.mid_chord / chord_sum;
        const double cn = 4.0 * n * (t.span / ref_d) * (t.span / ref_d) / (1.0 + std::sqrt(1.0 + ratio * ratio));
        const double interference = 1.0 + r / (t.span + r);
        const double x = d.fin_root_position() + t.sweep * (a + 2.0 * b) / (3.0 * chord_sum)
            + (chord_sum - a * b / chord_sum) / 6.0;
        return {cn * interference, x};
    }

    inline StabilityReport center_of_pressure(const RocketDesign& d)
    {
        const AeroComponent nose = nose_aero(d.nose);
        const AeroComponent fins = fin_aero(d);
        StabilityReport rep;
        rep.cn_alpha = nose.cn_alpha + fins.cn_alpha;
        if (!(rep.cn_alpha > 0.0) || !std::isfinite(rep.cn_alpha)) {
            rep.degenerate = true;
            return rep;
        }
        rep.cp = (nose.cn_alpha * nose.x_cp + fins.cn_alpha * fins.x_cp) / rep.cn_alpha;
        rep.degenerate = !std::isfinite(rep.cp);
        return rep;
    }

    /// Full report with the CG taken at the motor-loaded, pre-launch mass.
    inline StabilityReport stability(const RocketDesign& d, const MassProperties& mass)
    {
        StabilityReport rep = center_of_pressure(d);
        rep.cg = mass.cg;
        if (!rep.degenerate)
            rep.calibers = (rep.cp - rep.cg) / kBodyOuterDiameter;
        rep.degenerate = rep.degenerate || !std::isfinite(rep.calibers);
        return rep;
    }

    inline double stability_calibers(const RocketDesign& d, const Materials& mat, const MotorModel& motor)
    {
        return stability(d, mass_properties(d, mat, motor)).calibers;
    }

} // namespace rocketqd

#endif
