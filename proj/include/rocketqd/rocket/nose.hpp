#ifndef ROCKETQD_ROCKET_NOSE_HPP
#define ROCKETQD_ROCKET_NOSE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <rocketqd/rocket/design.hpp>

namespace rocketqd {

    inline constexpr double kHaackMaxShape = 1.0 / 3.0;

    namespace detail {
        inline double safe_sqrt(double v) { return v > 0.0 ? std::sqrt(v) : 0.0; }
    } // namespace detail

    /// Radius of a nose profile at distance x from the tip.
    ///
    /// OGIVE follows the circular-arc family used by OpenRocket: the arc through the tip
    /// and the base whose tangency is blended by kappa, so kappa = 0 is the cone and
    /// kappa = 1 is the tangent ogive. POWER is R (x/L)^kappa, PARABOLIC is the
    /// kappa-segment of a parabola, HAACK is the Haack series with C = min(kappa, 1/3).
    inline double nose_radius(NoseType type, double shape, double length, double x, double base_radius = kBodyRadius)
    {
        if (!(length > 0.0))
            throw std::domain_error("nose length must be positive");
        if (!(x >= 0.0 && x <= length))
            throw std::domain_error("nose station outside [0, L]");

        const double R = base_radius;
        const double xi = x / length;
        switch (type) {
        case NoseType::Conical:
            return R * xi;
        case NoseType::Ellipsoid:
            return R * detail::safe_sqrt(1.0 - (1.0 - xi) * (1.0 - xi));
        case NoseType::Power:
            if (x == 0.0)
                return 0.0;
            return R * std::pow(xi, shape);
        case NoseType::Parabolic:
            return R * (xi * (2.0 - shape * xi)) / (2.0 - shape);
        case NoseType::Haack: {
            const double c = std::min(shape, kHaackMaxShape);
            const double theta = std::acos(std::clamp(1.0 - 2.0 * xi, -1.0, 1.0));
            const double s = std::sin(theta);
            return R * detail::safe_sqrt(theta - std::sin(2.0 * theta) / 2.0 + c * s * s * s) / std::sqrt(std::numbers::pi);
        }
        case NoseType::Ogive: {
            double len = length;
            double pos = x;
            if (len < R) {
                pos = pos * R / len;
                len = R;
            }
            if (shape < 0.001)
                return R * pos / len;
            const double p = shape;
            const double arc = std::sqrt((len * len + R * R) * ((2.0 - p) * len * (2.0 - p) * len + (p * R) * (p * R))
                / (4.0 * (p * R) * (p * R)));
            const double lp = len / p;
            const double y0 = detail::safe_sqrt(arc * arc - lp * lp);
            return std::clamp(detail::safe_sqrt(arc * arc - (lp - pos) * (lp - pos)) - y0, 0.0, R);
        }
        }
        throw std::domain_error("unknown nose type");
    }

    inline double nose_radius(const NoseCone& nose, double x) { return nose_radius(nose.type, nose.shape, nose.length, x); }

    /// Sampled profile integrals used by mass, aerodynamics and drag.
    struct NoseIntegrals {
        double solid_volume = 0.0;   // volume enclosed by the outer surface
        double shell_volume = 0.0;   // wall material volume
        double shell_centroid = 0.0; // from the tip
        double wetted_area = 0.0;
        double planform_area = 0.0;
    };

    /// Composite Simpson over `intervals` (even) panels. The shell wall is modelled as a
    /// radial offset of the outer profile, capped at the local radius.
    inline NoseIntegrals integrate_nose(const NoseCone& nose, int intervals = 256)
    {
        if (intervals % 2 != 0)
            ++intervals;
        const double L = nose.length;
        const double h = L / intervals;
        const double t = nose.wall_thickness;
        NoseIntegrals out;
        double shell_moment = 0.0;
        double prev_r = 0.0;
        for (int i = 0; i <= intervals; ++i) {
            const double x = (i == intervals) ? L : i * h;
            const double r = nose_radius(nose, x);
            const double inner = std::max(0.0, r - t);
            const double w = (i == 0 || i == intervals) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            const double solid = std::numbers::pi * r * r;
            const double shell = std::numbers::pi * (r * r - inner * inner);
            out.solid_volume += w * solid;
            out.shell_volume += w * shell;
            shell_moment += w * shell * x;
            out.planform_area += w * 2.0 * r;
            if (i > 0) {
                // frustum strips; exact for piecewise-linear profiles
                const double dr = r - prev_r;
                out.wetted_area += std::numbers::pi * (r + prev_r) * std::sqrt(h * h + dr * dr);
            }
            prev_r = r;
        }
        out.solid_volume *= h / 3.0;
        out.shell_volume *= h / 3.0;
        shell_moment *= h / 3.0;
        out.planform_area *= h / 3.0;
        out.shell_centroid = out.shell_volume > 0.0 ? shell_moment / out.shell_volume : L / 2.0;
        return out;
    }

} // namespace rocketqd

#endif
