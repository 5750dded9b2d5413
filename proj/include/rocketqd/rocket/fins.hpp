#ifndef ROCKETQD_ROCKET_FINS_HPP
#define ROCKETQD_ROCKET_FINS_HPP

#include <algorithm>
#include <cmath>
#include <string_view>

#include <rocketqd/rocket/design.hpp>

namespace rocketqd {

    inline constexpr double kMinFinThickness = 0.005; // vertex to opposite edge, meters

    enum class FinCheck {
        Valid,
        NoHeight,       // every y is zero
        NoLength,       // every x is zero
        ExtraOrigin,    // a point other than the first sits at (0,0)
        Duplicate,
        Crossing,
        TooThin,
    };

    constexpr std::string_view fin_check_name(FinCheck c)
    {
        switch (c) {
        case FinCheck::Valid: return "valid";
        case FinCheck::NoHeight: return "no-height";
        case FinCheck::NoLength: return "no-length";
        case FinCheck::ExtraOrigin: return "extra-origin";
        case FinCheck::Duplicate: return "duplicate";
        case FinCheck::Crossing: return "crossing";
        case FinCheck::TooThin: return "too-thin";
        }
        return "unknown";
    }

    namespace geom {
        inline double cross(Point2 o, Point2 a, Point2 b) { return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x); }

        inline int orientation(Point2 o, Point2 a, Point2 b)
        {
            const double c = cross(o, a, b);
            return (c > 0.0) - (c < 0.0);
        }

        /// True when the open segments cross at a single interior point.
        inline bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d)
        {
            const int o1 = orientation(a, b, c);
            const int o2 = orientation(a, b, d);
            const int o3 = orientation(c, d, a);
            const int o4 = orientation(c, d, b);
            return o1 * o2 < 0 && o3 * o4 < 0;
        }

        inline double point_segment_distance(Point2 p, Point2 a, Point2 b)
        {
            const double dx = b.x - a.x;
            const double dy = b.y - a.y;
            const double len2 = dx * dx + dy * dy;
            double t = 0.0;
            if (len2 > 0.0)
                t = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / len2, 0.0, 1.0);
            return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
        }

        /// Shoelace area, always non-negative.
        inline double polygon_area(const FinPoints& pts)
        {
            double s = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto& p = pts[i];
                const auto& q = pts[(i + 1) % pts.size()];
                s += p.x * q.y - q.x * p.y;
            }
            return std::abs(s) / 2.0;
        }

        inline Point2 polygon_centroid(const FinPoints& pts)
        {
            double a = 0.0, cx = 0.0, cy = 0.0;
            for (std::size_t i = 0; i < pts.size(); ++i) {
                const auto& p = pts[i];
                const auto& q = pts[(i + 1) % pts.size()];
                const double c = p.x * q.y - q.x * p.y;
                a += c;
                cx += (p.x + q.x) * c;
                cy += (p.y + q.y) * c;
            }
            if (std::abs(a) < 1e-18) {
                Point2 m{};
                for (const auto& p : pts) {
                    m.x += p.x / pts.size();
                    m.y += p.y / pts.size();
                }
                return m;
            }
            return {cx / (3.0 * a), cy / (3.0 * a)};
        }
    } // namespace geom

    /// Checks a decoded fin outline against the manufacturability rules. Rules are
    /// tested in a fixed order and the first violation is reported.
    inline FinCheck validate_fins(const FinPoints& pts)
    {
        const bool any_y = std::any_of(pts.begin(), pts.end(), [](Point2 p) { return p.y > 0.0; });
        if (!any_y)
            return FinCheck::NoHeight;
        const bool any_x = std::any_of(pts.begin(), pts.end(), [](Point2 p) { return p.x > 0.0; });
        if (!any_x)
            return FinCheck::NoLength;
        for (std::size_t i = 1; i < pts.size(); ++i)
            if (pts[i] == Point2{0.0, 0.0})
                return FinCheck::ExtraOrigin;
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = i + 1; j < pts.size(); ++j)
                if (pts[i] == pts[j])
                    return FinCheck::Duplicate;

        const std::size_t n = pts.size();
        // non-adjacent edge pairs of the closed outline
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 2; j < n; ++j) {
                if (i == 0 && j == n - 1)
                    continue;
                if (geom::segments_cross(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]))
                    return FinCheck::Crossing;
            }

        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t e = 0; e < n; ++e) {
                const std::size_t e1 = (e + 1) % n;
                if (e == v || e1 == v)
                    continue;
                if (geom::point_segment_distance(pts[v], pts[e], pts[e1]) < kMinFinThickness)
                    return FinCheck::TooThin;
            }
        return FinCheck::Valid;
    }

} // namespace rocketqd

#endif
