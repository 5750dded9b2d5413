#ifndef ROCKETQD_ROCKET_DESIGN_HPP
#define ROCKETQD_ROCKET_DESIGN_HPP

#include <algorithm>
#include <array>
#include <cstddef>
#include <stdexcept>
#include <string_view>

namespace rocketqd {

    inline constexpr std::size_t kGenomeSize = 11;
    using Genome = std::array<double, kGenomeSize>;

    // Fixed body tube (24.8 mm OD cardboard tube for 18 mm motors).
    inline constexpr double kBodyOuterDiameter = 0.0248;
    inline constexpr double kBodyInnerDiameter = 0.0241;
    inline constexpr double kBodyRadius = kBodyOuterDiameter / 2.0;
    // Fin root leading edge sits this far above the bottom of the body tube.
    inline constexpr double kFinRootOffset = 0.05;

    enum class NoseType : int { Ogive = 0, Conical = 1, Ellipsoid = 2, Power = 3, Parabolic = 4, Haack = 5 };
    inline constexpr int kNoseTypeCount = 6;

    constexpr std::string_view nose_type_name(NoseType t)
    {
        switch (t) {
        case NoseType::Ogive: return "OGIVE";
        case NoseType::Conical: return "CONICAL";
        case NoseType::Ellipsoid: return "ELLIPSOID";
        case NoseType::Power: return "POWER";
        case NoseType::Parabolic: return "PARABOLIC";
        case NoseType::Haack: return "HAACK";
        }
        return "UNKNOWN";
    }

    inline NoseType nose_type_from_index(int k)
    {
        if (k < 0 || k >= kNoseTypeCount)
            throw std::out_of_range("nose type index out of range");
        return static_cast<NoseType>(k);
    }

    constexpr int nose_index(NoseType t) { return static_cast<int>(t); }

    struct Point2 {
        double x = 0.0;
        double y = 0.0;
        friend bool operator==(const Point2&, const Point2&) = default;
    };

    /// Fin outline in fin-local coordinates: x runs aft along the tube from the root
    /// leading edge, y runs outward from the tube surface. The first point is always
    /// the origin and the last point always sits on the tube (y = 0).
    using FinPoints = std::array<Point2, 4>;

    struct NoseCone {
        NoseType type = NoseType::Ogive;
        double length = 0.1;
        double shape = 0.0; // kappa; HAACK values are stored clipped to 1/3
        double wall_thickness = 0.002;
    };

    struct BodyTube {
        double length = 0.3;
        double outer_diameter = kBodyOuterDiameter;
        double inner_diameter = kBodyInnerDiameter;
    };

    struct FinSet {
        int count = 3;
        FinPoints points{};
        bool fallback_used = false;
    };

    struct RocketDesign {
        NoseCone nose;
        BodyTube body;
        FinSet fins;

        double airframe_length() const { return nose.length + body.length; }
        double fin_root_position() const { return airframe_length() - kFinRootOffset; }
        /// Overall length including any fin overhang past the tail of the tube.
        double total_length() const
        {
            double aft = airframe_length();
            for (const auto& p : fins.points)
                aft = std::max(aft, fin_root_position() + p.x);
            return aft;
        }
    };

    /// Parallelogram fin of the reference model: (0,0) (0.025,0.03) (0.075,0.03) (0.05,0).
    inline constexpr FinPoints kBaseFinPoints{{{0.0, 0.0}, {0.025, 0.03}, {0.075, 0.03}, {0.05, 0.0}}};

} // namespace rocketqd

#endif
