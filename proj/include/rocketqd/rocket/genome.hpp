#ifndef ROCKETQD_ROCKET_GENOME_HPP
#define ROCKETQD_ROCKET_GENOME_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <span>
#include <stdexcept>
#include <string_view>

#include <rocketqd/rocket/design.hpp>
#include <rocketqd/rocket/fins.hpp>
#include <rocketqd/rocket/nose.hpp>

namespace rocketqd {

    enum class GeneRole {
        NoseLength,
        NoseType,
        NoseShape,
        NoseThickness,
        BodyLength,
        FinCount,
        FinX1,
        FinY1,
        FinX2,
        FinY2,
        FinX3,
    };

    struct GeneSpec {
        double lo;
        double hi;
        GeneRole role;
        std::string_view name;
    };

    using GeneTable = std::array<GeneSpec, kGenomeSize>;

    inline constexpr GeneTable kGeneTable{{
        {0.05, 0.3, GeneRole::NoseLength, "nose_length"},
        {0.0, 6.0, GeneRole::NoseType, "nose_type"},
        {0.0, 1.0, GeneRole::NoseShape, "nose_shape"},
        {0.001, 0.009, GeneRole::NoseThickness, "nose_thickness"},
        {0.2, 1.0, GeneRole::BodyLength, "body_length"},
        {2.0, 6.0, GeneRole::FinCount, "fin_count"},
        {0.0, 0.1, GeneRole::FinX1, "fin_x1"},
        {0.0, 0.1, GeneRole::FinY1, "fin_y1"},
        {0.0, 0.1, GeneRole::FinX2, "fin_x2"},
        {0.0, 0.1, GeneRole::FinY2, "fin_y2"},
        {0.02, 0.1, GeneRole::FinX3, "fin_x3"},
    }};

    /// Logistic squashing; saturates to exactly 0 or 1 in double precision for |raw| >~ 37.
    inline double squash(double raw) { return 1.0 / (1.0 + std::exp(-raw)); }

    /// Inverse of squash for u in (0,1); used to build genomes for known designs.
    inline double unsquash(double unit)
    {
        if (!(unit > 0.0 && unit < 1.0))
            throw std::domain_error("unsquash requires a value in (0,1)");
        return std::log(unit / (1.0 - unit));
    }

    inline double scale_gene(double raw, const GeneSpec& spec)
    {
        return std::clamp(spec.lo + squash(raw) * (spec.hi - spec.lo), spec.lo, spec.hi);
    }

    /// Truncating integer decode where the closed upper end folds into the last slot.
    inline int truncate_gene(double scaled, int max_value)
    {
        const int v = static_cast<int>(std::floor(scaled));
        return std::min(v, max_value);
    }

    /// Decoded, still-continuous gene values (integer genes before truncation).
    inline std::array<double, kGenomeSize> scaled_genes(const Genome& genome, const GeneTable& table = kGeneTable)
    {
        std::array<double, kGenomeSize> out{};
        for (std::size_t i = 0; i < kGenomeSize; ++i)
            out[i] = scale_gene(genome[i], table[i]);
        return out;
    }

    /// Total: every genome maps to a design. Invalid fin outlines revert to the
    /// reference parallelogram.
    inline RocketDesign decode(const Genome& genome, const GeneTable& table = kGeneTable)
    {
        const auto v = scaled_genes(genome, table);
        RocketDesign d;
        d.nose.length = v[0];
        d.nose.type = nose_type_from_index(truncate_gene(v[1], kNoseTypeCount - 1));
        d.nose.shape = v[2];
        if (d.nose.type == NoseType::Haack)
            d.nose.shape = std::min(d.nose.shape, kHaackMaxShape);
        d.nose.wall_thickness = v[3];
        d.body.length = v[4];
        d.fins.count = truncate_gene(v[5], 5);
        d.fins.points = {{{0.0, 0.0}, {v[6], v[7]}, {v[8], v[9]}, {v[10], 0.0}}};
        if (validate_fins(d.fins.points) != FinCheck::Valid) {
            d.fins.points = kBaseFinPoints;
            d.fins.fallback_used = true;
        }
        return d;
    }

    /// Genome whose decoded scalars equal the given unit-interval positions.
    inline Genome genome_from_units(std::span<const double, kGenomeSize> units)
    {
        Genome g{};
        for (std::size_t i = 0; i < kGenomeSize; ++i)
            g[i] = unsquash(units[i]);
        return g;
    }

    /// Genome that reproduces the reference model: 0.1 m OGIVE nose (kappa 0.5, 2 mm wall),
    /// 0.3 m body, three parallelogram fins.
    inline Genome reference_genome(const GeneTable& table = kGeneTable)
    {
        const std::array<double, kGenomeSize> values{0.1, 0.5, 0.5, 0.002, 0.3, 3.5, 0.025, 0.03, 0.075, 0.03, 0.05};
        std::array<double, kGenomeSize> units{};
        for (std::size_t i = 0; i < kGenomeSize; ++i)
            units[i] = (values[i] - table[i].lo) / (table[i].hi - table[i].lo);
        return genome_from_units(units);
    }

} // namespace rocketqd

#endif
