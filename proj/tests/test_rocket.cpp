#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <rocketqd/rocket/barrowman.hpp>
#include <rocketqd/rocket/fins.hpp>
#include <rocketqd/rocket/genome.hpp>
#include <rocketqd/rocket/mass.hpp>
#include <rocketqd/rocket/materials.hpp>
#include <rocketqd/rocket/nose.hpp>
#include <rocketqd/sim/evaluate.hpp>
#include <rocketqd/sim/motor.hpp>

#include "fin_oracle.hpp"

using namespace rocketqd;
using namespace rocketqd::fin_check;

namespace {

    constexpr NoseType kAllTypes[] = {NoseType::Ogive, NoseType::Conical, NoseType::Ellipsoid, NoseType::Power, NoseType::Parabolic,
        NoseType::Haack};

    Genome random_genome(std::mt19937_64& rng, double spread = 3.0)
    {
        std::normal_distribution<double> n(0.0, spread);
        Genome g{};
        for (double& v : g)
            v = n(rng);
        return g;
    }

    // Jump detection by bisection: a real discontinuity keeps a jump above tol at any
    // resolution, a steep continuous profile does not.
    template <typename F>
    bool has_jump(F&& f, double a, double b, double tol)
    {
        double fa = f(a), fb = f(b);
        for (int i = 0; i < 80; ++i) {
            if (std::abs(fb - fa) < tol)
                return false;
            const double m = 0.5 * (a + b);
            if (m <= a || m >= b)
                return true;
            const double fm = f(m);
            if (std::abs(fm - fa) >= std::abs(fb - fm)) {
                b = m;
                fb = fm;
            } else {
                a = m;
                fa = fm;
            }
        }
        return std::abs(fb - fa) >= tol;
    }

} // namespace

TEST(Squash, Examples)
{
    EXPECT_EQ(squash(0.0), 0.5);
    EXPECT_EQ(squash(40.0), 1.0);
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-50.0, 50.0);
    for (int i = 0; i < 10000; ++i) {
        const double r = u(rng);
        ASSERT_NEAR(squash(-r), 1.0 - squash(r), 1e-15);
    }
}

TEST(Decode, ZeroGenomeMidpoints)
{
    const RocketDesign d = decode(Genome{});
    EXPECT_DOUBLE_EQ(d.nose.length, 0.175);
    EXPECT_DOUBLE_EQ(d.body.length, 0.6);
    EXPECT_EQ(d.nose.type, NoseType::Power);
    EXPECT_EQ(d.fins.count, 4);
    // midpoint fins (0.05,0.05) (0.05,0.05) duplicate: the outline falls back
    EXPECT_TRUE(d.fins.fallback_used);
    EXPECT_DOUBLE_EQ(scaled_genes(Genome{})[10], 0.06);
}

TEST(Decode, SixFoldsToFive)
{
    Genome g{};
    g[1] = 40.0;
    g[5] = 40.0;
    const RocketDesign d = decode(g);
    EXPECT_EQ(d.nose.type, NoseType::Haack);
    EXPECT_EQ(d.fins.count, 5);
    g[1] = -40.0;
    g[5] = -40.0;
    EXPECT_EQ(decode(g).nose.type, NoseType::Ogive);
    EXPECT_EQ(decode(g).fins.count, 2);
}

TEST(Decode, ReferenceDesignIsRepresentable)
{
    const RocketDesign d = decode(reference_genome());
    EXPECT_EQ(d.nose.type, NoseType::Ogive);
    EXPECT_EQ(d.fins.count, 3);
    EXPECT_FALSE(d.fins.fallback_used);
    EXPECT_NEAR(d.nose.length, 0.1, 1e-15);
    EXPECT_NEAR(d.body.length, 0.3, 1e-15);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_NEAR(d.fins.points[i].x, kBaseFinPoints[i].x, 1e-15);
        EXPECT_NEAR(d.fins.points[i].y, kBaseFinPoints[i].y, 1e-15);
    }
}

TEST(Decode, FallbackEqualsBaseExactly)
{
    Genome g{};
    g[7] = -40.0; // y1 = 0
    g[9] = -40.0; // y2 = 0
    const RocketDesign d = decode(g);
    ASSERT_TRUE(d.fins.fallback_used);
    EXPECT_EQ(d.fins.points, kBaseFinPoints);
    EXPECT_EQ(d.fins.points[1], (Point2{0.025, 0.03}));
    EXPECT_EQ(d.fins.points[2], (Point2{0.075, 0.03}));
    EXPECT_EQ(d.fins.points[3], (Point2{0.05, 0.0}));
}

TEST(Decode, RangeSoundnessFuzz)
{
    std::mt19937_64 rng(77);
    for (int i = 0; i < 1000000; ++i) {
        const Genome g = random_genome(rng, i % 2 ? 1.0 : 20.0);
        const auto v = scaled_genes(g);
        for (std::size_t k = 0; k < kGenomeSize; ++k) {
            ASSERT_GE(v[k], kGeneTable[k].lo);
            ASSERT_LE(v[k], kGeneTable[k].hi);
        }
        const RocketDesign d = decode(g);
        ASSERT_GE(d.fins.count, 2);
        ASSERT_LE(d.fins.count, 5);
        ASSERT_GE(nose_index(d.nose.type), 0);
        ASSERT_LE(nose_index(d.nose.type), 5);
        ASSERT_GE(d.nose.shape, 0.0);
        ASSERT_LE(d.nose.shape, 1.0);
        if (d.nose.type == NoseType::Haack) {
            ASSERT_LE(d.nose.shape, 1.0 / 3.0);
        }
        if (d.fins.fallback_used)
            ASSERT_EQ(d.fins.points, kBaseFinPoints);
        else
            ASSERT_EQ(validate_fins(d.fins.points), FinCheck::Valid);
    }
}

TEST(Decode, Deterministic)
{
    std::mt19937_64 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const Genome g = random_genome(rng);
        const RocketDesign a = decode(g), b = decode(g);
        ASSERT_EQ(a.fins.points, b.fins.points);
        ASSERT_EQ(a.nose.length, b.nose.length);
        ASSERT_EQ(a.nose.shape, b.nose.shape);
        ASSERT_EQ(a.body.length, b.body.length);
    }
}

TEST(ValidateFins, Examples)
{
    EXPECT_EQ(validate_fins(kBaseFinPoints), FinCheck::Valid);
    EXPECT_EQ(validate_fins({{{0, 0}, {0.02, 0}, {0.04, 0}, {0.06, 0}}}), FinCheck::NoHeight);
    EXPECT_EQ(validate_fins({{{0, 0}, {0.08, 0.05}, {0.01, 0.05}, {0.09, 0}}}), FinCheck::Crossing);
    EXPECT_TRUE(oracle::proper_intersection({0, 0}, {0.08, 0.05}, {0.01, 0.05}, {0.09, 0}));
    EXPECT_EQ(validate_fins({{{0, 0}, {0.0, 0.0}, {0.04, 0.03}, {0.06, 0}}}), FinCheck::ExtraOrigin);
    EXPECT_EQ(validate_fins({{{0, 0}, {0.03, 0.03}, {0.03, 0.03}, {0.06, 0}}}), FinCheck::Duplicate);
    // a sliver: vertex 2 sits 3 mm above the root edge
    EXPECT_EQ(validate_fins({{{0, 0}, {0.02, 0.003}, {0.04, 0.003}, {0.06, 0}}}), FinCheck::TooThin);
}

TEST(ValidateFins, MatchesBruteForceOracle)
{
    std::mt19937_64 rng(2718);
    int disagreements = 0, valid = 0;
    for (int i = 0; i < 100000; ++i) {
        const FinPoints p = random_fin(rng);
        const bool ours = validate_fins(p) == FinCheck::Valid;
        valid += ours;
        if (ours != oracle::valid(p))
            ++disagreements;
    }
    EXPECT_EQ(disagreements, 0);
    EXPECT_GT(valid, 1000); // both outcomes exercised
    EXPECT_LT(valid, 99000);
}

TEST(NoseRadius, BaseAndTip)
{
    for (NoseType t : kAllTypes)
        for (double k : {0.0, 0.25, 0.5, 0.75, 1.0})
            for (double L : {0.05, 0.1, 0.3}) {
                EXPECT_NEAR(nose_radius(t, k, L, L), kBodyRadius, 1e-12) << nose_type_name(t) << " k=" << k;
                if (!(t == NoseType::Power && k == 0.0)) {
                    EXPECT_NEAR(nose_radius(t, k, L, 0.0), 0.0, 1e-12) << nose_type_name(t) << " k=" << k;
                }
            }
    EXPECT_NEAR(nose_radius(NoseType::Conical, 0.0, 0.1, 0.05), 0.0062, 1e-15);
    EXPECT_NEAR(nose_radius(NoseType::Power, 0.0, 0.1, 1e-9), kBodyRadius, 1e-15);
    EXPECT_THROW(nose_radius(NoseType::Conical, 0.0, 0.1, 0.2), std::domain_error);
    EXPECT_THROW(nose_radius(NoseType::Conical, 0.0, 0.1, -1e-9), std::domain_error);
}

TEST(NoseRadius, HaackClipsAboveOneThird)
{
    for (int i = 0; i <= 100; ++i) {
        const double x = 0.1 * i / 100.0;
        ASSERT_EQ(nose_radius(NoseType::Haack, 0.5, 0.1, x), nose_radius(NoseType::Haack, 1.0 / 3.0, 0.1, x));
    }
    Genome g{};
    g[1] = 40.0;
    g[2] = 0.0; // kappa 0.5
    EXPECT_DOUBLE_EQ(decode(g).nose.shape, 1.0 / 3.0);
}

TEST(NoseRadius, ContinuityScan)
{
    const double L = 0.1, step = 1e-4 * L, tol = 1e-6;
    for (NoseType t : kAllTypes)
        for (int ki = 0; ki <= 20; ++ki) {
            const double k = ki / 20.0;
            const auto f = [&](double x) { return nose_radius(t, k, L, std::clamp(x, 0.0, L)); };
            for (int i = 0; i < 10000; ++i) {
                if (t == NoseType::Power && i == 0)
                    continue; // blunt-tip behaviour at x = 0
                const double a = i * step, b = std::min(L, (i + 1) * step);
                ASSERT_FALSE(has_jump(f, a, b, tol)) << nose_type_name(t) << " kappa " << k << " at x=" << a;
            }
        }
}

TEST(NoseRadius, OgiveBlendsConeToTangent)
{
    const double L = 0.1;
    for (int i = 0; i <= 50; ++i) {
        const double x = L * i / 50.0;
        EXPECT_NEAR(nose_radius(NoseType::Ogive, 0.0, L, x), nose_radius(NoseType::Conical, 0.0, L, x), 1e-15);
    }
    // tangent ogive meets the body with zero slope
    const double h = 1e-7;
    const double slope = (nose_radius(NoseType::Ogive, 1.0, L, L) - nose_radius(NoseType::Ogive, 1.0, L, L - h)) / h;
    EXPECT_NEAR(slope, 0.0, 1e-4);
    // radius grows with kappa at mid-length
    EXPECT_LT(nose_radius(NoseType::Ogive, 0.3, L, L / 2), nose_radius(NoseType::Ogive, 0.9, L, L / 2));
}

TEST(NoseIntegrals, ClosedForms)
{
    const double R = kBodyRadius, L = 0.12;
    NoseCone cone{NoseType::Conical, L, 0.0, 0.002};
    const auto c = integrate_nose(cone);
    EXPECT_NEAR(c.solid_volume, std::numbers::pi * R * R * L / 3.0, 1e-12);
    EXPECT_NEAR(c.wetted_area, std::numbers::pi * R * std::hypot(R, L), 1e-12);
    EXPECT_NEAR(c.planform_area, R * L, 1e-12);

    NoseCone ell{NoseType::Ellipsoid, L, 0.0, 0.002};
    EXPECT_NEAR(integrate_nose(ell, 4096).solid_volume, 2.0 / 3.0 * std::numbers::pi * R * R * L, 1e-9);

    NoseCone zero = cone;
    zero.wall_thickness = 0.0;
    EXPECT_EQ(integrate_nose(zero).shell_volume, 0.0);
}

TEST(Barrowman, ConicalNoseAtTwoThirds)
{
    for (double L : {0.05, 0.1, 0.2, 0.3}) {
        const NoseCone n{NoseType::Conical, L, 0.0, 0.002};
        EXPECT_NEAR(nose_aero(n).x_cp, 2.0 * L / 3.0, 1e-9);
        EXPECT_DOUBLE_EQ(nose_aero(n).cn_alpha, 2.0);
    }
    EXPECT_NEAR(nose_aero({NoseType::Conical, 0.1, 0.0, 0.002}).x_cp, 0.0667, 1e-4);
}

TEST(Barrowman, VolumeMethodMatchesClosedForms)
{
    // POWER with kappa = 1 is a cone: the generic volume path must return 2L/3.
    const NoseCone p1{NoseType::Power, 0.1, 1.0, 0.002};
    EXPECT_NEAR(nose_cp_fraction(p1), 2.0 / 3.0, 1e-9);
    // PARABOLIC with kappa = 0 is also a cone
    const NoseCone q0{NoseType::Parabolic, 0.1, 0.0, 0.002};
    EXPECT_NEAR(nose_cp_fraction(q0), 2.0 / 3.0, 1e-9);
    // ellipsoid: L - V/A = L/3
    const NoseCone e{NoseType::Ellipsoid, 0.1, 0.0, 0.002};
    EXPECT_NEAR(nose_cp_fraction(e), 1.0 / 3.0, 1e-4);
    // OGIVE endpoints
    EXPECT_DOUBLE_EQ(nose_cp_fraction({NoseType::Ogive, 0.1, 0.0, 0.002}), 2.0 / 3.0);
    EXPECT_DOUBLE_EQ(nose_cp_fraction({NoseType::Ogive, 0.1, 1.0, 0.002}), 0.466);
}

TEST(Barrowman, FinsMoveCpAft)
{
    std::mt19937_64 rng(12);
    int checked = 0;
    while (checked < 1000) {
        const RocketDesign d = decode(random_genome(rng));
        if (d.fins.fallback_used && checked % 3)
            continue; // mostly genuinely evolved outlines
        const auto rep = center_of_pressure(d);
        ASSERT_FALSE(rep.degenerate);
        ASSERT_GT(rep.cp, nose_aero(d.nose).x_cp);
        ASSERT_GE(rep.cp, 0.0);
        ASSERT_LE(rep.cp, d.total_length());
        ++checked;
    }
}

TEST(Barrowman, SpanMonotonicity)
{
    std::mt19937_64 rng(13);
    int checked = 0;
    while (checked < 500) {
        RocketDesign d = decode(random_genome(rng));
        if (d.fins.fallback_used)
            continue;
        double prev = fin_aero(d).cn_alpha;
        for (int s = 1; s <= 10; ++s) {
            RocketDesign e = d;
            for (auto& p : e.fins.points)
                p.y *= 1.0 + 0.1 * s;
            const double cn = fin_aero(e).cn_alpha;
            ASSERT_GT(cn, prev);
            prev = cn;
        }
        ++checked;
    }
}

TEST(Mass, LinearityAndSums)
{
    RocketDesign d = decode(reference_genome());
    const Materials mat;
    const MotorModel motor = estes_a8_3();
    d.fins.count = 2;
    const double two = mass_properties(d, mat, motor).component_mass("fins");
    d.fins.count = 4;
    const auto mp = mass_properties(d, mat, motor);
    EXPECT_NEAR(mp.component_mass("fins"), 2.0 * two, 1e-18);

    double sum = 0.0;
    for (const auto& c : mp.components)
        sum += c.mass;
    EXPECT_NEAR(mp.total, sum, 1e-15);
    EXPECT_GE(mp.cg, 0.0);
    EXPECT_LE(mp.cg, d.total_length());

    d.nose.wall_thickness = 0.0;
    EXPECT_EQ(mass_properties(d, mat, motor).component_mass("nose"), 0.0);
}

TEST(Mass, CgInsideRocketFuzz)
{
    std::mt19937_64 rng(14);
    const Materials mat;
    const MotorModel motor = estes_a8_3();
    for (int i = 0; i < 5000; ++i) {
        const RocketDesign d = decode(random_genome(rng));
        const auto mp = mass_properties(d, mat, motor);
        ASSERT_GE(mp.cg, 0.0);
        ASSERT_LE(mp.cg, d.total_length());
    }
}

TEST(Mass, BaseDesignNearHandCalculation)
{
    // Hand figures from the material table: cardboard tube annulus, three balsa
    // parallelograms (0.05 x 0.03 m), a PLA shell approximated by a cone's lateral area
    // times the wall, the loaded A8-3 and the fixed payload.
    const double tube = std::numbers::pi / 4.0 * (0.0248 * 0.0248 - 0.0241 * 0.0241) * 0.3 * 680.0; // 5.48 g
    const double fins = 3 * 0.05 * 0.03 * 0.003 * 160.0;                                           // 2.16 g
    const double nose = std::numbers::pi * 0.0124 * std::hypot(0.0124, 0.1) * 0.002 * 1240.0;      // 9.73 g
    const double motor = 0.0163;
    const double payload = 0.002 + 0.006 + 0.005 + 0.001 + 0.003 + 0.0015;
    const double hand = tube + fins + nose + motor + payload;

    const Materials mat = load_materials(std::string(ROCKETQD_DATA_DIR) + "/materials.json");
    const auto mp = mass_properties(decode(reference_genome()), mat, load_motor(std::string(ROCKETQD_DATA_DIR) + "/motors/A8-3.motor"));
    EXPECT_NEAR(mp.total, hand, 0.3 * hand);
    EXPECT_NEAR(mp.component_mass("body"), tube, 1e-9);
    EXPECT_NEAR(mp.component_mass("fins"), fins, 1e-9);
}

TEST(Stability, BaseDesignInBand)
{
    const double cal = stability_calibers(decode(reference_genome()), Materials{}, estes_a8_3());
    EXPECT_GE(cal, 1.0);
    EXPECT_LE(cal, 3.0);
}

TEST(Stability, CgAftOfCpIsNegativeAndUnstable)
{
    const RocketDesign d = decode(reference_genome());
    Materials heavy_tail;
    heavy_tail.payload.push_back({"ballast", 0.2, Anchor::MotorCenter, 0.0});
    const auto mp = mass_properties(d, heavy_tail, estes_a8_3());
    const StabilityReport rep = stability(d, mp);
    EXPECT_LT(rep.calibers, 0.0);
    EXPECT_TRUE(rep.unstable());
}

TEST(Stability, BelowOneCaliberScoresZero)
{
    std::mt19937_64 rng(15);
    int unstable_seen = 0;
    for (int i = 0; i < 3000 && unstable_seen < 50; ++i) {
        const Genome g = random_genome(rng);
        const auto seeds = derive_wind_seeds(1, 0, static_cast<std::uint64_t>(i));
        const Evaluation ev = evaluate(g, seeds);
        if (ev.calibers < 1.0) {
            ++unstable_seen;
            ASSERT_EQ(ev.fitness, 0.0);
        }
    }
    EXPECT_GT(unstable_seen, 0);
}

TEST(Materials, JsonRoundTrip)
{
    const Materials m;
    const nlohmann::json j = m;
    const Materials back = j.get<Materials>();
    EXPECT_EQ(back.nose_density, m.nose_density);
    ASSERT_EQ(back.payload.size(), m.payload.size());
    for (std::size_t i = 0; i < m.payload.size(); ++i) {
        EXPECT_EQ(back.payload[i].name, m.payload[i].name);
        EXPECT_EQ(back.payload[i].offset, m.payload[i].offset);
        EXPECT_EQ(back.payload[i].anchor, m.payload[i].anchor);
    }
    const Materials file = load_materials(std::string(ROCKETQD_DATA_DIR) + "/materials.json");
    EXPECT_EQ(file.payload.size(), m.payload.size());
    EXPECT_THROW(nlohmann::json::parse(R"({"payload":[{"name":"x","mass_kg":1,"anchor":"nowhere"}]})").get<Materials>(), std::invalid_argument);
}
