#ifndef ROCKETQD_SIM_MOTOR_HPP
#define ROCKETQD_SIM_MOTOR_HPP

#include <algorithm>
#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace rocketqd {

    struct ThrustSample {
        double time = 0.0;   // s
        double thrust = 0.0; // N
    };

    /// Solid motor with a piecewise-linear thrust curve. Propellant mass is burned
    /// linearly in time over the burn.
    class MotorModel {
    public:
        std::string name = "A8-3";
        std::vector<ThrustSample> curve;
        double propellant_mass = 0.0; // kg
        double total_mass = 0.0;      // kg, loaded
        double delay = 0.0;           // s, unused: flights end at apogee
        double length = 0.070;        // m
        double diameter = 0.018;      // m

        double burn_time() const { return curve.empty() ? 0.0 : curve.back().time; }

        double thrust(double t) const
        {
            if (curve.empty() || t <= curve.front().time || t >= curve.back().time)
                return 0.0;
            auto hi = std::upper_bound(curve.begin(), curve.end(), t, [](double v, const ThrustSample& s) { return v < s.time; });
            auto lo = hi - 1;
            const double span = hi->time - lo->time;
            if (span <= 0.0)
                return hi->thrust;
            return lo->thrust + (hi->thrust - lo->thrust) * (t - lo->time) / span;
        }

        double mass(double t) const
        {
            const double tb = burn_time();
            if (tb <= 0.0 || t <= 0.0)
                return total_mass;
            if (t >= tb)
                return total_mass - propellant_mass;
            return total_mass - propellant_mass * (t / tb);
        }

        double total_impulse() const
        {
            double sum = 0.0;
            for (std::size_t i = 1; i < curve.size(); ++i)
                sum += 0.5 * (curve[i].thrust + curve[i - 1].thrust) * (curve[i].time - curve[i - 1].time);
            return sum;
        }

        /// Throws std::invalid_argument when the curve or masses break the model invariants.
        void validate() const
        {
            if (curve.size() < 2)
                throw std::invalid_argument("motor curve needs at least two samples");
            for (std::size_t i = 0; i < curve.size(); ++i) {
                if (curve[i].thrust < 0.0)
                    throw std::invalid_argument("motor thrust must be non-negative");
                if (i > 0 && curve[i].time < curve[i - 1].time)
                    throw std::invalid_argument("motor curve times must be non-decreasing");
            }
            if (curve.front().thrust != 0.0 || curve.back().thrust != 0.0)
                throw std::invalid_argument("motor curve must start and end at 0 N");
            if (!(propellant_mass >= 0.0 && propellant_mass < total_mass))
                throw std::invalid_argument("propellant mass must be below total motor mass");
        }
    };

    /// Estes A8-3, 18 mm black powder. Sample points follow the published static test data.
    inline MotorModel estes_a8_3()
    {
        MotorModel m;
        m.name = "A8-3";
        m.propellant_mass = 0.00312;
        m.total_mass = 0.0163;
        m.delay = 3.0;
        m.length = 0.070;
        m.diameter = 0.018;
        m.curve = {{0.000, 0.000}, {0.041, 0.512}, {0.084, 2.115}, {0.127, 4.358}, {0.166, 6.794}, {0.192, 8.588},
            {0.206, 9.294}, {0.226, 9.730}, {0.236, 8.845}, {0.247, 7.179}, {0.261, 5.063}, {0.277, 3.717},
            {0.306, 3.205}, {0.351, 2.884}, {0.405, 2.692}, {0.483, 2.564}, {0.532, 2.628}, {0.622, 2.500},
            {0.662, 2.564}, {0.695, 2.115}, {0.711, 1.603}, {0.727, 1.058}, {0.737, 0.641}, {0.750, 0.000}};
        return m;
    }

    /// Plain-text motor file:
    ///
    ///     # comment
    ///     name A8-3
    ///     propellant_mass_kg 0.00312
    ///     total_mass_kg 0.0163
    ///     delay_s 3
    ///     length_m 0.070
    ///     diameter_m 0.018
    ///     thrust
    ///     0.000 0.000
    ///     0.041 0.512
    ///     ...
    ///
    /// Rows after the `thrust` line are `time_s thrust_N` pairs. A leading (0, 0) sample
    /// is inserted when the table starts after t = 0.
    inline MotorModel parse_motor(std::istream& in)
    {
        MotorModel m;
        m.curve.clear();
        std::string line;
        bool in_table = false;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            if (auto hash = line.find('#'); hash != std::string::npos)
                line.erase(hash);
            std::istringstream ls(line);
            if (in_table) {
                ThrustSample s;
                if (!(ls >> s.time))
                    continue;
                if (!(ls >> s.thrust))
                    throw std::invalid_argument("motor file line " + std::to_string(line_no) + ": expected `time thrust`");
                m.curve.push_back(s);
                continue;
            }
            std::string key;
            if (!(ls >> key))
                continue;
            if (key == "thrust") {
                in_table = true;
                continue;
            }
            if (key == "name") {
                ls >> m.name;
                continue;
            }
            double value = 0.0;
            if (!(ls >> value))
                throw std::invalid_argument("motor file line " + std::to_string(line_no) + ": missing value for " + key);
            if (key == "propellant_mass_kg")
                m.propellant_mass = value;
            else if (key == "total_mass_kg")
                m.total_mass = value;
            else if (key == "delay_s")
                m.delay = value;
            else if (key == "length_m")
                m.length = value;
            else if (key == "diameter_m")
                m.diameter = value;
            else
                throw std::invalid_argument("motor file line " + std::to_string(line_no) + ": unknown key " + key);
        }
        if (!m.curve.empty() && m.curve.front().time > 0.0)
            m.curve.insert(m.curve.begin(), ThrustSample{0.0, 0.0});
        m.validate();
        return m;
    }

    inline MotorModel load_motor(const std::string& path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open motor file " + path);
        return parse_motor(in);
    }

} // namespace rocketqd

#endif
