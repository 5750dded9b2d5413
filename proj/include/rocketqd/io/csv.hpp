#ifndef ROCKETQD_IO_CSV_HPP
#define ROCKETQD_IO_CSV_HPP

#include <charconv>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

namespace rocketqd::csv {

    /// Shortest representation that parses back to the same double.
    inline std::string fmt(double v)
    {
        char buf[32];
        auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
        if (ec != std::errc())
            throw std::runtime_error("double formatting failed");
        return std::string(buf, end);
    }

    inline std::string fmt(long long v) { return std::to_string(v); }
    inline std::string fmt(int v) { return std::to_string(v); }
    inline std::string fmt(std::size_t v) { return std::to_string(v); }

    inline std::vector<std::string_view> split(std::string_view line, char sep = ',')
    {
        std::vector<std::string_view> out;
        std::size_t start = 0;
        while (true) {
            const auto pos = line.find(sep, start);
            out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
            if (pos == std::string_view::npos)
                break;
            start = pos + 1;
        }
        if (!out.empty() && !out.back().empty() && out.back().back() == '\r')
            out.back().remove_suffix(1);
        return out;
    }

    inline double to_double(std::string_view s)
    {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("not a number: '" + std::string(s) + "'");
        return v;
    }

    inline long long to_int(std::string_view s)
    {
        long long v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
        return v;
    }

    template <typename... Ts>
    std::string row(const Ts&... fields)
    {
        std::string out;
        bool first = true;
        ((out += (first ? "" : ","), out += fields, first = false), ...);
        return out;
    }

} // namespace rocketqd::csv

#endif
