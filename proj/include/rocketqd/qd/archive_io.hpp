#ifndef ROCKETQD_QD_ARCHIVE_IO_HPP
#define ROCKETQD_QD_ARCHIVE_IO_HPP

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include <rocketqd/io/csv.hpp>
#include <rocketqd/qd/archive.hpp>

namespace rocketqd {

    inline std::string archive_csv_header()
    {
        std::string h = "xi,yi,measure_x,measure_y,fitness,threshold";
        for (std::size_t i = 0; i < kGenomeSize; ++i)
            h += ",genome_" + std::to_string(i);
        h += ",nose_type,stability,alt_1,alt_2,alt_3";
        return h;
    }

    /// One row per occupied cell, in cell order. Doubles use the shortest exact form.
    inline void write_archive_csv(std::ostream& os, const GridArchive& archive)
    {
        os << archive_csv_header() << '\n';
        archive.for_each_occupied([&](CellIndex c, const Solution& s, double threshold) {
            std::string line = csv::row(csv::fmt(c.xi), csv::fmt(c.yi), csv::fmt(s.measure_x), csv::fmt(s.measure_y),
                csv::fmt(s.fitness), csv::fmt(threshold));
            for (double g : s.genome)
                line += "," + csv::fmt(g);
            line += "," + csv::fmt(s.meta.nose_type) + "," + csv::fmt(s.meta.stability);
            for (double a : s.meta.altitudes)
                line += "," + csv::fmt(a);
            os << line << '\n';
        });
    }

    /// Reads the format written by write_archive_csv into an archive with the given grid.
    /// Cell indices in the file are authoritative.
    inline GridArchive read_archive_csv(std::istream& is, const ArchiveConfig& cfg = {})
    {
        GridArchive archive(cfg);
        std::string line;
        if (!std::getline(is, line))
            throw std::invalid_argument("archive CSV is empty");
        if (auto cols = csv::split(line); cols.size() != 6 + kGenomeSize + 5 || cols[0] != "xi")
            throw std::invalid_argument("archive CSV header does not match");
        int line_no = 1;
        while (std::getline(is, line)) {
            ++line_no;
            if (line.empty() || line == "\r")
                continue;
            const auto f = csv::split(line);
            if (f.size() != 6 + kGenomeSize + 5)
                throw std::invalid_argument("archive CSV line " + std::to_string(line_no) + ": wrong field count");
            CellIndex c{static_cast<int>(csv::to_int(f[0])), static_cast<int>(csv::to_int(f[1]))};
            if (c.xi < 0 || c.xi >= cfg.x_bins || c.yi < 0 || c.yi >= cfg.y_bins)
                throw std::invalid_argument("archive CSV line " + std::to_string(line_no) + ": cell outside the grid");
            Solution s;
            s.measure_x = csv::to_double(f[2]);
            s.measure_y = csv::to_double(f[3]);
            s.fitness = csv::to_double(f[4]);
            const double threshold = csv::to_double(f[5]);
            for (std::size_t i = 0; i < kGenomeSize; ++i)
                s.genome[i] = csv::to_double(f[6 + i]);
            s.meta.nose_type = static_cast<int>(csv::to_int(f[6 + kGenomeSize]));
            s.meta.stability = csv::to_double(f[7 + kGenomeSize]);
            for (std::size_t i = 0; i < 3; ++i)
                s.meta.altitudes[i] = csv::to_double(f[8 + kGenomeSize + i]);
            archive.set_cell(c, s, threshold);
        }
        return archive;
    }

    inline void save_archive(const std::string& path, const GridArchive& archive)
    {
        std::ofstream os(path, std::ios::binary);
        if (!os)
            throw std::runtime_error("cannot write archive " + path);
        write_archive_csv(os, archive);
        if (!os)
            throw std::runtime_error("failed writing archive " + path);
    }

    inline GridArchive load_archive(const std::string& path, const ArchiveConfig& cfg = {})
    {
        std::ifstream is(path, std::ios::binary);
        if (!is)
            throw std::runtime_error("cannot open archive " + path);
        return read_archive_csv(is, cfg);
    }

} // namespace rocketqd

#endif
