// SPDX-License-Identifier: MIT
/**
 * @file io.hpp
 * @brief CSV and JSON writers.
 *
 * CSV: header row, comma separated, '.' decimal point, 17 significant
 * digits so that every double round-trips exactly.
 */

#pragma once

#include "fhd/core_model.hpp"
#include "fhd/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace fhd::io {

inline std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DomainError("cannot open " + path.string() + " for writing");
    return out;
}

/// Writes equally long columns under a header row.
inline void write_csv(const std::filesystem::path& path, std::initializer_list<std::string> header,
                      std::initializer_list<std::span<const double>> columns) {
    const std::size_t rows = columns.size() ? columns.begin()->size() : 0;
    for (const auto& c : columns) {
        if (c.size() != rows) throw DomainError("CSV columns differ in length");
    }
    auto out = open_for_write(path);
    bool first = true;
    for (const auto& h : header) {
        out << (first ? "" : ",") << h;
        first = false;
    }
    out << '\n';
    for (std::size_t r = 0; r < rows; ++r) {
        first = true;
        for (const auto& c : columns) {
            out << (first ? "" : ",") << format_double(c[r]);
            first = false;
        }
        out << '\n';
    }
}

/// Long-format (t, x, v) table of every frame.
inline void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    auto out = open_for_write(path);
    out << "t,x,v\n";
    const auto x = traj.grid().nodes();
    for (std::size_t k = 0; k < traj.size(); ++k) {
        const std::string t = format_double(traj.times()[k]);
        const auto& f = traj.frames()[k];
        for (std::size_t i = 0; i < f.size(); ++i) {
            out << t << ',' << format_double(x[i]) << ',' << format_double(f[i]) << '\n';
        }
    }
}

/// One (x, v) table per frame plus an index of frame times.
inline std::vector<std::string> write_trajectory_frames(const std::filesystem::path& dir,
                                                        const Trajectory& traj) {
    std::vector<std::string> names;
    const auto x = traj.grid().nodes();
    std::vector<double> frame_times(traj.times().begin(), traj.times().end());
    std::vector<double> index(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k) {
        char name[32];
        std::snprintf(name, sizeof name, "frame_%05zu.csv", k);
        write_csv(dir / name, {"x", "v"}, {x, traj.frames()[k].values()});
        names.emplace_back(name);
        index[k] = static_cast<double>(k);
    }
    write_csv(dir / "frames.csv", {"frame", "t"}, {index, frame_times});
    names.emplace_back("frames.csv");
    return names;
}

inline void write_json(const std::filesystem::path& path, const nlohmann::json& j) {
    auto out = open_for_write(path);
    out << j.dump(2) << '\n';
}

}  // namespace fhd::io
