#include "pzg/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace pzg {

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
    std::FILE* f = std::fopen(path.c_str(), "w");
    if (!f) throw std::runtime_error("cannot open for writing: " + path);
    std::fputs("t", f);
    for (const std::string& l : traj.labels) std::fprintf(f, ",%s", l.c_str());
    std::fputc('\n', f);
    for (size_t k = 0; k < traj.size(); ++k) {
        std::fprintf(f, "%.17g", traj.times[k]);
        for (double v : traj.states[k]) std::fprintf(f, ",%.17g", v);
        std::fputc('\n', f);
    }
    std::fclose(f);
}

Trajectory read_trajectory_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open: " + path);
    Trajectory traj;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty trajectory file: " + path);
    {
        std::stringstream ss(line);
        std::string cell;
        bool first = true;
        while (std::getline(ss, cell, ',')) {
            if (first) {
                if (cell != "t") throw std::runtime_error("trajectory CSV must start with a 't' column");
                first = false;
            } else {
                traj.labels.push_back(cell);
            }
        }
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        Vec row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != traj.labels.size() + 1)
            throw std::runtime_error("trajectory CSV row width mismatch");
        traj.times.push_back(row.front());
        traj.states.emplace_back(row.begin() + 1, row.end());
    }
    return traj;
}

}  // namespace pzg
