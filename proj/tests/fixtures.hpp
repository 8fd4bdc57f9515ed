#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cvol/triangulation.hpp"

namespace fixtures {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

inline std::string data_path(const std::string& name) {
    return std::string(CVOL_DATA_DIR) + "/" + name;
}

inline cvol::Triangulation load(const std::string& name) {
    return cvol::Triangulation::parse(read_file(data_path(name)));
}

// Gluing table in the shape the combinatorial oracles take.
inline std::vector<std::array<std::pair<int, std::array<int, 4>>, 4>>
oracle_gluings(const cvol::Triangulation& t) {
    std::vector<std::array<std::pair<int, std::array<int, 4>>, 4>> out(t.size());
    for (int i = 0; i < t.size(); ++i)
        for (int f = 0; f < 4; ++f) {
            const auto& g = t.gluing(i, f);
            out[i][f] = {g.target, g.perm};
        }
    return out;
}

// Two disjoint copies of a triangulation (copy two has all indices shifted).
inline cvol::Triangulation doubled(const cvol::Triangulation& t) {
    int n = t.size();
    std::vector<std::array<cvol::Gluing, 4>> gl(2 * n);
    std::vector<int> eps;
    for (int copy = 0; copy < 2; ++copy)
        for (int i = 0; i < n; ++i) {
            for (int f = 0; f < 4; ++f) {
                cvol::Gluing g = t.gluing(i, f);
                g.target += copy * n;
                gl[copy * n + i][f] = g;
            }
            eps.push_back(t.eps(i));
        }
    return cvol::Triangulation::build(std::move(gl), std::move(eps));
}

} // namespace fixtures
