#pragma once

// Independent reference implementations used only by the tests. Everything
// here is deliberately written against different algorithms than the library:
// direct series / quadrature for the special functions, explicit walks for
// the combinatorics. Reference tables were frozen from a multiprecision
// computation before the library existed.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

namespace oracle {

using cx = std::complex<double>;

// ---------------------------------------------------------------------------
// Frozen multiprecision references.

// {Re z, Im z, Re Li2(z), Im Li2(z)}
inline constexpr double kDilogTable[][4] = {
    {0.5, 0.0, 0.5822405264650125059027, 0.0},
    {0.3, 0.0, 0.32612951007547606953, 0.0},
    {-1.0, 0.0, -0.8224670334241132182362, 0.0},
    {0.3, 0.4, 0.2665968667427404341612, 0.4613628918191089731891},
    {-1.2, 0.7, -0.9976392579256403715424, 0.4539290196093633192829},
    {0.9, 0.1, 1.264186732338753931744, 0.2437356799810140253972},
    {2.5, 1.5, 0.8586077861878313771208, 2.99102543219592285578},
    {0.49, 0.86, 0.2682131179092511779517, 1.004263605758382138862},
    {3.0, 0.0001, 2.320075704006269087138, 3.45136919206248939758},
    {-4.0, -2.0, -2.466497467288554079601, -0.7855694340809751306351},
};

// On-cut values, limit from below: {x, Re Li2(x - i0), Im Li2(x - i0)}.
inline constexpr double kDilogCutTable[][3] = {
    {2.0, 2.467401100272339654709, -2.177586090303602130501},
    {4.0, 2.061309466777317416691, -4.355172180607204261001},
};

// {theta, Lambda(theta)}
inline constexpr double kLobachevskyTable[][2] = {
    {1.047197551196597746154, 0.3383138688032178750071},  // pi/3
    {0.5235987755982988730771, 0.5074708032048268125106}, // pi/6
    {0.4, 0.492824437197660088281},
    {1.1, 0.3085365387454640357121},
    {1.570796326794896619231, 0.0},                       // pi/2
    {2.6, -0.5071942265451734965446},
};

inline constexpr double kSixLambdaPiThird = 2.029883212819307250042;
inline constexpr double kRogersHalf = 0.8224670334241132182362;   // L(1/2) = pi^2/12
inline constexpr double kRogersPoint3 = 0.5408429763188318837007; // L(0.3)

// ---------------------------------------------------------------------------
// Dilogarithm by direct power series; reliable for |z| <= 0.9.
inline cx dilog_series(cx z) {
    if (std::abs(z) > 0.95) throw std::domain_error("series oracle needs |z| < 0.95");
    cx sum = 0.0, pw = 1.0;
    for (int n = 1; n <= 4000; ++n) {
        pw *= z;
        sum += pw / double(n * n);
    }
    return sum;
}

// Dilogarithm by composite Gauss-Legendre quadrature of
//   Li2(z) = -int_0^1 log(1 - z t) / t dt,
// valid when the segment {z t : 0 <= t <= 1} stays away from [1, inf).
inline cx dilog_quadrature(cx z) {
    static const double kNode[8] = {
        0.0950125098376374401853, 0.2816035507792589132304,
        0.4580167776572273863424, 0.6178762444026437484467,
        0.7554044083550030338951, 0.8656312023878317438805,
        0.9445750230732325760780, 0.9894009349916499325962};
    static const double kWeight[8] = {
        0.1894506104550684962854, 0.1826034150449235888667,
        0.1691565193950025381893, 0.1495959888165767320815,
        0.1246289712555338720525, 0.0951585116824927848099,
        0.0622535239386478928628, 0.0271524594117540948518};
    const int panels = 24;
    cx total = 0.0;
    for (int p = 0; p < panels; ++p) {
        double a = double(p) / panels, b = double(p + 1) / panels;
        double mid = (a + b) / 2.0, half = (b - a) / 2.0;
        for (int k = 0; k < 8; ++k) {
            for (double s : {-kNode[k], kNode[k]}) {
                double t = mid + half * s;
                total += kWeight[k] * half * std::log(1.0 - z * t) / t;
            }
        }
    }
    return -total;
}

// ---------------------------------------------------------------------------
// Lobachevsky function Lambda(theta) = -int_0^theta log|2 sin t| dt by a
// small-angle series plus adaptive Simpson on the rest. Valid on (0, pi).
namespace detail {

inline double lob_integrand(double t) { return std::log(std::abs(2.0 * std::sin(t))); }

inline double simpson(double a, double b, double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

inline double adaptive(double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    double m = (a + b) / 2.0;
    double lm = (a + m) / 2.0, rm = (m + b) / 2.0;
    double flm = lob_integrand(lm), frm = lob_integrand(rm);
    double left = simpson(a, m, fa, flm, fm), right = simpson(m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive(a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive(m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

} // namespace detail

inline double lobachevsky(double theta) {
    if (theta <= 0.0 || theta >= 3.14159) throw std::domain_error("oracle range (0, pi)");
    const double eps = std::min(0.01, theta / 2.0);
    // int_0^eps log(2 sin t) dt by series
    double head = eps * std::log(2.0 * eps) - eps - std::pow(eps, 3) / 18.0 -
                  std::pow(eps, 5) / 900.0 - std::pow(eps, 7) / 19845.0;
    double fa = detail::lob_integrand(eps);
    double fb = detail::lob_integrand(theta);
    double fm = detail::lob_integrand((eps + theta) / 2.0);
    double whole = detail::simpson(eps, theta, fa, fm, fb);
    double tail = detail::adaptive(eps, theta, fa, fm, fb, whole, 1e-15, 48);
    return -(head + tail);
}

// ---------------------------------------------------------------------------
// Naive cross-ratio of four finite points.
inline cx cross_ratio_finite(cx a, cx b, cx c, cx d) {
    return ((a - d) * (b - c)) / ((a - c) * (b - d));
}

// ---------------------------------------------------------------------------
// Edge orbits by explicit rotation around each edge. States are
// (tet, edge pair, entered face); the successor leaves through the other face
// containing the edge. Returns one slot multiset per geometric edge
// (forward and backward rotations deduplicated).
struct EdgeWalkResult {
    // each entry: sorted multiset of (tet, vertex pair) slots with multiplicity
    std::vector<std::vector<std::pair<int, std::pair<int, int>>>> classes;
};

inline EdgeWalkResult
edge_orbits_by_rotation(int n, const std::vector<std::array<std::pair<int, std::array<int, 4>>, 4>>& gl) {
    using Slot = std::pair<int, std::pair<int, int>>;
    using State = std::tuple<int, int, int, int>; // tet, i, j, entered face
    std::set<State> seen;
    std::vector<std::vector<Slot>> classes;

    auto faces_of_edge = [](int i, int j) {
        std::array<int, 2> fs{};
        int k = 0;
        for (int v = 0; v < 4; ++v)
            if (v != i && v != j) fs[k++] = v;
        return fs;
    };

    for (int t0 = 0; t0 < n; ++t0) {
        for (int i0 = 0; i0 < 4; ++i0) {
            for (int j0 = i0 + 1; j0 < 4; ++j0) {
                for (int f0 : faces_of_edge(i0, j0)) {
                    State start{t0, i0, j0, f0};
                    if (seen.count(start)) continue;
                    std::vector<Slot> cycle;
                    State s = start;
                    // a valid face involution makes the successor a bijection,
                    // so the walk must return in at most 12n steps
                    const int cap = 12 * n + 1;
                    int steps = 0;
                    do {
                        if (++steps > cap)
                            throw std::runtime_error("edge walk failed to close: gluing is not involutive");
                        seen.insert(s);
                        auto [t, i, j, fin] = s;
                        cycle.push_back({t, {i, j}});
                        auto fs = faces_of_edge(i, j);
                        int fout = fs[0] == fin ? fs[1] : fs[0];
                        auto& [t2, perm] = gl[t][fout];
                        int i2 = std::min(perm[i], perm[j]);
                        int j2 = std::max(perm[i], perm[j]);
                        s = State{t2, i2, j2, perm[fout]};
                    } while (s != start);
                    std::sort(cycle.begin(), cycle.end());
                    if (std::find(classes.begin(), classes.end(), cycle) == classes.end())
                        classes.push_back(std::move(cycle));
                }
            }
        }
    }
    return {classes};
}

// ---------------------------------------------------------------------------
// Vertex classes by plain breadth-first search over corner identifications.
inline std::vector<std::set<std::pair<int, int>>>
vertex_orbits_by_bfs(int n, const std::vector<std::array<std::pair<int, std::array<int, 4>>, 4>>& gl) {
    std::set<std::pair<int, int>> todo;
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v) todo.insert({t, v});
    std::vector<std::set<std::pair<int, int>>> out;
    while (!todo.empty()) {
        std::set<std::pair<int, int>> comp;
        std::vector<std::pair<int, int>> stack{*todo.begin()};
        while (!stack.empty()) {
            auto [t, v] = stack.back();
            stack.pop_back();
            if (!todo.count({t, v})) continue;
            todo.erase({t, v});
            comp.insert({t, v});
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                auto& [t2, perm] = gl[t][f];
                stack.push_back({t2, perm[v]});
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

} // namespace oracle
