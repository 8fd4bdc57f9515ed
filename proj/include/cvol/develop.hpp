#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cvol/bloch.hpp"
#include "cvol/triangulation.hpp"

namespace cvol {

// A side of a cusp triangle: triangle (tet, vertex), side = the face index
// carrying it (side != vertex).
struct Base {
    int tet, vertex, side;
};

// Developed cusp cross-sections: a position in C for each corner of each
// placed cusp triangle. Corner j of triangle (t, v) sits on edge (v, j).
struct Decoration {
    std::vector<std::array<cx, 4>> pos; // indexed 4 t + v; entry at j == v unused
    std::vector<char> is_placed;

    explicit Decoration(int tets = 0)
        : pos(4 * tets), is_placed(4 * tets, 0) {}

    bool placed(int t, int v) const { return is_placed[4 * t + v]; }
    cx corner(int t, int v, int j) const { return pos[4 * t + v][j]; }
    // Short-edge label: the vector from corner j to corner k inside the
    // triangle at vertex i.
    cx alpha(int t, int i, int j, int k) const { return corner(t, i, k) - corner(t, i, j); }
};

// Lexicographically smallest (tet, vertex, side) of the cusp.
Base default_base(const Triangulation& t, int cusp_index);

// Breadth-first layout of one cusp link. The base side is placed with its
// smaller corner at base_pos.first and the larger at base_pos.second; every
// further triangle follows from the corner cross-ratio parameters. A
// re-visited triangle whose side vectors disagree beyond kRevisitTol
// (relative) aborts: the peripheral holonomy is not translational.
Decoration develop_cusp(const Triangulation& t, const std::vector<cx>& shapes,
                        int cusp_index, const Base& base,
                        std::pair<cx, cx> base_pos = {cx(0.0), cx(1.0)},
                        double revisit_tol = kRevisitTol);

// Develop every cusp; bases defaults to default_base per cusp.
Decoration develop_all(const Triangulation& t, const std::vector<cx>& shapes,
                       const std::map<int, Base>& bases = {});

// Counter-diagonal entry attached to an edge class and its fixed logarithm
// branch: log_c = -1/2 Log(alpha^i_{kj} alpha^j_{ik}).
struct EdgeLogC {
    cx c;
    cx log_c;
};

// One entry per edge class, computed from one incident corner and verified
// against every other (CocycleInconsistencyError on disagreement).
std::vector<EdgeLogC> edge_log_c(const Triangulation& t, const Decoration& d,
                                 double tol = kAssertTol);

struct PsiResult {
    std::vector<Flattening> flattenings; // per tetrahedron
    PreBlochElement element;             // coefficients = orientation signs
};

// Per-tetrahedron log-parameters from the four incident edge-class values:
//   w0 = lc(03) + lc(12) - lc(02) - lc(13),
//   w1 = lc(02) + lc(13) - lc(01) - lc(23).
// (p, q) must come out integral (FlatteningIntegralityError otherwise).
PsiResult psi_flatten(const Triangulation& t, const std::vector<cx>& shapes,
                      const std::vector<EdgeLogC>& lcs);

// Log-parameter of a flattening at a given slot (0, 1, 2).
inline cx w_of(const Flattening& f, int slot) {
    return slot == 0 ? f.w0 : slot == 1 ? f.w1 : f.w2;
}

// Max over edge classes of |sum over incident corners of sign * w_slot|.
double max_semistrong_residual(const Triangulation& t,
                               const std::vector<Flattening>& flats);

// Unique unipotent adjustments making (g u(p))^-1 h u(q) counter-diagonal;
// c is the lower-left entry of g^-1 h (SameCosetError when it vanishes).
struct CosetNormalization {
    cx p, q, c;
};
CosetNormalization normalize_cosets(const Eigen::Matrix2cd& g, const Eigen::Matrix2cd& h);

// Unit-determinant matrix sending infinity to pt. For finite pt the lower row
// is (scale, shift/scale); for pt = infinity returns [[scale, shift],[0,
// 1/scale]]. scale picks the coset (horosphere), shift the representative.
Eigen::Matrix2cd decorating_matrix(const ExtComplex& pt, cx scale, cx shift);

// Long-edge data of a decorated point configuration: c[i][j] = lower-left
// entry of g_i^-1 g_j. For four points also the induced flattening of the
// cross-ratio. Decorations in a common coset (c_ij = 0) are rejected.
struct ConfigurationResult {
    std::vector<std::vector<cx>> c;
    std::optional<Flattening> flattening;
};
ConfigurationResult psi_of_configuration(const std::vector<ExtComplex>& points,
                                         const std::vector<Eigen::Matrix2cd>& mats);

} // namespace cvol
