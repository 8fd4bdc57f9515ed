#include "cvol/develop.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

namespace cvol {

namespace {

std::array<int, 3> others(int v) {
    std::array<int, 3> out{};
    int k = 0;
    for (int x = 0; x < 4; ++x)
        if (x != v) out[k++] = x;
    return out;
}

// Counter-clockwise corner cycle of the cusp triangle at vertex v, as induced
// by the tetrahedron orientation.
std::array<int, 3> corner_cycle(int v) {
    auto [a, b, c] = others(v);
    if (v % 2 == 0) return {a, b, c};
    return {a, c, b};
}

// Position of the remaining corner of triangle (t, v) given corners j and k.
cx third_corner(const std::vector<cx>& shapes, int t, int v,
                int j, cx pj, int k, cx pk) {
    auto cyc = corner_cycle(v);
    int ji = int(std::find(cyc.begin(), cyc.end(), j) - cyc.begin());
    int nxt_j = cyc[(ji + 1) % 3];
    cx zc = cross_ratio_parameters(shapes[t])[kEdgeSlot[edge_index(v, j)]];
    cx vm = nxt_j == k ? (pk - pj) / zc : zc * (pk - pj);
    return pj + vm;
}

void develop_cusp_into(Decoration& d, const Triangulation& t,
                       const std::vector<cx>& shapes, int cusp_index,
                       const Base& base, std::pair<cx, cx> base_pos,
                       double revisit_tol) {
    const Cusp& cusp = t.cusp_link()[cusp_index];
    if (base.vertex == base.side || base.side < 0 || base.side > 3 ||
        base.vertex < 0 || base.vertex > 3 || base.tet < 0 || base.tet >= t.size())
        throw DomainError("invalid base side");
    if (t.cusp_of(base.tet, base.vertex) != cusp_index)
        throw DomainError("base triangle does not belong to the cusp");

    auto place = [&](int tt, int vv, int j, cx pj, int k, cx pk, int m) {
        auto& pos = d.pos[4 * tt + vv];
        pos[j] = pj;
        pos[k] = pk;
        pos[m] = third_corner(shapes, tt, vv, j, pj, k, pk);
        d.is_placed[4 * tt + vv] = 1;
    };

    {
        std::array<int, 2> cs{};
        int n = 0;
        for (int c : others(base.vertex))
            if (c != base.side) cs[n++] = c;
        place(base.tet, base.vertex, cs[0], base_pos.first, cs[1], base_pos.second,
              base.side);
    }

    std::deque<std::pair<int, int>> queue{{base.tet, base.vertex}};
    while (!queue.empty()) {
        auto [tt, vv] = queue.front();
        queue.pop_front();
        const auto& pos = d.pos[4 * tt + vv];
        for (int f : others(vv)) {
            const Gluing& g = t.gluing(tt, f);
            int v2 = g.perm[vv];
            std::array<int, 2> jk{};
            int n = 0;
            for (int c : others(vv))
                if (c != f) jk[n++] = c;
            int a = g.perm[jk[0]], b = g.perm[jk[1]];
            if (!d.placed(g.target, v2)) {
                place(g.target, v2, a, pos[jk[0]], b, pos[jk[1]], g.perm[f]);
                queue.emplace_back(g.target, v2);
            } else {
                const auto& ex = d.pos[4 * g.target + v2];
                cx d_new = pos[jk[0]] - pos[jk[1]];
                cx d_old = ex[a] - ex[b];
                double err = std::abs(d_new - d_old);
                if (err > revisit_tol * std::max(1.0, std::abs(d_old))) {
                    std::ostringstream os;
                    os << "re-visited cusp triangle (" << g.target << ", " << v2
                       << ") with mismatched side vector (error " << err
                       << "): holonomy is not translational";
                    throw NonParabolicHolonomyError(os.str(), err);
                }
            }
        }
    }

    for (auto [tt, vv] : cusp.triangles)
        if (!d.placed(tt, vv))
            throw Error("cusp link traversal did not reach every triangle");
}

} // namespace

Base default_base(const Triangulation& t, int cusp_index) {
    auto [tt, vv] = t.cusp_link()[cusp_index].triangles.front();
    return {tt, vv, vv == 0 ? 1 : 0};
}

Decoration develop_cusp(const Triangulation& t, const std::vector<cx>& shapes,
                        int cusp_index, const Base& base,
                        std::pair<cx, cx> base_pos, double revisit_tol) {
    if (int(shapes.size()) != t.size()) throw InconsistentInputError("shape count mismatch");
    if (cusp_index < 0 || cusp_index >= int(t.cusp_link().size()))
        throw DomainError("cusp index out of range");
    Decoration d(t.size());
    develop_cusp_into(d, t, shapes, cusp_index, base, base_pos, revisit_tol);
    return d;
}

Decoration develop_all(const Triangulation& t, const std::vector<cx>& shapes,
                       const std::map<int, Base>& bases) {
    if (int(shapes.size()) != t.size()) throw InconsistentInputError("shape count mismatch");
    Decoration d(t.size());
    for (int ci = 0; ci < int(t.cusp_link().size()); ++ci) {
        auto it = bases.find(ci);
        Base base = it != bases.end() ? it->second : default_base(t, ci);
        develop_cusp_into(d, t, shapes, ci, base, {cx(0.0), cx(1.0)}, kRevisitTol);
    }
    return d;
}

std::vector<EdgeLogC> edge_log_c(const Triangulation& t, const Decoration& d,
                                 double tol) {
    std::vector<EdgeLogC> out;
    for (size_t ci = 0; ci < t.edge_classes().size(); ++ci) {
        const EdgeClass& ec = t.edge_classes()[ci];
        std::vector<cx> vals;
        for (const EdgeIncidence& inc : ec.incidences) {
            int i = kEdgeVerts[inc.edge][0], j = kEdgeVerts[inc.edge][1];
            for (int k = 0; k < 4; ++k) {
                if (k == i || k == j) continue;
                vals.push_back(d.alpha(inc.tet, i, k, j) * d.alpha(inc.tet, j, i, k));
            }
        }
        for (const cx& v : vals) {
            if (std::abs(v - vals[0]) > tol * std::max(1.0, std::abs(vals[0]))) {
                std::ostringstream os;
                os << "edge class " << ci << ": corner products disagree ("
                   << std::abs(v - vals[0]) << ")";
                throw CocycleInconsistencyError(os.str());
            }
        }
        if (std::abs(vals[0]) < 1e-12)
            throw CocycleInconsistencyError("edge class with vanishing corner product");
        cx log_c = -0.5 * principal_log(vals[0]);
        out.push_back({std::exp(log_c), log_c});
    }
    return out;
}

namespace {

std::vector<int> class_of_edge(const Triangulation& t) {
    std::vector<int> out(6 * t.size(), -1);
    for (size_t ci = 0; ci < t.edge_classes().size(); ++ci)
        for (const EdgeIncidence& inc : t.edge_classes()[ci].incidences)
            out[6 * inc.tet + inc.edge] = int(ci);
    return out;
}

} // namespace

PsiResult psi_flatten(const Triangulation& t, const std::vector<cx>& shapes,
                      const std::vector<EdgeLogC>& lcs) {
    if (lcs.size() != t.edge_classes().size())
        throw InconsistentInputError("edge log-c count mismatch");
    std::vector<int> cls = class_of_edge(t);
    PsiResult res;
    for (int i = 0; i < t.size(); ++i) {
        auto E = [&](int a, int b) { return lcs[cls[6 * i + edge_index(a, b)]].log_c; };
        cx w0 = E(0, 3) + E(1, 2) - E(0, 2) - E(1, 3);
        cx w1 = E(0, 2) + E(1, 3) - E(0, 1) - E(2, 3);
        Flattening f = Flattening::from_logs(w0, w1, shapes[i]);
        res.flattenings.push_back(f);
        res.element.add(t.eps(i), f);
    }
    return res;
}

double max_semistrong_residual(const Triangulation& t,
                               const std::vector<Flattening>& flats) {
    double worst = 0.0;
    for (const EdgeClass& ec : t.edge_classes()) {
        cx s = 0.0;
        for (const EdgeIncidence& inc : ec.incidences)
            s += double(inc.sign) * w_of(flats[inc.tet], kEdgeSlot[inc.edge]);
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

namespace {

Eigen::Matrix2cd unit_inverse(const Eigen::Matrix2cd& m) {
    Eigen::Matrix2cd inv;
    inv << m(1, 1), -m(0, 1), -m(1, 0), m(0, 0);
    return inv;
}

void require_unit_det(const Eigen::Matrix2cd& m, const char* who) {
    cx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    if (std::abs(det - 1.0) > kAssertTol)
        throw DomainError(std::string(who) + ": determinant is not 1");
}

} // namespace

CosetNormalization normalize_cosets(const Eigen::Matrix2cd& g, const Eigen::Matrix2cd& h) {
    require_unit_det(g, "normalize_cosets");
    require_unit_det(h, "normalize_cosets");
    Eigen::Matrix2cd gh = unit_inverse(g) * h;
    cx c = gh(1, 0);
    if (std::abs(c) < 1e-12)
        throw SameCosetError("matrices lie in the same upper-triangular coset");
    return {gh(0, 0) / c, -gh(1, 1) / c, c};
}

Eigen::Matrix2cd decorating_matrix(const ExtComplex& pt, cx scale, cx shift) {
    if (std::abs(scale) < 1e-12) throw DomainError("decorating matrix needs scale != 0");
    Eigen::Matrix2cd g;
    if (pt.is_infinity()) {
        g << scale, shift, cx(0.0), 1.0 / scale;
    } else {
        cx p = pt.value();
        g << p * scale, (p * shift - 1.0) / scale, scale, shift / scale;
    }
    return g;
}

ConfigurationResult psi_of_configuration(const std::vector<ExtComplex>& points,
                                         const std::vector<Eigen::Matrix2cd>& mats) {
    size_t n = points.size();
    if (mats.size() != n) throw InconsistentInputError("one decorating matrix per point");
    if (n < 2) throw DomainError("need at least two points");

    for (size_t i = 0; i < n; ++i) {
        require_unit_det(mats[i], "psi_of_configuration");
        cx lower = mats[i](1, 0);
        if (std::abs(lower) < 1e-12) {
            if (!points[i].is_infinity())
                throw InconsistentInputError("decorating matrix fixes infinity, point is finite");
        } else {
            if (points[i].is_infinity())
                throw InconsistentInputError("decorating matrix moves infinity off the point");
            cx image = mats[i](0, 0) / lower;
            cx p = points[i].value();
            if (std::abs(image - p) > kAssertTol * std::max(1.0, std::abs(p)))
                throw InconsistentInputError("decorating matrix does not send infinity to its point");
        }
    }

    ConfigurationResult res;
    res.c.assign(n, std::vector<cx>(n, cx(0.0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            res.c[i][j] = (unit_inverse(mats[i]) * mats[j])(1, 0);
            if (std::abs(res.c[i][j]) < 1e-12)
                throw SameCosetError("two decorations lie in a common coset");
        }

    if (n == 4) {
        cx z = cross_ratio(points[0], points[1], points[2], points[3]);
        auto lc = [&](int i, int j) { return principal_log(res.c[i][j]); };
        cx w0 = lc(0, 3) + lc(1, 2) - lc(0, 2) - lc(1, 3);
        cx w1 = lc(0, 2) + lc(1, 3) - lc(0, 1) - lc(2, 3);
        res.flattening = Flattening::from_logs(w0, w1, z);
    }
    return res;
}

} // namespace cvol
