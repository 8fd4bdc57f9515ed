#include "cvol/triangulation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include <json.hpp>

namespace cvol {

using nlohmann::json;

int edge_index(int a, int b) {
    int lo = std::min(a, b), hi = std::max(a, b);
    for (int k = 0; k < 6; ++k)
        if (kEdgeVerts[k][0] == lo && kEdgeVerts[k][1] == hi) return k;
    throw DomainError("not a tetrahedron edge");
}

namespace {

std::array<int, 3> face_vertices(int f) {
    std::array<int, 3> out{};
    int k = 0;
    for (int v = 0; v < 4; ++v)
        if (v != f) out[k++] = v;
    return out;
}

// Sign of the face map as a bijection of ordered vertex triples.
int restricted_sign(const std::array<int, 4>& perm, int f) {
    auto src = face_vertices(f);
    std::array<int, 3> img = {perm[src[0]], perm[src[1]], perm[src[2]]};
    int inv = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (img[i] > img[j]) ++inv;
    return inv % 2 == 0 ? 1 : -1;
}

struct DSU {
    std::vector<int> p;
    explicit DSU(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
    int find(int x) {
        while (p[x] != x) x = p[x] = p[p[x]];
        return x;
    }
    void unite(int a, int b) { p[find(a)] = find(b); }
};

std::string loc(int t, int f) {
    std::ostringstream os;
    os << "tet " << t << " face " << f;
    return os.str();
}

} // namespace

OrderingReport check_ordering(const std::vector<std::array<Gluing, 4>>& gluings) {
    OrderingReport rep;
    rep.ok = true;
    for (int t = 0; t < int(gluings.size()); ++t) {
        for (int f = 0; f < 4; ++f) {
            auto src = face_vertices(f);
            const auto& perm = gluings[t][f].perm;
            bool mono = perm[src[0]] < perm[src[1]] && perm[src[1]] < perm[src[2]];
            if (!mono) {
                rep.ok = false;
                rep.offending.emplace_back(t, f);
            }
        }
    }
    return rep;
}

OrderingReport check_ordering(const Triangulation& t) {
    OrderingReport rep;
    rep.ok = true;
    for (int i = 0; i < t.size(); ++i)
        for (int f = 0; f < 4; ++f) {
            auto src = face_vertices(f);
            const auto& perm = t.gluing(i, f).perm;
            if (!(perm[src[0]] < perm[src[1]] && perm[src[1]] < perm[src[2]])) {
                rep.ok = false;
                rep.offending.emplace_back(i, f);
            }
        }
    return rep;
}

void Triangulation::validate() {
    int n = size();
    if (n < 1) throw ParseError("empty triangulation");
    if (int(eps_.size()) != n) throw ParseError("orientation_signs length mismatch");
    for (int t = 0; t < n; ++t)
        if (eps_[t] != 1 && eps_[t] != -1) throw ParseError("orientation sign must be +-1");

    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = gluings_[t][f];
            if (g.target < 0 || g.target >= n)
                throw ParseError("gluing target out of range at " + loc(t, f));
            std::array<bool, 4> seen{};
            for (int v : g.perm) {
                if (v < 0 || v > 3) throw ParseError("bad permutation entry at " + loc(t, f));
                seen[v] = true;
            }
            if (!(seen[0] && seen[1] && seen[2] && seen[3]))
                throw ParseError("not a permutation at " + loc(t, f));
        }
    }

    // Involutivity: the gluing stored on the target face must be the inverse.
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = gluings_[t][f];
            int f2 = g.perm[f];
            const Gluing& back = gluings_[g.target][f2];
            if (back.target != t || back.perm[f2] != f)
                throw ParseError("non-involutive gluing at " + loc(t, f));
            for (int v = 0; v < 4; ++v)
                if (back.perm[g.perm[v]] != v)
                    throw ParseError("non-involutive gluing at " + loc(t, f));
        }
    }

    // Ordering first: a non-monotone face map usually breaks the parity
    // condition below too, and the more specific error should win.
    OrderingReport ord = check_ordering(gluings_);
    if (!ord.ok) {
        auto [t, f] = ord.offending.front();
        throw OrderingError("face map does not preserve edge orientations at " + loc(t, f));
    }

    // Face pairings must reverse the induced boundary orientations.
    for (int t = 0; t < n; ++t) {
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = gluings_[t][f];
            int f2 = g.perm[f];
            int sgn = restricted_sign(g.perm, f);
            int lhs = eps_[t] * eps_[g.target] * ((f + f2) % 2 == 0 ? 1 : -1) * sgn;
            if (lhs != -1)
                throw ParseError("orientation signs incompatible with gluing at " + loc(t, f));
        }
    }
}

void Triangulation::derive() {
    int n = size();

    // Edge classes: orbits of (tet, edge) under the face maps.
    {
        DSU dsu(6 * n);
        for (int t = 0; t < n; ++t) {
            for (int f = 0; f < 4; ++f) {
                const Gluing& g = gluings_[t][f];
                for (int k = 0; k < 6; ++k) {
                    int a = kEdgeVerts[k][0], b = kEdgeVerts[k][1];
                    if (a == f || b == f) continue;
                    int k2 = edge_index(g.perm[a], g.perm[b]);
                    dsu.unite(6 * t + k, 6 * g.target + k2);
                }
            }
        }
        std::map<int, EdgeClass> classes;
        for (int t = 0; t < n; ++t)
            for (int k = 0; k < 6; ++k)
                classes[dsu.find(6 * t + k)].incidences.push_back({t, k, eps_[t]});
        edge_classes_.clear();
        for (auto& [root, ec] : classes) edge_classes_.push_back(std::move(ec));
    }

    // Cusp triangles and their side adjacency.
    tri_.assign(4 * n, CuspTriangle{});
    for (int t = 0; t < n; ++t) {
        for (int v = 0; v < 4; ++v) {
            CuspTriangle& ct = tri_[4 * t + v];
            ct.tet = t;
            ct.vertex = v;
            ct.corner_slot.fill(-1);
            for (int j = 0; j < 4; ++j)
                if (j != v) ct.corner_slot[j] = kEdgeSlot[edge_index(v, j)];
            for (int f = 0; f < 4; ++f) {
                if (f == v) continue;
                const Gluing& g = gluings_[t][f];
                ct.adj[f] = {g.target, g.perm[v], g.perm[f]};
            }
        }
    }

    // Vertex classes = cusps; Euler characteristic of each link surface.
    DSU vdsu(4 * n);
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f)
            for (int v = 0; v < 4; ++v)
                if (v != f)
                    vdsu.unite(4 * t + v, 4 * gluings_[t][f].target + gluings_[t][f].perm[v]);

    // Corner classes: corner (t, v, j) glued through the faces containing
    // edge (v, j); these are the vertices of the link surface.
    std::map<std::tuple<int, int, int>, int> corner_id;
    std::vector<std::tuple<int, int, int>> corners;
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            for (int j = 0; j < 4; ++j)
                if (j != v) {
                    corner_id[{t, v, j}] = int(corners.size());
                    corners.emplace_back(t, v, j);
                }
    DSU cdsu(int(corners.size()));
    for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) {
            const Gluing& g = gluings_[t][f];
            for (int v = 0; v < 4; ++v) {
                if (v == f) continue;
                for (int j = 0; j < 4; ++j) {
                    if (j == v || j == f) continue;
                    cdsu.unite(corner_id[{t, v, j}],
                               corner_id[{g.target, g.perm[v], g.perm[j]}]);
                }
            }
        }

    std::map<int, Cusp> by_root;
    for (int t = 0; t < n; ++t)
        for (int v = 0; v < 4; ++v)
            by_root[vdsu.find(4 * t + v)].triangles.emplace_back(t, v);

    cusps_.clear();
    cusp_of_.assign(4 * n, -1);
    for (auto& [root, cusp] : by_root) {
        std::sort(cusp.triangles.begin(), cusp.triangles.end());
        int faces = int(cusp.triangles.size());
        int edges = 3 * faces / 2;
        std::set<int> vroots;
        for (auto [t, v] : cusp.triangles)
            for (int j = 0; j < 4; ++j)
                if (j != v) vroots.insert(cdsu.find(corner_id[{t, v, j}]));
        cusp.euler = faces - edges + int(vroots.size());
        int ci = int(cusps_.size());
        for (auto [t, v] : cusp.triangles) cusp_of_[4 * t + v] = ci;
        cusps_.push_back(std::move(cusp));
    }

    for (const Cusp& c : cusps_)
        if (c.euler == 2)
            throw ParseError("vertex link is a sphere: interior vertices are not supported");
}

Triangulation Triangulation::build(std::vector<std::array<Gluing, 4>> gluings,
                                   std::vector<int> orientation_signs) {
    Triangulation t;
    t.gluings_ = std::move(gluings);
    t.eps_ = std::move(orientation_signs);
    t.validate();
    t.derive();
    return t;
}

Triangulation Triangulation::reversed() const {
    Triangulation t(*this);
    for (int& e : t.eps_) e = -e;
    // Derived edge-incidence signs follow the orientation signs.
    for (EdgeClass& ec : t.edge_classes_)
        for (EdgeIncidence& inc : ec.incidences) inc.sign = -inc.sign;
    return t;
}

Triangulation Triangulation::parse(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }

    try {
        if (!j.is_object()) throw ParseError("top level must be an object");
        int n = j.at("tetrahedra").get<int>();
        if (n < 1) throw ParseError("tetrahedra must be positive");

        auto& jsigns = j.at("orientation_signs");
        auto& jglue = j.at("gluings");
        if (int(jsigns.size()) != n) throw ParseError("orientation_signs length mismatch");
        if (int(jglue.size()) != n) throw ParseError("gluings length mismatch");

        std::vector<int> eps;
        for (auto& s : jsigns) eps.push_back(s.get<int>());

        std::vector<std::array<Gluing, 4>> gluings(n);
        for (int t = 0; t < n; ++t) {
            if (int(jglue[t].size()) != 4)
                throw ParseError("tet " + std::to_string(t) + ": need 4 face gluings");
            for (int f = 0; f < 4; ++f) {
                auto& cell = jglue[t][f];
                if (!cell.is_array() || cell.size() != 2 || !cell[1].is_array() || cell[1].size() != 4)
                    throw ParseError("bad gluing entry at " + loc(t, f));
                Gluing g;
                g.target = cell[0].get<int>();
                for (int v = 0; v < 4; ++v) g.perm[v] = cell[1][v].get<int>();
                gluings[t][f] = g;
            }
        }

        Triangulation tri = build(std::move(gluings), std::move(eps));

        if (j.contains("cusp_equations")) {
            for (auto& row : j.at("cusp_equations")) {
                std::vector<EqTerm> terms;
                for (auto& term : row) {
                    EqTerm e;
                    e.tet = term.at("tet").get<int>();
                    e.a = term.at("a").get<int>();
                    e.b = term.at("b").get<int>();
                    e.c = term.at("c").get<int>();
                    if (e.tet < 0 || e.tet >= tri.size())
                        throw ParseError("cusp equation references missing tet");
                    terms.push_back(e);
                }
                tri.cusp_eqs_.push_back(std::move(terms));
            }
        }
        if (j.contains("shapes")) {
            std::vector<cx> shapes;
            for (auto& s : j.at("shapes")) {
                if (!s.is_array() || s.size() != 2) throw ParseError("shape entries are [re, im]");
                shapes.emplace_back(s[0].get<double>(), s[1].get<double>());
            }
            if (int(shapes.size()) != tri.size()) throw ParseError("shapes length mismatch");
            tri.shapes_ = std::move(shapes);
        }
        if (j.contains("shape_field")) {
            auto& jf = j.at("shape_field");
            ShapeField f;
            for (auto& c : jf.at("poly")) f.poly.push_back(c.get<long>());
            auto& r = jf.at("root");
            f.root = cx(r.at(0).get<double>(), r.at(1).get<double>());
            for (auto& ex : jf.at("shape_exprs")) {
                std::vector<long> coeffs;
                for (auto& c : ex) coeffs.push_back(c.get<long>());
                f.exprs.push_back(std::move(coeffs));
            }
            if (int(f.exprs.size()) != tri.size())
                throw ParseError("shape_exprs length mismatch");
            tri.field_ = std::move(f);
        }
        return tri;
    } catch (const json::exception& e) {
        throw ParseError(std::string("schema error: ") + e.what());
    }
}

} // namespace cvol
