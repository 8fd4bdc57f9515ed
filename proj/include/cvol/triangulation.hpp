#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cvol/numerics.hpp"

namespace cvol {

// Tetrahedron edges in file order; edge k joins kEdgeVerts[k].
// Parameter slots: (01),(23) carry z; (12),(03) carry z'; (02),(13) carry z''.
inline constexpr int kEdgeVerts[6][2] = {{0, 1}, {1, 2}, {0, 2}, {2, 3}, {0, 3}, {1, 3}};
inline constexpr int kEdgeSlot[6] = {0, 1, 2, 0, 1, 2};

// Edge index for a vertex pair.
int edge_index(int a, int b);

struct Gluing {
    int target;
    std::array<int, 4> perm; // perm[v] = image vertex; perm[f] = target face
};

// One tetrahedron-edge incidence of an edge class. sign is the orientation
// sign of the owning tetrahedron: the corner's cross-ratio parameter enters
// the edge product with exponent sign (a reversed simplex is swept backwards
// around the edge).
struct EdgeIncidence {
    int tet;
    int edge; // 0..5
    int sign;
};

struct EdgeClass {
    std::vector<EdgeIncidence> incidences;
    int valence() const { return int(incidences.size()); }
};

// Triangle cut off at vertex `vertex` of tetrahedron `tet`. Its corners are
// indexed by the other three vertices j; corner j carries the cross-ratio
// parameter slot of edge (vertex, j). Side f (f != vertex) lies in face f.
struct CuspTriangle {
    int tet, vertex;
    std::array<int, 4> corner_slot;           // slot per corner j; -1 at j == vertex
    struct Adj {
        int tet, vertex, side;
    };
    std::array<Adj, 4> adj;                   // per side f; undefined at f == vertex
};

struct Cusp {
    std::vector<std::pair<int, int>> triangles; // (tet, vertex), sorted
    int euler;
};

struct EqTerm {
    int tet;
    int a, b, c; // exponents of z, z', z''
};

struct ShapeField {
    std::vector<long> poly;                 // ascending coefficients
    cx root;                                // approximate defining root
    std::vector<std::vector<long>> exprs;   // shape of tet i as polynomial in x
};

class Triangulation {
public:
    // Full structural validation: schema, permutations, involutivity,
    // orientation-sign compatibility, ordering, no interior vertices.
    static Triangulation parse(const std::string& json_text);

    // Same validation from in-memory parts (tests, transforms).
    static Triangulation build(std::vector<std::array<Gluing, 4>> gluings,
                               std::vector<int> orientation_signs);

    int size() const { return int(gluings_.size()); }
    const Gluing& gluing(int t, int f) const { return gluings_[t][f]; }
    int eps(int t) const { return eps_[t]; }
    const std::vector<int>& orientation_signs() const { return eps_; }

    const std::vector<EdgeClass>& edge_classes() const { return edge_classes_; }
    const std::vector<Cusp>& cusp_link() const { return cusps_; }
    const CuspTriangle& cusp_triangle(int t, int v) const { return tri_[4 * t + v]; }
    // Cusp index containing vertex (t, v).
    int cusp_of(int t, int v) const { return cusp_of_[4 * t + v]; }

    const std::vector<std::vector<EqTerm>>& file_cusp_equations() const { return cusp_eqs_; }
    const std::optional<std::vector<cx>>& file_shapes() const { return shapes_; }
    const std::optional<ShapeField>& file_shape_field() const { return field_; }

    // Copy with all orientation signs negated.
    Triangulation reversed() const;

private:
    Triangulation() = default;
    void derive();       // edge classes, cusp link, euler characteristics
    void validate();     // involution, parity, ordering, vertex links

    std::vector<std::array<Gluing, 4>> gluings_;
    std::vector<int> eps_;
    std::vector<EdgeClass> edge_classes_;
    std::vector<CuspTriangle> tri_;
    std::vector<Cusp> cusps_;
    std::vector<int> cusp_of_;
    std::vector<std::vector<EqTerm>> cusp_eqs_;
    std::optional<std::vector<cx>> shapes_;
    std::optional<ShapeField> field_;
};

struct OrderingReport {
    bool ok;
    std::vector<std::pair<int, int>> offending; // (tet, face)
};

// True iff every face map preserves the order-induced edge orientations,
// i.e. restricts to a monotone map of the three face vertices.
OrderingReport check_ordering(const std::vector<std::array<Gluing, 4>>& gluings);
OrderingReport check_ordering(const Triangulation& t);

} // namespace cvol
