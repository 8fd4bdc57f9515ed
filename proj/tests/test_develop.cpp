#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "cvol/bloch.hpp"
#include "cvol/complex_volume.hpp"
#include "cvol/develop.hpp"
#include "fixtures.hpp"

using cvol::Base;
using cvol::cx;
using cvol::ExtComplex;

TEST_CASE("default base is the first triangle of the cusp") {
    auto t = fixtures::load("5_2.json");
    Base b = cvol::default_base(t, 0);
    CHECK(b.tet == 0);
    CHECK(b.vertex == 0);
    CHECK(b.side == 1);
}

TEST_CASE("developing 5_2 places every triangle of the cusp") {
    auto t = fixtures::load("5_2.json");
    auto d = cvol::develop_all(t, *t.file_shapes());
    for (auto [tt, vv] : t.cusp_link()[0].triangles) {
        REQUIRE(d.placed(tt, vv));
        // Non-degenerate triangle.
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) {
                if (j == vv || k == vv) continue;
                CHECK(std::abs(d.alpha(tt, vv, j, k)) > 1e-6);
            }
    }
    // The base side sits at the requested positions.
    Base b = cvol::default_base(t, 0);
    CHECK(std::abs(d.corner(b.tet, b.vertex, 2) - cx(0.0, 0.0)) < 1e-15);
    CHECK(std::abs(d.corner(b.tet, b.vertex, 3) - cx(1.0, 0.0)) < 1e-15);
}

TEST_CASE("fig8 cusp cross-section is the hexagonal torus") {
    auto t = fixtures::load("fig8.json");
    auto d = cvol::develop_all(t, *t.file_shapes());
    for (auto [tt, vv] : t.cusp_link()[0].triangles) {
        std::vector<double> sides;
        for (int j = 0; j < 4; ++j)
            for (int k = j + 1; k < 4; ++k) {
                if (j == vv || k == vv) continue;
                sides.push_back(std::abs(d.alpha(tt, vv, j, k)));
            }
        REQUIRE(sides.size() == 3);
        CHECK(sides[0] == doctest::Approx(sides[1]).epsilon(1e-9));
        CHECK(sides[1] == doctest::Approx(sides[2]).epsilon(1e-9));
    }
}

TEST_CASE("symmetric fig8 shapes have non-translational holonomy") {
    auto t = fixtures::load("fig8.json");
    const cx x(0.5, std::sqrt(3.0) / 2.0);
    std::vector<cx> shapes{x, x}; // solves the edge rows but not the cusp rows
    try {
        cvol::develop_cusp(t, shapes, 0, cvol::default_base(t, 0));
        FAIL("expected NonParabolicHolonomyError");
    } catch (const cvol::NonParabolicHolonomyError& e) {
        CHECK(e.residual > 1e-3);
    }
}

TEST_CASE("develop argument validation") {
    auto t = fixtures::load("5_2.json");
    std::vector<cx> shapes = *t.file_shapes();
    CHECK_THROWS_AS(cvol::develop_cusp(t, {shapes[0]}, 0, cvol::default_base(t, 0)),
                    cvol::InconsistentInputError);
    CHECK_THROWS_AS(cvol::develop_cusp(t, shapes, 2, cvol::default_base(t, 0)),
                    cvol::DomainError);
    CHECK_THROWS_AS(cvol::develop_cusp(t, shapes, 0, Base{0, 1, 1}), cvol::DomainError);

    auto t2 = fixtures::doubled(t);
    std::vector<cx> shapes2 = shapes;
    shapes2.insert(shapes2.end(), shapes.begin(), shapes.end());
    // Base triangle in the wrong cusp.
    CHECK_THROWS_AS(cvol::develop_cusp(t2, shapes2, 1, Base{0, 0, 1}), cvol::DomainError);
}

TEST_CASE("edge values square to the inverse corner products everywhere") {
    auto t = fixtures::load("5_2.json");
    auto d = cvol::develop_all(t, *t.file_shapes());
    auto lcs = cvol::edge_log_c(t, d);
    REQUIRE(lcs.size() == t.edge_classes().size());
    for (size_t ci = 0; ci < lcs.size(); ++ci) {
        CHECK(std::abs(std::exp(lcs[ci].log_c) - lcs[ci].c) < 1e-12);
        for (const auto& inc : t.edge_classes()[ci].incidences) {
            int i = cvol::kEdgeVerts[inc.edge][0], j = cvol::kEdgeVerts[inc.edge][1];
            for (int k = 0; k < 4; ++k) {
                if (k == i || k == j) continue;
                cx prod = d.alpha(inc.tet, i, k, j) * d.alpha(inc.tet, j, i, k);
                CHECK(std::abs(lcs[ci].c * lcs[ci].c * prod - 1.0) < 1e-9);
            }
        }
    }
}

TEST_CASE("inconsistent decorations fail the edge cocycle check") {
    auto t = fixtures::load("5_2.json");
    auto shapes = *t.file_shapes();
    shapes[0] += cx(1e-9, 0.0); // passes the revisit tolerance, fails 1e-12
    auto d = cvol::develop_all(t, shapes);
    CHECK_THROWS_AS(cvol::edge_log_c(t, d, 1e-12), cvol::CocycleInconsistencyError);
}

TEST_CASE("5_2 flattenings from the developed decoration") {
    auto t = fixtures::load("5_2.json");
    auto shapes = *t.file_shapes();
    auto d = cvol::develop_all(t, shapes);
    auto res = cvol::psi_flatten(t, shapes, cvol::edge_log_c(t, d));
    REQUIRE(res.flattenings.size() == 3);

    const long expect_pq[3][2] = {{-1, 0}, {0, -1}, {-1, 0}};
    for (int i = 0; i < 3; ++i) {
        CHECK(res.flattenings[i].p == expect_pq[i][0]);
        CHECK(res.flattenings[i].q == expect_pq[i][1]);
        CHECK(std::abs(res.flattenings[i].z - shapes[i]) < 1e-12);
    }
    CHECK(cvol::max_semistrong_residual(t, res.flattenings) < 1e-9);
    CHECK(res.element.terms.size() <= 3);
}

TEST_CASE("fig8 flattenings satisfy the semi-strong edge sums") {
    auto t = fixtures::load("fig8.json");
    auto shapes = *t.file_shapes();
    auto d = cvol::develop_all(t, shapes);
    auto res = cvol::psi_flatten(t, shapes, cvol::edge_log_c(t, d));
    CHECK(cvol::max_semistrong_residual(t, res.flattenings) < 1e-9);
    for (int i = 0; i < 2; ++i) {
        // exp(w0) = +-z pins the branch.
        cx e = std::exp(res.flattenings[i].w0);
        CHECK(std::min(std::abs(e - shapes[i]), std::abs(e + shapes[i])) < 1e-10);
    }
}

TEST_CASE("the lhat sum is independent of base side and base positions") {
    auto t = fixtures::load("5_2.json");
    auto shapes = *t.file_shapes();

    auto value = [&](const std::map<int, Base>& bases) {
        auto d = cvol::develop_all(t, shapes, bases);
        auto res = cvol::psi_flatten(t, shapes, cvol::edge_log_c(t, d));
        return cvol::lhat_sum(res.element);
    };
    cx v0 = value({});
    for (Base b : {Base{1, 2, 0}, Base{2, 3, 1}, Base{0, 1, 3}}) {
        cx v = value({{0, b}});
        CHECK(std::abs(v.imag() - v0.imag()) < 1e-8);
        CHECK(cvol::mod_pi2_distance(v.real(), v0.real()) < 1e-8);
    }

    // A scaled and translated base segment moves the decoration but not the
    // value either.
    auto d = cvol::develop_cusp(t, shapes, 0, cvol::default_base(t, 0),
                                {cx(1.0, 2.0), cx(3.0, -1.0)});
    auto res = cvol::psi_flatten(t, shapes, cvol::edge_log_c(t, d));
    cx v = cvol::lhat_sum(res.element);
    CHECK(std::abs(v.imag() - v0.imag()) < 1e-8);
    CHECK(cvol::mod_pi2_distance(v.real(), v0.real()) < 1e-8);
}

TEST_CASE("coset normalization") {
    Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();

    Eigen::Matrix2cd s;
    s << cx(0.0), cx(-1.0), cx(1.0), cx(0.0);
    auto n1 = cvol::normalize_cosets(id, s);
    CHECK(std::abs(n1.p) < 1e-15);
    CHECK(std::abs(n1.q) < 1e-15);
    CHECK(std::abs(n1.c - cx(1.0)) < 1e-15);

    Eigen::Matrix2cd l;
    l << cx(1.0), cx(0.0), cx(1.0), cx(1.0);
    auto n2 = cvol::normalize_cosets(id, l);
    CHECK(std::abs(n2.p - cx(1.0)) < 1e-15);
    CHECK(std::abs(n2.q - cx(-1.0)) < 1e-15);
    CHECK(std::abs(n2.c - cx(1.0)) < 1e-15);

    // Defining property: (g u(p))^-1 h u(q) is counter-diagonal.
    Eigen::Matrix2cd g, h;
    g << cx(1.2, 0.3), cx(0.5, -0.1), cx(0.7, 0.2), cx(1.0, 0.0);
    g /= std::sqrt(g.determinant());
    h << cx(0.4, -0.6), cx(1.1, 0.2), cx(-0.3, 0.8), cx(0.9, 0.1);
    h /= std::sqrt(h.determinant());
    auto n3 = cvol::normalize_cosets(g, h);
    auto u = [](cx x) {
        Eigen::Matrix2cd m;
        m << cx(1.0), x, cx(0.0), cx(1.0);
        return m;
    };
    Eigen::Matrix2cd gu = g * u(n3.p);
    Eigen::Matrix2cd inv;
    inv << gu(1, 1), -gu(0, 1), -gu(1, 0), gu(0, 0);
    Eigen::Matrix2cd cd = inv * h * u(n3.q);
    CHECK(std::abs(cd(0, 0)) < 1e-12);
    CHECK(std::abs(cd(1, 1)) < 1e-12);
    CHECK(std::abs(cd(1, 0) - n3.c) < 1e-12);

    Eigen::Matrix2cd upper;
    upper << cx(1.0), cx(5.0), cx(0.0), cx(1.0);
    CHECK_THROWS_AS(cvol::normalize_cosets(id, upper), cvol::SameCosetError);

    Eigen::Matrix2cd bad;
    bad << cx(2.0), cx(0.0), cx(0.0), cx(1.0);
    CHECK_THROWS_AS(cvol::normalize_cosets(id, bad), cvol::DomainError);
}

TEST_CASE("decorating matrices") {
    const cx s(0.7, 0.4), d(1.3, -0.2);

    auto mf = cvol::decorating_matrix(ExtComplex(cx(2.0, 1.0)), s, d);
    CHECK(std::abs(mf.determinant() - cx(1.0)) < 1e-12);
    CHECK(std::abs(mf(0, 0) / mf(1, 0) - cx(2.0, 1.0)) < 1e-12);

    auto mi = cvol::decorating_matrix(ExtComplex::infinity(), s, d);
    CHECK(std::abs(mi.determinant() - cx(1.0)) < 1e-12);
    CHECK(std::abs(mi(1, 0)) == 0.0);

    CHECK_THROWS_AS(cvol::decorating_matrix(ExtComplex(cx(1.0, 0.0)), cx(0.0), d),
                    cvol::DomainError);
}

TEST_CASE("psi of a four-point configuration") {
    const cx u(1.4, 0.7), v(-0.8, 1.9);
    std::vector<ExtComplex> pts{ExtComplex::infinity(), ExtComplex(cx(0.0, 0.0)),
                                ExtComplex(u), ExtComplex(v)};
    std::vector<Eigen::Matrix2cd> mats;
    const cx scales[4] = {{1.0, 0.2}, {0.9, -0.4}, {1.2, 0.1}, {0.5, 0.6}};
    const cx shifts[4] = {{0.3, 0.0}, {0.0, 0.5}, {-0.2, 0.2}, {0.4, -0.3}};
    for (int i = 0; i < 4; ++i)
        mats.push_back(cvol::decorating_matrix(pts[i], scales[i], shifts[i]));

    auto res = cvol::psi_of_configuration(pts, mats);
    REQUIRE(res.flattening.has_value());
    CHECK(std::abs(res.flattening->z - u / v) < 1e-12);
    // c is antisymmetric up to sign of the representative entries: c_ij and
    // c_ji come from inverse matrices.
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            CHECK(std::abs(res.c[i][j] + res.c[j][i]) < 1e-12);
        }

    // A common left translation by any unit-determinant matrix moves the
    // points but fixes all long-edge data.
    Eigen::Matrix2cd a;
    a << cx(0.8, 0.1), cx(0.2, -0.5), cx(0.4, 0.3), cx(1.1, 0.2);
    a /= std::sqrt(a.determinant());
    auto moebius = [&](const ExtComplex& p) {
        if (p.is_infinity()) {
            if (std::abs(a(1, 0)) < 1e-14) return ExtComplex::infinity();
            return ExtComplex(a(0, 0) / a(1, 0));
        }
        cx den = a(1, 0) * p.value() + a(1, 1);
        return ExtComplex((a(0, 0) * p.value() + a(0, 1)) / den);
    };
    std::vector<ExtComplex> pts2;
    std::vector<Eigen::Matrix2cd> mats2;
    for (int i = 0; i < 4; ++i) {
        pts2.push_back(moebius(pts[i]));
        mats2.push_back(a * mats[i]);
    }
    auto res2 = cvol::psi_of_configuration(pts2, mats2);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j) CHECK(std::abs(res2.c[i][j] - res.c[i][j]) < 1e-10);
    REQUIRE(res2.flattening.has_value());
    CHECK(res2.flattening->p == res.flattening->p);
    CHECK(res2.flattening->q == res.flattening->q);

    // Mismatched decoration and duplicate points are rejected.
    CHECK_THROWS_AS(cvol::psi_of_configuration(
                        {pts[0], pts[1], pts[2], ExtComplex(cx(9.0, 9.0))}, mats),
                    cvol::InconsistentInputError);
    std::vector<ExtComplex> dup{pts[0], pts[2], pts[2]};
    std::vector<Eigen::Matrix2cd> dupm{mats[0], mats[2],
                                       cvol::decorating_matrix(pts[2], cx(2.0, 0.0), cx(0.0))};
    CHECK_THROWS_AS(cvol::psi_of_configuration(dup, dupm), cvol::SameCosetError);
}
