#include "cvol/complex_volume.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cvol {

double canonical_mod_pi2(double x) {
    double y = x - kPiSq * std::round(x / kPiSq);
    if (y <= -kPiSq / 2.0) y += kPiSq;
    if (y > kPiSq / 2.0) y -= kPiSq;
    return y;
}

double mod_pi2_distance(double a, double b) {
    return std::abs(canonical_mod_pi2(a - b));
}

ComplexVolume complex_volume_from_raw(cx raw) {
    return {raw.imag(), canonical_mod_pi2(-raw.real()), raw};
}

namespace {

// Similarity-relation residual of one developed tetrahedron: the twelve
// short-edge ratios against the three cross-ratio parameters, relative.
double similarity_residual(const Decoration& d, int t, cx z) {
    auto par = cross_ratio_parameters(z);
    auto ratio = [&](int i, int j1, int k1, int j2, int k2) {
        return d.alpha(t, i, j1, k1) / d.alpha(t, i, j2, k2);
    };
    // Ratios listed per parameter row: z, z', z''.
    const cx rows[3][4] = {
        {ratio(0, 1, 2, 1, 3), ratio(1, 0, 3, 0, 2), ratio(2, 3, 0, 3, 1), ratio(3, 2, 1, 2, 0)},
        {ratio(0, 1, 3, 2, 3), ratio(3, 0, 2, 0, 1), ratio(1, 2, 0, 2, 3), ratio(2, 3, 1, 0, 1)},
        {ratio(0, 3, 2, 1, 2), ratio(2, 0, 1, 0, 3), ratio(1, 2, 3, 0, 3), ratio(3, 1, 0, 1, 2)},
    };
    double worst = 0.0;
    for (int s = 0; s < 3; ++s)
        for (int k = 0; k < 4; ++k)
            worst = std::max(worst,
                             std::abs(rows[s][k] - par[s]) / std::max(1.0, std::abs(par[s])));
    return worst;
}

// Cross-corner agreement of the alpha products per edge class, relative.
double cross_corner_residual(const Triangulation& t, const Decoration& d) {
    double worst = 0.0;
    for (const EdgeClass& ec : t.edge_classes()) {
        std::vector<cx> vals;
        for (const EdgeIncidence& inc : ec.incidences) {
            int i = kEdgeVerts[inc.edge][0], j = kEdgeVerts[inc.edge][1];
            for (int k = 0; k < 4; ++k) {
                if (k == i || k == j) continue;
                vals.push_back(d.alpha(inc.tet, i, k, j) * d.alpha(inc.tet, j, i, k));
            }
        }
        for (const cx& v : vals)
            worst = std::max(worst,
                             std::abs(v - vals[0]) / std::max(1.0, std::abs(vals[0])));
    }
    return worst;
}

// exp(w_s) must be one of +-(parameter s).
double sign_relation_residual(const std::vector<Flattening>& flats) {
    double worst = 0.0;
    for (const Flattening& f : flats) {
        auto par = cross_ratio_parameters(f.z);
        for (int s = 0; s < 3; ++s) {
            cx e = std::exp(s == 0 ? f.w0 : s == 1 ? f.w1 : f.w2);
            double res = std::min(std::abs(e - par[s]), std::abs(e + par[s]));
            worst = std::max(worst, res / std::max(1.0, std::abs(par[s])));
        }
    }
    return worst;
}

double integrality_residual(const std::vector<Flattening>& flats) {
    double worst = 0.0;
    for (const Flattening& f : flats) {
        cx p = (f.w0 - principal_log(f.z)) / cx(0.0, kPi);
        cx q = (f.w1 + principal_log(1.0 - f.z)) / cx(0.0, kPi);
        worst = std::max({worst, std::abs(p - cx(double(f.p))), std::abs(q - cx(double(f.q)))});
    }
    return worst;
}

struct PipelineState {
    Decoration decoration;
    std::vector<EdgeLogC> lcs;
    PsiResult psi;
    std::map<std::string, double> residuals;
};

PipelineState run_pipeline(const Triangulation& t, const std::vector<cx>& shapes,
                           const std::map<int, Base>& bases) {
    if (int(shapes.size()) != t.size())
        throw InconsistentInputError("one shape per tetrahedron required");
    PipelineState st{Decoration(t.size()), {}, {}, {}};

    auto eqs = all_equations(t);
    verify_equations(eqs, shapes, kAcceptTol);
    double eq_res = 0.0;
    for (const GluingEquation& eq : eqs)
        eq_res = std::max(eq_res, std::abs(log_residual(eq, shapes)));
    st.residuals["equation_log"] = eq_res;

    st.decoration = develop_all(t, shapes, bases);
    st.lcs = edge_log_c(t, st.decoration);
    st.psi = psi_flatten(t, shapes, st.lcs);

    double sim = 0.0;
    for (int i = 0; i < t.size(); ++i)
        sim = std::max(sim, similarity_residual(st.decoration, i, shapes[i]));
    st.residuals["similarity"] = sim;
    st.residuals["cross_corner"] = cross_corner_residual(t, st.decoration);
    st.residuals["sign_relations"] = sign_relation_residual(st.psi.flattenings);
    st.residuals["integrality"] = integrality_residual(st.psi.flattenings);
    st.residuals["semi_strong"] = max_semistrong_residual(t, st.psi.flattenings);

    for (const auto& [name, res] : st.residuals)
        if (res > kAcceptTol) {
            std::ostringstream os;
            os << "pipeline check '" << name << "' failed with residual " << res;
            throw CocycleInconsistencyError(os.str());
        }
    return st;
}

} // namespace

VolumeResult complex_volume(const Triangulation& t, const std::vector<cx>& shapes,
                            const std::map<int, Base>& bases) {
    PipelineState st = run_pipeline(t, shapes, bases);
    VolumeResult out;
    out.value = complex_volume_from_raw(lhat_sum(st.psi.element));
    out.flattenings = std::move(st.psi.flattenings);
    out.element = std::move(st.psi.element);
    out.residuals = std::move(st.residuals);
    return out;
}

VolumeResult conjugate_representation(const Triangulation& t,
                                      const std::vector<cx>& shapes,
                                      const std::map<int, Base>& bases) {
    std::vector<cx> conj(shapes.size());
    std::transform(shapes.begin(), shapes.end(), conj.begin(),
                   [](cx z) { return std::conj(z); });
    return complex_volume(t, conj, bases);
}

VolumeResult reverse_orientation(const Triangulation& t,
                                 const std::vector<cx>& shapes,
                                 const std::map<int, Base>& bases) {
    return complex_volume(t.reversed(), shapes, bases);
}

FiveTermSample five_term_sample(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> box(-2.0, 2.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    std::uniform_real_distribution<double> mag(-0.7, 0.7);

    auto far_from = [](cx z, const std::vector<cx>& ws, double gap) {
        for (cx w : ws)
            if (std::abs(z - w) < gap) return false;
        return true;
    };

    // Draw five points, occasionally one at infinity, keeping every 4-point
    // cross-ratio away from the degenerate values.
    std::array<ExtComplex, 5> pts;
    for (;;) {
        bool use_inf = unit(rng) < 0.25;
        std::vector<cx> finite;
        bool ok = true;
        int nfinite = use_inf ? 4 : 5;
        for (int i = 0; i < nfinite && ok; ++i) {
            cx z(box(rng), box(rng));
            if (!far_from(z, finite, 0.3)) ok = false;
            finite.push_back(z);
        }
        if (!ok) continue;
        int k = 0;
        for (int i = 0; i < 5; ++i) {
            if (use_inf && i == 2) pts[i] = ExtComplex::infinity();
            else pts[i] = ExtComplex(finite[k++]);
        }
        bool nondeg = true;
        for (int omit = 0; omit < 5 && nondeg; ++omit) {
            std::array<ExtComplex, 4> q;
            int m = 0;
            for (int i = 0; i < 5; ++i)
                if (i != omit) q[m++] = pts[i];
            try {
                cx z = cross_ratio(q[0], q[1], q[2], q[3]);
                if (std::abs(z) < 0.05 || std::abs(z - 1.0) < 0.05 || std::abs(z) > 40.0)
                    nondeg = false;
            } catch (const DegenerateSimplexError&) {
                nondeg = false;
            }
        }
        if (nondeg) break;
    }

    std::array<Eigen::Matrix2cd, 5> mats;
    for (int i = 0; i < 5; ++i) {
        cx scale = std::polar(std::exp(mag(rng)), angle(rng));
        cx shift(box(rng), box(rng));
        mats[i] = decorating_matrix(pts[i], scale, shift);
    }

    std::array<Flattening, 5> flats{};
    for (int omit = 0; omit < 5; ++omit) {
        std::vector<ExtComplex> q;
        std::vector<Eigen::Matrix2cd> m;
        for (int i = 0; i < 5; ++i) {
            if (i == omit) continue;
            q.push_back(pts[i]);
            m.push_back(mats[i]);
        }
        flats[omit] = *psi_of_configuration(q, m).flattening;
    }

    TenEqReport rep = check_flattening_condition(flats, pts);
    double ten = *std::max_element(rep.residuals.begin(), rep.residuals.end());

    cx alt = 0.0;
    for (int i = 0; i < 5; ++i) alt += double(i % 2 == 0 ? 1 : -1) * lhat(flats[i]);
    double defect = std::abs(alt.imag()) + mod_pi2_distance(alt.real(), 0.0);
    return {ten, defect};
}

bool InvariantReport::all_pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const Entry& e) { return e.pass; });
}

const InvariantReport::Entry* InvariantReport::find(const std::string& name) const {
    for (const Entry& e : entries)
        if (e.name == name) return &e;
    return nullptr;
}

InvariantReport run_invariant_suite(const Triangulation& t, const std::vector<cx>& shapes) {
    if (int(shapes.size()) != t.size())
        throw InconsistentInputError("one shape per tetrahedron required");
    InvariantReport rep;
    auto push = [&](const std::string& name, double residual, double tol) {
        rep.entries.push_back({name, residual < tol, residual});
    };
    auto fail = [&](const std::string& name, const std::string& why) {
        rep.entries.push_back({name + " (" + why + ")", false,
                               std::numeric_limits<double>::infinity()});
    };

    push("ordering", check_ordering(t).ok ? 0.0 : 1.0, 0.5);

    auto eqs = all_equations(t);
    double eq_log = 0.0, eq_mult = 0.0;
    try {
        for (const GluingEquation& eq : eqs) {
            eq_log = std::max(eq_log, std::abs(log_residual(eq, shapes)));
            eq_mult = std::max(eq_mult, multiplicative_residual(eq, shapes));
        }
        push("gluing_equations_log", eq_log, kAcceptTol);
        push("gluing_equations_multiplicative", eq_mult, kAssertTol);
    } catch (const Error& e) {
        fail("gluing_equations_log", e.what());
        return rep;
    }
    if (eq_log >= kAcceptTol) return rep; // geometry below would be meaningless

    try {
        Decoration dec = develop_all(t, shapes);
        std::vector<EdgeLogC> lcs = edge_log_c(t, dec);
        PsiResult psi = psi_flatten(t, shapes, lcs);

        double sim = 0.0;
        for (int i = 0; i < t.size(); ++i)
            sim = std::max(sim, similarity_residual(dec, i, shapes[i]));
        push("similarity_relations", sim, kAcceptTol);
        push("cross_corner_consistency", cross_corner_residual(t, dec), kAcceptTol);
        push("sign_relations", sign_relation_residual(psi.flattenings), kAcceptTol);
        push("flattening_integrality", integrality_residual(psi.flattenings), kIntegralityTol);
        push("semi_strong_edges", max_semistrong_residual(t, psi.flattenings), kAcceptTol);

        // Same value from a different base side on every cusp.
        std::map<int, Base> alt;
        for (int ci = 0; ci < int(t.cusp_link().size()); ++ci) {
            Base b = default_base(t, ci);
            for (int s = b.side + 1; s < 4; ++s)
                if (s != b.vertex) {
                    b.side = s;
                    break;
                }
            alt[ci] = b;
        }
        PsiResult psi2 = psi_flatten(t, shapes, edge_log_c(t, develop_all(t, shapes, alt)));
        cx a = lhat_sum(psi.element), b = lhat_sum(psi2.element);
        push("decoration_independence",
             mod_pi2_distance(a.real(), b.real()) + std::abs(a.imag() - b.imag()),
             kAcceptTol);
    } catch (const Error& e) {
        fail("decoration", e.what());
    }

    {
        std::mt19937_64 rng(777);
        double ten = 0.0, defect = 0.0;
        for (int i = 0; i < 200; ++i) {
            FiveTermSample s = five_term_sample(rng);
            ten = std::max(ten, s.ten_eq_residual);
            defect = std::max(defect, s.lhat_defect);
        }
        push("five_term_equations", ten, kAcceptTol);
        push("five_term_lhat", defect, kAcceptTol);
    }

    {
        std::mt19937_64 rng(778);
        std::uniform_real_distribution<double> box(-3.0, 3.0);
        std::uniform_int_distribution<long> ints(-3, 3);
        bool ok = true;
        for (int i = 0; i < 1000 && ok; ++i) {
            cx z(box(rng), box(rng));
            if (std::abs(z) < 0.1 || std::abs(z - 1.0) < 0.1) continue;
            ok = check_transfer(z, ints(rng), ints(rng), ints(rng), ints(rng));
        }
        push("transfer_relation", ok ? 0.0 : 1.0, 0.5);
    }

    return rep;
}

} // namespace cvol
