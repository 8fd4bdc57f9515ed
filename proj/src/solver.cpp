#include "cvol/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace cvol {

namespace {

const cx kDefaultSeed{0.5, std::sqrt(3.0) / 2.0};

bool near_degenerate(cx z) {
    return std::abs(z) < 1e-10 || std::abs(z - 1.0) < 1e-10;
}

cx dparam(const EqTerm& e, cx z) {
    // d/dz of a Log z + b Log(1/(1-z)) + c Log(1 - 1/z).
    return (double(e.a) - e.c) / z + (double(e.b) - e.c) / (1.0 - z);
}

} // namespace

std::vector<GluingEquation> edge_equations(const Triangulation& t) {
    std::vector<GluingEquation> out;
    for (const EdgeClass& ec : t.edge_classes()) {
        std::vector<std::array<int, 3>> m(t.size(), {0, 0, 0});
        for (const EdgeIncidence& inc : ec.incidences)
            m[inc.tet][kEdgeSlot[inc.edge]] += inc.sign;
        GluingEquation eq;
        for (int i = 0; i < t.size(); ++i)
            if (m[i][0] || m[i][1] || m[i][2])
                eq.terms.push_back({i, m[i][0], m[i][1], m[i][2]});
        out.push_back(std::move(eq));
    }
    return out;
}

std::vector<GluingEquation> cusp_equations(const Triangulation& t) {
    std::vector<GluingEquation> out;
    for (const auto& row : t.file_cusp_equations()) {
        GluingEquation eq;
        eq.terms = row;
        out.push_back(std::move(eq));
    }
    return out;
}

std::vector<GluingEquation> all_equations(const Triangulation& t) {
    auto out = edge_equations(t);
    auto cusp = cusp_equations(t);
    out.insert(out.end(), cusp.begin(), cusp.end());
    return out;
}

cx log_residual(const GluingEquation& eq, const std::vector<cx>& z) {
    cx s = 0.0;
    for (const EqTerm& e : eq.terms) {
        cx zt = z[e.tet];
        if (near_degenerate(zt)) throw DomainError("shape at 0 or 1 in equation residual");
        s += double(e.a) * principal_log(zt)
           + double(e.b) * principal_log(1.0 / (1.0 - zt))
           + double(e.c) * principal_log(1.0 - 1.0 / zt);
    }
    if (eq.target == -1) s -= cx(0.0, kPi);
    double k = std::round(s.imag() / (2.0 * kPi));
    return s - cx(0.0, 2.0 * kPi * k);
}

double multiplicative_residual(const GluingEquation& eq, const std::vector<cx>& z) {
    cx prod = 1.0;
    for (const EqTerm& e : eq.terms) {
        auto par = cross_ratio_parameters(z[e.tet]);
        for (int s = 0; s < 3; ++s) {
            int ex = s == 0 ? e.a : s == 1 ? e.b : e.c;
            for (int k = 0; k < std::abs(ex); ++k)
                prod = ex > 0 ? prod * par[s] : prod / par[s];
        }
    }
    return std::abs(prod - double(eq.target));
}

void verify_equations(const std::vector<GluingEquation>& eqs,
                      const std::vector<cx>& z, double tol) {
    for (size_t i = 0; i < eqs.size(); ++i) {
        double lr = std::abs(log_residual(eqs[i], z));
        double mr = multiplicative_residual(eqs[i], z);
        if (lr >= tol || mr >= kAssertTol) {
            std::ostringstream os;
            os << "equation " << i << " violated: log residual " << lr
               << ", multiplicative residual " << mr;
            throw EquationResidualError(os.str(), std::max(lr, mr));
        }
    }
}

namespace {

Eigen::VectorXcd residual_vector(const std::vector<GluingEquation>& eqs,
                                 const std::vector<cx>& z) {
    Eigen::VectorXcd r(eqs.size());
    for (size_t i = 0; i < eqs.size(); ++i) r[i] = log_residual(eqs[i], z);
    return r;
}

Eigen::MatrixXcd jacobian(const std::vector<GluingEquation>& eqs,
                          const std::vector<cx>& z) {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(eqs.size(), z.size());
    for (size_t i = 0; i < eqs.size(); ++i)
        for (const EqTerm& e : eqs[i].terms)
            J(i, e.tet) += dparam(e, z[e.tet]);
    return J;
}

struct NewtonOutcome {
    std::vector<cx> z;
    double residual; // max-norm over equations
    bool converged;
};

NewtonOutcome newton_from(const std::vector<GluingEquation>& eqs,
                          std::vector<cx> z, const SolveOptions& opts) {
    double res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < opts.max_iterations; ++it) {
        Eigen::VectorXcd r;
        try {
            r = residual_vector(eqs, z);
        } catch (const DomainError&) {
            return {z, res, false};
        }
        res = r.cwiseAbs().maxCoeff();
        if (res < opts.tol) return {z, res, true};

        Eigen::MatrixXcd J = jacobian(eqs, z);
        Eigen::VectorXcd dz = J.completeOrthogonalDecomposition().solve(-r);

        // Step halving accepted on a 2-norm decrease; shapes must stay away
        // from the degenerate values.
        double lam = 1.0;
        double r2 = r.norm();
        bool accepted = false;
        while (lam > 1e-6) {
            std::vector<cx> zn = z;
            for (size_t i = 0; i < z.size(); ++i) zn[i] += lam * dz[i];
            if (std::none_of(zn.begin(), zn.end(), near_degenerate)) {
                try {
                    if (residual_vector(eqs, zn).norm() < r2) {
                        z = std::move(zn);
                        accepted = true;
                        break;
                    }
                } catch (const DomainError&) {
                }
            }
            lam /= 2.0;
        }
        if (!accepted) return {z, res, false}; // stalled
        if (lam * dz.cwiseAbs().maxCoeff() < 1e-14) {
            // Step collapsed; treat as converged only if already below tol.
            Eigen::VectorXcd rf = residual_vector(eqs, z);
            res = rf.cwiseAbs().maxCoeff();
            return {z, res, res < opts.tol};
        }
    }
    try {
        res = residual_vector(eqs, z).cwiseAbs().maxCoeff();
    } catch (const DomainError&) {
    }
    return {z, res, res < opts.tol};
}

} // namespace

ShapeAssignment solve(const Triangulation& t, const std::vector<GluingEquation>& eqs,
                      const std::vector<cx>* seed, const SolveOptions& opts) {
    int n = t.size();
    std::vector<cx> base(n, kDefaultSeed);
    if (seed) {
        if (int(seed->size()) != n) throw InconsistentInputError("seed length mismatch");
        base = *seed;
    }

    std::mt19937_64 rng(opts.rng_seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    double best = std::numeric_limits<double>::infinity();
    for (int attempt = 0; attempt <= opts.max_restarts; ++attempt) {
        std::vector<cx> z0 = base;
        if (attempt > 0) {
            double rad = 0.4 * attempt;
            for (cx& z : z0) z += rad * cx(unit(rng), unit(rng));
        }
        if (std::any_of(z0.begin(), z0.end(), near_degenerate)) continue;

        NewtonOutcome out = newton_from(eqs, z0, opts);
        best = std::min(best, out.residual);
        if (!out.converged) continue;

        for (cx z : out.z)
            if (near_degenerate(z))
                throw DegenerateSolutionError("solver converged onto a degenerate shape");

        verify_equations(eqs, out.z, kAssertTol);

        ShapeAssignment sa;
        sa.z = std::move(out.z);
        for (const GluingEquation& eq : eqs)
            sa.residuals.push_back(std::abs(log_residual(eq, sa.z)));
        return sa;
    }
    std::ostringstream os;
    os << "no convergence after " << opts.max_restarts << " restarts; best residual " << best;
    throw SolverError(os.str(), best);
}

std::vector<cx> polynomial_roots(const std::vector<long>& poly) {
    // Strip leading zeros (highest-degree end is the back).
    std::vector<double> c(poly.begin(), poly.end());
    while (c.size() > 1 && c.back() == 0.0) c.pop_back();
    int deg = int(c.size()) - 1;
    if (deg < 1) throw DomainError("polynomial must have positive degree");

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -c[i] / c[deg];
    for (int i = 1; i < deg; ++i) companion(i, i - 1) = 1.0;

    Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
    std::vector<cx> roots(deg);
    for (int i = 0; i < deg; ++i) roots[i] = es.eigenvalues()[i];

    auto eval = [&](cx x) {
        cx v = 0.0, d = 0.0;
        for (int i = deg; i >= 0; --i) {
            d = d * x + v;
            v = v * x + c[i];
        }
        return std::pair<cx, cx>(v, d);
    };
    for (cx& r : roots)
        for (int it = 0; it < 50; ++it) {
            auto [v, d] = eval(r);
            if (std::abs(v) < 1e-15 || std::abs(d) == 0.0) break;
            r -= v / d;
        }
    std::sort(roots.begin(), roots.end(), [](cx a, cx b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return roots;
}

ShapeAssignment shapes_from_field(const Triangulation& t, const ShapeField& field,
                                  int root_index) {
    std::vector<cx> roots = polynomial_roots(field.poly);
    cx x;
    if (root_index >= 0) {
        if (root_index >= int(roots.size()))
            throw DomainError("root index out of range");
        x = roots[root_index];
    } else {
        std::vector<double> d(roots.size());
        for (size_t i = 0; i < roots.size(); ++i) d[i] = std::abs(roots[i] - field.root);
        std::vector<size_t> idx(roots.size());
        std::iota(idx.begin(), idx.end(), size_t{0});
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return d[a] < d[b]; });
        if (roots.size() > 1 && d[idx[1]] < 2.0 * d[idx[0]])
            throw InconsistentInputError(
                "root approximation does not separate one root of the field polynomial");
        x = roots[idx[0]];
    }

    if (int(field.exprs.size()) != t.size())
        throw InconsistentInputError("shape expression count mismatch");
    ShapeAssignment sa;
    for (const auto& expr : field.exprs) {
        cx v = 0.0;
        for (int i = int(expr.size()) - 1; i >= 0; --i) v = v * x + double(expr[i]);
        sa.z.push_back(v);
    }

    auto eqs = all_equations(t);
    verify_equations(eqs, sa.z, kAcceptTol);
    for (const GluingEquation& eq : eqs)
        sa.residuals.push_back(std::abs(log_residual(eq, sa.z)));
    return sa;
}

} // namespace cvol
