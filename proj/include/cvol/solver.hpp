#pragma once

#include <cstdint>
#include <vector>

#include "cvol/triangulation.hpp"

namespace cvol {

// One multiplicative condition on the shapes: product over terms of
// z^a z'^b z''^c equals target (+1 for edge and cusp-completeness rows).
struct GluingEquation {
    std::vector<EqTerm> terms;
    int target = 1;
};

// One equation per edge class; exponents are the orientation-signed corner
// counts around the edge.
std::vector<GluingEquation> edge_equations(const Triangulation& t);

// Cusp-completeness rows read from the input file.
std::vector<GluingEquation> cusp_equations(const Triangulation& t);

// edge_equations followed by cusp_equations.
std::vector<GluingEquation> all_equations(const Triangulation& t);

// Log-form residual: sum of a Log z + b Log z' + c Log z'' - Log target,
// folded into the branch nearest zero (subtracting the closest 2 pi i k).
cx log_residual(const GluingEquation& eq, const std::vector<cx>& z);

// |product - target| evaluated multiplicatively, no logarithms.
double multiplicative_residual(const GluingEquation& eq, const std::vector<cx>& z);

// Throws EquationResidualError if any |log_residual| >= tol or any
// multiplicative residual >= kAssertTol.
void verify_equations(const std::vector<GluingEquation>& eqs,
                      const std::vector<cx>& z, double tol = kAcceptTol);

struct ShapeAssignment {
    std::vector<cx> z;
    std::vector<double> residuals; // |log-form residual| per equation
};

struct SolveOptions {
    int max_iterations = 100;
    int max_restarts = 10;
    double tol = kSolverTol;
    // Restart perturbations are drawn from a fixed-seed generator created at
    // the start of each solve, so identical calls are bitwise reproducible.
    std::uint64_t rng_seed = 12345;
};

// Damped least-squares Newton on the log-form residuals. Seed defaults to
// (1 + i sqrt 3)/2 for every tetrahedron. Restart k re-seeds inside a box of
// half-width 0.4 k around the seed. Throws SolverError (no convergence) or
// DegenerateSolutionError (converged onto z in {0, 1}).
ShapeAssignment solve(const Triangulation& t, const std::vector<GluingEquation>& eqs,
                      const std::vector<cx>* seed = nullptr,
                      const SolveOptions& opts = {});

// Evaluate the shapes exactly from the number-field description: refine the
// root of poly nearest the stored approximation (or take the root with the
// given index in (Re, Im)-sorted order), evaluate the shape polynomials, and
// verify every equation. root_index = -1 selects by the stored approximation;
// an approximation that does not separate one root is an error.
ShapeAssignment shapes_from_field(const Triangulation& t, const ShapeField& field,
                                  int root_index = -1);

// All roots of an integer polynomial, (Re, Im)-sorted, Newton-polished.
std::vector<cx> polynomial_roots(const std::vector<long>& poly);

} // namespace cvol
