#pragma once

#include <array>
#include <utility>
#include <vector>

#include "cvol/numerics.hpp"

namespace cvol {

// Formal integer combination of flattened ideal simplices. Terms with equal
// (z, p, q) (within tolerance) are merged; zero coefficients are dropped.
struct PreBlochElement {
    std::vector<std::pair<long, Flattening>> terms;

    void add(long coeff, const Flattening& f, double tol = kAssertTol);
    bool empty() const { return terms.empty(); }
};

// Formal integer combination of wedge pairs u ^ v. Canonical form: each pair
// ordered lexicographically by (Re, Im) with the sign absorbed into the
// coefficient, equal-component pairs dropped, equal pairs merged. Zero-testing
// is a cancellation heuristic, not a decision procedure for the wedge square.
struct WedgeElement {
    std::vector<std::pair<long, std::pair<cx, cx>>> terms;

    void add(long coeff, cx u, cx v, double tol = kAssertTol);
    bool empty() const { return terms.empty(); }
};

// Generator (w0, w1, w2) |-> w0 ^ w1, extended linearly. Pairs are stored
// over the splitting w0 = Log z + p pi i, w1 = -Log(1-z) + q pi i so that
// transfer-relation combinations cancel exactly; for p = q = 0 the output is
// the single pair (w0, w1).
WedgeElement nu_hat(const PreBlochElement& e);

// The ten signed log-parameter sums of a five-point configuration, indexed by
// the edges [z_i z_j] in the order
// 01, 02, 12, 13, 23, 24, 34, 30, 40, 41.
struct TenEqReport {
    std::array<double, 10> residuals;
    bool ok;
};

// flats[i] must have the cross-ratio of the points with index i omitted
// (InconsistentInputError otherwise). ok iff every residual < tol.
TenEqReport check_flattening_condition(const std::array<Flattening, 5>& flats,
                                       const std::array<ExtComplex, 5>& points,
                                       double tol = kAssertTol);

// Transfer relation L^([z;p,q]) + L^([z;p',q']) = L^([z;p,q']) + L^([z;p',q]).
// Both sides are expanded over the integer coefficient vector of
// {L(z), (pi i/2) Log z, (pi i/2) Log(1-z), pi^2/6} and compared exactly.
bool check_transfer(cx z, long p, long q, long p2, long q2);

// Sum of coefficient * lhat(flattening), real part reduced to [0, pi^2).
cx lhat_sum(const PreBlochElement& e);

} // namespace cvol
