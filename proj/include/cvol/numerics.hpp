#pragma once

#include <array>
#include <complex>
#include <numbers>

#include "cvol/errors.hpp"

namespace cvol {

using cx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kPiSq = kPi * kPi;

// Global tolerances. Assertion checks use kAssertTol, the Newton solver
// drives log-residuals below kSolverTol, acceptance-level sums are compared
// at kAcceptTol. Flattening exponents must be integral within kIntegralityTol
// and cusp development re-visits must agree within kRevisitTol (relative).
inline constexpr double kAssertTol = 1e-9;
inline constexpr double kSolverTol = 1e-12;
inline constexpr double kAcceptTol = 1e-8;
inline constexpr double kIntegralityTol = 1e-6;
inline constexpr double kRevisitTol = 1e-7;

// A point of C u {infinity}. Finite values are plain complex numbers;
// infinity is a distinguished symbol, never a large surrogate.
class ExtComplex {
public:
    ExtComplex() : inf_(false), v_(0.0, 0.0) {}
    ExtComplex(cx v) : inf_(false), v_(v) {}
    ExtComplex(double re, double im = 0.0) : inf_(false), v_(re, im) {}

    static ExtComplex infinity() {
        ExtComplex e;
        e.inf_ = true;
        return e;
    }

    bool is_infinity() const { return inf_; }
    cx value() const {
        if (inf_) throw DomainError("value() of the point at infinity");
        return v_;
    }

    friend bool operator==(const ExtComplex& a, const ExtComplex& b) {
        if (a.inf_ || b.inf_) return a.inf_ && b.inf_;
        return a.v_ == b.v_;
    }

private:
    bool inf_;
    cx v_;
};

// Principal branch, Im in (-pi, pi]. Negative reals map to +i*pi even when
// the imaginary part arrives as -0.0.
cx principal_log(cx z);

// Dilogarithm on the principal branch; on the cut (1, inf) takes the limit
// from below (Im Li2(x) = -pi log x for real x > 1).
cx dilog(cx z);

// Rogers dilogarithm L(z) = Li2(z) + Log(z) Log(1-z) / 2.
cx rogers_L(cx z);

// Reduce to [0, pi^2).
double mod_pi2(double x);

// Log-parameter triple of a flattened ideal simplex:
//   w0 = Log z + p pi i,  w1 = -Log(1-z) + q pi i,  w0 + w1 + w2 = 0.
struct Flattening {
    cx w0, w1, w2;
    cx z;
    long p, q;

    static Flattening from_zpq(cx z, long p, long q);
    // Recover (p, q) from log-parameters; throws FlatteningIntegralityError if
    // they are farther than kIntegralityTol from integers.
    static Flattening from_logs(cx w0, cx w1, cx z);

    bool same_generator(const Flattening& o, double tol = kAssertTol) const {
        return p == o.p && q == o.q && std::abs(z - o.z) <= tol;
    }
};

// L(z) + (pi i / 2)(q Log z + p Log(1-z)) - pi^2/6; callers reduce the real
// part mod pi^2.
cx lhat(const Flattening& f);

// (z0 - z3)(z1 - z2) / ((z0 - z2)(z1 - z3)) extended to infinity by symbolic
// cancellation. Throws DegenerateSimplexError on coincident points.
cx cross_ratio(const ExtComplex& z0, const ExtComplex& z1,
               const ExtComplex& z2, const ExtComplex& z3);

// (z, 1/(1-z), 1 - 1/z); the product of the three is -1.
std::array<cx, 3> cross_ratio_parameters(cx z);

} // namespace cvol
