#include "cvol/numerics.hpp"

#include <cmath>
#include <cstdlib>

namespace cvol {

namespace {

// +-0.0 imaginary parts both belong to the upper branch: Log(-1) = +i pi.
cx upper_branch(cx z) {
    if (z.imag() == 0.0) return cx(z.real(), 0.0);
    return z;
}

// Maclaurin series, |z| <= 0.5.
cx dilog_series(cx z) {
    cx term = z, sum = z;
    for (int k = 2; k < 200; ++k) {
        term *= z;
        cx add = term / double(k * k);
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum))) break;
    }
    return sum;
}

// Li2 = sum b_k w^{k+1} with w = -Log(1-z); b_k = B_k/(k+1)!.
// Converges for |w| < 2 pi; used on the middle annulus where |w| <= ~3.4.
constexpr int kWSeriesN = 32;
constexpr double kWSeriesCoeff[kWSeriesN][2] = {
    {0, 1.0},
    {1, -0.25},
    {2, 0.02777777777777777777778},
    {4, -0.0002777777777777777777778},
    {6, 4.724111866969009826153e-6},
    {8, -9.185773074661963550852e-8},
    {10, 1.897886998897099907201e-9},
    {12, -4.064761645144225526806e-11},
    {14, 8.921691020456452555218e-13},
    {16, -1.993929586072107568724e-14},
    {18, 4.51898002961991819165e-16},
    {20, -1.035651761218124701448e-17},
    {22, 2.39521862102618674574e-19},
    {24, -5.581785874325009336283e-21},
    {26, 1.309150755418321285812e-22},
    {28, -3.087419802426740293242e-24},
    {30, 7.315975652702203420358e-26},
    {32, -1.740845657234000740989e-27},
    {34, 4.157635644613899719618e-29},
    {36, -9.962148488284622103194e-31},
    {38, 2.394034424896165300521e-32},
    {40, -5.768347355367390084292e-34},
    {42, 1.393179479647007977828e-35},
    {44, -3.372121965485089470468e-37},
    {46, 8.178208777562102621765e-39},
    {48, -1.987010831152385925565e-40},
    {50, 4.835778518040550896287e-42},
    {52, -1.17869372487183843267e-43},
    {54, 2.877096408117257145002e-45},
    {56, -7.032059098156028014965e-47},
    {58, 1.72086031450331462909e-48},
    {60, -4.21607239056044549168e-50},
};

cx dilog_wseries(cx z) {
    cx w = -principal_log(cx(1.0, 0.0) - z);
    cx sum = 0.0;
    // Horner over powers; exponents are 0,1,2,4,6,... so walk explicitly.
    cx wp = w; // w^{k+1}, starting at k=0
    int k = 0;
    for (int i = 0; i < kWSeriesN; ++i) {
        int ki = int(kWSeriesCoeff[i][0]);
        while (k < ki) {
            wp *= w;
            ++k;
        }
        sum += kWSeriesCoeff[i][1] * wp;
    }
    return sum;
}

} // namespace

cx principal_log(cx z) {
    if (z == cx(0.0, 0.0)) throw DomainError("log of zero");
    return std::log(upper_branch(z));
}

cx dilog(cx z) {
    double az = std::abs(z);
    if (az <= 0.5) return dilog_series(z);
    if (az >= 2.0) {
        // Inversion: Li2(z) = -Li2(1/z) - pi^2/6 - Log(-z)^2 / 2.
        cx lm = principal_log(-upper_branch(z));
        return -dilog_series(1.0 / z) - kPiSq / 6.0 - 0.5 * lm * lm;
    }
    cx omz = upper_branch(cx(1.0, 0.0) - upper_branch(z));
    if (std::abs(omz) <= 0.5) {
        // Reflection: Li2(z) = pi^2/6 - Log(z) Log(1-z) - Li2(1-z).
        return kPiSq / 6.0 - principal_log(z) * principal_log(omz) - dilog_series(omz);
    }
    return dilog_wseries(upper_branch(z));
}

cx rogers_L(cx z) {
    if (z == cx(0.0, 0.0) || z == cx(1.0, 0.0))
        throw DomainError("Rogers dilogarithm at 0 or 1");
    return dilog(z) + 0.5 * principal_log(z) * principal_log(cx(1.0, 0.0) - z);
}

double mod_pi2(double x) {
    double r = std::fmod(x, kPiSq);
    if (r < 0.0) r += kPiSq;
    return r;
}

Flattening Flattening::from_zpq(cx z, long p, long q) {
    if (z == cx(0.0, 0.0) || z == cx(1.0, 0.0))
        throw DomainError("flattening shape must avoid 0 and 1");
    Flattening f;
    f.z = z;
    f.p = p;
    f.q = q;
    f.w0 = principal_log(z) + cx(0.0, kPi) * double(p);
    f.w1 = -principal_log(cx(1.0, 0.0) - z) + cx(0.0, kPi) * double(q);
    f.w2 = -f.w0 - f.w1;
    return f;
}

Flattening Flattening::from_logs(cx w0, cx w1, cx z) {
    if (z == cx(0.0, 0.0) || z == cx(1.0, 0.0))
        throw DomainError("flattening shape must avoid 0 and 1");
    const cx ipi(0.0, kPi);
    cx pc = (w0 - principal_log(z)) / ipi;
    cx qc = (w1 + principal_log(cx(1.0, 0.0) - z)) / ipi;
    auto nearest = [](cx v, const char* which) -> long {
        double r = std::round(v.real());
        if (std::abs(v - cx(r, 0.0)) > kIntegralityTol)
            throw FlatteningIntegralityError(std::string("non-integral flattening exponent ") + which);
        return long(r);
    };
    long p = nearest(pc, "p");
    long q = nearest(qc, "q");
    Flattening f;
    f.z = z;
    f.p = p;
    f.q = q;
    f.w0 = w0;
    f.w1 = w1;
    f.w2 = -w0 - w1;
    return f;
}

cx lhat(const Flattening& f) {
    cx lz = principal_log(f.z);
    cx l1z = principal_log(cx(1.0, 0.0) - f.z);
    return rogers_L(f.z) + cx(0.0, kPi / 2.0) * (double(f.q) * lz + double(f.p) * l1z)
           - kPiSq / 6.0;
}

cx cross_ratio(const ExtComplex& z0, const ExtComplex& z1,
               const ExtComplex& z2, const ExtComplex& z3) {
    const ExtComplex pts[4] = {z0, z1, z2, z3};
    int inf_at = -1;
    for (int i = 0; i < 4; ++i) {
        for (int j = i + 1; j < 4; ++j)
            if (pts[i] == pts[j])
                throw DegenerateSimplexError("coincident points in cross-ratio");
        if (pts[i].is_infinity()) inf_at = i;
    }
    cx r;
    if (inf_at < 0) {
        cx a = z0.value(), b = z1.value(), c = z2.value(), d = z3.value();
        r = (a - d) * (b - c) / ((a - c) * (b - d));
    } else if (inf_at == 0) {
        r = (z1.value() - z2.value()) / (z1.value() - z3.value());
    } else if (inf_at == 1) {
        r = (z0.value() - z3.value()) / (z0.value() - z2.value());
    } else if (inf_at == 2) {
        r = (z0.value() - z3.value()) / (z1.value() - z3.value());
    } else {
        r = (z1.value() - z2.value()) / (z0.value() - z2.value());
    }
    if (!std::isfinite(r.real()) || !std::isfinite(r.imag()) || r == cx(0.0, 0.0) || r == cx(1.0, 0.0))
        throw DegenerateSimplexError("degenerate cross-ratio");
    return r;
}

std::array<cx, 3> cross_ratio_parameters(cx z) {
    if (z == cx(0.0, 0.0) || z == cx(1.0, 0.0))
        throw DomainError("cross-ratio parameters need z outside {0,1}");
    return {z, 1.0 / (cx(1.0, 0.0) - z), 1.0 - 1.0 / z};
}

} // namespace cvol
