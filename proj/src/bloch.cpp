#include "cvol/bloch.hpp"

#include <algorithm>
#include <cmath>

namespace cvol {

namespace {

bool lex_less(cx a, cx b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

bool close(cx a, cx b, double tol) { return std::abs(a - b) <= tol; }

// Local edge of the simplex [z_0 .. ^z_omit .. z_4] spanned by global
// vertices g1 < g2; returns the log-parameter slot: (01),(23) -> w0,
// (12),(03) -> w1, (02),(13) -> w2.
int slot_of(int omit, int g1, int g2) {
    int l1 = g1 - (g1 > omit ? 1 : 0);
    int l2 = g2 - (g2 > omit ? 1 : 0);
    int lo = std::min(l1, l2), hi = std::max(l1, l2);
    if ((lo == 0 && hi == 1) || (lo == 2 && hi == 3)) return 0;
    if ((lo == 1 && hi == 2) || (lo == 0 && hi == 3)) return 1;
    return 2;
}

} // namespace

void PreBlochElement::add(long coeff, const Flattening& f, double tol) {
    if (coeff == 0) return;
    for (auto it = terms.begin(); it != terms.end(); ++it) {
        if (it->second.same_generator(f, tol)) {
            it->first += coeff;
            if (it->first == 0) terms.erase(it);
            return;
        }
    }
    terms.emplace_back(coeff, f);
}

void WedgeElement::add(long coeff, cx u, cx v, double tol) {
    if (coeff == 0) return;
    if (close(u, v, tol)) return; // u ^ u = 0
    if (lex_less(v, u)) {
        std::swap(u, v);
        coeff = -coeff;
    }
    for (auto it = terms.begin(); it != terms.end(); ++it) {
        if (close(it->second.first, u, tol) && close(it->second.second, v, tol)) {
            it->first += coeff;
            if (it->first == 0) terms.erase(it);
            return;
        }
    }
    terms.emplace_back(coeff, std::make_pair(u, v));
}

WedgeElement nu_hat(const PreBlochElement& e) {
    WedgeElement w;
    const cx ipi(0.0, kPi);
    for (const auto& [c, f] : e.terms) {
        cx l0 = principal_log(f.z);
        cx l1 = principal_log(cx(1.0, 0.0) - f.z);
        // (l0 + p pi i) ^ (-l1 + q pi i) expanded bilinearly; pi i ^ pi i = 0.
        w.add(c, l0, -l1);
        w.add(c * f.q, l0, ipi);
        w.add(c * f.p, l1, ipi);
    }
    return w;
}

TenEqReport check_flattening_condition(const std::array<Flattening, 5>& flats,
                                       const std::array<ExtComplex, 5>& points,
                                       double tol) {
    for (int i = 0; i < 5; ++i) {
        std::array<ExtComplex, 4> sub;
        int k = 0;
        for (int j = 0; j < 5; ++j)
            if (j != i) sub[k++] = points[j];
        cx zi = cross_ratio(sub[0], sub[1], sub[2], sub[3]);
        if (std::abs(zi - flats[i].z) > 1e-6 * (1.0 + std::abs(zi)))
            throw InconsistentInputError("flattening cross-ratio does not match its face");
    }
    // Edge order fixed by the header; each edge lies in the three simplices
    // omitting neither endpoint, signed by the parity of the omitted index.
    static const int kEdges[10][2] = {{0, 1}, {0, 2}, {1, 2}, {1, 3}, {2, 3},
                                      {2, 4}, {3, 4}, {3, 0}, {4, 0}, {4, 1}};
    TenEqReport rep;
    rep.ok = true;
    for (int e = 0; e < 10; ++e) {
        int a = kEdges[e][0], b = kEdges[e][1];
        cx sum = 0.0;
        for (int i = 0; i < 5; ++i) {
            if (i == a || i == b) continue;
            const Flattening& f = flats[i];
            const cx w[3] = {f.w0, f.w1, f.w2};
            cx term = w[slot_of(i, std::min(a, b), std::max(a, b))];
            sum += (i % 2 == 0) ? term : -term;
        }
        rep.residuals[e] = std::abs(sum);
        if (rep.residuals[e] >= tol) rep.ok = false;
    }
    return rep;
}

bool check_transfer(cx z, long p, long q, long p2, long q2) {
    if (z == cx(0.0, 0.0) || z == cx(1.0, 0.0)) return false;
    // Coefficients of {L(z), (pi i/2) Log z, (pi i/2) Log(1-z), pi^2/6}.
    auto coeffs = [](long pp, long qq) {
        return std::array<long, 4>{1, qq, pp, -1};
    };
    std::array<long, 4> lhs{}, rhs{};
    for (int i = 0; i < 4; ++i) {
        lhs[i] = coeffs(p, q)[i] + coeffs(p2, q2)[i];
        rhs[i] = coeffs(p, q2)[i] + coeffs(p2, q)[i];
    }
    return lhs == rhs;
}

cx lhat_sum(const PreBlochElement& e) {
    cx sum = 0.0;
    for (const auto& [c, f] : e.terms) sum += double(c) * lhat(f);
    return cx(mod_pi2(sum.real()), sum.imag());
}

} // namespace cvol
