#pragma once

#include <map>
#include <random>
#include <string>

#include "cvol/develop.hpp"
#include "cvol/solver.hpp"

namespace cvol {

// i(vol + i cs) = raw up to real multiples of pi^2: vol = Im raw,
// cs = -Re raw with the canonical representative in (-pi^2/2, pi^2/2].
struct ComplexVolume {
    double vol;
    double cs;
    cx raw;
};

// Canonical representative of x mod pi^2 in (-pi^2/2, pi^2/2].
double canonical_mod_pi2(double x);

// Distance between two reals in R / pi^2 Z.
double mod_pi2_distance(double a, double b);

ComplexVolume complex_volume_from_raw(cx raw);

struct VolumeResult {
    ComplexVolume value;
    std::vector<Flattening> flattenings; // per tetrahedron
    PreBlochElement element;
    std::map<std::string, double> residuals; // diagnostics per checkpoint
};

// Full pipeline: equation gate, cusp development, edge log-c, flattenings,
// invariant spot checks, lhat sum. Fails closed: any residual above tolerance
// throws before a value is produced.
VolumeResult complex_volume(const Triangulation& t, const std::vector<cx>& shapes,
                            const std::map<int, Base>& bases = {});

// Conjugate every shape and re-run: vol changes sign, cs is fixed mod pi^2.
VolumeResult conjugate_representation(const Triangulation& t,
                                      const std::vector<cx>& shapes,
                                      const std::map<int, Base>& bases = {});

// Flip every orientation sign and re-run: vol and cs both change sign.
VolumeResult reverse_orientation(const Triangulation& t,
                                 const std::vector<cx>& shapes,
                                 const std::map<int, Base>& bases = {});

// One pseudo-random decorated 5-point configuration, pushed through the
// four-point flattening map for each omitted vertex.
struct FiveTermSample {
    double ten_eq_residual; // max of the ten signed log-parameter sums
    double lhat_defect;     // distance of the alternating lhat sum from pi^2 Z
};
FiveTermSample five_term_sample(std::mt19937_64& rng);

struct InvariantReport {
    struct Entry {
        std::string name;
        bool pass;
        double residual;
    };
    std::vector<Entry> entries;

    bool all_pass() const;
    const Entry* find(const std::string& name) const;
};

// Aggregated consistency checks on one triangulation + shape assignment:
// ordering, equation residuals, similarity relations, cross-corner products,
// sign relations, flattening integrality, semi-strong edge sums, decoration
// independence, five-term samples, transfer identities. Failures are carried
// in the report, never thrown.
InvariantReport run_invariant_suite(const Triangulation& t, const std::vector<cx>& shapes);

} // namespace cvol
