#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cvol/complex_volume.hpp"

using namespace cvol;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

Triangulation load(const std::string& path) {
    return Triangulation::parse(read_file(path));
}

std::vector<cx> read_shapes_file(const std::string& path) {
    json j = json::parse(read_file(path));
    std::vector<cx> out;
    for (auto& s : j) out.emplace_back(s.at(0).get<double>(), s.at(1).get<double>());
    return out;
}

std::string fmt(cx z) {
    std::ostringstream os;
    os << std::setprecision(15) << z.real() << (z.imag() < 0 ? " - " : " + ")
       << std::abs(z.imag()) << "i";
    return os.str();
}

// Shapes for cvol: explicit file, number field, bundled values, or a solve.
std::vector<cx> obtain_shapes(const Triangulation& t, bool use_field,
                              int root_index, const std::string& shapes_file) {
    if (!shapes_file.empty()) return read_shapes_file(shapes_file);
    if (use_field) {
        if (!t.file_shape_field())
            throw InconsistentInputError("input has no shape_field description");
        return shapes_from_field(t, *t.file_shape_field(), root_index).z;
    }
    if (t.file_shapes()) return *t.file_shapes();
    return solve(t, all_equations(t)).z;
}

int cmd_validate(const std::string& file) {
    Triangulation t = load(file);
    std::cout << "tetrahedra: " << t.size() << "\n";
    std::cout << "orientation signs:";
    for (int e : t.orientation_signs()) std::cout << (e > 0 ? " +1" : " -1");
    std::cout << "\nedge classes: " << t.edge_classes().size() << " (valences";
    for (const EdgeClass& ec : t.edge_classes()) std::cout << " " << ec.valence();
    std::cout << ")\ncusps: " << t.cusp_link().size();
    for (const Cusp& c : t.cusp_link())
        std::cout << " [" << c.triangles.size() << " triangles, chi " << c.euler << "]";
    std::cout << "\nordering: " << (check_ordering(t).ok ? "ok" : "violated") << "\n";
    std::cout << "ok\n";
    return 0;
}

int cmd_solve(const std::string& file, const std::string& seed_file,
              bool use_field, int root_index) {
    Triangulation t = load(file);
    ShapeAssignment sa;
    if (use_field) {
        if (!t.file_shape_field())
            throw InconsistentInputError("input has no shape_field description");
        sa = shapes_from_field(t, *t.file_shape_field(), root_index);
    } else {
        std::vector<cx> seed;
        if (!seed_file.empty()) seed = read_shapes_file(seed_file);
        sa = solve(t, all_equations(t), seed.empty() ? nullptr : &seed);
    }
    for (size_t i = 0; i < sa.z.size(); ++i)
        std::cout << "z[" << i << "] = " << fmt(sa.z[i]) << "\n";
    double worst = 0.0;
    for (double r : sa.residuals) worst = std::max(worst, r);
    std::cout << std::setprecision(3) << "max log residual: " << worst << "\n";
    return 0;
}

int cmd_develop(const std::string& file, const std::string& dump,
                const std::string& base_spec) {
    Triangulation t = load(file);
    std::vector<cx> shapes =
        t.file_shapes() ? *t.file_shapes() : solve(t, all_equations(t)).z;

    std::map<int, Base> bases;
    if (!base_spec.empty()) {
        int tt, vv, ss;
        char c1, c2;
        std::istringstream is(base_spec);
        if (!(is >> tt >> c1 >> vv >> c2 >> ss) || c1 != ',' || c2 != ',')
            throw ParseError("--base expects T,V,S");
        bases[t.cusp_of(tt, vv)] = Base{tt, vv, ss};
    }

    Decoration d = develop_all(t, shapes, bases);
    json out;
    out["cusps"] = json::array();
    for (int ci = 0; ci < int(t.cusp_link().size()); ++ci) {
        const Cusp& c = t.cusp_link()[ci];
        Base b = bases.count(ci) ? bases[ci] : default_base(t, ci);
        std::cout << "cusp " << ci << ": " << c.triangles.size()
                  << " triangles developed from base (" << b.tet << "," << b.vertex
                  << "," << b.side << ")\n";
        json jc;
        jc["index"] = ci;
        jc["base"] = {b.tet, b.vertex, b.side};
        jc["triangles"] = json::array();
        for (auto [tt, vv] : c.triangles) {
            json jt;
            jt["tet"] = tt;
            jt["vertex"] = vv;
            jt["corners"] = json::array();
            for (int j = 0; j < 4; ++j) {
                if (j == vv) continue;
                cx p = d.corner(tt, vv, j);
                jt["corners"].push_back({j, p.real(), p.imag()});
            }
            jc["triangles"].push_back(std::move(jt));
        }
        out["cusps"].push_back(std::move(jc));
    }
    if (!dump.empty()) {
        std::ofstream o(dump);
        if (!o) throw ParseError("cannot write " + dump);
        o << out.dump(2) << "\n";
        std::cout << "wrote " << dump << "\n";
    }
    return 0;
}

int cmd_cvol(const std::string& file, bool use_field, int root_index,
             const std::string& shapes_file, bool as_json) {
    Triangulation t = load(file);
    std::vector<cx> shapes = obtain_shapes(t, use_field, root_index, shapes_file);
    VolumeResult res = complex_volume(t, shapes);

    if (as_json) {
        json out;
        out["vol"] = res.value.vol;
        out["cs_mod_pi2"] = res.value.cs;
        out["flattenings"] = json::array();
        for (const Flattening& f : res.flattenings)
            out["flattenings"].push_back(
                {{"z", {f.z.real(), f.z.imag()}}, {"p", f.p}, {"q", f.q}});
        out["residuals"] = json::object();
        for (const auto& [k, v] : res.residuals) out["residuals"][k] = v;
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    std::cout << std::setprecision(15);
    std::cout << "vol = " << res.value.vol << "\n";
    std::cout << "cs mod pi^2 = " << res.value.cs << "\n";
    std::cout << "cs/(2 pi^2) mod 1/2 = " << res.value.cs / (2.0 * kPiSq) << "\n";
    for (const Flattening& f : res.flattenings)
        std::cout << "  [" << fmt(f.z) << "; " << f.p << ", " << f.q << "]\n";
    std::cout << std::setprecision(3);
    for (const auto& [k, v] : res.residuals)
        std::cout << "residual " << k << " = " << v << "\n";
    return 0;
}

int cmd_check(const std::string& file) {
    Triangulation t = load(file);
    std::vector<cx> shapes =
        t.file_shapes() ? *t.file_shapes() : solve(t, all_equations(t)).z;
    InvariantReport rep = run_invariant_suite(t, shapes);
    for (const auto& e : rep.entries)
        std::cout << (e.pass ? "pass" : "FAIL") << "  " << e.name << "  (residual "
                  << std::setprecision(3) << e.residual << ")\n";
    std::cout << (rep.all_pass() ? "all checks passed\n" : "checks FAILED\n");
    return rep.all_pass() ? 0 : 1;
}

int cmd_fiveterm(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    double ten = 0.0, defect = 0.0;
    for (int i = 0; i < samples; ++i) {
        FiveTermSample s = five_term_sample(rng);
        ten = std::max(ten, s.ten_eq_residual);
        defect = std::max(defect, s.lhat_defect);
    }
    std::cout << std::setprecision(3) << "samples: " << samples
              << "\nmax ten-equation residual: " << ten
              << "\nmax lhat defect from pi^2 Z: " << defect << "\n";
    bool ok = ten < kAcceptTol && defect < kAcceptTol;
    std::cout << (ok ? "ok\n" : "FAILED\n");
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"complex volume of boundary-parabolic representations "
                 "from ordered ideal triangulations"};
    app.require_subcommand(1);

    std::string file, seed_file, shapes_file, dump, base_spec;
    bool use_field = false, as_json = false;
    int root_index = -1;
    int samples = 500;
    std::uint64_t rng_seed = 1;

    auto* validate = app.add_subcommand("validate", "parse and structural checks");
    validate->add_option("file", file)->required();

    auto* solve_cmd = app.add_subcommand("solve", "solve the gluing equations");
    solve_cmd->add_option("file", file)->required();
    solve_cmd->add_option("--seed-file", seed_file, "JSON array of [re, im] seeds");
    solve_cmd->add_flag("--field", use_field, "evaluate shapes from the number field");
    solve_cmd->add_option("--root-index", root_index,
                          "field root by (Re, Im)-sorted index instead of the stored approximation");

    auto* develop_cmd = app.add_subcommand("develop", "develop the cusp links");
    develop_cmd->add_option("file", file)->required();
    develop_cmd->add_option("--dump-cusp", dump, "write developed triangles as JSON");
    develop_cmd->add_option("--base", base_spec, "base side T,V,S for its cusp");

    auto* cvol_cmd = app.add_subcommand("cvol", "complex volume");
    cvol_cmd->add_option("file", file)->required();
    cvol_cmd->add_flag("--field", use_field, "evaluate shapes from the number field");
    cvol_cmd->add_option("--root-index", root_index,
                         "field root by (Re, Im)-sorted index instead of the stored approximation");
    cvol_cmd->add_option("--shapes-file", shapes_file, "JSON array of [re, im] shapes");
    cvol_cmd->add_flag("--json", as_json, "machine-readable output");

    auto* check_cmd = app.add_subcommand("check", "full invariant suite");
    check_cmd->add_option("file", file)->required();

    auto* fiveterm_cmd = app.add_subcommand("fiveterm", "five-term property test");
    fiveterm_cmd->add_option("--samples", samples)->required();
    fiveterm_cmd->add_option("--rng-seed", rng_seed)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand(validate)) return cmd_validate(file);
        if (app.got_subcommand(solve_cmd)) return cmd_solve(file, seed_file, use_field, root_index);
        if (app.got_subcommand(develop_cmd)) return cmd_develop(file, dump, base_spec);
        if (app.got_subcommand(cvol_cmd))
            return cmd_cvol(file, use_field, root_index, shapes_file, as_json);
        if (app.got_subcommand(check_cmd)) return cmd_check(file);
        if (app.got_subcommand(fiveterm_cmd)) return cmd_fiveterm(samples, rng_seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
