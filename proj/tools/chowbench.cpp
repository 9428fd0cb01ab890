#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "chowbench/generators.hpp"
#include "chowbench/io.hpp"

using namespace chowbench;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write " + out_path);
    out << text;
}

IntVec parse_nu_flag(const std::string& s) {
    IntVec nu;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) throw std::invalid_argument("--nu: empty component");
        Rational q = parse_rational(tok.substr(b, e - b + 1));
        if (rat_den(q) != 1) throw std::invalid_argument("--nu entries must be integers");
        nu.push_back(rat_num(q));
    }
    if (nu.empty()) throw std::invalid_argument("--nu: no components");
    return nu;
}

struct Loaded {
    PolytopeDocument doc;
    LatticePolytope polytope;
    IntVec nu;
};

Loaded load(const std::string& file, const std::string& nu_flag) {
    Loaded L;
    L.doc = parse_polytope_document(read_input(file));
    L.polytope = document_polytope(L.doc);
    if (!nu_flag.empty())
        L.nu = parse_nu_flag(nu_flag);
    else if (L.doc.nu)
        L.nu = *L.doc.nu;
    else
        throw std::invalid_argument("no nu in document; pass --nu");
    return L;
}

int guarded(const std::function<int()>& body) {
    try {
        return body();
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::runtime_error& e) {
        std::string w = e.what();
        std::cerr << "error: " << w << "\n";
        return (w == "TrivialAction" || w == "NotEqualized") ? 2 : 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact GIT / Chow quotient diagrams of one-parameter toric actions"};
    app.require_subcommand(1);

    std::string file, nu_flag, out_path, level_str, example_name;
    int arg_i = 0, arg_j = 0, cube_n = 3;
    bool require_eq = false, force = false, emit_polytopes = false;
    bool check_squares = false, cross_validate = false;

    auto add_common = [&](CLI::App* cmd, bool needs_file) {
        if (needs_file)
            cmd->add_option("file", file, "input polytope document (path or - for stdin)")
                ->required();
        cmd->add_option("--nu", nu_flag, "one-parameter subgroup, comma-separated integers");
        cmd->add_option("--out", out_path, "write the report to this path instead of stdout");
    };

    CLI::App* analyze = app.add_subcommand("analyze", "full action analysis");
    add_common(analyze, true);
    analyze->add_flag("--require-equalized", require_eq, "exit 2 when the action is not equalized");

    CLI::App* diagram = app.add_subcommand("diagram", "build the quotient diagram");
    add_common(diagram, true);
    diagram->add_flag("--force", force, "build even when the action is not equalized");
    diagram->add_flag("--emit-polytopes", emit_polytopes, "embed node polytopes and fans");
    diagram->add_flag("--check-squares", check_squares, "verify every rhombus square");
    diagram->add_flag("--cross-validate", cross_validate, "compare the two Chow routes per node");

    CLI::App* example = app.add_subcommand("example", "emit a built-in example document");
    example->add_option("name", example_name, "cube | brus | segment | square")->required();
    example->add_option("--n", cube_n, "cube dimension (cube only)");
    example->add_option("--out", out_path, "write to this path instead of stdout");

    CLI::App* slice = app.add_subcommand("slice", "GIT slice at a level, in chart coordinates");
    add_common(slice, true);
    slice->add_option("level", level_str, "rational level")->required();

    CLI::App* prune = app.add_subcommand("prune", "pruning polytope of chamber (i,j)");
    add_common(prune, true);
    prune->add_option("i", arg_i, "lower chamber index")->required();
    prune->add_option("j", arg_j, "upper chamber index")->required();

    CLI::App* chow = app.add_subcommand("chow", "Chow polytope of chamber (i,j), both routes");
    add_common(chow, true);
    chow->add_option("i", arg_i, "lower chamber index")->required();
    chow->add_option("j", arg_j, "upper chamber index")->required();
    chow->add_flag("--cross-validate", cross_validate, "exit 3 when the two routes disagree");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    if (*analyze) {
        return guarded([&] {
            Loaded L = load(file, nu_flag);
            ActionAnalysis a = analyze_action(L.polytope, L.nu);
            write_output(out_path, dump_json(analysis_json(a)));
            for (const auto& w : a.warnings) std::cerr << "warning: " << w << "\n";
            if (require_eq && !a.equalized) {
                std::cerr << "error: action is not equalized\n";
                return 2;
            }
            return 0;
        });
    }
    if (*diagram) {
        return guarded([&] {
            Loaded L = load(file, nu_flag);
            ActionAnalysis a = analyze_action(L.polytope, L.nu);
            for (const auto& w : a.warnings) std::cerr << "warning: " << w << "\n";
            if (!a.equalized && force)
                std::cerr << "warning: action not equalized; diagram built with --force "
                             "carries no Chow-theoretic guarantees\n";
            DiagramOptions opt;
            opt.check_squares = check_squares;
            opt.cross_validate = cross_validate;
            opt.force = force;
            QuotientDiagram D = build_diagram(a, opt);
            write_output(out_path, dump_json(diagram_json(D, emit_polytopes)));
            if ((check_squares && !D.all_squares_pass) || (cross_validate && !D.all_cross_pass))
                return 3;
            return 0;
        });
    }
    if (*example) {
        return guarded([&] {
            PolytopeDocument doc = make_example(example_name, cube_n);
            write_output(out_path, document_to_string(doc));
            return 0;
        });
    }
    if (*slice) {
        return guarded([&] {
            Loaded L = load(file, nu_flag);
            LatticePolytope S = slice_at(L.polytope, primitive_vector(L.nu), parse_rational(level_str));
            nlohmann::json j = polytope_json(S, true);
            j["level"] = format_rational(parse_rational(level_str));
            nlohmann::json nu_arr = nlohmann::json::array();
            for (const auto& c : primitive_vector(L.nu)) nu_arr.push_back(c.str());
            j["nu"] = std::move(nu_arr);
            write_output(out_path, dump_json(j));
            return 0;
        });
    }
    if (*prune) {
        return guarded([&] {
            Loaded L = load(file, nu_flag);
            ActionAnalysis a = analyze_action(L.polytope, L.nu);
            LatticePolytope P = pruning(a, arg_i, arg_j);
            PolytopeDocument doc;
            doc.name = (L.doc.name.empty() ? std::string("input") : L.doc.name) + "/pruning(" +
                       std::to_string(arg_i) + "," + std::to_string(arg_j) + ")";
            doc.ambient_dim = P.ambient_dim();
            doc.vertices = P.vertices();
            doc.nu = a.nu;
            write_output(out_path, document_to_string(doc));
            return 0;
        });
    }
    if (*chow) {
        return guarded([&] {
            Loaded L = load(file, nu_flag);
            ActionAnalysis a = analyze_action(L.polytope, L.nu);
            CanonicalForm fiber = chow_fiber_polytope(a, arg_i, arg_j);
            CanonicalForm mink = chow_minkowski_polytope(a, arg_i, arg_j);
            Fan ff = normal_fan(fiber.polytope);
            Fan mf = normal_fan(mink.polytope);
            bool agree = fans_equal(ff, mf);
            nlohmann::json j;
            j["i"] = arg_i;
            j["j"] = arg_j;
            j["fiber"] = canonical_form_json(fiber, true);
            j["minkowski"] = canonical_form_json(mink, true);
            j["smooth"] = is_smooth(ff);
            j["routes_agree"] = agree;
            write_output(out_path, dump_json(j));
            return cross_validate && !agree ? 3 : 0;
        });
    }
    return 0;
}
