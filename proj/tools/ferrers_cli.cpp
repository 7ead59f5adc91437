#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "ferrers/codes.hpp"
#include "ferrers/irreducibility.hpp"
#include "ferrers/polytope.hpp"
#include "ferrers/reference_tables.hpp"
#include "ferrers/young_digraph.hpp"

using namespace ferrers;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitDomain = 2;
constexpr int kExitResource = 3;
constexpr int kExitMismatch = 4;
constexpr int kExitUsage = 64;

// Raised by the table checks when a computed row differs from the reference value.
struct TableMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    int d = 0;
    int n = 0;
    int m = 0;
    int a = 0;
    int b = 0;
    int mu = 0;
    int q = 2;
    std::string diagram;
    std::string format;
    std::string out;
    std::string in;
    std::string method = "all";
    std::string construction = "gabidulin";
    std::string which;
    std::string stage = "all";
    bool emit_points = false;
    bool emit_code = false;
    bool restricted = false;
    bool force = false;
};

// Empty string and "-" both denote the empty diagram.
FerrersDiagram parse_diagram(const std::string& text) {
    if (text.empty() || text == "-") return FerrersDiagram();
    return FerrersDiagram::parse(text);
}

std::string label(const FerrersDiagram& D) { return diagram_label(D); }

std::string join(const std::vector<long long>& v, const char* sep = ",") {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) os << (i ? sep : "") << v[i];
    return os.str();
}

std::string join(const std::vector<int>& v, const char* sep = ",") {
    return join(std::vector<long long>(v.begin(), v.end()), sep);
}

std::string rational_text(const Rational& r) {
    std::ostringstream os;
    os << r;
    return os.str();
}

json point_json(Point p) { return json{{"row", p.row}, {"col", p.col}}; }

json standard_form_json(const std::optional<StandardForm>& sf) {
    if (!sf) return nullptr;
    return json{{"a", sf->a}, {"b", sf->b}, {"x_cols", sf->x_cols}, {"y_cols", sf->y_cols}};
}

json matrix_json(const Matrix& M) { return M.a; }

json code_json(const MatrixCode& c) {
    json basis = json::array();
    for (const auto& M : c.basis) basis.push_back(matrix_json(M));
    return json{{"field", {{"p", c.F().p()}, {"m", c.F().m()}}},
                {"support", c.support.to_string()},
                {"rows", c.rows},
                {"cols", c.cols},
                {"basis", basis}};
}

MatrixCode code_from_json(const json& j) {
    require(j.contains("field") && j.contains("support") && j.contains("basis"),
            "code JSON needs field, support and basis");
    auto field = std::make_shared<const Field>(j.at("field").at("p").get<int>(), j.at("field").value("m", 1));
    auto support = parse_diagram(j.at("support").get<std::string>());
    int rows = j.value("rows", support.num_rows());
    int cols = j.value("cols", support.num_columns());
    std::vector<Matrix> gens;
    for (const auto& row : j.at("basis")) {
        Matrix M(rows, cols);
        auto entries = row.get<std::vector<int>>();
        require(static_cast<int>(entries.size()) == rows * cols, "basis matrix has the wrong number of entries");
        for (int v : entries) require(v >= 0 && v < field->q(), "basis entry is not a field element");
        M.a = std::move(entries);
        gens.push_back(std::move(M));
    }
    return make_code(field, support, rows, cols, gens);
}

json report_json(const CodeReport& r) {
    return json{{"k", r.k}, {"nu_min", r.nu_min}, {"distance", r.distance}, {"is_mfd", r.is_mfd}, {"seconds", r.seconds}};
}

// Subcommands. Each returns the text to emit.

std::string run_nu(const Options& o) {
    auto D = parse_diagram(o.diagram);
    auto profile = nu_profile(D, o.d);
    if (o.format == "text") return join(profile) + " min " + std::to_string(nu_min_value(D, o.d)) + "\n";
    return json{{"nu", profile}, {"nu_min", nu_min_value(D, o.d)}}.dump() + "\n";
}

bool digraph_source(const FerrersDiagram& D, int d, bool force) {
    auto g = build_digraph(std::max(D.order(), 1), d, false, force);
    int v = g.find(D);
    ensure(v >= 0, "diagram missing from its own digraph slice");
    return g.in[v].empty();
}

std::string run_irreducible(const Options& o) {
    auto D = parse_diagram(o.diagram);
    auto local = is_irreducible_local(D, o.d);
    json j{{"diagram", label(D)}, {"d", o.d}};
    bool verdict = local.irreducible;
    std::string method = "local";
    json checks = json::object();
    if (o.method == "classified" || o.method == "all") {
        std::optional<IrreducibilityVerdict> cls;
        if (o.d >= 2) cls = is_irreducible_classified(D, o.d);
        if (cls) checks["classified"] = cls->irreducible;
        if (o.method == "classified") {
            require(cls.has_value(), "classification applies only to diagrams containing (d-1,d-1)");
            verdict = cls->irreducible;
            method = "classified";
        }
    }
    if (o.method == "digraph" || o.method == "all") {
        bool src = digraph_source(D, o.d, o.force);
        checks["digraph"] = src;
        if (o.method == "digraph") {
            verdict = src;
            method = "digraph";
        }
    }
    j["irreducible"] = verdict;
    j["method"] = method;
    j["witness"] = local.witness ? point_json(*local.witness) : json(nullptr);
    j["nu_profile"] = nu_profile(D, o.d);
    j["standard_form"] = standard_form_json(local.standard_form);
    if (o.method == "all") {
        checks["local"] = local.irreducible;
        bool agree = true;
        for (const auto& [name, v] : checks.items()) agree = agree && v.get<bool>() == local.irreducible;
        j["checks"] = checks;
        j["agree"] = agree;
        ensure(agree, "irreducibility tests disagree on " + label(D));
    }
    if (o.format == "text") return std::string(verdict ? "irreducible" : "reducible") + "\n";
    return j.dump() + "\n";
}

std::string run_digraph(const Options& o) {
    auto g = build_digraph(o.n, o.d, o.restricted, o.force);
    std::string fmt = o.format.empty() ? "dot" : o.format;
    if (fmt == "dot") return to_dot(g);
    if (fmt == "csv") {
        std::ostringstream os;
        os << "from,to\n";
        for (std::size_t v = 0; v < g.vertices.size(); ++v)
            for (int w : g.out[v]) os << '"' << label(g.vertices[v]) << "\",\"" << label(g.vertices[w]) << "\"\n";
        return os.str();
    }
    require(fmt == "json", "digraph formats are dot, json and csv");
    json srcs = json::array(), snks = json::array();
    for (const auto& D : sources(g)) srcs.push_back(label(D));
    for (const auto& D : sinks(g)) snks.push_back(label(D));
    return json{{"n", g.n},
                {"d", g.d},
                {"restricted", g.restricted},
                {"sources", srcs},
                {"sinks", snks},
                {"N", g.vertices.size()},
                {"M", g.edge_count()}}
               .dump() +
           "\n";
}

json hrep_json(const RationalPolytope& p) {
    json rows = json::array();
    auto add = [&](const Constraint& c, const char* rel) {
        json coeffs = json::array();
        for (const auto& v : c.coeffs) coeffs.push_back(rational_text(v));
        rows.push_back(json{{"coeffs", coeffs}, {"relation", rel}, {"rhs", rational_text(c.rhs)}});
    };
    for (const auto& c : p.equalities) add(c, "=");
    for (const auto& c : p.inequalities) add(c, ">=");
    return json{{"names", p.names}, {"rows", rows}};
}

std::string run_polytope(const Options& o) {
    require(o.d >= 3, "polytope needs d >= 3");
    json j{{"d", o.d}};
    std::vector<LatticePoint> pts;
    if (o.a > 0 || o.b > 0) {
        // fixed (a, b): the slice of pairs with these standard-form sides
        auto set = build_Pd_ab(o.d, o.a, o.b);
        j["a"] = o.a;
        j["b"] = o.b;
        if (const auto* p = std::get_if<RationalPolytope>(&set)) {
            j["hrep"] = hrep_json(*p);
        } else {
            json parts = json::array();
            for (const auto& part : std::get<PolytopeUnion>(set).parts) parts.push_back(hrep_json(part));
            j["hrep_union"] = parts;
        }
        pts = integer_points(set, o.force);
        j["n_integer_points"] = pts.size();
        if (o.emit_points) j["integer_points"] = pts;
    } else {
        auto P = build_Pd(o.d);
        j["hrep"] = hrep_json(P);
        auto verts = vertices_closed_form(o.d);
        j["vertices"] = verts;
        pts = pd_integer_points(o.d, o.force);
        j["n_integer_points"] = pts.size();
        if (o.emit_points) j["integer_points"] = pts;
        if (o.d <= 6 || o.force)
            j["f_vector"] = face_lattice(P, to_rational(verts), o.force).f_vector;
        else
            j["f_vector"] = nullptr;
        j["delta_split"] = delta_split(o.d, pts);
    }
    if (o.mu > 0) {
        require(o.a == 0 && o.b == 0, "--mu maps points of P_d, not of a fixed (a,b) slice");
        json diagrams = json::array();
        for (const auto& pt : pts) diagrams.push_back(psi(o.d, o.mu, pt).to_string());
        j["mu"] = o.mu;
        j["diagrams"] = diagrams;
    }
    return j.dump() + "\n";
}

std::string run_codes(const Options& o) {
    json j{{"construction", o.construction}};
    MatrixCode code;
    int d = o.d;
    require(o.construction == "gn" || d >= 1, "--d is required");
    if (o.construction == "gabidulin") {
        int m = o.m > 0 ? o.m : o.n;
        code = gabidulin_mrd(m, o.n, d, o.q, o.force);
    } else if (o.construction == "gn") {
        code = gn_construction(o.n, o.q, false, o.force);
        d = 3;
    } else if (o.construction == "reduce") {
        auto target = parse_diagram(o.diagram);
        auto g = build_digraph(o.n, d, false, o.force);
        auto path = path_between(g, square(o.n), target);
        auto start = gabidulin_mrd(o.n, o.n, d, o.q, o.force);
        code = reduce_along_path(start, path, d, true, o.force);
        json p = json::array();
        for (const auto& D : path) p.push_back(label(D));
        j["path"] = p;
    } else if (o.construction == "verify") {
        require(!o.in.empty(), "verify needs --in <code.json>");
        std::ifstream f(o.in);
        require(f.good(), "cannot read " + o.in);
        json cj;
        try {
            cj = json::parse(f);
        } catch (const json::exception& e) {
            throw DomainError(std::string("malformed code JSON: ") + e.what());
        }
        // accept a bare code or a report carrying one
        code = code_from_json(cj.contains("code") ? cj.at("code") : cj);
    } else {
        throw DomainError("unknown construction '" + o.construction + "'");
    }
    j["d"] = d;
    auto r = verify_code(code, d, o.force);
    auto rep = report_json(r);
    for (auto& [k, v] : rep.items()) j[k] = v;
    if (o.emit_code) j["code"] = code_json(code);
    return j.dump() + "\n";
}

std::string run_conjecture(const Options& o) {
    PunctSearchOptions opt;
    opt.force = o.force;
    opt.all_mrd = o.stage == "all";
    require(o.stage == "all" || o.stage == "gabidulin", "stage is gabidulin or all");
    auto r = punct_inclusion_search(o.n, o.d, o.q, opt);
    json j{{"n", r.n},
           {"d", r.d},
           {"q", r.q},
           {"found", r.found},
           {"stage", stage_name(r.stage)},
           {"variants_examined", r.variants_examined},
           {"tuples_examined", r.tuples_examined},
           {"all_mrd_run", r.all_mrd_run},
           {"mrd_codes", r.mrd_codes},
           {"mrd_codes_extendable", r.mrd_codes_extendable}};
    if (r.found) {
        json ext = json::array();
        for (const auto& M : r.extension) ext.push_back(matrix_json(M));
        j["hyperplane_normal"] = r.hyperplane_normal.empty() ? json(nullptr) : json(r.hyperplane_normal);
        j["base"] = code_json(r.base);
        j["extension"] = ext;
        j["extension_mrd"] = r.extension_mrd;
        j["e_code"] = code_json(r.e_code);
        j["e_code_mfd"] = r.e_code_mfd;
        j["decomposition_ok"] = r.decomposition_ok;
    }
    j["seconds"] = r.seconds;
    return j.dump() + "\n";
}

// Reference-table checks. Output carries no timing so repeated runs are byte-identical.

void check_row(const std::string& what, int d, const std::vector<long long>& got, const std::vector<long long>& want) {
    if (got != want)
        throw TableMismatch(what + " for d=" + std::to_string(d) + ": computed " + join(got) + ", reference " + join(want));
}

std::vector<int> table_range(const Options& o, const std::vector<int>& all) {
    if (o.d == 0) return all;
    return {o.d};
}

template <class Map>
std::vector<int> keys_of(const Map& m) {
    std::vector<int> k;
    for (const auto& [key, v] : m) k.push_back(key);
    return k;
}

std::string run_tables(const Options& o) {
    std::ostringstream os;
    auto emit = [&](int d, const std::string& row, bool many) {
        if (many) os << "d=" << d << ": ";
        os << row << "\n";
    };
    if (o.which == "counts") {
        auto range = table_range(o, {3, 4, 5, 6, 7});
        for (int d : range) {
            auto n = static_cast<long long>(pd_integer_points(d, o.force).size());
            if (reference::point_counts.count(d)) check_row("point count", d, {n}, {reference::point_counts.at(d)});
            emit(d, std::to_string(n), range.size() > 1);
        }
    } else if (o.which == "delta") {
        auto range = table_range(o, keys_of(reference::delta_splits));
        for (int d : range) {
            auto row = delta_split(d, pd_integer_points(d, o.force));
            if (reference::delta_splits.count(d)) check_row("delta split", d, row, reference::delta_splits.at(d));
            emit(d, join(row), range.size() > 1);
        }
    } else if (o.which == "fvec") {
        auto range = table_range(o, keys_of(reference::f_vectors));
        for (int d : range) {
            auto row = face_lattice(build_Pd(d), to_rational(vertices_closed_form(d)), o.force).f_vector;
            check_row("f-vector", d, row, product_of_triangles_fvector(d));
            if (reference::f_vectors.count(d)) check_row("f-vector", d, row, reference::f_vectors.at(d));
            emit(d, join(row), range.size() > 1);
        }
    } else if (o.which == "vertices") {
        auto range = table_range(o, keys_of(reference::vertices));
        for (int d : range) {
            auto verts = vertices_closed_form(d);
            if (reference::vertices.count(d)) {
                auto want = reference::vertices.at(d);
                auto got = verts;
                std::sort(want.begin(), want.end());
                std::sort(got.begin(), got.end());
                if (got != want) throw TableMismatch("vertex set for d=" + std::to_string(d) + " differs from reference");
            }
            if (range.size() > 1) os << "d=" << d << ":\n";
            for (const auto& v : verts) os << join(v) << "\n";
        }
    } else if (o.which == "sources") {
        std::vector<std::pair<int, int>> range;
        if (o.n > 0 && o.d > 0)
            range.push_back({o.n, o.d});
        else
            for (const auto& [key, v] : reference::sources) range.push_back(key);
        for (auto [n, d] : range) {
            auto got = sources(build_digraph(n, d, false, o.force));
            std::set<FerrersDiagram> gs(got.begin(), got.end());
            if (reference::sources.count({n, d})) {
                std::set<FerrersDiagram> ws;
                for (const auto& c : reference::sources.at({n, d})) ws.insert(FerrersDiagram(c));
                if (gs != ws)
                    throw TableMismatch("sources for n=" + std::to_string(n) + " d=" + std::to_string(d) +
                                        " differ from reference");
            }
            os << "n=" << n << " d=" << d << ":";
            for (const auto& D : got) os << " " << label(D);
            os << "\n";
        }
    } else {
        throw DomainError("--which must be one of counts, delta, fvec, vertices, sources");
    }
    return os.str();
}

void emit_output(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(o.out);
    if (!f) throw DomainError("cannot write " + o.out);
    f << text;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Ferrers diagram rank-metric toolkit"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "output format: json, text, csv or dot");
        sub->add_option("--out", o.out, "write the report to a file");
        sub->add_flag("--force", o.force, "disable resource guards");
    };

    auto* nu_cmd = app.add_subcommand("nu", "nu profile and nu_min of a diagram");
    nu_cmd->add_option("--diagram", o.diagram, "column heights, comma separated; empty or - for the empty diagram")
        ->required();
    nu_cmd->add_option("--d", o.d, "minimum rank distance")->required();
    common(nu_cmd);

    auto* irr_cmd = app.add_subcommand("irreducible", "irreducibility verdict with witness");
    irr_cmd->add_option("--diagram", o.diagram, "column heights")->required();
    irr_cmd->add_option("--d", o.d, "minimum rank distance")->required();
    irr_cmd->add_option("--method", o.method, "local, classified, digraph or all")
        ->check(CLI::IsMember({"local", "classified", "digraph", "all"}));
    common(irr_cmd);

    auto* dg_cmd = app.add_subcommand("digraph", "order-n slice of the Young digraph");
    dg_cmd->add_option("--n", o.n, "order")->required();
    dg_cmd->add_option("--d", o.d, "minimum rank distance")->required();
    dg_cmd->add_flag("--restricted", o.restricted, "keep only diagrams containing the staircase");
    common(dg_cmd);

    auto* pt_cmd = app.add_subcommand("polytope", "H-representation, vertices and integer points");
    pt_cmd->add_option("--d", o.d, "minimum rank distance")->required();
    pt_cmd->add_option("--a", o.a, "fixed column height a");
    pt_cmd->add_option("--b", o.b, "fixed row length b");
    pt_cmd->add_option("--mu", o.mu, "map integer points to diagrams with min(a,b) = mu");
    pt_cmd->add_flag("--emit-points", o.emit_points, "list the integer points");
    common(pt_cmd);

    auto* codes_cmd = app.add_subcommand("codes", "build or verify a rank-metric code");
    codes_cmd->add_option("--construction", o.construction, "gabidulin, gn, reduce or verify")
        ->check(CLI::IsMember({"gabidulin", "gn", "reduce", "verify"}));
    codes_cmd->add_option("--n", o.n, "columns (gabidulin), order (gn, reduce)");
    codes_cmd->add_option("--m", o.m, "rows of the gabidulin code, default n");
    codes_cmd->add_option("--d", o.d, "minimum rank distance");
    codes_cmd->add_option("--q", o.q, "field order");
    codes_cmd->add_option("--diagram", o.diagram, "reduction target");
    codes_cmd->add_option("--in", o.in, "code JSON to verify");
    codes_cmd->add_flag("--emit-code", o.emit_code, "include the code JSON in the report");
    common(codes_cmd);

    auto* conj_cmd = app.add_subcommand("conjecture", "puncturing-inclusion search");
    conj_cmd->add_option("--n", o.n, "order")->required();
    conj_cmd->add_option("--d", o.d, "minimum rank distance")->required();
    conj_cmd->add_option("--q", o.q, "field order");
    conj_cmd->add_option("--stage", o.stage, "gabidulin or all")->check(CLI::IsMember({"gabidulin", "all"}));
    common(conj_cmd);

    auto* tab_cmd = app.add_subcommand("tables", "recompute reference tables and check them");
    tab_cmd->add_option("--which", o.which, "counts, delta, fvec, vertices or sources")->required();
    tab_cmd->add_option("--d", o.d, "single row");
    tab_cmd->add_option("--n", o.n, "order, for sources");
    common(tab_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (o.force) std::cerr << "warning: --force disables resource guards; runs may exhaust time or memory\n";
    try {
        std::string text;
        if (*nu_cmd) text = run_nu(o);
        else if (*irr_cmd) text = run_irreducible(o);
        else if (*dg_cmd) text = run_digraph(o);
        else if (*pt_cmd) text = run_polytope(o);
        else if (*codes_cmd) text = run_codes(o);
        else if (*conj_cmd) text = run_conjecture(o);
        else if (*tab_cmd) text = run_tables(o);
        emit_output(o, text);
    } catch (const TableMismatch& e) {
        std::cerr << "mismatch: " << e.what() << "\n";
        return kExitMismatch;
    } catch (const DomainError& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const ResourceError& e) {
        std::cerr << "resource guard: " << e.what() << " (use --force to override)\n";
        return kExitResource;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "domain error: malformed JSON input: " << e.what() << "\n";
        return kExitDomain;
    } catch (const InvariantError& e) {
        std::cerr << "internal invariant violated: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitOk;
}
