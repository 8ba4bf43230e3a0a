#include "toralg/cli.hpp"

#include "CLI11.hpp"
#include "json_util.hpp"
#include "toralg/autgroup.hpp"
#include "toralg/fourier.hpp"
#include "toralg/iso.hpp"
#include "toralg/pell.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace toralg {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;

GLMatrix parse_matrix(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception&) {
        throw ParseError("matrix must look like [[a,b],[c,d]]", 0);
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array() ||
        j[0].size() != 2 || j[1].size() != 2)
        throw ParseError("matrix must look like [[a,b],[c,d]]", 0);
    GLMatrix m{int_from_json(j[0][0]), int_from_json(j[0][1]),
               int_from_json(j[1][0]), int_from_json(j[1][1])};
    if (!m.unimodular()) throw DomainError("matrix determinant must be +1 or -1");
    return m;
}

ordered_json matrix_json(const GLMatrix& m) {
    return ordered_json::array(
        {ordered_json::array({json_int(m.a), json_int(m.b)}),
         ordered_json::array({json_int(m.c), json_int(m.d)})});
}

ordered_json pell_json(const PellSolution& s) {
    ordered_json j;
    j["n"] = json_int(s.n);
    j["rhs"] = s.rhs;
    j["x"] = json_int(s.x);
    j["y"] = json_int(s.y);
    return j;
}

std::string verdict_name(ConjugacyVerdict::Kind kind) {
    switch (kind) {
        case ConjugacyVerdict::Kind::Yes: return "yes";
        case ConjugacyVerdict::Kind::No: return "no";
        default: return "unknown";
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

/// key/value text rendering of a flat-ish report, deterministic field order
void print_report(const ordered_json& report, bool json, std::ostream& out) {
    if (json) {
        out << report.dump(2) << '\n';
        return;
    }
    for (const auto& [key, value] : report.items()) {
        if (key == "schema") continue;
        if (value.is_string()) out << key << ": " << value.get<std::string>() << '\n';
        else out << key << ": " << value.dump() << '\n';
    }
}

struct Invocation {
    Config config;
    PellCache memory_cache;                 // in-process memo, always on
    std::optional<PellCache> disk_cache;    // backed by config.cache_path
    PellCache* cache() {
        if (!disk_cache && !config.cache_path.empty())
            disk_cache.emplace(config.cache_path);
        return disk_cache ? &*disk_cache : &memory_cache;
    }
};

int exit_code_for(ConjugacyVerdict::Kind kind) {
    return kind == ConjugacyVerdict::Kind::Unknown ? 2 : 0;
}

}  // namespace

std::vector<QuadraticIrrational> corpus(const Int& U, const Int& V, const Int& W,
                                        const Int& Dmax) {
    if (V < 1 || W < 1 || U < 0 || Dmax < 2) throw DomainError("corpus bounds must be positive");
    std::set<QuadraticIrrational> seen;
    for (Int D = 2; D <= Dmax; ++D) {
        auto [sf, f] = extract_square(D);
        if (f != 1 || sf == 1) continue;  // keep squarefree radicands only
        for (Int w = 1; w <= W; ++w)
            for (Int v = 1; v <= V; ++v)
                for (Int u = -U; u <= U; ++u) {
                    try {
                        seen.insert(normalize(u, v, w, D));
                    } catch (const DomainError&) {
                        // rational or nonpositive combination: skip
                    }
                }
    }
    std::vector<QuadraticIrrational> out(seen.begin(), seen.end());
    std::sort(out.begin(), out.end(), [](const QuadraticIrrational& x, const QuadraticIrrational& y) {
        if (x.d() != y.d()) return x.d() < y.d();
        int s = (QfValue(x) - QfValue(y)).sign();
        if (s != 0) return s < 0;
        return false;
    });
    return out;
}

namespace {

int cmd_pell(Invocation& inv, const Int& n, int rhs, const Int& index, std::ostream& out) {
    ordered_json report;
    report["schema"] = kSchemaVersion;
    report["n"] = json_int(n);
    report["rhs"] = rhs;
    auto fund = fundamental(n, rhs, inv.cache());
    if (!fund) {
        report["solvable"] = false;
        print_report(report, inv.config.json, out);
        return 0;
    }
    report["solvable"] = true;
    PellSolution sol = index == 1 ? *fund : enumerate_solution(n, rhs, index, inv.cache());
    if (index != 1) report["index"] = json_int(index);
    report["x"] = json_int(sol.x);
    report["y"] = json_int(sol.y);
    print_report(report, inv.config.json, out);
    return 0;
}

int cmd_gen(Invocation& inv, const std::string& alpha_text, std::ostream& out) {
    std::optional<QuadraticIrrational> parsed;
    try {
        parsed = parse(alpha_text);
    } catch (const NotQuadraticError&) {
        // irrational of higher degree: the automorphism group is the torus
        // alone, with no generator matrix to report — a definite answer
        ordered_json report;
        report["schema"] = kSchemaVersion;
        report["alpha"] = alpha_text;
        report["automorphisms"] = "torus only";
        print_report(report, inv.config.json, out);
        return 0;
    }
    const QuadraticIrrational& alpha = *parsed;
    GeneratorResult gen_result = generator(alpha, inv.cache());
    ordered_json report;
    report["schema"] = kSchemaVersion;
    report["alpha"] = render(alpha);
    report["generator"] = matrix_json(gen_result.matrix);
    report["det"] = gen_result.matrix.det().convert_to<int>();
    report["lambda"] = render(eigen_check(gen_result.matrix, alpha));
    report["pell"] = pell_json(gen_result.pell);
    print_report(report, inv.config.json, out);
    return 0;
}

int cmd_check(Invocation& inv, const std::string& alpha_text, const std::string& matrix_text,
              std::ostream& out) {
    QuadraticIrrational alpha = parse(alpha_text);
    GLMatrix m = parse_matrix(matrix_text);
    bool ok = is_automorphism_matrix(m, alpha);
    ordered_json report;
    report["schema"] = kSchemaVersion;
    report["alpha"] = render(alpha);
    report["matrix"] = matrix_json(m);
    report["automorphism"] = ok;
    if (ok) report["lambda"] = render(eigen_check(m, alpha));
    print_report(report, inv.config.json, out);
    return 0;
}

int cmd_iso(Invocation& inv, const std::string& a_text, const std::string& b_text,
            std::ostream& out) {
    QuadraticIrrational alpha = parse(a_text);
    QuadraticIrrational beta = parse(b_text);
    IsoResult result = is_isomorphic(alpha, beta, inv.config.search_bound);
    ordered_json report;
    report["schema"] = kSchemaVersion;
    report["alpha"] = render(alpha);
    report["beta"] = render(beta);
    report["isomorphic"] = result.isomorphic;
    if (result.witness) {
        report["witness"] = matrix_json(result.witness->matrix);
        report["verified"] = result.witness->verified;
    }
    print_report(report, inv.config.json, out);
    return 0;
}

int cmd_aut_iso(Invocation& inv, const std::string& a_text, const std::string& b_text,
                std::ostream& out) {
    QuadraticIrrational alpha = parse(a_text);
    QuadraticIrrational beta = parse(b_text);
    ConjugacyVerdict verdict = aut_isomorphic(alpha, beta, inv.config.search_bound, inv.cache());
    ordered_json report;
    report["schema"] = kSchemaVersion;
    report["alpha"] = render(alpha);
    report["beta"] = render(beta);
    report["verdict"] = verdict_name(verdict.kind);
    if (verdict.conjugator) report["conjugator"] = matrix_json(*verdict.conjugator);
    if (!verdict.reason.empty()) report["reason"] = verdict.reason;
    report["bound"] = inv.config.search_bound;
    print_report(report, inv.config.json, out);
    return exit_code_for(verdict.kind);
}

int cmd_conjecture(Invocation& inv, const std::filesystem::path& corpus_file, std::ostream& out) {
    std::vector<QuadraticIrrational> values;
    std::istringstream lines(read_file(corpus_file));
    std::string line;
    while (std::getline(lines, line)) {
        std::size_t a = line.find_first_not_of(" \t\r");
        if (a == std::string::npos) continue;
        values.push_back(parse(line));
    }
    ConjectureReport scan = conjecture_scan(values, inv.config.search_bound, inv.cache());
    ordered_json results = ordered_json::array();
    for (const auto& entry : scan.entries) {
        ordered_json item;
        item["alpha"] = render(entry.alpha);
        item["generator"] = matrix_json(entry.gen);
        item["det"] = entry.gen.det().convert_to<int>();
        item["conjugate_to_inverse"] =
            entry.applicable ? verdict_name(entry.verdict.kind) : "not_applicable";
        if (entry.applicable && entry.verdict.conjugator)
            item["conjugator"] = matrix_json(*entry.verdict.conjugator);
        results.push_back(std::move(item));
    }
    ordered_json report;
    report["schema"] = kSchemaVersion;
    report["bound"] = inv.config.search_bound;
    report["results"] = std::move(results);
    ordered_json counts;
    counts["yes"] = scan.yes;
    counts["no"] = scan.no;
    counts["unknown"] = scan.unknown;
    counts["not_applicable"] = scan.not_applicable;
    report["counts"] = std::move(counts);
    if (inv.config.json) {
        out << report.dump(2) << '\n';
    } else {
        for (const auto& item : report["results"])
            out << item["alpha"].get<std::string>() << ": "
                << item["conjugate_to_inverse"].get<std::string>() << '\n';
        out << "yes " << scan.yes << ", no " << scan.no << ", unknown " << scan.unknown
            << ", not applicable " << scan.not_applicable << '\n';
    }
    return scan.unknown > 0 ? 2 : 0;
}

int cmd_corpus(const Int& U, const Int& V, const Int& W, const Int& Dmax,
               const std::string& out_file, std::ostream& out) {
    std::vector<QuadraticIrrational> values = corpus(U, V, W, Dmax);
    std::ostringstream text;
    for (const auto& q : values) text << render(q) << '\n';
    if (out_file.empty()) {
        out << text.str();
    } else {
        std::ofstream f(out_file, std::ios::trunc);
        if (!f) throw DomainError("cannot write file: " + out_file);
        f << text.str();
    }
    return 0;
}

int cmd_poly_member(Invocation& inv, const std::filesystem::path& file,
                    const std::string& alpha_text, std::ostream& out) {
    TrigPoly f = parse_poly(read_file(file));
    QuadraticIrrational alpha = parse(alpha_text);
    ordered_json report;
    report["schema"] = kSchemaVersion;
    report["alpha"] = render(alpha);
    report["support"] = f.support_size();
    report["member"] = in_algebra(f, alpha);
    print_report(report, inv.config.json, out);
    return 0;
}

int cmd_poly_map(Invocation& inv, const std::filesystem::path& file,
                 const std::string& matrix_text, const std::string& t1, const std::string& t2,
                 std::ostream& out) {
    TrigPoly f = parse_poly(read_file(file));
    GLMatrix m = parse_matrix(matrix_text);
    auto angle = [](const std::string& s) -> Rat {
        if (s.empty()) return Rat(0);
        std::size_t slash = s.find('/');
        if (slash == std::string::npos) return Rat(Int(s));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    };
    TorusPoint c{angle(t1), angle(t2)};
    TrigPoly image = apply_map(f, m, c);
    out << render_poly(image, inv.config.json);
    return 0;
}

int cmd_poly_cesaro(Invocation& inv, const std::filesystem::path& file, const Int& n,
                    const Int& m, std::ostream& out) {
    TrigPoly f = parse_poly(read_file(file));
    out << render_poly(cesaro(f, n, m), inv.config.json);
    return 0;
}

int cmd_poly_measure(Invocation& inv, const std::filesystem::path& file, const Int& p,
                     const Int& q, std::ostream& out) {
    TrigPoly f = parse_poly(read_file(file));
    auto [mu_k, mu] = measure_pair(f, p, q);
    ordered_json report;
    report["schema"] = kSchemaVersion;
    report["p"] = json_int(p);
    report["q"] = json_int(q);
    report["mu_k"] = ordered_json{{"re", mu_k.real()}, {"im", mu_k.imag()}};
    report["mu"] = ordered_json{{"re", mu.real()}, {"im", mu.imag()}};
    report["equal"] = mu_k == mu;
    print_report(report, inv.config.json, out);
    return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact classifier for the torus algebras cut out by a positive irrational slope"};
    app.require_subcommand(1);
    app.fallthrough();

    Invocation inv;
    std::string cache_flag;
    app.add_option("--bound", inv.config.search_bound, "GL(2,Z) search bound")
        ->envname("TORALG_BOUND")
        ->check(CLI::PositiveNumber);
    app.add_option("--cache", cache_flag, "Pell fundamental-solution cache file")
        ->envname("TORALG_CACHE");
    app.add_flag("--json", inv.config.json, "emit JSON reports");

    std::string arg_n, arg_rhs, arg_index = "1";
    auto* pell_cmd = app.add_subcommand("pell", "fundamental solution of x^2 - n y^2 = rhs");
    pell_cmd->add_option("n", arg_n)->required();
    pell_cmd->add_option("rhs", arg_rhs)->required();
    pell_cmd->add_option("--index", arg_index, "k-th positive solution (default 1)");

    std::string arg_alpha, arg_beta, arg_matrix;
    auto* gen_cmd = app.add_subcommand("gen", "automorphism-group generator for alpha");
    gen_cmd->add_option("alpha", arg_alpha)->required();

    auto* check_cmd = app.add_subcommand("check", "test whether a matrix acts on alpha's algebra");
    check_cmd->add_option("alpha", arg_alpha)->required();
    check_cmd->add_option("matrix", arg_matrix)->required();

    auto* iso_cmd = app.add_subcommand("iso", "decide isometric isomorphism of two algebras");
    iso_cmd->add_option("alpha", arg_alpha)->required();
    iso_cmd->add_option("beta", arg_beta)->required();

    auto* aut_cmd = app.add_subcommand("aut-iso", "decide automorphism-group isomorphism");
    aut_cmd->add_option("alpha", arg_alpha)->required();
    aut_cmd->add_option("beta", arg_beta)->required();

    std::string arg_corpus_file;
    auto* conj_cmd = app.add_subcommand("conjecture", "conjugate-to-inverse scan over a corpus");
    conj_cmd->add_option("corpus", arg_corpus_file)->required();

    std::string arg_u, arg_v, arg_w, arg_dmax, arg_out;
    auto* corpus_cmd = app.add_subcommand("corpus", "enumerate canonical quadratic irrationals");
    corpus_cmd->add_option("U", arg_u)->required();
    corpus_cmd->add_option("V", arg_v)->required();
    corpus_cmd->add_option("W", arg_w)->required();
    corpus_cmd->add_option("Dmax", arg_dmax)->required();
    corpus_cmd->add_option("--out", arg_out, "write lines to a file instead of stdout");

    auto* poly_cmd = app.add_subcommand("poly", "trigonometric-polynomial operations");
    poly_cmd->require_subcommand(1);
    std::string arg_file, arg_t1, arg_t2, arg_p, arg_q, arg_cn, arg_cm;
    auto* member_cmd = poly_cmd->add_subcommand("member", "exact membership test");
    member_cmd->add_option("file", arg_file)->required();
    member_cmd->add_option("alpha", arg_alpha)->required();
    auto* map_cmd = poly_cmd->add_subcommand("map", "apply a monomial torus map");
    map_cmd->add_option("file", arg_file)->required();
    map_cmd->add_option("matrix", arg_matrix)->required();
    map_cmd->add_option("--c1", arg_t1, "rational angle of the first unimodular constant");
    map_cmd->add_option("--c2", arg_t2, "rational angle of the second unimodular constant");
    auto* cesaro_cmd = poly_cmd->add_subcommand("cesaro", "tensor Fejér mean");
    cesaro_cmd->add_option("file", arg_file)->required();
    cesaro_cmd->add_option("n", arg_cn)->required();
    cesaro_cmd->add_option("m", arg_cm)->required();
    auto* measure_cmd = poly_cmd->add_subcommand("measure", "line-average against mu_k and mu");
    measure_cmd->add_option("file", arg_file)->required();
    measure_cmd->add_option("p", arg_p)->required();
    measure_cmd->add_option("q", arg_q)->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 1;
    }

    inv.config.cache_path = cache_flag;
    try {
        if (pell_cmd->parsed()) {
            int rhs = std::stoi(arg_rhs);
            return cmd_pell(inv, Int(arg_n), rhs, Int(arg_index), out);
        }
        if (gen_cmd->parsed()) return cmd_gen(inv, arg_alpha, out);
        if (check_cmd->parsed()) return cmd_check(inv, arg_alpha, arg_matrix, out);
        if (iso_cmd->parsed()) return cmd_iso(inv, arg_alpha, arg_beta, out);
        if (aut_cmd->parsed()) return cmd_aut_iso(inv, arg_alpha, arg_beta, out);
        if (conj_cmd->parsed()) return cmd_conjecture(inv, arg_corpus_file, out);
        if (corpus_cmd->parsed())
            return cmd_corpus(Int(arg_u), Int(arg_v), Int(arg_w), Int(arg_dmax), arg_out, out);
        if (poly_cmd->parsed()) {
            if (member_cmd->parsed()) return cmd_poly_member(inv, arg_file, arg_alpha, out);
            if (map_cmd->parsed()) return cmd_poly_map(inv, arg_file, arg_matrix, arg_t1, arg_t2, out);
            if (cesaro_cmd->parsed()) return cmd_poly_cesaro(inv, arg_file, Int(arg_cn), Int(arg_cm), out);
            if (measure_cmd->parsed()) return cmd_poly_measure(inv, arg_file, Int(arg_p), Int(arg_q), out);
        }
        err << "no subcommand given\n";
        return 1;
    } catch (const ParseError& e) {
        err << "input error: " << e.what() << '\n';
        return 1;
    } catch (const DomainError& e) {
        err << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::invalid_argument& e) {
        err << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::logic_error& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    } catch (const std::runtime_error& e) {
        // number parsing failures surface as plain runtime errors
        err << "input error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace toralg
