// Command-line front end: each subcommand reads a file (or standard input
// when the path is "-" or omitted) and writes its result to standard output.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <iterator>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>
#include <string>

#include "thetalift/thetalift.hpp"

namespace tl = thetalift;
using nlohmann::ordered_json;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_input = 1;
constexpr int exit_usage = 2;
constexpr int exit_internal = 3;

// Input problems: unreadable files and malformed or invalid codes.
class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Source {
    std::string name;
    std::string text;
};

Source read_source(const std::string& path) {
    if (path.empty() || path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return {"<stdin>", ss.str()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path + ": cannot open file");
    return {path, std::string(std::istreambuf_iterator<char>(in), {})};
}

// Runs a parser, prefixing errors with the source name.
template <class F>
auto parse(const Source& src, F&& f) -> decltype(f(src.text)) {
    try {
        return f(src.text);
    } catch (const tl::CodeError& e) {
        throw InputError(src.name + ": " + e.what());
    }
}

std::string header_of(const std::string& text) {
    for (const auto& ln : tl::detail::content_lines(text)) return tl::detail::trim(ln.text);
    return "";
}

ordered_json fingerprint_json(const tl::Fingerprint& f) {
    return {{"det", f.determinant},
            {"alex", f.alex.to_string()},
            {"jones", f.jones ? ordered_json(f.jones->to_string()) : ordered_json(nullptr)}};
}

tl::KnotTable load_table(const std::string& path, int cap) {
    if (path.empty()) return {};
    Source src = read_source(path);
    return parse(src, [&](const std::string& t) { return tl::ingest_table(t, cap); });
}

struct Options {
    std::string input, input2, table, output;
    bool json = false;
    int torus_max = tl::default_torus_max;
    int cap = tl::default_state_sum_cap;
    int budget = tl::default_simplify_budget;
    int p = 0, q = 0;
    std::size_t at = 0;
};

int cmd_validate(const Options& o) {
    Source src = read_source(o.input);
    const std::string head = header_of(src.text);
    ordered_json j;
    std::string text;
    if (head == "%theta") {
        auto t = parse(src, tl::parse_theta);
        const int rails = t.rail_count();
        j = {{"kind", "theta"},
             {"selfCrossings", t.self_crossing_count()},
             {"rails", rails},
             {"overRails", t.rail_count(tl::Role::over)},
             {"split", tl::is_split(t)}};
        text = "ok theta: " + std::to_string(t.self_crossing_count()) + " self-crossings, " + std::to_string(rails) +
               " rails (" + std::to_string(t.rail_count(tl::Role::over)) + " over)";
    } else if (head == "%braid") {
        auto b = parse(src, tl::parse_braid);
        const int comps = b.closure_components();
        j = {{"kind", "braid"}, {"strands", b.strands}, {"length", b.word.size()}, {"closureComponents", comps}};
        text = "ok braid: " + std::to_string(b.strands) + " strands, " + std::to_string(b.word.size()) +
               " letters, closure has " + std::to_string(comps) + " component(s)";
    } else {
        auto k = parse(src, tl::parse_knot);
        j = {{"kind", "knot"}, {"crossings", k.crossing_count()}, {"writhe", k.writhe()}};
        text = "ok knot: " + std::to_string(k.crossing_count()) + " crossings, writhe " + std::to_string(k.writhe());
    }
    std::cout << (o.json ? j.dump(2) : text) << "\n";
    return exit_ok;
}

int cmd_lift(const Options& o) {
    Source src = read_source(o.input);
    auto t = parse(src, tl::parse_theta);
    auto r = tl::lift(t);
    const int s = t.self_crossing_count(), c = t.rail_count(tl::Role::over);
    if (o.json) {
        ordered_json j = {{"knot", tl::gauss_tokens(r.knot.relabeled())},
                          {"selfCrossings", s},
                          {"overRails", c},
                          {"crossings", r.knot.crossing_count()},
                          {"selfLiftPairs", r.self_lift_pairs},
                          {"bridgeCrossings", r.bridge_crossings},
                          {"normalizationCrossings", r.normalization.added_crossings}};
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << tl::serialize(r.knot);
    std::cout << "# s=" << s << " c=" << c << " crossings=" << r.knot.crossing_count()
              << " normalization=" << r.normalization.added_crossings << "\n";
    return exit_ok;
}

int cmd_simplify(const Options& o) {
    Source src = read_source(o.input);
    auto k = parse(src, tl::parse_knot);
    auto [out, trace] = tl::simplify(k, o.budget);
    int counts[3] = {0, 0, 0};
    for (const auto& m : trace.moves) ++counts[static_cast<int>(m.kind)];
    std::cout << tl::serialize(out);
    std::cout << "# " << trace.initial_crossings << " -> " << trace.final_crossings << " crossings; R1 x" << counts[0]
              << ", R2 x" << counts[1] << ", R3 x" << counts[2] << (trace.budget_exhausted ? "; budget exhausted" : "")
              << "\n";
    return exit_ok;
}

int cmd_invariants(const Options& o) {
    Source src = read_source(o.input);
    auto k = parse(src, tl::parse_knot);
    auto alex = tl::alexander(k);
    auto det = tl::determinant_of(alex);
    std::optional<tl::LaurentPoly> v;
    if (k.crossing_count() <= o.cap) {
        v = tl::jones(k, o.cap);
    } else {
        auto small = tl::simplify(k, o.budget).first;
        if (small.crossing_count() > o.cap) throw tl::CapExceeded(small.crossing_count(), o.cap);
        v = tl::jones(small, o.cap);
    }
    if (o.json) {
        ordered_json j = {{"det", det}, {"alex", alex.to_string()}, {"jones", v->to_string()}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "det=" << det << " alex=" << alex.to_string() << " jones=" << v->to_string() << "\n";
    }
    return exit_ok;
}

int cmd_identify(const Options& o) {
    Source src = read_source(o.input);
    auto k = parse(src, tl::parse_knot);
    auto table = load_table(o.table, o.cap);
    auto f = tl::fingerprint(k, o.cap, o.budget);
    auto matches = tl::identify(f, tl::candidates(table, o.torus_max, o.cap));
    if (o.json) {
        ordered_json m = ordered_json::array();
        for (const auto& c : matches) m.push_back({{"name", c.name}, {"source", c.source}, {"prime", c.prime}});
        std::cout << ordered_json{{"matches", m}, {"fingerprint", fingerprint_json(f)}}.dump(2) << "\n";
        return exit_ok;
    }
    if (matches.empty()) std::cout << "no match\n";
    for (const auto& c : matches) std::cout << c.name << " (" << c.source << ", " << (c.prime ? "prime" : "composite") << ")\n";
    return exit_ok;
}

int cmd_analyze(const Options& o) {
    Source src = read_source(o.input);
    auto t = parse(src, tl::parse_theta);
    auto table = load_table(o.table, o.cap);
    auto a = tl::analyze_theta(t, table, {o.torus_max, o.cap, o.budget});
    const auto& v = a.verdict;
    if (o.json) {
        ordered_json certs = ordered_json::array();
        for (const auto& c : v.certificates) certs.push_back({{"rule", c.rule}, {"detail", c.detail}});
        ordered_json j = {{"status", tl::to_string(v.status)},
                          {"certificates", certs},
                          {"lift",
                           {{"selfLiftPairs", a.lift.self_lift_pairs},
                            {"bridgeCrossings", a.lift.bridge_crossings},
                            {"normalizationCrossings", a.lift.normalization.added_crossings}}},
                          {"fingerprint", v.fp ? fingerprint_json(*v.fp) : ordered_json(nullptr)}};
        std::cout << j.dump(2) << "\n";
        return exit_ok;
    }
    std::cout << "status: " << tl::to_string(v.status) << "\n";
    for (const auto& c : v.certificates) std::cout << "  " << c.rule << ": " << c.detail << "\n";
    if (v.fp)
        std::cout << "fingerprint: det=" << v.fp->determinant << " alex=" << v.fp->alex.to_string()
                  << " jones=" << (v.fp->jones ? v.fp->jones->to_string() : "unavailable") << "\n";
    return exit_ok;
}

int cmd_render(const Options& o) {
    Source src = read_source(o.input);
    std::string svg = header_of(src.text) == "%theta" ? tl::render_svg(parse(src, tl::parse_theta))
                                                      : tl::render_svg(parse(src, tl::parse_knot));
    if (o.output.empty()) {
        std::cout << svg;
    } else {
        std::ofstream out(o.output, std::ios::binary);
        if (!out) throw InputError(o.output + ": cannot write file");
        out << svg;
    }
    return exit_ok;
}

int cmd_make_torus(const Options& o) {
    tl::KnotCode k;
    try {
        k = tl::closure(tl::torus_braid(o.p, o.q));
    } catch (const tl::CodeError& e) {
        throw InputError(e.what());
    }
    std::cout << "# T(" << o.p << "," << o.q << ")\n" << tl::serialize(k);
    return exit_ok;
}

int cmd_make_sum2(const Options& o) {
    Source ts = read_source(o.input), ks = read_source(o.input2);
    auto t = parse(ts, tl::parse_theta);
    auto j = parse(ks, tl::parse_knot);
    try {
        std::cout << tl::serialize(tl::knot_sum(t, j, o.at));
    } catch (const tl::CodeError& e) {
        throw InputError(e.what());
    }
    return exit_ok;
}

int cmd_make_sum3(const Options& o) {
    Source a = read_source(o.input), b = read_source(o.input2);
    auto t1 = parse(a, tl::parse_theta);
    auto t2 = parse(b, tl::parse_theta);
    std::cout << tl::serialize(tl::vertex_sum(t1, t2));
    return exit_ok;
}

int cmd_table_check(const Options& o) {
    Source src = read_source(o.input);
    auto table = parse(src, [&](const std::string& t) { return tl::ingest_table(t, o.cap); });
    if (o.json) {
        ordered_json rows = ordered_json::array();
        for (const auto& e : table.entries)
            rows.push_back({{"name", e.name},
                            {"prime", e.prime},
                            {"crossings", e.code.crossing_count()},
                            {"fingerprint", fingerprint_json(e.fp)}});
        std::cout << ordered_json{{"entries", rows}}.dump(2) << "\n";
        return exit_ok;
    }
    for (const auto& e : table.entries)
        std::cout << e.name << " " << (e.prime ? "prime" : "composite") << " crossings=" << e.code.crossing_count()
                  << " det=" << e.fp.determinant << " alex=" << e.fp.alex.to_string()
                  << " jones=" << (e.fp.jones ? e.fp.jones->to_string() : "unavailable") << "\n";
    std::cout << table.entries.size() << " entries ok\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lifted knots and primality of theta-curves"};
    app.require_subcommand(1);
    Options o;

    auto input = [&](CLI::App* sub, const std::string& what) {
        sub->add_option("file", o.input, what + " (\"-\" or omitted: standard input)");
    };
    auto json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "machine-readable output"); };
    auto caps = [&](CLI::App* sub) {
        sub->add_option("--cap", o.cap, "state-sum crossing cap for the Jones polynomial")->check(CLI::PositiveNumber);
        sub->add_option("--budget", o.budget, "simplification step budget")->check(CLI::NonNegativeNumber);
    };
    auto classify = [&](CLI::App* sub) {
        sub->add_option("--table", o.table, "knot table file");
        sub->add_option("--torus-max", o.torus_max, "torus candidates T(p,q) with (p-1)q at most this")
            ->check(CLI::NonNegativeNumber);
    };

    auto* validate = app.add_subcommand("validate", "check a knot, theta or braid file");
    input(validate, "input file");
    json(validate);
    auto* lift = app.add_subcommand("lift", "lifted knot of a theta-curve");
    input(lift, "theta file");
    json(lift);
    auto* simplify = app.add_subcommand("simplify", "Reidemeister simplification of a knot");
    input(simplify, "knot file");
    simplify->add_option("--budget", o.budget, "step budget")->check(CLI::NonNegativeNumber);
    auto* invariants = app.add_subcommand("invariants", "determinant, Alexander and Jones polynomials");
    input(invariants, "knot file");
    json(invariants);
    caps(invariants);
    auto* identify = app.add_subcommand("identify", "match a knot against torus knots and a table");
    input(identify, "knot file");
    json(identify);
    caps(identify);
    classify(identify);
    auto* analyze = app.add_subcommand("analyze", "primality of a theta-curve");
    input(analyze, "theta file");
    json(analyze);
    caps(analyze);
    classify(analyze);
    auto* render = app.add_subcommand("render", "SVG drawing of a knot or theta file");
    input(render, "knot or theta file");
    render->add_option("-o,--output", o.output, "write the SVG here instead of standard output");
    auto* torus = app.add_subcommand("make-torus", "knot file of the torus knot T(p,q)");
    torus->add_option("p", o.p, "strands")->required();
    torus->add_option("q", o.q, "twists")->required();
    auto* sum2 = app.add_subcommand("make-sum2", "tie a knot into e");
    sum2->add_option("theta", o.input, "theta file")->required();
    sum2->add_option("knot", o.input2, "knot file")->required();
    sum2->add_option("--at", o.at, "arc position to splice at (default 0)");
    auto* sum3 = app.add_subcommand("make-sum3", "vertex sum of two theta-curves");
    sum3->add_option("first", o.input, "theta file")->required();
    sum3->add_option("second", o.input2, "theta file")->required();
    auto* table = app.add_subcommand("table-check", "validate a knot table and print fingerprints");
    input(table, "table file");
    json(table);
    table->add_option("--cap", o.cap, "state-sum crossing cap")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return exit_usage;
    }

    try {
        if (*validate) return cmd_validate(o);
        if (*lift) return cmd_lift(o);
        if (*simplify) return cmd_simplify(o);
        if (*invariants) return cmd_invariants(o);
        if (*identify) return cmd_identify(o);
        if (*analyze) return cmd_analyze(o);
        if (*render) return cmd_render(o);
        if (*torus) return cmd_make_torus(o);
        if (*sum2) return cmd_make_sum2(o);
        if (*sum3) return cmd_make_sum3(o);
        if (*table) return cmd_table_check(o);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const tl::CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
    return exit_usage;
}
