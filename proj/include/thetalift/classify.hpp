#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thetalift/braid.hpp"
#include "thetalift/codes.hpp"
#include "thetalift/invariants.hpp"
#include "thetalift/laurent.hpp"
#include "thetalift/lift.hpp"
#include "thetalift/rmoves.hpp"

namespace thetalift {

inline constexpr int default_torus_max = 16;

/// Determinant, Alexander polynomial and the mirror-canonical Jones
/// polynomial. Jones is absent when the diagram is above the state-sum cap.
struct Fingerprint {
    std::int64_t determinant = 1;
    LaurentPoly alex = LaurentPoly::constant(1);
    std::optional<LaurentPoly> jones = LaurentPoly::constant(1);

    bool complete() const { return jones.has_value(); }
    friend bool operator==(const Fingerprint&, const Fingerprint&) = default;
};

/// Fingerprint of the diagram as given.
inline Fingerprint fingerprint_of(const KnotCode& k, int jones_cap = default_state_sum_cap) {
    Fingerprint f;
    f.alex = alexander(k);
    f.determinant = determinant_of(f.alex);
    if (k.crossing_count() <= jones_cap) f.jones = mirror_canonical(jones(k, jones_cap));
    else f.jones.reset();
    return f;
}

/// Fingerprint after Reidemeister simplification.
inline Fingerprint fingerprint(const KnotCode& k, int jones_cap = default_state_sum_cap,
                               int budget = default_simplify_budget) {
    return fingerprint_of(simplify(k, budget).first, jones_cap);
}

struct TableEntry {
    std::string name;
    bool prime = true;
    KnotCode code;
    Fingerprint fp;
};

struct KnotTable {
    std::vector<TableEntry> entries;
};

/// table-file: `<name> <prime|composite> <gauss tokens>` per line, `#` comments.
inline KnotTable ingest_table(std::string_view text, int jones_cap = default_state_sum_cap) {
    KnotTable table;
    std::set<std::string> names;
    for (const auto& ln : detail::content_lines(text)) {
        auto toks = detail::tokenize(ln.text);
        if (toks.size() < 2) throw ParseError(ln.number, 1, "expected '<name> <prime|composite> <gauss tokens>'");
        const auto& name = toks[0].text;
        const auto& flag = toks[1];
        if (flag.text != "prime" && flag.text != "composite")
            throw ParseError(ln.number, flag.column, "expected 'prime' or 'composite', got '" + flag.text + "'");
        if (!names.insert(name).second) throw ParseError(ln.number, toks[0].column, "duplicate " + name);
        const int rest = toks.size() > 2 ? toks[2].column : static_cast<int>(ln.text.size()) + 1;
        KnotCode code = parse_gauss_tokens(std::string_view(ln.text).substr(static_cast<std::size_t>(rest - 1)), ln.number, rest);
        Fingerprint fp = detail::with_line(ln.number, [&] { return fingerprint(code, jones_cap); });
        table.entries.push_back({name, flag.text == "prime", std::move(code), std::move(fp)});
    }
    return table;
}

struct Candidate {
    std::string name;
    std::string source;  // "torus" or "table"
    bool prime = true;
    Fingerprint fp;
};

/// Torus knots T(p,q), 2 <= p < q, gcd 1, with (p-1)q <= torus_max.
inline std::vector<Candidate> torus_candidates(int torus_max, int jones_cap = default_state_sum_cap) {
    std::vector<Candidate> out;
    for (int p = 2; (p - 1) * (p + 1) <= torus_max; ++p)
        for (int q = p + 1; (p - 1) * q <= torus_max; ++q) {
            if (std::gcd(p, q) != 1) continue;
            out.push_back({"T(" + std::to_string(p) + "," + std::to_string(q) + ")", "torus", true,
                           fingerprint_of(closure(torus_braid(p, q)), jones_cap)});
        }
    return out;
}

inline std::vector<Candidate> candidates(const KnotTable& table, int torus_max, int jones_cap = default_state_sum_cap) {
    auto out = torus_candidates(torus_max, jones_cap);
    for (const auto& e : table.entries) out.push_back({e.name, "table", e.prime, e.fp});
    return out;
}

/// Candidates whose fingerprint equals f exactly. A partial fingerprint
/// matches nothing.
inline std::vector<Candidate> identify(const Fingerprint& f, const std::vector<Candidate>& pool) {
    std::vector<Candidate> out;
    if (!f.complete()) return out;
    for (const auto& c : pool)
        if (c.fp == f) out.push_back(c);
    return out;
}

inline std::vector<Candidate> identify(const Fingerprint& f, const KnotTable& table, int torus_max = default_torus_max) {
    return identify(f, candidates(table, torus_max));
}

enum class Status : unsigned char { prime, composite, unknot, unknown };

inline std::string to_string(Status s) {
    switch (s) {
        case Status::prime: return "Prime";
        case Status::composite: return "Composite";
        case Status::unknot: return "Unknot";
        case Status::unknown: return "Unknown";
    }
    return "?";
}

struct Certificate {
    std::string rule;
    std::string detail;
    friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct Verdict {
    Status status = Status::unknown;
    std::vector<Certificate> certificates;
    std::optional<Fingerprint> fp;
};

struct Caps {
    int torus_max = default_torus_max;
    int jones_cap = default_state_sum_cap;
    int simplify_budget = default_simplify_budget;
};

/// Primality of a knot from its fingerprint.
///
/// Prime needs an exact match with a torus knot or a table entry listed as
/// prime. Composite comes from a pair of prime candidates whose Alexander
/// and Jones products reproduce the fingerprint; this is evidence, not proof.
inline Verdict knot_primality(const KnotCode& k, const KnotTable& table, const Caps& caps = {}) {
    Verdict v;
    auto [small, trace] = simplify(k, caps.simplify_budget);
    v.certificates.push_back({"simplify", std::to_string(trace.initial_crossings) + " -> " +
                                              std::to_string(trace.final_crossings) + " crossings in " +
                                              std::to_string(trace.moves.size()) + " moves"});
    if (small.crossing_count() == 0) {
        v.status = Status::unknot;
        v.fp = Fingerprint{};
        return v;
    }
    v.fp = fingerprint_of(small, caps.jones_cap);
    const Fingerprint& f = *v.fp;
    if (!f.complete())
        v.certificates.push_back({"jones-cap", std::to_string(small.crossing_count()) + " crossings exceed the state-sum cap " +
                                                   std::to_string(caps.jones_cap)});
    auto pool = candidates(table, caps.torus_max, caps.jones_cap);
    for (const auto& c : identify(f, pool)) {
        if (!c.prime) continue;
        v.status = Status::prime;
        v.certificates.push_back({"identify", "fingerprint matches " + c.name});
        if (c.source == "torus") v.certificates.push_back({"torus-prime", "torus knots are prime"});
        else v.certificates.push_back({"table-prime", c.name + " is listed prime"});
        return v;
    }
    if (f.complete()) {
        for (std::size_t i = 0; i < pool.size(); ++i) {
            if (!pool[i].prime) continue;
            for (std::size_t j = i; j < pool.size(); ++j) {
                if (!pool[j].prime) continue;
                const auto &a = pool[i].fp, &b = pool[j].fp;
                if (!a.complete() || !b.complete()) continue;
                if (a.determinant * b.determinant != f.determinant) continue;
                if (normalize_unit(a.alex * b.alex) != f.alex) continue;
                const bool jones_ok = mirror_canonical(*a.jones * *b.jones) == *f.jones ||
                                      mirror_canonical(*a.jones * b.jones->inverted()) == *f.jones;
                if (!jones_ok) continue;
                v.status = Status::composite;
                v.certificates.push_back({"factor-screen", "det, Alexander and Jones factor as " + pool[i].name + " # " +
                                                               pool[j].name + " (evidence, not a proof)"});
                return v;
            }
        }
    }
    v.status = Status::unknown;
    v.certificates.push_back({"no-match", "no candidate or factor pair matches the fingerprint"});
    return v;
}

inline std::string lift_summary(const LiftResult& r) {
    return std::to_string(r.normalization.added_crossings) + " crossings added to reach split form; " +
           std::to_string(r.self_lift_pairs) + " self-crossings lift to " + std::to_string(r.knot.crossing_count()) +
           " crossings";
}

struct ThetaAnalysis {
    Verdict verdict;
    LiftResult lift;
};

/// A theta-curve with unknotted constituent κ is prime exactly when its
/// lifted knot is prime; an unknotted lift means the theta-curve is trivial.
inline ThetaAnalysis analyze_theta(const ThetaCode& theta, const KnotTable& table, const Caps& caps = {}) {
    ThetaAnalysis a{{}, lift(theta)};
    Verdict kv = knot_primality(a.lift.knot, table, caps);
    a.verdict.status = kv.status;
    a.verdict.fp = kv.fp;
    a.verdict.certificates.push_back({"lift", lift_summary(a.lift)});
    for (auto& c : kv.certificates) a.verdict.certificates.push_back(std::move(c));
    switch (kv.status) {
        case Status::unknot:
            a.verdict.certificates.push_back({"trivial-theta", "the lift is unknotted, so the theta-curve is trivial"});
            break;
        case Status::unknown: break;
        default:
            a.verdict.certificates.push_back(
                {"main-theorem", "the theta-curve is prime if and only if its lifted knot is prime"});
    }
    return a;
}

/// Verdict for a vertex sum built from two known summands. When both
/// summands lift to knotted curves the sum is composite by construction.
inline ThetaAnalysis analyze_vertex_sum(const ThetaCode& first, const ThetaCode& second, const KnotTable& table,
                                        const Caps& caps = {}) {
    ThetaAnalysis a = analyze_theta(vertex_sum(first, second), table, caps);
    auto knotted = [&](const ThetaCode& t) -> std::optional<std::string> {
        KnotCode k = simplify(lift(t).knot, caps.simplify_budget).first;
        if (k.crossing_count() == 0) return std::nullopt;
        LaurentPoly d = alexander(k);
        if (d != LaurentPoly::constant(1)) return "Alexander polynomial " + d.to_string();
        if (k.crossing_count() <= caps.jones_cap) {
            LaurentPoly v = jones(k, caps.jones_cap);
            if (v != LaurentPoly::constant(1)) return "Jones polynomial " + v.to_string();
        }
        return std::nullopt;
    };
    auto w1 = knotted(first), w2 = knotted(second);
    if (w1 && w2) {
        if (a.verdict.status == Status::prime)
            throw ConsistencyError("a vertex sum of knotted summands was certified prime");
        a.verdict.status = Status::composite;
        a.verdict.certificates.push_back({"construction", "vertex sum of two theta-curves"});
        a.verdict.certificates.push_back({"summand-knotted", "first summand's lift has " + *w1});
        a.verdict.certificates.push_back({"summand-knotted", "second summand's lift has " + *w2});
    }
    return a;
}

}  // namespace thetalift
