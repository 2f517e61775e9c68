#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "thetalift/codes.hpp"

namespace thetalift {

/// Plans with more rails than this use the greedy normalizer only.
inline constexpr int exact_normalize_rail_limit = 12;

/// A theta diagram is split when, reading the axis from v1, every rail
/// before v2 carries one tag and every rail after v2 carries the other
/// (either side may be empty). For split diagrams the preimage of e in the
/// double branched cover can be read off the diagram directly.
inline bool is_split(const ThetaCode& t) {
    std::map<int, Role> tag;
    for (const auto& e : t.arc())
        if (e.is_rail()) tag[e.label] = e.role;
    bool seen[2][2] = {{false, false}, {false, false}};  // [side][tag]
    int side = 0;
    for (const auto& a : t.axis()) {
        if (a.kind == AxisKind::v2) side = 1;
        if (a.kind == AxisKind::rail) seen[side][tag[a.label] == Role::over ? 0 : 1] = true;
    }
    for (int s = 0; s < 2; ++s)
        if (seen[s][0] && seen[s][1]) return false;
    return !((seen[0][0] && seen[1][0]) || (seen[0][1] && seen[1][1]));
}

namespace detail {

// Mutable theta diagram used while normalizing. Sides: +1 left of κ, -1 right.
struct WorkTheta {
    std::vector<ArcEvent> arc;
    std::vector<AxisEntry> axis;
    bool start_left = true;
    int next_label = 1;

    explicit WorkTheta(const ThetaCode& t) : arc(t.arc()), axis(t.axis()), start_left(t.embedding().start_left) {
        for (const auto& e : arc)
            if (!e.is_rail()) next_label = std::max(next_label, e.label + 1);
    }

    int side_before(std::size_t pos) const {
        int s = start_left ? 1 : -1;
        for (std::size_t i = 0; i < pos; ++i)
            if (arc[i].is_rail()) s = -s;
        return s;
    }
    std::size_t rail_position(int label) const {
        for (std::size_t i = 0; i < arc.size(); ++i)
            if (arc[i].is_rail() && arc[i].label == label) return i;
        throw std::logic_error("rail not on arc");
    }
    std::size_t wrap(long j) const {
        long n = static_cast<long>(axis.size());
        return static_cast<std::size_t>(((j % n) + n) % n);
    }
};

struct Vec {
    int x, y;
};

// Sign of a crossing from the directions of its over and under strands.
inline int crossing_sign(Vec over, Vec under) { return over.x * under.y - over.y * under.x > 0 ? 1 : -1; }

// Pending insertion into the arc, anchored before or after an original position.
struct Insertion {
    std::size_t anchor;
    bool after;
    ArcEvent event;
};

inline void apply_insertions(std::vector<ArcEvent>& arc, const std::vector<Insertion>& ins) {
    std::vector<ArcEvent> out;
    for (std::size_t p = 0; p <= arc.size(); ++p) {
        for (const auto& i : ins)
            if (i.anchor == p && !i.after) out.push_back(i.event);
        if (p == arc.size()) break;
        out.push_back(arc[p]);
        for (const auto& i : ins)
            if (i.anchor == p && i.after) out.push_back(i.event);
    }
    arc = std::move(out);
}

// Slides a trivalent vertex along κ past the adjacent rail in direction dir.
// Local frame: κ runs along +x, left is +y. The segment of e at the vertex
// is dragged across the rail's strand on the vertex's side.
inline int slide_vertex(WorkTheta& w, std::size_t jv, int dir) {
    const bool first = w.axis[jv].kind == AxisKind::v1;
    const std::size_t jr = w.wrap(static_cast<long>(jv) + dir);
    const std::size_t pr = w.rail_position(w.axis[jr].label);
    const bool end_adjacent = first ? pr == 0 : pr + 1 == w.arc.size();
    int added = 0;
    if (!end_adjacent) {
        const int side = first ? w.side_before(0) : w.side_before(w.arc.size());
        const int a = w.side_before(pr);
        const bool strand_over = w.arc[pr].role == Role::over;
        const Vec d_strand{0, -a};
        const Vec d_vertex{first ? -dir : dir, 0};
        const int sign = strand_over ? crossing_sign(d_strand, d_vertex) : crossing_sign(d_vertex, d_strand);
        const int x = w.next_label++;
        const Role strand_role = strand_over ? Role::over : Role::under;
        std::vector<Insertion> ins{{pr, side != a, ArcEvent::self(x, strand_role, sign)}};
        if (first) ins.push_back({0, false, ArcEvent::self(x, opposite(strand_role), sign)});
        else ins.push_back({w.arc.size() - 1, true, ArcEvent::self(x, opposite(strand_role), sign)});
        apply_insertions(w.arc, ins);
        added = 1;
    }
    std::swap(w.axis[jv], w.axis[jr]);
    return added;
}

// Moves the rail at axis position j forward past the rail after it. The
// moving strand is pushed along κ on both sides, crossing the other strand
// once per side it meets it on.
inline int swap_rails(WorkTheta& w, std::size_t j) {
    const std::size_t j2 = w.wrap(static_cast<long>(j) + 1);
    const std::size_t p = w.rail_position(w.axis[j].label);
    const std::size_t q = w.rail_position(w.axis[j2].label);
    const int a = w.side_before(p);
    const int a2 = w.side_before(q);
    const bool mover_over = w.arc[p].role == Role::over;
    const Role mover_role = mover_over ? Role::over : Role::under;
    const Vec d_other{0, -a2};
    auto make = [&](Vec d_mover, std::vector<Insertion>& ins, bool mover_after, std::size_t other_anchor,
                    bool other_after) {
        const int sign = mover_over ? crossing_sign(d_mover, d_other) : crossing_sign(d_other, d_mover);
        const int x = w.next_label++;
        ins.push_back({p, mover_after, ArcEvent::self(x, mover_role, sign)});
        ins.push_back({other_anchor, other_after, ArcEvent::self(x, opposite(mover_role), sign)});
    };
    std::vector<Insertion> ins;
    const Vec toward{1, 0}, back{-1, 0};
    if (q == p + 1) {
        make(toward, ins, false, q, true);
    } else if (p == q + 1) {
        make(back, ins, true, q, false);
    } else {
        // the crossing on side a2 of κ sits before the other rail
        make(toward, ins, false, q, a2 != a);
        make(back, ins, true, q, a2 == a);
    }
    apply_insertions(w.arc, ins);
    std::swap(w.axis[j], w.axis[j2]);
    return static_cast<int>(ins.size() / 2);
}

// Abstract axis: '1', '2' for the vertices, 'o', 'u' for rail tags.
inline std::string axis_pattern(const WorkTheta& w) {
    std::map<int, Role> tag;
    for (const auto& e : w.arc)
        if (e.is_rail()) tag[e.label] = e.role;
    std::string s;
    for (const auto& a : w.axis) {
        if (a.kind == AxisKind::v1) s += '1';
        else if (a.kind == AxisKind::v2) s += '2';
        else s += tag[a.label] == Role::over ? 'o' : 'u';
    }
    return s;
}

inline bool pattern_split(const std::string& s) {
    const std::size_t n = s.size(), i1 = s.find('1');
    bool seen[2][2] = {{false, false}, {false, false}};
    int side = 0;
    for (std::size_t k = 1; k < n; ++k) {
        char c = s[(i1 + k) % n];
        if (c == '2') side = 1;
        else seen[side][c == 'o' ? 0 : 1] = true;
    }
    for (int x = 0; x < 2; ++x)
        if (seen[x][0] && seen[x][1]) return false;
    return !((seen[0][0] && seen[1][0]) || (seen[0][1] && seen[1][1]));
}

// Cost of exchanging pattern positions j and j+1, or -1 if not allowed.
inline int exchange_cost(char a, char b) {
    const bool va = a == '1' || a == '2', vb = b == '1' || b == '2';
    if (va && vb) return -1;
    if (va || vb) return 1;
    return a == b ? -1 : 2;
}

// Cheapest sequence of adjacent exchanges making the pattern split.
inline std::vector<std::size_t> plan_exact(const std::string& start) {
    const std::size_t n = start.size();
    std::unordered_map<std::string, std::pair<int, std::pair<std::string, std::size_t>>> best;
    using Item = std::pair<int, std::string>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    best[start] = {0, {"", 0}};
    pq.push({0, start});
    while (!pq.empty()) {
        auto [cost, s] = pq.top();
        pq.pop();
        if (cost != best[s].first) continue;
        if (pattern_split(s)) {
            std::vector<std::size_t> plan;
            for (std::string cur = s; cur != start; cur = best[cur].second.first) plan.push_back(best[cur].second.second);
            std::reverse(plan.begin(), plan.end());
            return plan;
        }
        for (std::size_t j = 0; j < n; ++j) {
            const std::size_t j2 = (j + 1) % n;
            const int c = exchange_cost(s[j], s[j2]);
            if (c < 0) continue;
            std::string t = s;
            std::swap(t[j], t[j2]);
            auto it = best.find(t);
            if (it == best.end() || it->second.first > cost + c) {
                best[t] = {cost + c, {s, j}};
                pq.push({cost + c, t});
            }
        }
    }
    throw std::logic_error("no split arrangement reachable");
}

// Greedy plan for a target tag on the v1-to-v2 side: offenders on that side
// are walked forward and passed behind v2, then offenders on the other side
// are walked forward and passed behind v1.
inline std::pair<int, std::vector<std::size_t>> plan_greedy(std::string s, char keep) {
    const std::size_t n = s.size();
    std::vector<std::size_t> plan;
    int cost = 0;
    auto step = [&](std::size_t j) {
        const std::size_t j2 = (j + 1) % n;
        cost += exchange_cost(s[j], s[j2]);
        std::swap(s[j], s[j2]);
        plan.push_back(j);
    };
    auto pos = [&](char c) { return s.find(c); };
    auto walk_to = [&](std::size_t from, char vertex) {
        std::size_t j = from;
        while (s[(j + 1) % n] != vertex) {
            step(j);
            j = (j + 1) % n;
        }
        step(j);
    };
    for (;;) {
        // last offender between v1 and v2
        std::size_t i1 = pos('1'), found = n;
        for (std::size_t k = (i1 + 1) % n; s[k] != '2'; k = (k + 1) % n)
            if (s[k] != keep) found = k;
        if (found == n) break;
        walk_to(found, '2');
    }
    for (;;) {
        std::size_t i2 = pos('2'), found = n;
        for (std::size_t k = (i2 + 1) % n; s[k] != '1'; k = (k + 1) % n)
            if (s[k] == keep) found = k;
        if (found == n) break;
        walk_to(found, '1');
    }
    return {cost, plan};
}

inline std::vector<std::size_t> plan_normalization(const std::string& pattern, int rails) {
    if (rails <= exact_normalize_rail_limit) return plan_exact(pattern);
    auto a = plan_greedy(pattern, 'o');
    auto b = plan_greedy(pattern, 'u');
    return a.first <= b.first ? a.second : b.second;
}

}  // namespace detail

struct Normalization {
    ThetaCode theta;
    int added_crossings = 0;
    int moves = 0;
};

/// Isotopes the diagram into split form by sliding vertices and exchanging
/// rails along κ, recording the new self-crossings of e.
inline Normalization normalize(const ThetaCode& input) {
    detail::WorkTheta w(input);
    auto plan = detail::plan_normalization(detail::axis_pattern(w), input.rail_count());
    int added = 0;
    for (std::size_t j : plan) {
        const std::size_t j2 = w.wrap(static_cast<long>(j) + 1);
        const bool vj = w.axis[j].kind != AxisKind::rail, vj2 = w.axis[j2].kind != AxisKind::rail;
        if (vj) added += detail::slide_vertex(w, j, +1);
        else if (vj2) added += detail::slide_vertex(w, j2, -1);
        else added += detail::swap_rails(w, j);
    }
    const bool odd = input.rail_count() % 2 == 1;
    ThetaEmbedding emb{w.start_left, odd ? !w.start_left : w.start_left};
    ThetaCode out(std::move(w.arc), std::move(w.axis), emb);
    if (!is_split(out)) throw std::logic_error("normalization did not reach split form");
    return {std::move(out), added, static_cast<int>(plan.size())};
}

struct LiftResult {
    KnotCode knot;
    Normalization normalization;
    int self_lift_pairs = 0;   // self-crossings of the normalized e, each giving two crossings
    int bridge_crossings = 0;  // crossings of the lift not coming from self-crossings of e
    std::vector<int> deck;     // deck[label] is the crossing exchanged with label by the covering involution
};

/// Diagram of the preimage of e in the double cover of S^3 branched over κ.
///
/// On a split diagram the cover is two copies of the plane glued along the
/// v1-to-v2 side of κ, so e lifts to two copies of itself that exchange
/// sheets at every rail on that side. The closed lift runs along e on one
/// sheet and back on the other; a crossing's sign flips once for each of its
/// strands that is traversed backwards.
inline LiftResult lift(const ThetaCode& theta) {
    Normalization norm = normalize(theta);
    const ThetaCode& t = norm.theta;
    std::map<int, int> cut;  // rails on the v1-to-v2 side
    for (const auto& a : t.axis()) {
        if (a.kind == AxisKind::v2) break;
        if (a.kind == AxisKind::rail) cut[a.label] = 1;
    }
    std::map<int, int> index;  // self label -> 0-based
    for (const auto& e : t.arc())
        if (!e.is_rail()) index.try_emplace(e.label, static_cast<int>(index.size()));
    auto lifted = [&](int sheet, int label) { return 2 * index.at(label) + sheet + 1; };

    struct Visit {
        KnotEvent ev;
        int direction;
    };
    std::vector<Visit> forward, backward;
    int sheet = 0;
    for (const auto& e : t.arc()) {
        if (e.is_rail()) {
            if (cut.count(e.label)) sheet ^= 1;
            continue;
        }
        forward.push_back({{lifted(sheet, e.label), e.role, e.sign}, 1});
        backward.push_back({{lifted(1 - sheet, e.label), e.role, e.sign}, -1});
    }
    std::vector<Visit> all = forward;
    all.insert(all.end(), backward.rbegin(), backward.rend());
    std::map<int, int> direction_product;
    for (const auto& v : all) {
        auto [it, fresh] = direction_product.try_emplace(v.ev.label, v.direction);
        if (!fresh) it->second *= v.direction;
    }
    std::vector<KnotEvent> ev;
    ev.reserve(all.size());
    for (auto v : all) {
        v.ev.sign *= direction_product[v.ev.label];
        ev.push_back(v.ev);
    }

    LiftResult r;
    r.knot = KnotCode(std::move(ev));
    r.self_lift_pairs = t.self_crossing_count();
    r.deck.assign(static_cast<std::size_t>(2 * r.self_lift_pairs + 1), 0);
    for (int x = 0; x < r.self_lift_pairs; ++x) {
        r.deck[2 * x + 1] = 2 * x + 2;
        r.deck[2 * x + 2] = 2 * x + 1;
    }
    // the involution reverses the knot: position p maps to its mirror position
    const auto& k = r.knot.events();
    const std::size_t n = k.size();
    for (std::size_t p = 0; p < n; ++p) {
        const auto &a = k[p], &b = k[n - 1 - p];
        if (r.deck[a.label] != b.label || a.role != b.role || a.sign != b.sign)
            throw std::logic_error("lifted diagram is not symmetric under the covering involution");
    }
    r.normalization = std::move(norm);
    return r;
}

/// Knot formed by e and one of the two arcs of κ: side 0 is the arc from v1
/// to v2 in axis order, side 1 the arc from v2 back to v1. The closed curve
/// runs along e and returns along κ.
inline KnotCode constituent(const ThetaCode& theta, int side) {
    if (side != 0 && side != 1) throw std::invalid_argument("constituent side must be 0 or 1");
    std::map<int, int> on_side;  // rail label -> side of κ it meets
    int s = 0;
    for (const auto& a : theta.axis()) {
        if (a.kind == AxisKind::v2) s = 1;
        if (a.kind == AxisKind::rail) on_side[a.label] = s;
    }
    int self_max = 0;
    for (const auto& e : theta.arc())
        if (!e.is_rail()) self_max = std::max(self_max, e.label);
    // κ runs along +x with its left side +y; the return trip along side 0 is backwards
    const detail::Vec k_dir{side == 0 ? -1 : 1, 0};
    std::vector<KnotEvent> ev;
    std::map<int, KnotEvent> kappa_visit;
    int a = theta.embedding().start_left ? 1 : -1;
    for (const auto& e : theta.arc()) {
        if (!e.is_rail()) {
            ev.push_back({e.label, e.role, e.sign});
            continue;
        }
        if (on_side[e.label] == side) {
            const detail::Vec e_dir{0, -a};
            const bool e_over = e.role == Role::over;
            const int sign = e_over ? detail::crossing_sign(e_dir, k_dir) : detail::crossing_sign(k_dir, e_dir);
            const int label = self_max + e.label;
            ev.push_back({label, e.role, sign});
            kappa_visit[e.label] = {label, opposite(e.role), sign};
        }
        a = -a;
    }
    const auto& axis = theta.axis();
    const auto v2 = static_cast<std::size_t>(
        std::find(axis.begin(), axis.end(), AxisEntry::vertex2()) - axis.begin());
    if (side == 0) {
        for (std::size_t j = v2; j-- > 1;) ev.push_back(kappa_visit.at(axis[j].label));
    } else {
        for (std::size_t j = v2 + 1; j < axis.size(); ++j) ev.push_back(kappa_visit.at(axis[j].label));
    }
    return KnotCode(std::move(ev));
}

/// Vertex-to-vertex sum: e1 followed by e2, κ1 and κ2 joined at the shared
/// vertex. The second summand is turned over when needed so that e meets the
/// junction from one side of κ.
inline ThetaCode vertex_sum(const ThetaCode& first, const ThetaCode& second) {
    int self_max = 0, rail_max = 0;
    for (const auto& e : first.arc()) {
        int& m = e.is_rail() ? rail_max : self_max;
        m = std::max(m, e.label);
    }
    ThetaCode t2 = first.embedding().end_left == second.embedding().start_left ? second : second.flipped();
    std::vector<ArcEvent> arc = first.arc();
    for (auto e : t2.arc()) {
        e.label += e.is_rail() ? rail_max : self_max;
        arc.push_back(e);
    }
    std::vector<AxisEntry> axis;
    for (const auto& a : first.axis()) {
        if (a.kind != AxisKind::v2) {
            axis.push_back(a);
            continue;
        }
        for (std::size_t i = 1; i < t2.axis().size(); ++i) {
            auto b = t2.axis()[i];
            if (b.kind == AxisKind::rail) b.label += rail_max;
            axis.push_back(b);
        }
    }
    return ThetaCode(std::move(arc), std::move(axis), {first.embedding().start_left, t2.embedding().end_left});
}

/// Ties the knot j into e just before arc position `at`.
inline ThetaCode knot_sum(const ThetaCode& theta, const KnotCode& j, std::size_t at) {
    if (at > theta.arc().size()) throw CodeError("splice point beyond the end of e");
    int self_max = 0;
    for (const auto& e : theta.arc())
        if (!e.is_rail()) self_max = std::max(self_max, e.label);
    std::vector<ArcEvent> arc(theta.arc().begin(), theta.arc().begin() + static_cast<long>(at));
    for (const auto& e : j.events()) arc.push_back(ArcEvent::self(e.label + self_max, e.role, e.sign));
    arc.insert(arc.end(), theta.arc().begin() + static_cast<long>(at), theta.arc().end());
    return ThetaCode(std::move(arc), theta.axis(), theta.embedding());
}

}  // namespace thetalift
