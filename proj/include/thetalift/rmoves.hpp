#pragma once

#include <deque>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "thetalift/codes.hpp"

namespace thetalift {

inline constexpr int default_simplify_budget = 10'000;

enum class MoveKind : unsigned char { r1, r2, r3 };

struct Move {
    MoveKind kind;
    std::vector<int> labels;  // crossings involved, in the input code's labels
    friend bool operator==(const Move&, const Move&) = default;
};

struct MoveTrace {
    std::vector<Move> moves;
    int initial_crossings = 0;
    int final_crossings = 0;
    int steps_used = 0;
    bool budget_exhausted = false;
};

inline std::string to_string(MoveKind k) {
    switch (k) {
        case MoveKind::r1: return "R1";
        case MoveKind::r2: return "R2";
        case MoveKind::r3: return "R3";
    }
    return "?";
}

namespace detail {

inline std::vector<KnotEvent> without_labels(const std::vector<KnotEvent>& ev, int a, int b) {
    std::vector<KnotEvent> out;
    out.reserve(ev.size());
    for (const auto& e : ev)
        if (e.label != a && e.label != b) out.push_back(e);
    return out;
}

// A monogon: both visits of a crossing are consecutive.
inline std::optional<Move> find_r1(const std::vector<KnotEvent>& ev) {
    const int n = static_cast<int>(ev.size());
    for (int i = 0; i < n; ++i)
        if (n >= 2 && ev[i].label == ev[(i + 1) % n].label) return Move{MoveKind::r1, {ev[i].label}};
    return std::nullopt;
}

// A bigon: two segments joining the same two crossings, one strand over at
// both ends and the other under at both.
inline std::optional<Move> find_r2(const std::vector<KnotEvent>& ev) {
    const int n = static_cast<int>(ev.size());
    if (n < 4) return std::nullopt;
    std::map<std::pair<int, int>, std::vector<int>> segments;  // unordered label pair -> start positions
    for (int i = 0; i < n; ++i) {
        int a = ev[i].label, b = ev[(i + 1) % n].label;
        if (a == b || ev[i].role != ev[(i + 1) % n].role) continue;
        segments[{std::min(a, b), std::max(a, b)}].push_back(i);
    }
    for (const auto& [key, starts] : segments) {
        for (std::size_t x = 0; x < starts.size(); ++x)
            for (std::size_t y = x + 1; y < starts.size(); ++y) {
                int i = starts[x], j = starts[y];
                if (ev[i].role == ev[j].role) continue;
                if ((i + 1) % n == j || (j + 1) % n == i) continue;
                return Move{MoveKind::r2, {key.first, key.second}};
            }
    }
    return std::nullopt;
}

struct R3Site {
    std::vector<int> segment_starts;  // three segments p -> p+1
    std::vector<int> labels;
};

// Triangular faces whose edges are three distinct segments, one of which
// passes over (or under) at both of its ends.
inline std::vector<R3Site> find_r3_sites(const std::vector<KnotEvent>& ev) {
    const int n = static_cast<int>(ev.size());
    std::vector<R3Site> sites;
    if (n < 6) return sites;
    PlanarMap map = knot_map(ev);
    for (const auto& face : map.faces()) {
        if (face.size() != 3) continue;
        R3Site site;
        bool ok = true, movable = false;
        std::vector<int> verts;
        for (int he : face) {
            verts.push_back(map.vertex_of(he));
            // he leaves its vertex along a segment; out half-edges are odd
            int p = (he % 2 == 1) ? he / 2 : (he / 2 + n - 1) % n;
            int q = (p + 1) % n;
            if (ev[p].label == ev[q].label) ok = false;
            site.segment_starts.push_back(p);
            if (ev[p].role == ev[q].role) movable = true;
        }
        std::sort(verts.begin(), verts.end());
        if (std::unique(verts.begin(), verts.end()) != verts.end()) ok = false;
        auto starts = site.segment_starts;
        std::sort(starts.begin(), starts.end());
        for (std::size_t a = 0; a < starts.size() && ok; ++a)
            for (std::size_t b = a + 1; b < starts.size(); ++b)
                if (starts[a] == starts[b] || (starts[a] + 1) % n == starts[b] || (starts[b] + 1) % n == starts[a]) ok = false;
        if (!ok || !movable) continue;
        for (int p : site.segment_starts) site.labels.push_back(ev[p].label);
        std::sort(site.labels.begin(), site.labels.end());
        site.labels.erase(std::unique(site.labels.begin(), site.labels.end()), site.labels.end());
        std::sort(site.segment_starts.begin(), site.segment_starts.end());
        sites.push_back(std::move(site));
    }
    std::sort(sites.begin(), sites.end(), [](const R3Site& a, const R3Site& b) { return a.segment_starts < b.segment_starts; });
    return sites;
}

inline std::vector<KnotEvent> apply_r3(std::vector<KnotEvent> ev, const R3Site& site) {
    const int n = static_cast<int>(ev.size());
    for (int p : site.segment_starts) std::swap(ev[p], ev[(p + 1) % n]);
    return ev;
}

inline std::string state_key(const std::vector<KnotEvent>& ev) {
    return gauss_tokens(KnotCode::from_trusted(ev).relabeled());
}

inline bool reducible(const std::vector<KnotEvent>& ev) { return find_r1(ev) || find_r2(ev); }

}  // namespace detail

/// Applies one R1 or R2 reduction if available (R1 preferred).
inline std::optional<Move> reduce_once(std::vector<KnotEvent>& ev) {
    if (auto m = detail::find_r1(ev)) {
        ev = detail::without_labels(ev, m->labels[0], m->labels[0]);
        return m;
    }
    if (auto m = detail::find_r2(ev)) {
        ev = detail::without_labels(ev, m->labels[0], m->labels[1]);
        return m;
    }
    return std::nullopt;
}

/// Greedy Reidemeister simplification.
///
/// R1 and R2 reductions are applied until none remain; then a breadth-first
/// search over R3 moves looks for a diagram where a reduction becomes
/// available. Every generated R3 state and every reduction costs one step;
/// when the budget runs out the best diagram so far is returned.
inline std::pair<KnotCode, MoveTrace> simplify(const KnotCode& input, int budget = default_simplify_budget) {
    MoveTrace trace;
    trace.initial_crossings = input.crossing_count();
    std::vector<KnotEvent> ev = input.events();
    int steps = 0;
    for (;;) {
        while (steps < budget) {
            auto m = reduce_once(ev);
            if (!m) break;
            trace.moves.push_back(*m);
            ++steps;
        }
        if (steps >= budget) {
            trace.budget_exhausted = !ev.empty() && detail::reducible(ev);
            break;
        }
        // breadth-first over R3 moves
        struct Node {
            std::vector<KnotEvent> ev;
            int parent;
            Move via;
        };
        std::vector<Node> nodes{{ev, -1, {}}};
        std::unordered_set<std::string> seen{detail::state_key(ev)};
        std::deque<int> queue{0};
        int found = -1;
        while (!queue.empty() && found < 0) {
            int cur = queue.front();
            queue.pop_front();
            for (const auto& site : detail::find_r3_sites(nodes[cur].ev)) {
                if (steps >= budget) break;
                ++steps;
                auto next = detail::apply_r3(nodes[cur].ev, site);
                if (!seen.insert(detail::state_key(next)).second) continue;
                nodes.push_back({std::move(next), cur, Move{MoveKind::r3, site.labels}});
                int id = static_cast<int>(nodes.size()) - 1;
                if (detail::reducible(nodes[id].ev)) {
                    found = id;
                    break;
                }
                queue.push_back(id);
            }
            if (steps >= budget) break;
        }
        if (found < 0) {
            trace.budget_exhausted = steps >= budget;
            break;
        }
        std::vector<Move> path;
        for (int id = found; nodes[id].parent >= 0; id = nodes[id].parent) path.push_back(nodes[id].via);
        trace.moves.insert(trace.moves.end(), path.rbegin(), path.rend());
        ev = nodes[found].ev;
    }
    trace.steps_used = steps;
    KnotCode out(std::move(ev));
    trace.final_crossings = out.crossing_count();
    return {out, trace};
}

}  // namespace thetalift
