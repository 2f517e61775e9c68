#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "thetalift/planar_map.hpp"

namespace thetalift {

/// Invalid diagram code (label multiplicity, planarity, ...).
class CodeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Grammar violation, located by 1-based line and column.
class ParseError : public CodeError {
  public:
    ParseError(int line, int column, const std::string& what)
        : CodeError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    int line_;
    int column_;
};

enum class Role : unsigned char { over, under };

inline Role opposite(Role r) { return r == Role::over ? Role::under : Role::over; }

struct KnotEvent {
    int label = 0;
    Role role = Role::over;
    int sign = 1;
    friend bool operator==(const KnotEvent&, const KnotEvent&) = default;
};

namespace detail {

// Half-edge numbering shared by every knot-shaped map: the strand arrives at
// event p through half-edge 2p and leaves through 2p+1.
inline int he_in(int p) { return 2 * p; }
inline int he_out(int p) { return 2 * p + 1; }

// Counterclockwise rotation at a crossing from its sign and the four strand ends.
inline std::vector<int> crossing_rotation(int sign, int over_in, int over_out, int under_in, int under_out) {
    if (sign > 0) return {over_out, under_out, over_in, under_in};
    return {over_out, under_in, over_in, under_out};
}

// Inverse of crossing_rotation: sign from a counterclockwise rotation.
inline int sign_from_rotation(const std::vector<int>& rot, int over_out, int under_in, int under_out) {
    auto it = std::find(rot.begin(), rot.end(), over_out);
    if (it == rot.end() || rot.size() != 4) throw std::logic_error("malformed crossing rotation");
    int next = rot[static_cast<std::size_t>((it - rot.begin() + 1) % 4)];
    if (next == under_out) return 1;
    if (next == under_in) return -1;
    throw std::logic_error("over strand ends are adjacent in rotation");
}

inline std::string describe_label(char prefix, int label) {
    return prefix ? std::string(1, prefix) + std::to_string(label) : std::to_string(label);
}

// Checks the two visits of each crossing label: one over, one under, equal signs.
inline void check_pairs(const std::vector<std::pair<int, std::pair<Role, int>>>& visits, char prefix) {
    std::map<int, std::vector<std::pair<Role, int>>> by_label;
    std::vector<int> order;
    for (const auto& [label, rs] : visits) {
        if (!by_label.count(label)) order.push_back(label);
        by_label[label].push_back(rs);
    }
    for (int label : order) {
        const auto& v = by_label[label];
        const std::string name = describe_label(prefix, label);
        if (v.size() == 1) throw CodeError("label " + name + " occurs once");
        if (v.size() > 2) throw CodeError("label " + name + " occurs " + std::to_string(v.size()) + " times");
        if (v[0].first == v[1].first)
            throw CodeError("label " + name + " has two " + (v[0].first == Role::over ? "over" : "under") + " visits");
        if (v[0].second != v[1].second) throw CodeError("label " + name + " has inconsistent signs");
    }
}

struct Token {
    std::string text;
    int column;
};

// Splits a line (already stripped of its comment) into whitespace-separated tokens.
inline std::vector<Token> tokenize(std::string_view line, int first_column = 1) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i >= line.size()) break;
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.push_back({std::string(line.substr(i, j - i)), static_cast<int>(i) + first_column});
        i = j;
    }
    return out;
}

struct Line {
    int number;
    std::string text;  // comment removed
};

// Non-blank lines with '#' comments removed.
inline std::vector<Line> content_lines(std::string_view text) {
    std::vector<Line> out;
    int number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        ++number;
        std::string line(text.substr(pos, end - pos));
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        bool blank = std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); });
        if (!blank) out.push_back({number, line});
        pos = end + 1;
    }
    return out;
}

// Parses a positive decimal label from s[pos..); advances pos.
inline std::optional<int> read_label(const std::string& s, std::size_t& pos) {
    std::size_t start = pos;
    long long value = 0;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
        value = value * 10 + (s[pos] - '0');
        if (value > 1'000'000'000) return std::nullopt;
        ++pos;
    }
    if (pos == start || value <= 0) return std::nullopt;
    return static_cast<int>(value);
}

inline std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

// Splits "key: rest" and returns the column where rest starts.
inline std::optional<std::pair<std::string, std::size_t>> split_key(const std::string& line) {
    auto colon = line.find(':');
    if (colon == std::string::npos) return std::nullopt;
    return std::make_pair(trim(line.substr(0, colon)), colon + 1);
}

}  // namespace detail

/// Builds the 4-valent rotation system of a signed Gauss code. A code with
/// no crossings becomes a single loop on a 2-valent vertex (one circle).
inline PlanarMap knot_map(const std::vector<KnotEvent>& events) {
    const int n = static_cast<int>(events.size());
    if (n == 0) return PlanarMap({{0, 1}}, {1, 0});
    std::vector<int> twin(static_cast<std::size_t>(2 * n));
    for (int p = 0; p < n; ++p) {
        int q = (p + 1) % n;
        twin[detail::he_out(p)] = detail::he_in(q);
        twin[detail::he_in(q)] = detail::he_out(p);
    }
    std::map<int, std::pair<int, int>> visits;  // label -> (over pos, under pos)
    std::vector<int> order;
    for (int p = 0; p < n; ++p) {
        auto [it, fresh] = visits.try_emplace(events[p].label, -1, -1);
        if (fresh) order.push_back(events[p].label);
        (events[p].role == Role::over ? it->second.first : it->second.second) = p;
    }
    std::vector<std::vector<int>> rot;
    for (int label : order) {
        auto [po, pu] = visits[label];
        rot.push_back(detail::crossing_rotation(events[po].sign, detail::he_in(po), detail::he_out(po), detail::he_in(pu),
                                                detail::he_out(pu)));
    }
    return PlanarMap(std::move(rot), std::move(twin));
}

/// Signed Gauss code of a knot diagram.
///
/// Each crossing label is visited twice (once over, once under) with the
/// crossing sign repeated on both visits. Construction validates the label
/// multiplicities and that the diagram is realizable on the sphere.
class KnotCode {
  public:
    KnotCode() = default;

    explicit KnotCode(std::vector<KnotEvent> events) : events_(std::move(events)) {
        std::vector<std::pair<int, std::pair<Role, int>>> visits;
        for (const auto& e : events_) {
            if (e.label <= 0) throw CodeError("crossing labels must be positive");
            if (e.sign != 1 && e.sign != -1) throw CodeError("crossing sign must be +1 or -1");
            visits.push_back({e.label, {e.role, e.sign}});
        }
        detail::check_pairs(visits, 0);
        FaceTrace ft = knot_map(events_).trace();
        if (ft.genus != 0) throw CodeError("not a planar diagram (genus " + std::to_string(ft.genus) + ")");
    }

    const std::vector<KnotEvent>& events() const { return events_; }
    std::size_t size() const { return events_.size(); }
    int crossing_count() const { return static_cast<int>(events_.size() / 2); }

    int writhe() const {
        int w = 0;
        for (const auto& e : events_)
            if (e.role == Role::over) w += e.sign;
        return w;
    }

    /// partner()[p] is the position of the other visit to the crossing at p.
    std::vector<int> partner() const {
        std::map<int, int> first;
        std::vector<int> out(events_.size(), -1);
        for (int p = 0; p < static_cast<int>(events_.size()); ++p) {
            auto [it, fresh] = first.try_emplace(events_[p].label, p);
            if (!fresh) {
                out[p] = it->second;
                out[it->second] = p;
            }
        }
        return out;
    }

    /// Labels renumbered 1, 2, ... in order of first appearance.
    KnotCode relabeled() const {
        std::map<int, int> fresh;
        std::vector<KnotEvent> ev = events_;
        for (auto& e : ev) {
            auto [it, inserted] = fresh.try_emplace(e.label, static_cast<int>(fresh.size()) + 1);
            e.label = it->second;
        }
        return from_trusted(std::move(ev));
    }

    /// Mirror image: every crossing flips (over/under swapped, signs negated).
    KnotCode mirrored() const {
        std::vector<KnotEvent> ev = events_;
        for (auto& e : ev) {
            e.role = opposite(e.role);
            e.sign = -e.sign;
        }
        return from_trusted(std::move(ev));
    }

    /// Same diagram traversed in the opposite direction.
    KnotCode reversed() const {
        std::vector<KnotEvent> ev(events_.rbegin(), events_.rend());
        return from_trusted(std::move(ev));
    }

    PlanarMap map() const { return knot_map(events_); }

    friend bool operator==(const KnotCode& a, const KnotCode& b) { return a.events_ == b.events_; }

    /// Skips validation; for internal constructions already known to be valid.
    static KnotCode from_trusted(std::vector<KnotEvent> events) {
        KnotCode k;
        k.events_ = std::move(events);
        return k;
    }

  private:
    std::vector<KnotEvent> events_;
};

/// Opens two knot codes at their starting points and splices them into one
/// code: the connected sum performed at the base points. Labels of `b` are
/// shifted past those of `a`.
inline KnotCode connected_sum(const KnotCode& a, const KnotCode& b) {
    int offset = 0;
    for (const auto& e : a.events()) offset = std::max(offset, e.label);
    std::vector<KnotEvent> ev = a.events();
    for (auto e : b.events()) {
        e.label += offset;
        ev.push_back(e);
    }
    return KnotCode(std::move(ev));
}

// ---------------------------------------------------------------------------
// Theta-curves in branch-circle position

enum class ArcEventKind : unsigned char { self, rail };

/// One event along the arc e, read from v1 to v2. For a self-crossing `role`
/// is this visit's role and `sign` the crossing sign; for a rail event `role`
/// records whether e passes over or under the branch circle and `sign` is 0.
struct ArcEvent {
    ArcEventKind kind = ArcEventKind::self;
    int label = 0;
    Role role = Role::over;
    int sign = 0;

    static ArcEvent self(int label, Role role, int sign) { return {ArcEventKind::self, label, role, sign}; }
    static ArcEvent rail(int label, Role tag) { return {ArcEventKind::rail, label, tag, 0}; }
    bool is_rail() const { return kind == ArcEventKind::rail; }
    friend bool operator==(const ArcEvent&, const ArcEvent&) = default;
};

enum class AxisKind : unsigned char { v1, v2, rail };

/// One symbol of the cyclic order around the branch circle.
struct AxisEntry {
    AxisKind kind = AxisKind::rail;
    int label = 0;
    static AxisEntry vertex1() { return {AxisKind::v1, 0}; }
    static AxisEntry vertex2() { return {AxisKind::v2, 0}; }
    static AxisEntry rail(int label) { return {AxisKind::rail, label}; }
    friend bool operator==(const AxisEntry&, const AxisEntry&) = default;
};

/// Which side of the (oriented) branch circle e leaves v1 into and arrives
/// at v2 from. Fixes the rotations at the two trivalent vertices.
struct ThetaEmbedding {
    bool start_left = true;
    bool end_left = true;
};

/// Index bookkeeping for the rotation system of a theta diagram.
struct ThetaMapLayout {
    int arc_events = 0;
    int axis_length = 0;
    int e_in(int i) const { return 2 * i; }
    int e_out(int i) const { return 2 * i + 1; }
    int v1_out() const { return 2 * arc_events; }
    int v2_in() const { return 2 * arc_events + 1; }
    int k_in(int j) const { return 2 * arc_events + 2 + 2 * j; }
    int k_out(int j) const { return 2 * arc_events + 3 + 2 * j; }
};

/// Rotation system of a theta diagram: self-crossings from their signs, rail
/// crossings from the side of the circle e is on, trivalent vertices from
/// the embedding choice. Vertex order: crossings by first appearance along
/// e, then v1, then v2.
inline PlanarMap theta_map(const std::vector<ArcEvent>& arc, const std::vector<AxisEntry>& axis, ThetaEmbedding emb) {
    ThetaMapLayout lay{static_cast<int>(arc.size()), static_cast<int>(axis.size())};
    const int m = lay.arc_events, len = lay.axis_length;
    std::vector<int> twin(static_cast<std::size_t>(2 * m + 2 + 2 * len));
    auto link = [&](int a, int b) {
        twin[a] = b;
        twin[b] = a;
    };
    if (m == 0) {
        link(lay.v1_out(), lay.v2_in());
    } else {
        link(lay.v1_out(), lay.e_in(0));
        for (int i = 0; i + 1 < m; ++i) link(lay.e_out(i), lay.e_in(i + 1));
        link(lay.e_out(m - 1), lay.v2_in());
    }
    for (int j = 0; j < len; ++j) link(lay.k_out(j), lay.k_in((j + 1) % len));

    std::map<int, int> axis_index;
    int j1 = -1, j2 = -1;
    for (int j = 0; j < len; ++j) {
        if (axis[j].kind == AxisKind::v1) j1 = j;
        else if (axis[j].kind == AxisKind::v2) j2 = j;
        else axis_index[axis[j].label] = j;
    }

    std::vector<std::vector<int>> rot;
    std::map<int, std::pair<int, int>> self_visits;
    std::vector<int> self_order;
    bool left = emb.start_left;
    std::vector<std::pair<int, std::vector<int>>> pending;  // (first position, rotation)
    for (int i = 0; i < m; ++i) {
        const ArcEvent& ev = arc[i];
        if (ev.is_rail()) {
            int j = axis_index.at(ev.label);
            std::vector<int> r = left ? std::vector<int>{lay.k_out(j), lay.e_in(i), lay.k_in(j), lay.e_out(i)}
                                      : std::vector<int>{lay.k_out(j), lay.e_out(i), lay.k_in(j), lay.e_in(i)};
            pending.push_back({i, std::move(r)});
            left = !left;
        } else {
            auto [it, fresh] = self_visits.try_emplace(ev.label, -1, -1);
            if (fresh) self_order.push_back(ev.label);
            (ev.role == Role::over ? it->second.first : it->second.second) = i;
        }
    }
    for (int label : self_order) {
        auto [po, pu] = self_visits[label];
        pending.push_back({std::min(po, pu), detail::crossing_rotation(arc[po].sign, lay.e_in(po), lay.e_out(po),
                                                                       lay.e_in(pu), lay.e_out(pu))});
    }
    std::sort(pending.begin(), pending.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& p : pending) rot.push_back(std::move(p.second));

    auto trivalent = [&](int j, int e_half, bool on_left) {
        return on_left ? std::vector<int>{lay.k_out(j), e_half, lay.k_in(j)}
                       : std::vector<int>{lay.k_out(j), lay.k_in(j), e_half};
    };
    rot.push_back(trivalent(j1, lay.v1_out(), emb.start_left));
    rot.push_back(trivalent(j2, lay.v2_in(), emb.end_left));
    return PlanarMap(std::move(rot), std::move(twin));
}

/// Diagram of a theta-curve e ∪ κ where κ is drawn as a simple closed curve.
///
/// `arc` lists the events met along e from v1 to v2; `axis` is the cyclic
/// order of v1, v2 and the rail crossings around κ. Construction validates
/// multiplicities and searches the four trivalent-vertex rotations for a
/// genus-0 embedding. The axis is stored rotated to start at v1.
class ThetaCode {
  public:
    ThetaCode() : axis_{AxisEntry::vertex1(), AxisEntry::vertex2()} {}

    ThetaCode(std::vector<ArcEvent> arc, std::vector<AxisEntry> axis) : arc_(std::move(arc)), axis_(std::move(axis)) {
        validate_labels();
        auto v1 = std::find(axis_.begin(), axis_.end(), AxisEntry::vertex1());
        std::rotate(axis_.begin(), v1, axis_.end());
        for (bool s : {true, false}) {
            for (bool e : {true, false}) {
                if (theta_map(arc_, axis_, {s, e}).trace().genus == 0) {
                    embedding_ = {s, e};
                    return;
                }
            }
        }
        throw CodeError("not a planar diagram");
    }

    /// Uses the given trivalent-vertex rotations instead of searching.
    ThetaCode(std::vector<ArcEvent> arc, std::vector<AxisEntry> axis, ThetaEmbedding emb)
        : arc_(std::move(arc)), axis_(std::move(axis)), embedding_(emb) {
        validate_labels();
        auto v1 = std::find(axis_.begin(), axis_.end(), AxisEntry::vertex1());
        std::rotate(axis_.begin(), v1, axis_.end());
        if (theta_map(arc_, axis_, embedding_).trace().genus != 0) throw CodeError("not a planar diagram");
    }

    const std::vector<ArcEvent>& arc() const { return arc_; }
    const std::vector<AxisEntry>& axis() const { return axis_; }
    ThetaEmbedding embedding() const { return embedding_; }

    int self_crossing_count() const {
        return static_cast<int>(std::count_if(arc_.begin(), arc_.end(), [](const ArcEvent& e) { return !e.is_rail(); })) / 2;
    }
    int rail_count(std::optional<Role> tag = std::nullopt) const {
        return static_cast<int>(std::count_if(arc_.begin(), arc_.end(), [&](const ArcEvent& e) {
            return e.is_rail() && (!tag || e.role == *tag);
        }));
    }

    PlanarMap map() const { return theta_map(arc_, axis_, embedding_); }

    /// True when another choice of sides at v1 and v2 is also planar, so the
    /// arc and axis alone do not determine the diagram.
    bool embedding_ambiguous() const {
        int planar = 0;
        for (bool s : {true, false})
            for (bool e : {true, false})
                if (theta_map(arc_, axis_, {s, e}).trace().genus == 0) ++planar;
        return planar > 1;
    }

    /// Self labels and rail labels renumbered by first appearance along e.
    ThetaCode relabeled() const {
        std::map<int, int> self_new, rail_new;
        ThetaCode t = *this;
        for (auto& e : t.arc_) {
            auto& table = e.is_rail() ? rail_new : self_new;
            auto [it, fresh] = table.try_emplace(e.label, static_cast<int>(table.size()) + 1);
            e.label = it->second;
        }
        for (auto& a : t.axis_)
            if (a.kind == AxisKind::rail) a.label = rail_new.at(a.label);
        return t;
    }

    /// The same theta-curve turned over by a half-turn about a line in the
    /// projection plane: sides of κ exchange and every crossing swaps over
    /// and under; self-crossing signs are unchanged.
    ThetaCode flipped() const {
        ThetaCode t = *this;
        for (auto& e : t.arc_) e.role = opposite(e.role);
        t.embedding_ = {!embedding_.start_left, !embedding_.end_left};
        return t;
    }

    friend bool operator==(const ThetaCode& a, const ThetaCode& b) { return a.arc_ == b.arc_ && a.axis_ == b.axis_; }

  private:
    void validate_labels() const {
        std::vector<std::pair<int, std::pair<Role, int>>> visits;
        std::map<int, int> rail_in_arc, rail_in_axis;
        for (const auto& e : arc_) {
            if (e.label <= 0) throw CodeError("crossing labels must be positive");
            if (e.is_rail()) {
                ++rail_in_arc[e.label];
            } else {
                if (e.sign != 1 && e.sign != -1) throw CodeError("crossing sign must be +1 or -1");
                visits.push_back({e.label, {e.role, e.sign}});
            }
        }
        detail::check_pairs(visits, 'x');
        int v1 = 0, v2 = 0;
        for (const auto& a : axis_) {
            if (a.kind == AxisKind::v1) ++v1;
            else if (a.kind == AxisKind::v2) ++v2;
            else ++rail_in_axis[a.label];
        }
        if (v1 != 1 || v2 != 1) throw CodeError("axis must contain v1 and v2 exactly once");
        for (auto [label, count] : rail_in_arc) {
            if (count != 1) throw CodeError("rail label k" + std::to_string(label) + " occurs " + std::to_string(count) + " times on the arc");
            if (rail_in_axis[label] != 1) throw CodeError("rail label k" + std::to_string(label) + " must occur exactly once on the axis");
        }
        for (auto [label, count] : rail_in_axis) {
            if (count != 1) throw CodeError("rail label k" + std::to_string(label) + " occurs " + std::to_string(count) + " times on the axis");
            if (!rail_in_arc.count(label)) throw CodeError("axis label k" + std::to_string(label) + " does not occur on the arc");
        }
    }

    std::vector<ArcEvent> arc_;
    std::vector<AxisEntry> axis_;
    ThetaEmbedding embedding_;
};

// ---------------------------------------------------------------------------
// Text formats

namespace detail {

inline KnotEvent parse_gauss_token(const Token& tok, int line) {
    const std::string& s = tok.text;
    auto bad = [&] { return ParseError(line, tok.column, "unknown token '" + s + "'"); };
    if (s.size() < 3 || (s[0] != 'O' && s[0] != 'U')) throw bad();
    std::size_t pos = 1;
    auto label = read_label(s, pos);
    if (!label || pos + 1 != s.size() || (s[pos] != '+' && s[pos] != '-')) throw bad();
    return {*label, s[0] == 'O' ? Role::over : Role::under, s[pos] == '+' ? 1 : -1};
}

inline ArcEvent parse_arc_token(const Token& tok, int line) {
    const std::string& s = tok.text;
    auto bad = [&] { return ParseError(line, tok.column, "unknown token '" + s + "'"); };
    if (s.size() < 3 || (s[0] != 'x' && s[0] != 'k')) throw bad();
    std::size_t pos = 1;
    auto label = read_label(s, pos);
    if (!label) throw bad();
    if (s[0] == 'x') {
        if (pos + 2 != s.size() || (s[pos] != '+' && s[pos] != '-') || (s[pos + 1] != 'o' && s[pos + 1] != 'u')) throw bad();
        return ArcEvent::self(*label, s[pos + 1] == 'o' ? Role::over : Role::under, s[pos] == '+' ? 1 : -1);
    }
    if (pos + 1 != s.size() || (s[pos] != 'o' && s[pos] != 'u')) throw bad();
    return ArcEvent::rail(*label, s[pos] == 'o' ? Role::over : Role::under);
}

inline AxisEntry parse_axis_token(const Token& tok, int line) {
    const std::string& s = tok.text;
    if (s == "v1") return AxisEntry::vertex1();
    if (s == "v2") return AxisEntry::vertex2();
    std::size_t pos = 1;
    if (!s.empty() && s[0] == 'k') {
        if (auto label = read_label(s, pos); label && pos == s.size()) return AxisEntry::rail(*label);
    }
    throw ParseError(line, tok.column, "unknown token '" + s + "'");
}

inline void expect_header(const std::vector<Line>& lines, const std::string& header) {
    if (lines.empty()) throw ParseError(1, 1, "missing header " + header);
    auto toks = tokenize(lines[0].text);
    if (toks.size() != 1 || toks[0].text != header)
        throw ParseError(lines[0].number, toks.empty() ? 1 : toks[0].column, "expected header " + header);
}

// Wraps label-level validation errors with the line they came from.
template <class F>
auto with_line(int line, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ParseError&) {
        throw;
    } catch (const CodeError& e) {
        throw ParseError(line, 1, e.what());
    }
}

inline std::string role_char(Role r, bool upper) {
    if (upper) return r == Role::over ? "O" : "U";
    return r == Role::over ? "o" : "u";
}

}  // namespace detail

/// Parses the gauss tokens of a single line into a validated code.
inline KnotCode parse_gauss_tokens(std::string_view text, int line = 1, int first_column = 1) {
    std::vector<KnotEvent> ev;
    for (const auto& tok : detail::tokenize(text, first_column)) ev.push_back(detail::parse_gauss_token(tok, line));
    return detail::with_line(line, [&] { return KnotCode(std::move(ev)); });
}

/// knot-file: `%knot` then `gauss: O1+ U2+ ...`; `#` starts a comment.
inline KnotCode parse_knot(std::string_view text) {
    auto lines = detail::content_lines(text);
    detail::expect_header(lines, "%knot");
    std::optional<KnotCode> code;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        auto kv = detail::split_key(ln.text);
        if (!kv || kv->first != "gauss") throw ParseError(ln.number, 1, "unexpected line '" + detail::trim(ln.text) + "'");
        if (code) throw ParseError(ln.number, 1, "duplicate gauss line");
        code = parse_gauss_tokens(std::string_view(ln.text).substr(kv->second), ln.number, static_cast<int>(kv->second) + 1);
    }
    if (!code) throw ParseError(lines.back().number, 1, "missing gauss line");
    return *code;
}

inline std::string gauss_tokens(const KnotCode& k) {
    std::string out;
    for (const auto& e : k.events()) {
        if (!out.empty()) out += ' ';
        out += detail::role_char(e.role, true) + std::to_string(e.label) + (e.sign > 0 ? "+" : "-");
    }
    return out;
}

/// Canonical knot-file text (labels renumbered by first appearance).
inline std::string serialize(const KnotCode& k) {
    std::string toks = gauss_tokens(k.relabeled());
    return "%knot\ngauss:" + (toks.empty() ? std::string() : " " + toks) + "\n";
}

/// theta-file: `%theta`, `arc: <x<id><+|-><o|u> | k<id><o|u>>...`,
/// `axis: <v1|v2|k<id>>...`, and optionally `sides: <left|right> <left|right>`
/// giving the side of κ that e leaves v1 into and reaches v2 from. Without
/// it the first planar choice is taken. `#` starts a comment.
inline ThetaCode parse_theta(std::string_view text) {
    auto lines = detail::content_lines(text);
    detail::expect_header(lines, "%theta");
    std::optional<std::vector<ArcEvent>> arc;
    std::optional<std::vector<AxisEntry>> axis;
    std::optional<ThetaEmbedding> sides;
    int arc_line = 0, axis_line = 0, sides_line = 0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        auto kv = detail::split_key(ln.text);
        if (!kv || (kv->first != "arc" && kv->first != "axis" && kv->first != "sides"))
            throw ParseError(ln.number, 1, "unexpected line '" + detail::trim(ln.text) + "'");
        auto toks = detail::tokenize(std::string_view(ln.text).substr(kv->second), static_cast<int>(kv->second) + 1);
        if (kv->first == "sides") {
            if (sides) throw ParseError(ln.number, 1, "duplicate sides line");
            if (toks.size() != 2) throw ParseError(ln.number, 1, "sides needs two entries, left or right");
            bool side[2];
            for (int k = 0; k < 2; ++k) {
                if (toks[k].text != "left" && toks[k].text != "right")
                    throw ParseError(ln.number, toks[k].column, "expected left or right, got '" + toks[k].text + "'");
                side[k] = toks[k].text == "left";
            }
            sides = ThetaEmbedding{side[0], side[1]};
            sides_line = ln.number;
        } else if (kv->first == "arc") {
            if (arc) throw ParseError(ln.number, 1, "duplicate arc line");
            arc.emplace();
            for (const auto& t : toks) arc->push_back(detail::parse_arc_token(t, ln.number));
            arc_line = ln.number;
        } else {
            if (axis) throw ParseError(ln.number, 1, "duplicate axis line");
            axis.emplace();
            for (const auto& t : toks) axis->push_back(detail::parse_axis_token(t, ln.number));
            axis_line = ln.number;
        }
    }
    int last = lines.back().number;
    if (!arc) throw ParseError(last, 1, "missing arc line");
    if (!axis) throw ParseError(last, 1, "missing axis line");
    const int at = std::max({arc_line, axis_line, sides_line});
    if (sides) return detail::with_line(at, [&] { return ThetaCode(std::move(*arc), std::move(*axis), *sides); });
    return detail::with_line(at, [&] { return ThetaCode(std::move(*arc), std::move(*axis)); });
}

/// Canonical theta-file text.
inline std::string serialize(const ThetaCode& theta) {
    ThetaCode t = theta.relabeled();
    std::string out = "%theta\narc:";
    for (const auto& e : t.arc()) {
        out += ' ';
        if (e.is_rail()) out += "k" + std::to_string(e.label) + detail::role_char(e.role, false);
        else out += "x" + std::to_string(e.label) + (e.sign > 0 ? "+" : "-") + detail::role_char(e.role, false);
    }
    out += "\naxis:";
    for (const auto& a : t.axis()) {
        out += ' ';
        if (a.kind == AxisKind::v1) out += "v1";
        else if (a.kind == AxisKind::v2) out += "v2";
        else out += "k" + std::to_string(a.label);
    }
    out += "\n";
    if (t.embedding_ambiguous()) {
        auto side = [](bool left) { return left ? "left" : "right"; };
        out += std::string("sides: ") + side(t.embedding().start_left) + " " + side(t.embedding().end_left) + "\n";
    }
    return out;
}

}  // namespace thetalift
