#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "thetalift/codes.hpp"
#include "thetalift/laurent.hpp"

namespace thetalift {

inline constexpr int default_state_sum_cap = 24;

/// Raised when a state sum would exceed the configured crossing cap.
class CapExceeded : public std::runtime_error {
  public:
    CapExceeded(int crossings, int cap)
        : std::runtime_error("state sum refused: " + std::to_string(crossings) + " crossings exceeds cap " +
                             std::to_string(cap)) {}
};

/// An invariant computation contradicted a property every knot has.
class ConsistencyError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

namespace detail {

// Union-find with rollback; no path compression so unions can be undone.
class RollbackUnionFind {
  public:
    explicit RollbackUnionFind(int n) : parent_(static_cast<std::size_t>(n)), size_(static_cast<std::size_t>(n), 1) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }
    // Returns true when two classes merged.
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            history_.push_back(-1);
            return false;
        }
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        history_.push_back(b);
        return true;
    }
    void undo() {
        int b = history_.back();
        history_.pop_back();
        if (b < 0) return;
        int a = parent_[b];
        size_[a] -= size_[b];
        parent_[b] = b;
    }

  private:
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> history_;
};

struct Smoothing {
    int a1, a2, b1, b2;  // A-smoothing joins segments (a1,a2) and (b1,b2)
    int c1, c2, d1, d2;  // B-smoothing joins (c1,c2) and (d1,d2)
};

// Segment p runs from event p to event p+1; a half-edge maps to its segment.
inline int segment_of(int he, int n) {
    int p = he / 2;
    return (he % 2 == 1) ? p : (p + n - 1) % n;
}

inline std::vector<Smoothing> smoothings(const KnotCode& k) {
    const int n = static_cast<int>(k.size());
    PlanarMap map = k.map();
    std::vector<Smoothing> out;
    for (const auto& rot : map.rotations()) {
        // rot[0] is the over strand's outgoing end; the A-regions are the
        // corners swept when the over strand turns counterclockwise.
        int s0 = segment_of(rot[0], n), s1 = segment_of(rot[1], n), s2 = segment_of(rot[2], n),
            s3 = segment_of(rot[3], n);
        out.push_back({s0, s3, s1, s2, s0, s1, s2, s3});
    }
    return out;
}

struct StateTally {
    // counts[a][loops] for a = number of A-smoothings
    std::vector<std::vector<std::int64_t>> counts;
};

inline void enumerate_states(const std::vector<Smoothing>& sm, std::size_t idx, int a_count, int merges,
                             RollbackUnionFind& uf, int segments, StateTally& tally) {
    if (idx == sm.size()) {
        ++tally.counts[a_count][segments - merges];
        return;
    }
    const Smoothing& s = sm[idx];
    int m = merges;
    m += uf.unite(s.a1, s.a2);
    m += uf.unite(s.b1, s.b2);
    enumerate_states(sm, idx + 1, a_count + 1, m, uf, segments, tally);
    uf.undo();
    uf.undo();
    m = merges;
    m += uf.unite(s.c1, s.c2);
    m += uf.unite(s.d1, s.d2);
    enumerate_states(sm, idx + 1, a_count, m, uf, segments, tally);
    uf.undo();
    uf.undo();
}

// Dense integer polynomials for fraction-free elimination.
using Dense = std::vector<std::int64_t>;

inline void trim(Dense& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Dense dense_mul(const Dense& a, const Dense& b) {
    if (a.empty() || b.empty()) return {};
    Dense r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = checked_add(r[i + j], checked_mul(a[i], b[j]));
    }
    trim(r);
    return r;
}

inline Dense dense_sub(Dense a, const Dense& b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = checked_add(a[i], checked_mul(b[i], -1));
    trim(a);
    return a;
}

// Exact quotient a / b; the division must leave no remainder.
inline Dense dense_exact_div(Dense a, const Dense& b) {
    if (b.empty()) throw std::domain_error("division by zero polynomial");
    trim(a);
    if (a.empty()) return {};
    if (a.size() < b.size()) throw ConsistencyError("inexact polynomial division");
    Dense q(a.size() - b.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        std::int64_t top = a[k + b.size() - 1];
        if (top % b.back() != 0) throw ConsistencyError("inexact polynomial division");
        std::int64_t c = top / b.back();
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] = checked_add(a[k + j], checked_mul(-c, b[j]));
    }
    trim(a);
    if (!a.empty()) throw ConsistencyError("inexact polynomial division");
    trim(q);
    return q;
}

/// Determinant of a square matrix over Z[t] by Bareiss elimination.
inline Dense bareiss_determinant(std::vector<std::vector<Dense>> m) {
    const std::size_t n = m.size();
    if (n == 0) return {1};
    bool negate = false;
    Dense prev{1};
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].empty()) {
            std::size_t r = k + 1;
            while (r < n && m[r][k].empty()) ++r;
            if (r == n) return {};
            std::swap(m[k], m[r]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                Dense num = dense_sub(dense_mul(m[i][j], m[k][k]), dense_mul(m[i][k], m[k][j]));
                m[i][j] = dense_exact_div(std::move(num), prev);
            }
            m[i][k].clear();
        }
        prev = m[k][k];
    }
    Dense det = m[n - 1][n - 1];
    if (negate)
        for (auto& c : det) c = -c;
    return det;
}

}  // namespace detail

/// Kauffman bracket <D> in the variable A, summed over all 2^n smoothings:
/// <D> = sum A^(a-b) d^(loops-1) with d = -A^2 - A^-2.
inline LaurentPoly kauffman_bracket(const KnotCode& k, int cap = default_state_sum_cap) {
    const int n = k.crossing_count();
    if (n > cap) throw CapExceeded(n, cap);
    if (n == 0) return LaurentPoly::constant(1, "A");
    const int segments = 2 * n;
    detail::StateTally tally;
    tally.counts.assign(static_cast<std::size_t>(n + 1), std::vector<std::int64_t>(static_cast<std::size_t>(segments + 1), 0));
    detail::RollbackUnionFind uf(segments);
    detail::enumerate_states(detail::smoothings(k), 0, 0, 0, uf, segments, tally);

    const LaurentPoly delta = LaurentPoly::from_terms({{2, -1}, {-2, -1}}, "A");
    std::vector<LaurentPoly> delta_pow{LaurentPoly::constant(1, "A")};
    LaurentPoly result("A");
    for (int a = 0; a <= n; ++a) {
        for (int loops = 1; loops <= segments; ++loops) {
            std::int64_t c = tally.counts[a][loops];
            if (c == 0) continue;
            while (static_cast<int>(delta_pow.size()) < loops) delta_pow.push_back(delta_pow.back() * delta);
            result += delta_pow[loops - 1].shifted(a - (n - a)) * c;
        }
    }
    return result;
}

/// Jones polynomial V(t) = (-A)^(-3w) <D> with A^-4 -> t.
inline LaurentPoly jones(const KnotCode& k, int cap = default_state_sum_cap) {
    const int w = k.writhe();
    LaurentPoly f = kauffman_bracket(k, cap) * LaurentPoly::monomial((w % 2 == 0) ? 1 : -1, -3 * w, "A");
    LaurentPoly v = f.substituted(-1, 4, "t");
    if (!v.integral()) throw ConsistencyError("Jones polynomial has half-integer exponents");
    return v;
}

/// Alexander matrix of the Wirtinger presentation, abelianized Fox
/// derivatives (one row per crossing, one column per over-arc), each row
/// scaled into Z[t].
inline std::vector<std::vector<detail::Dense>> alexander_matrix(const KnotCode& k) {
    const int len = static_cast<int>(k.size());
    const int n = k.crossing_count();
    // arc_of[p]: arc containing the segment leaving event p
    std::vector<int> arc_of(static_cast<std::size_t>(len), -1);
    int first_under = -1;
    for (int p = 0; p < len; ++p)
        if (k.events()[p].role == Role::under) {
            first_under = p;
            break;
        }
    int arc = -1;
    for (int step = 0; step < len; ++step) {
        int p = (first_under + step) % len;
        if (k.events()[p].role == Role::under) ++arc;
        arc_of[p] = arc;
    }
    auto partner = k.partner();
    std::vector<std::vector<detail::Dense>> m(static_cast<std::size_t>(n),
                                               std::vector<detail::Dense>(static_cast<std::size_t>(n)));
    auto add = [](detail::Dense& cell, std::int64_t c0, std::int64_t c1) {
        if (cell.size() < 2) cell.resize(2, 0);
        cell[0] += c0;
        cell[1] += c1;
        detail::trim(cell);
    };
    int row = 0;
    for (int p = 0; p < len; ++p) {
        if (k.events()[p].role != Role::under) continue;
        int over = arc_of[partner[p]];
        int in = arc_of[(p + len - 1) % len];
        int out = arc_of[p];
        if (k.events()[p].sign > 0) {
            // out = over * in * over^-1
            add(m[row][over], 1, -1);
            add(m[row][in], 0, 1);
            add(m[row][out], -1, 0);
        } else {
            // out = over^-1 * in * over, scaled by t
            add(m[row][over], -1, 1);
            add(m[row][in], 1, 0);
            add(m[row][out], 0, -1);
        }
        ++row;
    }
    return m;
}

/// Alexander polynomial, normalized to lowest exponent 0 and positive top coefficient.
inline LaurentPoly alexander(const KnotCode& k) {
    if (k.crossing_count() == 0) return LaurentPoly::constant(1);
    auto m = alexander_matrix(k);
    m.pop_back();
    for (auto& r : m) r.pop_back();
    LaurentPoly delta = normalize_unit(LaurentPoly::from_dense(detail::bareiss_determinant(std::move(m))));
    std::int64_t at_one = delta.is_zero() ? 0 : delta.evaluate(1);
    if (at_one != 1 && at_one != -1)
        throw ConsistencyError("Alexander polynomial evaluates to " + std::to_string(at_one) + " at t=1");
    return delta;
}

/// |Δ(-1)|, odd for every knot.
inline std::int64_t determinant_of(const LaurentPoly& alex) {
    std::int64_t d = std::llabs(alex.evaluate(-1));
    if (d % 2 == 0) throw ConsistencyError("even knot determinant " + std::to_string(d));
    return d;
}

inline std::int64_t determinant(const KnotCode& k) { return determinant_of(alexander(k)); }

}  // namespace thetalift
