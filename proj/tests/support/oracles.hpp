#pragma once

// Reference computations for tests, written independently of the library
// algorithms they check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "support/geometry.hpp"
#include "thetalift/braid.hpp"
#include "thetalift/codes.hpp"
#include "thetalift/laurent.hpp"
#include "thetalift/lift.hpp"

namespace oracle {

using thetalift::KnotCode;
using thetalift::KnotEvent;
using thetalift::LaurentPoly;
using thetalift::Role;
using thetalift::ThetaCode;

using Poly = std::vector<std::int64_t>;  // dense, coefficient of t^i at index i

inline Poly mul(const Poly& a, const Poly& b) {
    Poly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

// Exact long division; the divisor must be monic up to sign.
inline Poly div_exact(Poly a, const Poly& b) {
    Poly q(a.size() - b.size() + 1, 0);
    for (std::size_t k = q.size(); k-- > 0;) {
        std::int64_t c = a[k + b.size() - 1] / b.back();
        q[k] = c;
        for (std::size_t j = 0; j < b.size(); ++j) a[k + j] -= c * b[j];
    }
    for (auto c : a)
        if (c != 0) throw std::logic_error("inexact division");
    return q;
}

inline Poly t_pow_minus_one(int n) {
    Poly p(static_cast<std::size_t>(n + 1), 0);
    p[0] = -1;
    p[n] = 1;
    return p;
}

/// Δ of T(p,q) = (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1)).
inline LaurentPoly torus_alexander(int p, int q) {
    Poly num = mul(t_pow_minus_one(p * q), t_pow_minus_one(1));
    Poly den = mul(t_pow_minus_one(p), t_pow_minus_one(q));
    return LaurentPoly::from_dense(div_exact(num, den));
}

/// V of T(p,q) = t^((p-1)(q-1)/2) (1 - t^(p+1) - t^(q+1) + t^(p+q)) / (1 - t^2).
inline LaurentPoly torus_jones(int p, int q) {
    Poly num(static_cast<std::size_t>(p + q + 1), 0);
    num[0] += 1;
    num[p + 1] -= 1;
    num[q + 1] -= 1;
    num[p + q] += 1;
    Poly den{1, 0, -1};
    return LaurentPoly::from_dense(div_exact(num, den), (p - 1) * (q - 1) / 2);
}

/// Kauffman bracket by direct state enumeration, counting loops by walking
/// the smoothed diagram. Segment p runs from event p to event p+1.
inline LaurentPoly naive_bracket(const KnotCode& k) {
    const auto& ev = k.events();
    const int n = static_cast<int>(ev.size());
    if (n == 0) return LaurentPoly::constant(1, "A");
    // segment ends: 2p = tail of segment p (at event p), 2p+1 = head (at event p+1)
    struct Cross {
        int under_in, over_out, under_out, over_in;  // counterclockwise for a positive crossing
    };
    std::map<int, std::pair<int, int>> pos;  // label -> (over position, under position)
    for (int p = 0; p < n; ++p) (ev[p].role == Role::over ? pos[ev[p].label].first : pos[ev[p].label].second) = p;
    std::vector<Cross> xs;
    for (auto [label, op] : pos) {
        auto [po, pu] = op;
        Cross c{2 * ((pu + n - 1) % n) + 1, 2 * po, 2 * pu, 2 * ((po + n - 1) % n) + 1};
        // a negative crossing is the mirror image: the over strand runs the other way round
        if (ev[po].sign < 0) std::swap(c.over_out, c.over_in);
        xs.push_back(c);
    }
    const int m = static_cast<int>(xs.size());
    std::map<int, std::int64_t> by_a_minus_b_loops;  // key: (a-b) * 1000 + loops
    for (std::uint64_t state = 0; state < (std::uint64_t{1} << m); ++state) {
        std::vector<int> partner(static_cast<std::size_t>(2 * n));
        int a = 0;
        for (int i = 0; i < m; ++i) {
            const auto& c = xs[i];
            // the A-smoothing joins the corners swept by turning the over strand counterclockwise
            if ((state >> i) & 1) {
                ++a;
                partner[c.under_in] = c.over_out;
                partner[c.over_out] = c.under_in;
                partner[c.under_out] = c.over_in;
                partner[c.over_in] = c.under_out;
            } else {
                partner[c.under_in] = c.over_in;
                partner[c.over_in] = c.under_in;
                partner[c.over_out] = c.under_out;
                partner[c.under_out] = c.over_out;
            }
        }
        std::vector<char> seen(static_cast<std::size_t>(2 * n), 0);
        int loops = 0;
        for (int s = 0; s < 2 * n; ++s) {
            if (seen[s]) continue;
            ++loops;
            int e = s;
            while (!seen[e]) {
                seen[e] = 1;
                seen[e ^ 1] = 1;  // the other end of the same segment
                e = partner[e ^ 1];
            }
        }
        ++by_a_minus_b_loops[(2 * a - m) * 1000 + loops];
    }
    const LaurentPoly d = LaurentPoly::from_terms({{2, -1}, {-2, -1}}, "A");
    LaurentPoly out("A");
    for (auto [key, count] : by_a_minus_b_loops) {
        int loops = ((key % 1000) + 1000) % 1000;
        int shift = (key - loops) / 1000;
        out += d.pow(static_cast<unsigned>(loops - 1)).shifted(shift) * count;
    }
    return out;
}

/// Jones polynomial from the naive bracket.
inline LaurentPoly naive_jones(const KnotCode& k) {
    int w = k.writhe();
    LaurentPoly f = naive_bracket(k) * LaurentPoly::monomial((w % 2 == 0) ? 1 : -1, -3 * w, "A");
    return f.substituted(-1, 4, "t");
}

// ---------------------------------------------------------------------------
// Random inputs

/// Closure of a random braid word, retried until it is a knot.
template <class Rng>
KnotCode random_knot(Rng& rng, int max_strands = 3, int max_length = 7) {
    std::uniform_int_distribution<int> strands_d(2, max_strands);
    for (;;) {
        thetalift::BraidWord b{strands_d(rng), {}};
        std::uniform_int_distribution<int> len_d(1, max_length), gen_d(1, b.strands - 1), sgn(0, 1);
        int len = len_d(rng);
        for (int i = 0; i < len; ++i) b.word.push_back(gen_d(rng) * (sgn(rng) ? 1 : -1));
        if (b.closure_components() == 1) return thetalift::closure(b).relabeled();
    }
}

/// Random theta diagram from a random polygonal arc, within size limits.
template <class Rng>
ThetaCode random_theta(Rng& rng, int max_self, int max_rails, int max_points = 5) {
    for (;;) {
        auto g = geo::random_theta(rng, {1, max_points, 1.7});
        if (g.code.self_crossing_count() <= max_self && g.code.rail_count() <= max_rails) return g.code;
    }
}

/// Random theta code drawn directly from the code alphabet: self-crossing
/// pairs and rails in random order, random tags, signs and axis order, kept
/// when some vertex rotation makes it planar. Sizes are drawn first and
/// held while shuffling, so large codes are not crowded out by rejection.
template <class Rng>
ThetaCode random_theta_code(Rng& rng, int max_self, int max_rails, int min_rails = 0) {
    using thetalift::ArcEvent;
    using thetalift::AxisEntry;
    std::uniform_int_distribution<int> self_d(0, max_self), rail_d(min_rails, max_rails), coin(0, 1);
    for (;;) {
        const int s = self_d(rng), r = rail_d(rng);
        for (int attempt = 0; attempt < 500; ++attempt) {
            std::vector<ArcEvent> arc;
            for (int x = 1; x <= s; ++x) {
                const int sign = coin(rng) ? 1 : -1;
                arc.push_back(ArcEvent::self(x, Role::over, sign));
                arc.push_back(ArcEvent::self(x, Role::under, sign));
            }
            std::vector<AxisEntry> axis{AxisEntry::vertex1(), AxisEntry::vertex2()};
            for (int k = 1; k <= r; ++k) {
                arc.push_back(ArcEvent::rail(k, coin(rng) ? Role::over : Role::under));
                axis.push_back(AxisEntry::rail(k));
            }
            std::shuffle(arc.begin(), arc.end(), rng);
            std::shuffle(axis.begin() + 1, axis.end(), rng);
            try {
                return ThetaCode(std::move(arc), std::move(axis));
            } catch (const thetalift::CodeError&) {
            }
        }
    }
}

/// Theta code for the property suites: either a random code or a smaller
/// random code with a random knotted J tied into e, so that knotted lifts
/// are common.
template <class Rng>
ThetaCode random_small_theta(Rng& rng, int max_self = 6, int max_rails = 4) {
    std::uniform_int_distribution<int> coin(0, 1);
    if (coin(rng)) return random_theta_code(rng, max_self, max_rails, 2);
    for (;;) {
        KnotCode j = random_knot(rng, 3, 4);
        const int room = max_self - j.crossing_count();
        if (room < 0 || naive_jones(j) == LaurentPoly::constant(1)) continue;
        ThetaCode t = random_theta_code(rng, room, max_rails);
        std::uniform_int_distribution<std::size_t> at(0, t.arc().size());
        return thetalift::knot_sum(t, j, at(rng));
    }
}

/// Inserts a kink (R1) at position p.
inline KnotCode add_kink(const KnotCode& k, std::size_t p, bool over_first, int sign) {
    int label = 1;
    for (const auto& e : k.events()) label = std::max(label, e.label + 1);
    auto ev = k.events();
    const Role r = over_first ? Role::over : Role::under;
    ev.insert(ev.begin() + static_cast<long>(p), {{label, r, sign}, {label, thetalift::opposite(r), sign}});
    return KnotCode(std::move(ev));
}

/// Pushes segment i over segment j (R2), when both lie on a common face.
/// Returns nothing when no planar placement exists.
inline std::optional<KnotCode> add_poke(const KnotCode& k, std::size_t i, std::size_t j) {
    const auto& ev = k.events();
    if (ev.empty() || i == j) return std::nullopt;
    int a = 1;
    for (const auto& e : ev) a = std::max(a, e.label + 1);
    const int b = a + 1;
    for (int first_sign : {1, -1}) {
        for (bool swap_on_j : {false, true}) {
            std::vector<KnotEvent> out;
            for (std::size_t p = 0; p < ev.size(); ++p) {
                out.push_back(ev[p]);
                if (p == i) {
                    out.push_back({a, Role::over, first_sign});
                    out.push_back({b, Role::over, -first_sign});
                }
                if (p == j) {
                    int x = swap_on_j ? b : a, y = swap_on_j ? a : b;
                    out.push_back({x, Role::under, x == a ? first_sign : -first_sign});
                    out.push_back({y, Role::under, y == a ? first_sign : -first_sign});
                }
            }
            try {
                return KnotCode(std::move(out));
            } catch (const thetalift::CodeError&) {
            }
        }
    }
    return std::nullopt;
}

}  // namespace oracle
