#pragma once

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "thetalift/codes.hpp"

namespace thetalift {

/// Braid on `strands` strands; letter i > 0 is the generator sigma_i,
/// letter -i its inverse.
struct BraidWord {
    int strands = 2;
    std::vector<int> word;

    void validate() const {
        if (strands < 2) throw CodeError("a braid needs at least 2 strands");
        for (int g : word)
            if (g == 0 || std::abs(g) > strands - 1)
                throw CodeError("generator " + std::to_string(g) + " out of range for " + std::to_string(strands) + " strands");
    }

    /// Image of each strand position after the whole word.
    std::vector<int> permutation() const {
        std::vector<int> at(static_cast<std::size_t>(strands));
        std::iota(at.begin(), at.end(), 0);  // at[pos] = strand currently there
        for (int g : word) std::swap(at[std::abs(g) - 1], at[std::abs(g)]);
        std::vector<int> perm(static_cast<std::size_t>(strands));
        for (int pos = 0; pos < strands; ++pos) perm[at[pos]] = pos;
        return perm;
    }

    int closure_components() const {
        auto perm = permutation();
        std::vector<char> seen(perm.size(), 0);
        int cycles = 0;
        for (std::size_t s = 0; s < perm.size(); ++s) {
            if (seen[s]) continue;
            ++cycles;
            for (std::size_t x = s; !seen[x]; x = static_cast<std::size_t>(perm[x])) seen[x] = 1;
        }
        return cycles;
    }

    friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

/// (sigma_1 ... sigma_{p-1})^q on p strands; its closure is the torus knot T(p,q).
inline BraidWord torus_braid(int p, int q) {
    if (p < 2 || q < 2) throw CodeError("torus knot parameters must be at least 2");
    if (std::gcd(p, q) != 1) throw CodeError("not coprime: T(" + std::to_string(p) + "," + std::to_string(q) + ") is a link");
    BraidWord b{p, {}};
    for (int r = 0; r < q; ++r)
        for (int i = 1; i < p; ++i) b.word.push_back(i);
    return b;
}

/// Signed Gauss code of the braid closure, traced strand by strand from the
/// top of position 0. Crossing k is the k-th letter; its sign is the
/// letter's sign.
inline KnotCode closure(const BraidWord& b) {
    b.validate();
    int comps = b.closure_components();
    if (comps != 1) throw CodeError("closure has " + std::to_string(comps) + " components");
    std::vector<KnotEvent> ev;
    int pos = 0;
    do {
        for (std::size_t level = 0; level < b.word.size(); ++level) {
            int g = b.word[level];
            int left = std::abs(g) - 1;
            if (pos != left && pos != left + 1) continue;
            bool from_left = pos == left;
            // sigma_i: the strand coming from the right passes over
            bool over = (g > 0) ? !from_left : from_left;
            ev.push_back({static_cast<int>(level) + 1, over ? Role::over : Role::under, g > 0 ? 1 : -1});
            pos = from_left ? left + 1 : left;
        }
    } while (pos != 0);
    return KnotCode(std::move(ev));
}

/// braid-file: `%braid`, `n=<strands>`, `w=<signed ints>`.
inline BraidWord parse_braid(std::string_view text) {
    auto lines = detail::content_lines(text);
    detail::expect_header(lines, "%braid");
    BraidWord b{0, {}};
    bool have_n = false, have_w = false;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto& ln = lines[i];
        std::string t = detail::trim(ln.text);
        auto eq = t.find('=');
        std::string key = eq == std::string::npos ? t : detail::trim(t.substr(0, eq));
        if (eq == std::string::npos || (key != "n" && key != "w"))
            throw ParseError(ln.number, 1, "unexpected line '" + t + "'");
        auto col0 = static_cast<int>(ln.text.find('=')) + 2;
        auto toks = detail::tokenize(std::string_view(ln.text).substr(ln.text.find('=') + 1), col0);
        auto as_int = [&](const detail::Token& tok) {
            std::size_t used = 0;
            int v = 0;
            try {
                v = std::stoi(tok.text, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.text.size()) throw ParseError(ln.number, tok.column, "unknown token '" + tok.text + "'");
            return v;
        };
        if (key == "n") {
            if (toks.size() != 1) throw ParseError(ln.number, col0, "expected one strand count");
            b.strands = as_int(toks[0]);
            have_n = true;
        } else {
            for (const auto& tok : toks) b.word.push_back(as_int(tok));
            have_w = true;
        }
    }
    if (!have_n || !have_w) throw ParseError(lines.back().number, 1, "braid file needs n= and w= lines");
    detail::with_line(lines.back().number, [&] {
        b.validate();
        return 0;
    });
    return b;
}

inline std::string serialize(const BraidWord& b) {
    std::string out = "%braid\nn=" + std::to_string(b.strands) + "\nw=";
    for (std::size_t i = 0; i < b.word.size(); ++i) out += (i ? " " : "") + std::to_string(b.word[i]);
    return out + "\n";
}

}  // namespace thetalift
