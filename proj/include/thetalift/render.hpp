#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "thetalift/codes.hpp"

namespace thetalift {

struct Point {
    double x = 0, y = 0;
};

/// Straight-line drawing of a diagram: each edge of the map becomes a
/// polyline through two subdivision points.
struct Layout {
    std::vector<Point> vertices;             // one per map vertex
    std::vector<std::vector<Point>> edges;   // indexed by the smaller half-edge of each edge
    std::vector<int> edge_half;              // half-edge the polyline starts from
};

namespace detail {

// Solves A x = b for a diagonally dominant matrix by Gaussian elimination.
inline void solve_in_place(std::vector<std::vector<double>>& a, std::vector<double>& bx, std::vector<double>& by) {
    const std::size_t n = a.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t r = k + 1; r < n; ++r)
            if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
        std::swap(a[k], a[piv]);
        std::swap(bx[k], bx[piv]);
        std::swap(by[k], by[piv]);
        for (std::size_t r = k + 1; r < n; ++r) {
            const double f = a[r][k] / a[k][k];
            if (f == 0) continue;
            for (std::size_t c = k; c < n; ++c) a[r][c] -= f * a[k][c];
            bx[r] -= f * bx[k];
            by[r] -= f * by[k];
        }
    }
    for (std::size_t k = n; k-- > 0;) {
        for (std::size_t c = k + 1; c < n; ++c) {
            bx[k] -= a[k][c] * bx[c];
            by[k] -= a[k][c] * by[c];
        }
        bx[k] /= a[k][k];
        by[k] /= a[k][k];
    }
}

}  // namespace detail

/// Barycentric layout. Every edge is subdivided twice, every inner face gets
/// a centre joined to its corners, and the corners of the largest face are
/// tied to a fixed regular polygon around the drawing.
inline Layout barycentric_layout(const PlanarMap& map) {
    if (map.trace().genus != 0) throw CodeError("cannot draw a diagram that is not planar");
    const int nv = map.vertex_count(), nh = map.half_edge_count();
    // node ids: map vertices, then two points per edge, then face centres
    std::vector<int> first_sub(static_cast<std::size_t>(nh), -1);
    int next = nv;
    for (int he = 0; he < nh; ++he)
        if (he < map.twin(he)) {
            first_sub[he] = next;
            next += 2;
        }
    // i-th subdivision point (0 or 1) met when walking along he
    auto sub = [&](int he, int i) {
        const int base = he < map.twin(he) ? he : map.twin(he);
        const int k = he < map.twin(he) ? i : 1 - i;
        return first_sub[base] + k;
    };
    auto faces = map.faces();
    std::size_t outer = 0;
    for (std::size_t f = 1; f < faces.size(); ++f)
        if (faces[f].size() > faces[outer].size()) outer = f;

    std::vector<std::vector<int>> adj;
    auto link = [&](int a, int b) {
        const auto need = static_cast<std::size_t>(std::max(a, b) + 1);
        if (adj.size() < need) adj.resize(need);
        adj[a].push_back(b);
        adj[b].push_back(a);
    };
    for (int he = 0; he < nh; ++he) {
        if (he > map.twin(he)) continue;
        link(map.vertex_of(he), sub(he, 0));
        link(sub(he, 0), sub(he, 1));
        link(sub(he, 1), map.vertex_of(map.twin(he)));
    }
    const int free_count_before_frame = next + static_cast<int>(faces.size()) - 1;
    std::vector<Point> frame;
    int centre = next;
    for (std::size_t f = 0; f < faces.size(); ++f) {
        std::vector<int> corners;
        for (int he : faces[f]) {
            corners.push_back(map.vertex_of(he));
            corners.push_back(sub(he, 0));
            corners.push_back(sub(he, 1));
        }
        if (f != outer) {
            for (int c : corners) link(centre, c);
            ++centre;
            continue;
        }
        // faces run with the face on their left, so the outer walk is clockwise
        const int m = static_cast<int>(corners.size());
        for (int i = 0; i < m; ++i) {
            const double t = -2 * std::numbers::pi * i / m;
            frame.push_back({std::cos(t), std::sin(t)});
        }
        for (int i = 0; i < m; ++i) {
            link(corners[i], free_count_before_frame + i);
            link(corners[i], free_count_before_frame + (i + 1) % m);
        }
    }
    const int nfree = free_count_before_frame;
    std::vector<std::vector<double>> a(static_cast<std::size_t>(nfree), std::vector<double>(static_cast<std::size_t>(nfree), 0.0));
    std::vector<double> bx(static_cast<std::size_t>(nfree), 0.0), by(static_cast<std::size_t>(nfree), 0.0);
    for (int v = 0; v < nfree; ++v) {
        a[v][v] = static_cast<double>(adj[v].size());
        for (int w : adj[v]) {
            if (w < nfree) {
                a[v][w] -= 1;
            } else {
                bx[v] += frame[w - nfree].x;
                by[v] += frame[w - nfree].y;
            }
        }
    }
    detail::solve_in_place(a, bx, by);
    Layout out;
    for (int v = 0; v < nv; ++v) out.vertices.push_back({bx[v], by[v]});
    for (int he = 0; he < nh; ++he) {
        if (he > map.twin(he)) continue;
        const int s0 = sub(he, 0), s1 = sub(he, 1);
        out.edges.push_back({out.vertices[map.vertex_of(he)], {bx[s0], by[s0]}, {bx[s1], by[s1]},
                             out.vertices[map.vertex_of(map.twin(he))]});
        out.edge_half.push_back(he);
    }
    return out;
}

namespace detail {

struct DrawStyle {
    std::vector<std::string> edge_class;  // per half-edge
    std::vector<char> over_even_slots;    // per 4-valent vertex: slots 0 and 2 pass over
    std::vector<char> dot;                // per vertex: draw a vertex marker
};

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
    return buf;
}

inline std::string svg_document(const PlanarMap& map, const DrawStyle& style) {
    Layout lay = barycentric_layout(map);
    const double scale = 180, offset = 200;
    auto px = [&](Point p) { return Point{offset + scale * p.x, offset - scale * p.y}; };
    std::string body;
    for (std::size_t i = 0; i < lay.edges.size(); ++i) {
        std::string d;
        for (std::size_t k = 0; k < lay.edges[i].size(); ++k) {
            Point p = px(lay.edges[i][k]);
            d += (k ? " L " : "M ") + fmt(p.x) + " " + fmt(p.y);
        }
        body += "  <path class=\"" + style.edge_class[lay.edge_half[i]] + "\" d=\"" + d + "\"/>\n";
    }
    // a white disc over each crossing, then the over strand redrawn through it
    for (int v = 0; v < map.vertex_count(); ++v) {
        const auto& rot = map.rotations()[v];
        if (rot.size() != 4) continue;
        Point c = px(lay.vertices[v]);
        auto toward = [&](int he) {
            // first subdivision point along he
            for (std::size_t i = 0; i < lay.edges.size(); ++i) {
                if (lay.edge_half[i] == he) return px(lay.edges[i][1]);
                if (map.twin(lay.edge_half[i]) == he) return px(lay.edges[i][2]);
            }
            return c;
        };
        const int s = style.over_even_slots[v] ? 0 : 1;
        Point a = toward(rot[s]), b = toward(rot[s + 2]);
        double reach = std::min(std::hypot(a.x - c.x, a.y - c.y), std::hypot(b.x - c.x, b.y - c.y));
        const double r = std::min(8.0, 0.4 * reach);
        auto at = [&](Point p) {
            double len = std::hypot(p.x - c.x, p.y - c.y);
            return len == 0 ? c : Point{c.x + (p.x - c.x) * 1.5 * r / len, c.y + (p.y - c.y) * 1.5 * r / len};
        };
        Point pa = at(a), pb = at(b);
        body += "  <circle class=\"gap\" cx=\"" + fmt(c.x) + "\" cy=\"" + fmt(c.y) + "\" r=\"" + fmt(r) + "\"/>\n";
        body += "  <path class=\"" + style.edge_class[rot[s]] + "\" d=\"M " + fmt(pa.x) + " " + fmt(pa.y) + " L " +
                fmt(c.x) + " " + fmt(c.y) + " L " + fmt(pb.x) + " " + fmt(pb.y) + "\"/>\n";
    }
    for (int v = 0; v < map.vertex_count(); ++v) {
        if (!style.dot[v]) continue;
        Point c = px(lay.vertices[v]);
        body += "  <circle class=\"vertex\" cx=\"" + fmt(c.x) + "\" cy=\"" + fmt(c.y) + "\" r=\"4\"/>\n";
    }
    return "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
           "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n"
           "  <style>path{fill:none;stroke-width:2.5;stroke-linejoin:round} .strand,.arc{stroke:#111} "
           ".kappa{stroke:#2a62b8} .gap{fill:#fff;stroke:none} .vertex{fill:#111}</style>\n" +
           body + "</svg>\n";
}

}  // namespace detail

/// SVG drawing of a knot diagram with a break in the under strand at each crossing.
inline std::string render_svg(const KnotCode& k) {
    PlanarMap map = k.map();
    detail::DrawStyle style;
    style.edge_class.assign(static_cast<std::size_t>(map.half_edge_count()), "strand");
    style.over_even_slots.assign(static_cast<std::size_t>(map.vertex_count()), 1);
    style.dot.assign(static_cast<std::size_t>(map.vertex_count()), 0);
    return detail::svg_document(map, style);
}

/// SVG drawing of a theta diagram; κ is drawn in a second colour and the
/// trivalent vertices are marked.
inline std::string render_svg(const ThetaCode& t) {
    PlanarMap map = t.map();
    const int m = static_cast<int>(t.arc().size());
    detail::DrawStyle style;
    for (int he = 0; he < map.half_edge_count(); ++he) style.edge_class.push_back(he >= 2 * m + 2 ? "kappa" : "arc");
    style.over_even_slots.assign(static_cast<std::size_t>(map.vertex_count()), 1);
    style.dot.assign(static_cast<std::size_t>(map.vertex_count()), 0);
    // vertex order in the map: events by first position along e, then v1, v2
    int v = 0;
    std::map<int, bool> self_seen;
    for (const auto& e : t.arc()) {
        if (e.is_rail()) {
            style.over_even_slots[v++] = e.role == Role::under;  // slots 0 and 2 are κ
        } else if (!self_seen[e.label]) {
            self_seen[e.label] = true;
            ++v;
        }
    }
    style.dot[map.vertex_count() - 2] = style.dot[map.vertex_count() - 1] = 1;
    return detail::svg_document(map, style);
}

}  // namespace thetalift
