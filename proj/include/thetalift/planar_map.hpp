#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace thetalift {

/// Result of tracing the faces of a combinatorial map.
struct FaceTrace {
    int vertices = 0;
    int edges = 0;
    int faces = 0;
    int genus = 0;
};

/// Combinatorial map given by a rotation system.
///
/// Half-edges are numbered 0..H-1. Each vertex lists its half-edges in
/// counterclockwise order; `twin` pairs the two half-edges of every edge.
class PlanarMap {
  public:
    PlanarMap() = default;

    PlanarMap(std::vector<std::vector<int>> rotations, std::vector<int> twin)
        : rotations_(std::move(rotations)), twin_(std::move(twin)) {
        const int h = static_cast<int>(twin_.size());
        vertex_of_.assign(twin_.size(), -1);
        slot_of_.assign(twin_.size(), -1);
        for (int v = 0; v < static_cast<int>(rotations_.size()); ++v) {
            for (int s = 0; s < static_cast<int>(rotations_[v].size()); ++s) {
                int he = rotations_[v][s];
                if (he < 0 || he >= h) throw std::invalid_argument("half-edge index out of range");
                if (vertex_of_[he] != -1) throw std::invalid_argument("half-edge appears in two rotations");
                vertex_of_[he] = v;
                slot_of_[he] = s;
            }
        }
        for (int he = 0; he < h; ++he) {
            if (vertex_of_[he] == -1) throw std::invalid_argument("half-edge missing from rotations");
            int t = twin_[he];
            if (t < 0 || t >= h || t == he || twin_[t] != he) throw std::invalid_argument("twin is not a fixed-point-free involution");
        }
    }

    int half_edge_count() const { return static_cast<int>(twin_.size()); }
    int vertex_count() const { return static_cast<int>(rotations_.size()); }
    const std::vector<std::vector<int>>& rotations() const { return rotations_; }
    int twin(int he) const { return twin_[he]; }
    int vertex_of(int he) const { return vertex_of_[he]; }

    int rotate_next(int he) const {
        const auto& rot = rotations_[vertex_of_[he]];
        return rot[(slot_of_[he] + 1) % rot.size()];
    }
    int rotate_prev(int he) const {
        const auto& rot = rotations_[vertex_of_[he]];
        return rot[(slot_of_[he] + rot.size() - 1) % rot.size()];
    }

    /// Next half-edge along the face lying to the left of `he`.
    int face_next(int he) const { return rotate_prev(twin_[he]); }

    /// Faces as cycles of half-edges, each starting at its smallest half-edge.
    std::vector<std::vector<int>> faces() const {
        std::vector<std::vector<int>> out;
        std::vector<char> seen(twin_.size(), 0);
        for (int start = 0; start < half_edge_count(); ++start) {
            if (seen[start]) continue;
            std::vector<int> face;
            for (int he = start; !seen[he]; he = face_next(he)) {
                seen[he] = 1;
                face.push_back(he);
            }
            out.push_back(std::move(face));
        }
        return out;
    }

    FaceTrace trace() const {
        FaceTrace t;
        t.vertices = vertex_count();
        t.edges = half_edge_count() / 2;
        t.faces = static_cast<int>(faces().size());
        // connected maps only; callers build connected diagrams
        t.genus = (2 - t.vertices + t.edges - t.faces) / 2;
        return t;
    }

    bool connected() const {
        if (rotations_.empty()) return true;
        std::vector<char> seen(rotations_.size(), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int count = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int he : rotations_[v]) {
                int w = vertex_of_[twin_[he]];
                if (!seen[w]) {
                    seen[w] = 1;
                    ++count;
                    stack.push_back(w);
                }
            }
        }
        return count == vertex_count();
    }

  private:
    std::vector<std::vector<int>> rotations_;
    std::vector<int> twin_;
    std::vector<int> vertex_of_;
    std::vector<int> slot_of_;
};

inline FaceTrace face_trace(const PlanarMap& map) { return map.trace(); }

}  // namespace thetalift
