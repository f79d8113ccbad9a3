#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "snapbm/vec2.hpp"

namespace snapbm {

/// Uniform-grid bucket index over the segments of a closed polyline.
/// Segment i runs from pts[i] to pts[(i+1) % n].
class PolylineIndex {
public:
    explicit PolylineIndex(const std::vector<Vec2>& pts) : pts_(pts) {
        const int n = static_cast<int>(pts.size());
        lo_ = hi_ = pts[0];
        double total_len = 0.0;
        for (int i = 0; i < n; ++i) {
            lo_.x = std::min(lo_.x, pts[i].x);
            lo_.y = std::min(lo_.y, pts[i].y);
            hi_.x = std::max(hi_.x, pts[i].x);
            hi_.y = std::max(hi_.y, pts[i].y);
            total_len += dist(pts[i], pts[(i + 1) % n]);
        }
        double span = std::max(hi_.x - lo_.x, hi_.y - lo_.y);
        cell_ = std::max(4.0 * total_len / n, span / 256.0);
        if (cell_ <= 0.0) cell_ = 1.0;
        nx_ = std::max(1, static_cast<int>((hi_.x - lo_.x) / cell_) + 1);
        ny_ = std::max(1, static_cast<int>((hi_.y - lo_.y) / cell_) + 1);
        buckets_.resize(static_cast<size_t>(nx_) * ny_);
        for (int i = 0; i < n; ++i) {
            const Vec2& a = pts[i];
            const Vec2& b = pts[(i + 1) % n];
            int x0, y0, x1, y1;
            cell_of(Vec2{std::min(a.x, b.x), std::min(a.y, b.y)}, x0, y0);
            cell_of(Vec2{std::max(a.x, b.x), std::max(a.y, b.y)}, x1, y1);
            for (int cy = y0; cy <= y1; ++cy)
                for (int cx = x0; cx <= x1; ++cx)
                    buckets_[static_cast<size_t>(cy) * nx_ + cx].push_back(i);
        }
    }

    /// Visits every segment id whose bucket overlaps the AABB of [a,b],
    /// each at most once. Stateless, safe for concurrent callers.
    /// F: void(int seg).
    template <class F>
    void for_segments_near(const Vec2& a, const Vec2& b, F&& f) const {
        int x0, y0, x1, y1;
        cell_of(Vec2{std::min(a.x, b.x), std::min(a.y, b.y)}, x0, y0);
        cell_of(Vec2{std::max(a.x, b.x), std::max(a.y, b.y)}, x1, y1);
        std::vector<int> seen;
        for (int cy = y0; cy <= y1; ++cy)
            for (int cx = x0; cx <= x1; ++cx)
                for (int s : buckets_[static_cast<size_t>(cy) * nx_ + cx]) {
                    if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
                    seen.push_back(s);
                    f(s);
                }
    }

    /// Nearest segment to p; writes distance. Expanding-ring search.
    int nearest_segment(const Vec2& p, double* dist_out) const {
        const int n = static_cast<int>(pts_.size());
        int px, py;
        cell_of(p, px, py);
        double best = std::numeric_limits<double>::infinity();
        int best_seg = -1;
        int max_ring = std::max(nx_, ny_);
        for (int ring = 0; ring <= max_ring; ++ring) {
            // once a hit exists, stop when closer cells are exhausted
            if (best_seg >= 0 && (ring - 1) * cell_ > best) break;
            bool any_cell = false;
            for (int cy = py - ring; cy <= py + ring; ++cy) {
                if (cy < 0 || cy >= ny_) continue;
                for (int cx = px - ring; cx <= px + ring; ++cx) {
                    if (cx < 0 || cx >= nx_) continue;
                    if (ring > 0 && std::abs(cx - px) != ring && std::abs(cy - py) != ring) continue;
                    any_cell = true;
                    for (int s : buckets_[static_cast<size_t>(cy) * nx_ + cx]) {
                        double d = std::sqrt(
                            point_segment_dist_sq(p, pts_[s], pts_[(s + 1) % n]));
                        if (d < best) {
                            best = d;
                            best_seg = s;
                        }
                    }
                }
            }
            if (!any_cell && best_seg >= 0) break;
        }
        if (dist_out) *dist_out = best;
        return best_seg;
    }

    const std::vector<Vec2>& points() const { return pts_; }

private:
    void cell_of(const Vec2& p, int& cx, int& cy) const {
        cx = static_cast<int>(std::floor((p.x - lo_.x) / cell_));
        cy = static_cast<int>(std::floor((p.y - lo_.y) / cell_));
        cx = std::clamp(cx, 0, nx_ - 1);
        cy = std::clamp(cy, 0, ny_ - 1);
    }

    std::vector<Vec2> pts_;
    Vec2 lo_, hi_;
    double cell_ = 1.0;
    int nx_ = 1, ny_ = 1;
    std::vector<std::vector<int32_t>> buckets_;
};

/// Intersection of segments [a0,a1] and [b0,b1]; returns parameter along
/// [a0,a1] in [0,1] or -1. Collinear overlaps are ignored.
inline double segment_segment_param(const Vec2& a0, const Vec2& a1, const Vec2& b0,
                                    const Vec2& b1) {
    Vec2 r = a1 - a0;
    Vec2 s = b1 - b0;
    double denom = cross(r, s);
    if (denom == 0.0) return -1.0;
    Vec2 qp = b0 - a0;
    double t = cross(qp, s) / denom;
    double u = cross(qp, r) / denom;
    if (t < 0.0 || t > 1.0 || u < 0.0 || u > 1.0) return -1.0;
    return t;
}

}  // namespace snapbm
