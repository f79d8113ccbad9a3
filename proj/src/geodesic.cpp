#include "snapbm/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace snapbm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const int kDx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
const int kDy[8] = {0, 1, 1, 1, 0, -1, -1, -1};

}  // namespace

GeodesicGrid::GeodesicGrid(const DomainSpec& domain, double pitch)
    : domain_(&domain), pitch_(pitch) {
    if (pitch_ <= 0.0) pitch_ = domain.euclidean_diameter() / 256.0;
    const Vec2 lo = domain.bbox_min();
    const Vec2 hi = domain.bbox_max();
    nx_ = static_cast<int>((hi.x - lo.x) / pitch_) + 2;
    ny_ = static_cast<int>((hi.y - lo.y) / pitch_) + 2;
    origin_ = lo;
    node_id_.assign(static_cast<size_t>(nx_) * ny_, -1);

    // scanline classification of cell centers against the boundary
    std::vector<double> xs;
    for (int j = 0; j < ny_; ++j) {
        double y = origin_.y + (j + 0.5) * pitch_;
        xs.clear();
        domain.boundary().horizontal_crossings(y, xs);
        std::sort(xs.begin(), xs.end());
        for (int i = 0; i < nx_; ++i) {
            double x = origin_.x + (i + 0.5) * pitch_;
            size_t k = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
            if (k % 2 == 1) {  // inside
                node_id_[static_cast<size_t>(j) * nx_ + i] = static_cast<int>(nodes_.size());
                nodes_.push_back({x, y});
            }
        }
    }

    neighbor_mask_.assign(nodes_.size(), 0);
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            int id = node_id_[static_cast<size_t>(j) * nx_ + i];
            if (id < 0) continue;
            bool adjacent_to_outside = false;
            for (int k = 0; k < 8; ++k) {
                int ni = i + kDx[k], nj = j + kDy[k];
                int nid = (ni >= 0 && ni < nx_ && nj >= 0 && nj < ny_)
                              ? node_id_[static_cast<size_t>(nj) * nx_ + ni]
                              : -1;
                if (nid < 0) {
                    adjacent_to_outside = true;
                    continue;
                }
                if (segment_in_domain(nodes_[id], nodes_[nid]))
                    neighbor_mask_[id] |= static_cast<uint8_t>(1u << k);
                else
                    adjacent_to_outside = true;
            }
            if (adjacent_to_outside) boundary_nodes_.push_back(id);
        }
    }
}

bool GeodesicGrid::segment_in_domain(const Vec2& a, const Vec2& b) const {
    return !domain_->boundary().first_crossing(a, b, 0.0).has_value();
}

int GeodesicGrid::snap(const Vec2& p) const {
    int pi = static_cast<int>((p.x - origin_.x) / pitch_);
    int pj = static_cast<int>((p.y - origin_.y) / pitch_);
    int nearest_any = -1;
    double nearest_any_d = kInf;
    for (int ring = 0; ring < std::max(nx_, ny_); ++ring) {
        int best = -1;
        double best_d = kInf;
        for (int j = pj - ring; j <= pj + ring; ++j) {
            if (j < 0 || j >= ny_) continue;
            for (int i = pi - ring; i <= pi + ring; ++i) {
                if (i < 0 || i >= nx_) continue;
                if (ring > 0 && std::abs(i - pi) != ring && std::abs(j - pj) != ring) continue;
                int id = node_id_[static_cast<size_t>(j) * nx_ + i];
                if (id < 0) continue;
                double d = dist(p, nodes_[id]);
                if (d < nearest_any_d) {
                    nearest_any_d = d;
                    nearest_any = id;
                }
                if (!segment_in_domain(p, nodes_[id])) continue;
                if (d < best_d) {
                    best_d = d;
                    best = id;
                }
            }
        }
        if (best >= 0) return best;
        // a point hugging the boundary can fail every visibility test at
        // round-off scale; settle for the nearest node after a few rings
        if (ring >= 3 && nearest_any >= 0) return nearest_any;
    }
    return nearest_any;
}

std::vector<double> GeodesicGrid::dijkstra(int source, int target) const {
    std::vector<double> d(nodes_.size(), kInf);
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    d[source] = 0.0;
    pq.push({0.0, source});
    const double ortho = pitch_;
    const double diag = pitch_ * std::sqrt(2.0);
    while (!pq.empty()) {
        auto [du, u] = pq.top();
        pq.pop();
        if (du > d[u]) continue;
        if (u == target) break;
        int ui = static_cast<int>((nodes_[u].x - origin_.x) / pitch_);
        int uj = static_cast<int>((nodes_[u].y - origin_.y) / pitch_);
        uint8_t mask = neighbor_mask_[u];
        for (int k = 0; k < 8; ++k) {
            if (!(mask & (1u << k))) continue;
            int vi = ui + kDx[k], vj = uj + kDy[k];
            int v = node_id_[static_cast<size_t>(vj) * nx_ + vi];
            double w = (kDx[k] != 0 && kDy[k] != 0) ? diag : ortho;
            if (du + w < d[v]) {
                d[v] = du + w;
                pq.push({d[v], v});
            }
        }
    }
    return d;
}

std::vector<int> GeodesicGrid::extract_path(const std::vector<double>& d, int source,
                                            int target) const {
    std::vector<int> path{target};
    int cur = target;
    const double diag = pitch_ * std::sqrt(2.0);
    while (cur != source) {
        int ci = static_cast<int>((nodes_[cur].x - origin_.x) / pitch_);
        int cj = static_cast<int>((nodes_[cur].y - origin_.y) / pitch_);
        int best = -1;
        double best_d = kInf;
        for (int k = 0; k < 8; ++k) {
            int ni = ci + kDx[k], nj = cj + kDy[k];
            if (ni < 0 || ni >= nx_ || nj < 0 || nj >= ny_) continue;
            int nid = node_id_[static_cast<size_t>(nj) * nx_ + ni];
            if (nid < 0) continue;
            // incoming edge must exist from the neighbor's side
            if (!(neighbor_mask_[nid] & (1u << ((k + 4) % 8)))) continue;
            double w = (kDx[k] != 0 && kDy[k] != 0) ? diag : pitch_;
            // predecessor on some shortest path
            if (d[nid] + w <= d[cur] + 1e-9 * (1.0 + d[cur]) && d[nid] < best_d) {
                best_d = d[nid];
                best = nid;
            }
        }
        if (best < 0) break;  // numerical dead end; path stays valid as prefix
        path.push_back(best);
        cur = best;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

double GeodesicGrid::string_pulled_length(std::vector<Vec2> path) const {
    if (path.size() < 2) return 0.0;
    double total = 0.0;
    size_t i = 0;
    while (i + 1 < path.size()) {
        size_t j = path.size() - 1;
        for (; j > i + 1; --j)
            if (segment_in_domain(path[i], path[j])) break;
        total += dist(path[i], path[j]);
        i = j;
    }
    return total;
}

double GeodesicGrid::distance(const Vec2& x, const Vec2& y) const {
    if (!domain_->contains(x) || !domain_->contains(y))
        throw PointOutsideDomain("geodesic endpoint outside domain");
    if (segment_in_domain(x, y)) return dist(x, y);

    int sx = snap(x), sy = snap(y);
    if (sx < 0 || sy < 0) throw PointOutsideDomain("no grid node reachable from endpoint");
    std::vector<double> d = dijkstra(sx, sy);
    if (!std::isfinite(d[sy]))
        throw PointOutsideDomain("endpoints are not connected on the grid");
    std::vector<int> node_path = extract_path(d, sx, sy);
    std::vector<Vec2> pts;
    pts.push_back(x);
    for (int id : node_path) pts.push_back(nodes_[id]);
    pts.push_back(y);
    return string_pulled_length(std::move(pts));
}

double GeodesicGrid::diameter() const {
    // Euclidean diameter of the sampled boundary is a lower bound (and exact
    // for convex domains)
    const std::vector<Vec2>& poly = domain_->boundary().polyline();
    double best_euclid = 0.0;
    for (size_t i = 0; i < poly.size(); i += 8)
        for (size_t j = i + 8; j < poly.size(); j += 8)
            best_euclid = std::max(best_euclid, (poly[i] - poly[j]).norm_sq());
    best_euclid = std::sqrt(best_euclid);
    if (boundary_nodes_.empty() || nodes_.size() < 2) return best_euclid;

    // sweeps from boundary-adjacent nodes: repeated farthest-point hops plus
    // a strided scan
    int best_u = boundary_nodes_[0], best_v = boundary_nodes_[0];
    double best_grid = 0.0;
    auto consider_source = [&](int src) {
        std::vector<double> d = dijkstra(src);
        int far = -1;
        double far_d = -1.0;
        for (int id : boundary_nodes_)
            if (std::isfinite(d[id]) && d[id] > far_d) {
                far_d = d[id];
                far = id;
            }
        if (far >= 0 && far_d > best_grid) {
            best_grid = far_d;
            best_u = src;
            best_v = far;
        }
        return far;
    };

    int hop = boundary_nodes_[0];
    for (int it = 0; it < 6 && hop >= 0; ++it) hop = consider_source(hop);
    size_t stride = std::max<size_t>(1, boundary_nodes_.size() / 48);
    for (size_t i = 0; i < boundary_nodes_.size(); i += stride)
        consider_source(boundary_nodes_[i]);

    // refine the best pair: string-pull and extend the ends to the boundary
    std::vector<double> d = dijkstra(best_u, best_v);
    std::vector<int> node_path = extract_path(d, best_u, best_v);
    std::vector<Vec2> pts;
    for (int id : node_path) pts.push_back(nodes_[id]);
    double len = 0.0;
    if (pts.size() >= 2) {
        auto extend_end = [&](Vec2 end, Vec2 inner) -> double {
            Vec2 dir = normalized(end - inner);
            Vec2 probe = end + dir * (3.0 * pitch_);
            auto hit = domain_->boundary().first_crossing(end, probe, 0.0);
            if (hit) return dist(end, hit->point) * (1.0 - 1e-9);
            return 0.0;
        };
        double ext = extend_end(pts.front(), pts[1]) +
                     extend_end(pts.back(), pts[pts.size() - 2]);
        len = string_pulled_length(pts) + ext;
    }
    return std::max(best_euclid, len);
}

double geodesic_distance(const DomainSpec& domain, const Vec2& x, const Vec2& y,
                         double grid_pitch) {
    if (!domain.contains(x) || !domain.contains(y))
        throw PointOutsideDomain("geodesic endpoint outside domain");
    if (!domain.boundary().first_crossing(x, y, 0.0).has_value()) return dist(x, y);
    GeodesicGrid grid(domain, grid_pitch);
    return grid.distance(x, y);
}

double geodesic_diameter(const DomainSpec& domain, double grid_pitch) {
    if (grid_pitch <= 0.0) grid_pitch = domain.euclidean_diameter() / 128.0;
    GeodesicGrid grid(domain, grid_pitch);
    return grid.diameter();
}

}  // namespace snapbm
