#pragma once

#include <memory>
#include <vector>

#include "snapbm/geometry.hpp"

namespace snapbm {

/// Grid graph over D for shortest-path queries. Nodes are cell centers
/// inside D, 8-connected; an edge exists only when the straight segment
/// between the two centers stays inside D. Reusable across queries.
class GeodesicGrid {
public:
    GeodesicGrid(const DomainSpec& domain, double pitch);

    /// shortest-path distance with string-pulling; exact (straight segment)
    /// when [x,y] lies in D
    double distance(const Vec2& x, const Vec2& y) const;

    /// geodesic diameter estimate (boundary-node sweeps, string-pulled,
    /// cross-checked against the boundary's Euclidean diameter)
    double diameter() const;

    double pitch() const { return pitch_; }
    int num_nodes() const { return static_cast<int>(nodes_.size()); }

private:
    const DomainSpec* domain_;
    double pitch_;
    Vec2 origin_;
    int nx_ = 0, ny_ = 0;
    std::vector<int> node_id_;       // nx*ny -> node index or -1
    std::vector<Vec2> nodes_;
    std::vector<uint8_t> neighbor_mask_;  // bit k set: edge to direction k
    std::vector<int> boundary_nodes_;

    bool segment_in_domain(const Vec2& a, const Vec2& b) const;
    int snap(const Vec2& p) const;
    std::vector<double> dijkstra(int source, int target = -1) const;
    std::vector<int> extract_path(const std::vector<double>& dist, int source, int target) const;
    double string_pulled_length(std::vector<Vec2> path) const;
    friend double geodesic_diameter(const DomainSpec&, double);
};

}  // namespace snapbm
