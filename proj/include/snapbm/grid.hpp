#pragma once

#include <memory>
#include <span>
#include <vector>

#include "snapbm/geometry.hpp"

namespace snapbm {

/// Uniform cell grid covering D. Cells wholly outside D are excluded; the
/// rest carry an area clipped to D via 16 sub-points per cell.
class GridSpec {
public:
    GridSpec(const DomainSpec& domain, double pitch);

    double pitch() const { return pitch_; }
    int num_cells() const { return static_cast<int>(cell_area_.size()); }
    const std::vector<double>& cell_areas() const { return cell_area_; }
    const std::vector<Vec2>& cell_centers() const { return cell_center_; }
    double domain_area() const { return total_area_; }

    /// compact cell id for a position (nearest included cell if the exact
    /// cell was excluded)
    int locate(const Vec2& p) const;

    bool compatible(const GridSpec& other) const;

private:
    Vec2 origin_;
    double pitch_ = 0.0;
    int nx_ = 0, ny_ = 0;
    std::vector<int32_t> cell_of_;  // nx*ny -> compact id or -1
    std::vector<double> cell_area_;
    std::vector<Vec2> cell_center_;
    double total_area_ = 0.0;
};

using GridPtr = std::shared_ptr<const GridSpec>;

GridPtr make_grid(const DomainSpec& domain, double pitch);

struct GridHistogram {
    GridPtr grid;
    std::vector<double> mass;  // sums to 1

    double mass_sum() const;
};

/// throws GridMismatch unless both histograms share a compatible grid
double tv_distance(const GridHistogram& p, const GridHistogram& q);

/// reference law with mass proportional to clipped cell area
GridHistogram uniform_reference(const GridPtr& grid);

/// empirical law of a point set; throws EmptyEnsemble on an empty span
GridHistogram histogram_from_points(const GridPtr& grid, std::span<const Vec2> points);

/// equally-weighted average of two histograms on the same grid
GridHistogram merge_average(const GridHistogram& a, const GridHistogram& b);

}  // namespace snapbm
