#include "snapbm/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace snapbm {

GridSpec::GridSpec(const DomainSpec& domain, double pitch) : pitch_(pitch) {
    if (!(pitch > 0.0)) throw std::invalid_argument("grid pitch must be positive");
    const Vec2 lo = domain.bbox_min();
    const Vec2 hi = domain.bbox_max();
    origin_ = lo;
    nx_ = static_cast<int>((hi.x - lo.x) / pitch_) + 1;
    ny_ = static_cast<int>((hi.y - lo.y) / pitch_) + 1;
    cell_of_.assign(static_cast<size_t>(nx_) * ny_, -1);

    // 4x4 sub-points per cell, classified row-by-row against the boundary
    std::vector<int> inside_count(static_cast<size_t>(nx_) * ny_, 0);
    std::vector<double> xs;
    for (int j = 0; j < ny_; ++j) {
        for (int sj = 0; sj < 4; ++sj) {
            double y = origin_.y + (j + (sj + 0.5) / 4.0) * pitch_;
            xs.clear();
            domain.boundary().horizontal_crossings(y, xs);
            std::sort(xs.begin(), xs.end());
            for (int i = 0; i < nx_; ++i) {
                int cnt = 0;
                for (int si = 0; si < 4; ++si) {
                    double x = origin_.x + (i + (si + 0.5) / 4.0) * pitch_;
                    size_t k = std::upper_bound(xs.begin(), xs.end(), x) - xs.begin();
                    if (k % 2 == 1) ++cnt;
                }
                inside_count[static_cast<size_t>(j) * nx_ + i] += cnt;
            }
        }
    }
    for (int j = 0; j < ny_; ++j) {
        for (int i = 0; i < nx_; ++i) {
            int cnt = inside_count[static_cast<size_t>(j) * nx_ + i];
            if (cnt == 0) continue;
            cell_of_[static_cast<size_t>(j) * nx_ + i] = static_cast<int>(cell_area_.size());
            cell_area_.push_back(cnt / 16.0 * pitch_ * pitch_);
            cell_center_.push_back(
                {origin_.x + (i + 0.5) * pitch_, origin_.y + (j + 0.5) * pitch_});
            total_area_ += cell_area_.back();
        }
    }
}

int GridSpec::locate(const Vec2& p) const {
    int i = std::clamp(static_cast<int>((p.x - origin_.x) / pitch_), 0, nx_ - 1);
    int j = std::clamp(static_cast<int>((p.y - origin_.y) / pitch_), 0, ny_ - 1);
    int id = cell_of_[static_cast<size_t>(j) * nx_ + i];
    if (id >= 0) return id;
    // excluded sliver cell actually containing a point of D: deposit into
    // the nearest included cell (deterministic ring scan)
    for (int ring = 1; ring < std::max(nx_, ny_); ++ring) {
        int best = -1;
        double best_d = std::numeric_limits<double>::infinity();
        for (int dj = -ring; dj <= ring; ++dj) {
            for (int di = -ring; di <= ring; ++di) {
                if (std::abs(di) != ring && std::abs(dj) != ring) continue;
                int ii = i + di, jj = j + dj;
                if (ii < 0 || ii >= nx_ || jj < 0 || jj >= ny_) continue;
                int cid = cell_of_[static_cast<size_t>(jj) * nx_ + ii];
                if (cid < 0) continue;
                double d = (cell_center_[cid] - p).norm_sq();
                if (d < best_d) {
                    best_d = d;
                    best = cid;
                }
            }
        }
        if (best >= 0) return best;
    }
    return 0;
}

bool GridSpec::compatible(const GridSpec& other) const {
    return pitch_ == other.pitch_ && nx_ == other.nx_ && ny_ == other.ny_ &&
           origin_.x == other.origin_.x && origin_.y == other.origin_.y &&
           cell_of_ == other.cell_of_;
}

GridPtr make_grid(const DomainSpec& domain, double pitch) {
    return std::make_shared<const GridSpec>(domain, pitch);
}

double GridHistogram::mass_sum() const {
    double s = 0.0;
    for (double m : mass) s += m;
    return s;
}

double tv_distance(const GridHistogram& p, const GridHistogram& q) {
    if (!p.grid || !q.grid || (p.grid != q.grid && !p.grid->compatible(*q.grid)))
        throw GridMismatch("histograms live on different grids");
    double s = 0.0;
    for (size_t i = 0; i < p.mass.size(); ++i) s += std::abs(p.mass[i] - q.mass[i]);
    return 0.5 * s;
}

GridHistogram uniform_reference(const GridPtr& grid) {
    GridHistogram h{grid, std::vector<double>(grid->num_cells(), 0.0)};
    double total = grid->domain_area();
    for (int i = 0; i < grid->num_cells(); ++i) h.mass[i] = grid->cell_areas()[i] / total;
    return h;
}

GridHistogram histogram_from_points(const GridPtr& grid, std::span<const Vec2> points) {
    if (points.empty()) throw EmptyEnsemble("histogram of an empty ensemble");
    std::vector<int64_t> counts(grid->num_cells(), 0);
    for (const Vec2& p : points) counts[grid->locate(p)]++;
    GridHistogram h{grid, std::vector<double>(grid->num_cells(), 0.0)};
    double inv = 1.0 / static_cast<double>(points.size());
    for (int i = 0; i < grid->num_cells(); ++i) h.mass[i] = counts[i] * inv;
    return h;
}

GridHistogram merge_average(const GridHistogram& a, const GridHistogram& b) {
    if (!a.grid || !b.grid || (a.grid != b.grid && !a.grid->compatible(*b.grid)))
        throw GridMismatch("histograms live on different grids");
    GridHistogram h{a.grid, std::vector<double>(a.mass.size(), 0.0)};
    for (size_t i = 0; i < a.mass.size(); ++i) h.mass[i] = 0.5 * (a.mass[i] + b.mass[i]);
    return h;
}

}  // namespace snapbm
