#pragma once

#include <array>
#include <memory>
#include <optional>
#include <vector>

#include "snapbm/errors.hpp"
#include "snapbm/vec2.hpp"

namespace snapbm {

/// Closed planar curve: circle, ellipse, or periodic cubic spline through
/// control points. All curves are oriented counterclockwise and sampled to a
/// dense polyline for numeric queries; circles and ellipses additionally
/// answer side/distance/normal queries analytically.
class Curve {
public:
    enum class Kind { Circle, Ellipse, Spline };

    static Curve circle(Vec2 center, double radius);
    static Curve ellipse(Vec2 center, double semi_a, double semi_b, double rotation);
    static Curve closed_spline(std::vector<Vec2> control_points);

    Kind kind() const;

    /// +1 if p lies in the closed bounded component of the plane minus the
    /// curve, -1 otherwise. Points within `tau` of the curve report +1.
    int side(const Vec2& p, double tau) const;

    /// unsigned distance from p to the curve
    double distance(const Vec2& p) const;

    /// cheap lower bound on distance(p); exact for circles
    double distance_lower_bound(const Vec2& p) const;

    Vec2 closest_point(const Vec2& p) const;

    /// unit normal at a point on (or very near) the curve, pointing towards
    /// the bounded component
    Vec2 inward_normal(const Vec2& q) const;

    double max_curvature() const;

    /// area enclosed by the curve
    double enclosed_area() const;

    /// dense CCW polyline sampling (closed; last point connects to first)
    const std::vector<Vec2>& polyline() const;

    struct Hit {
        double t;            // parameter along the query segment, in (0,1]
        Vec2 point;
        Vec2 inward_normal;  // unit, towards bounded component
    };

    /// earliest intersection of segment p0->p1 with the curve at parameter
    /// t > t_min, or nullopt
    std::optional<Hit> first_crossing(const Vec2& p0, const Vec2& p1, double t_min) const;

    /// appends the x-coordinates where the horizontal line at height y
    /// crosses the curve (half-open convention on polylines)
    void horizontal_crossings(double y, std::vector<double>& xs) const;

    Vec2 bbox_min() const;
    Vec2 bbox_max() const;

    /// numeric simplicity check (segment-pair intersections on the polyline)
    bool is_simple() const;

    /// rigid motion: rotate by `angle` about the origin, then translate
    Curve transformed(double angle, Vec2 translation) const;

    // shape parameter access for serialization
    std::optional<double> circle_radius() const;
    Vec2 reference_center() const;
    /// (semi_a, semi_b, rotation); nullopt unless the curve is an ellipse
    std::optional<std::array<double, 3>> ellipse_params() const;
    /// control points; nullptr unless the curve is a spline
    const std::vector<Vec2>* spline_control_points() const;

    struct Data;

private:
    std::shared_ptr<const Data> data_;
    explicit Curve(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
};

struct Barrier {
    Curve curve;
    double lambda_plus;   // sign-chain rate from -1 to +1
    double lambda_minus;  // sign-chain rate from +1 to -1
};

/// Bounded planar domain D enclosed by an impermeable boundary curve, with
/// disjoint semipermeable barrier curves strictly inside. Immutable after
/// construction; all queries are safe for concurrent reads.
class DomainSpec {
public:
    DomainSpec(Curve boundary, std::vector<Barrier> barriers);

    const Curve& boundary() const { return boundary_; }
    const std::vector<Barrier>& barriers() const { return barriers_; }
    int num_barriers() const { return static_cast<int>(barriers_.size()); }

    /// curve 0 is the boundary, curves 1..m are the barriers
    const Curve& curve(int i) const { return i == 0 ? boundary_ : barriers_[i - 1].curve; }
    int num_curves() const { return num_barriers() + 1; }

    /// on-curve decision tolerance: 1e-9 * (Euclidean diameter of D)
    double tau_geo() const { return tau_geo_; }

    double euclidean_diameter() const { return diameter_; }
    Vec2 bbox_min() const { return bbox_min_; }
    Vec2 bbox_max() const { return bbox_max_; }

    bool contains(const Vec2& p) const { return boundary_.side(p, tau_geo_) > 0; }

    int side_of(int curve_index, const Vec2& p) const {
        return curve(curve_index).side(p, tau_geo_);
    }

    /// per-barrier sides at p (+1/-1 each)
    std::vector<int> signs_at(const Vec2& p) const;

private:
    Curve boundary_;
    std::vector<Barrier> barriers_;
    double tau_geo_ = 0.0;
    double diameter_ = 0.0;
    Vec2 bbox_min_, bbox_max_;
};

struct GeometryReport {
    double kappa = 0.0;   // max unsigned curvature over all curves
    double rho = 0.0;     // barrier separation radius
    double delta = 0.0;   // geodesic diameter
    double area = 0.0;    // area enclosed by the boundary
    std::optional<double> lambda_min;  // over barriers only; absent if none
    std::optional<double> lambda_max;
    double R = 0.0;       // c * min{1/kappa, 1/lambda_max, rho}
    double c = 1.0;
};

int side_of(const Barrier& barrier, const Vec2& x, double tau);

/// unit inward normal at a point on the curve; throws PointNotOnCurve if
/// dist(x, curve) > tau
Vec2 normal_at(const Curve& curve, const Vec2& x, double tau);

double max_curvature(const DomainSpec& domain);

/// Largest radius such that every ball of smaller radius centered in D meets
/// the union of all curves (boundary included) in a connected set. Estimated
/// by a center-grid sweep with local refinement; capped at the Euclidean
/// diameter of D when no disconnection occurs.
struct RhoEstimate {
    double value = 0.0;
    Vec2 worst_center;
    double grid_pitch = 0.0;  // resolution of the final sweep
};
RhoEstimate separation_rho_detailed(const DomainSpec& domain);
double separation_rho(const DomainSpec& domain);

double area(const DomainSpec& domain);

/// Shortest-path distance inside D (barriers do not obstruct). Grid graph
/// (8-connected) plus a string-pulling pass; exact when the straight segment
/// stays in D. `grid_pitch` <= 0 selects a default of diameter/256.
double geodesic_distance(const DomainSpec& domain, const Vec2& x, const Vec2& y,
                         double grid_pitch = 0.0);

/// Geodesic diameter of D, scanned over boundary-adjacent grid nodes and
/// cross-checked against the Euclidean diameter of the sampled boundary.
double geodesic_diameter(const DomainSpec& domain, double grid_pitch = 0.0);

GeometryReport geometry_report(const DomainSpec& domain, double c = 1.0);

/// rigid motion of the whole domain (rotation about origin, then translation)
DomainSpec transformed(const DomainSpec& domain, double angle, Vec2 translation);

}  // namespace snapbm
