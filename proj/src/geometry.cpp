#include "snapbm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "polyline_index.hpp"
#include "snapbm/spline.hpp"

namespace snapbm {

namespace {

constexpr int kPolylinePoints = 4096;
constexpr double kPi = 3.14159265358979323846;

// Closest point on the axis-aligned ellipse x^2/a^2 + y^2/b^2 = 1 to a point
// in the closed first quadrant with a >= b. Robust bisection on the standard
// auxiliary root (monotone in t on (-b^2, inf)).
Vec2 ellipse_closest_quadrant(double a, double b, double px, double py) {
    if (py == 0.0) {
        double crit = (a * a - b * b) / a;
        if (px < crit) {
            double x = a * a * px / (a * a - b * b);
            double y = b * std::sqrt(std::max(0.0, 1.0 - (x / a) * (x / a)));
            return {x, y};
        }
        return {a, 0.0};
    }
    if (px == 0.0) return {0.0, b};

    auto f = [&](double t) {
        double u = a * px / (t + a * a);
        double v = b * py / (t + b * b);
        return u * u + v * v - 1.0;
    };
    double t0 = -b * b + b * py;                     // f(t0) >= 0
    double t1 = -b * b + std::hypot(a * px, b * py); // f(t1) <= 0
    if (t1 < t0) std::swap(t0, t1);
    for (int it = 0; it < 200; ++it) {
        double tm = 0.5 * (t0 + t1);
        if (f(tm) > 0.0)
            t0 = tm;
        else
            t1 = tm;
        if (t1 - t0 <= 1e-16 * (1.0 + std::abs(t0))) break;
    }
    double t = 0.5 * (t0 + t1);
    return {a * a * px / (t + a * a), b * b * py / (t + b * b)};
}

Vec2 ellipse_closest_local(double a, double b, const Vec2& q) {
    // reduce to first quadrant of an a >= b ellipse
    bool swap_axes = a < b;
    double ea = swap_axes ? b : a;
    double eb = swap_axes ? a : b;
    double px = swap_axes ? q.y : q.x;
    double py = swap_axes ? q.x : q.y;
    double sx = px < 0.0 ? -1.0 : 1.0;
    double sy = py < 0.0 ? -1.0 : 1.0;
    Vec2 cp = ellipse_closest_quadrant(ea, eb, sx * px, sy * py);
    cp.x *= sx;
    cp.y *= sy;
    if (swap_axes) std::swap(cp.x, cp.y);
    return cp;
}

double polygon_signed_area(const std::vector<Vec2>& pts) {
    double s = 0.0;
    const size_t n = pts.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = pts[i];
        const Vec2& q = pts[(i + 1) % n];
        s += p.x * q.y - q.x * p.y;
    }
    return 0.5 * s;
}

}  // namespace

struct Curve::Data {
    Curve::Kind kind = Curve::Kind::Circle;

    Vec2 center{};
    double radius = 0.0;

    double a = 0.0, b = 0.0, rotation = 0.0;

    std::vector<Vec2> control_points;
    std::unique_ptr<PeriodicCubicSpline> spline;

    std::vector<Vec2> poly;  // CCW
    std::unique_ptr<PolylineIndex> index;
    Vec2 bb_min{}, bb_max{};
    double area = 0.0;
    double max_curv = 0.0;

    Vec2 to_local(const Vec2& p) const { return rotate(p - center, -rotation); }
    Vec2 to_world(const Vec2& q) const { return rotate(q, rotation) + center; }

    void finish() {
        bb_min = bb_max = poly[0];
        for (const Vec2& p : poly) {
            bb_min.x = std::min(bb_min.x, p.x);
            bb_min.y = std::min(bb_min.y, p.y);
            bb_max.x = std::max(bb_max.x, p.x);
            bb_max.y = std::max(bb_max.y, p.y);
        }
        index = std::make_unique<PolylineIndex>(poly);
    }
};

Curve Curve::circle(Vec2 center, double radius) {
    if (!(radius > 0.0)) throw InvalidDomain("circle radius must be positive");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Circle;
    d->center = center;
    d->radius = radius;
    d->poly.reserve(kPolylinePoints);
    for (int i = 0; i < kPolylinePoints; ++i) {
        double t = 2.0 * kPi * i / kPolylinePoints;
        d->poly.push_back(center + Vec2{radius * std::cos(t), radius * std::sin(t)});
    }
    d->area = kPi * radius * radius;
    d->max_curv = 1.0 / radius;
    d->finish();
    return Curve(std::move(d));
}

Curve Curve::ellipse(Vec2 center, double semi_a, double semi_b, double rotation) {
    if (!(semi_a > 0.0) || !(semi_b > 0.0))
        throw InvalidDomain("ellipse semi-axes must be positive");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Ellipse;
    d->center = center;
    d->a = semi_a;
    d->b = semi_b;
    d->rotation = rotation;
    d->poly.reserve(kPolylinePoints);
    for (int i = 0; i < kPolylinePoints; ++i) {
        double t = 2.0 * kPi * i / kPolylinePoints;
        d->poly.push_back(d->to_world({semi_a * std::cos(t), semi_b * std::sin(t)}));
    }
    d->area = kPi * semi_a * semi_b;
    double ka = semi_a / (semi_b * semi_b);
    double kb = semi_b / (semi_a * semi_a);
    d->max_curv = std::max(ka, kb);
    d->finish();
    return Curve(std::move(d));
}

Curve Curve::closed_spline(std::vector<Vec2> control_points) {
    if (control_points.size() < 4)
        throw InvalidDomain("closed spline needs at least 4 control points");
    auto d = std::make_shared<Data>();
    d->kind = Kind::Spline;
    d->control_points = control_points;
    d->spline = std::make_unique<PeriodicCubicSpline>(control_points);

    const int n = static_cast<int>(control_points.size());
    d->poly.reserve(kPolylinePoints);
    for (int i = 0; i < kPolylinePoints; ++i)
        d->poly.push_back(d->spline->position(static_cast<double>(n) * i / kPolylinePoints));

    // degenerate consecutive samples would make curvature blow up
    double scale = 0.0;
    for (const Vec2& p : d->poly) scale = std::max(scale, std::abs(p.x) + std::abs(p.y));
    for (int i = 0; i < kPolylinePoints; ++i) {
        double step = dist(d->poly[i], d->poly[(i + 1) % kPolylinePoints]);
        if (step <= 1e-14 * (1.0 + scale))
            throw InvalidDomain("spline sampling produced degenerate consecutive points");
    }

    if (polygon_signed_area(d->poly) < 0.0) {
        // enforce CCW orientation
        std::reverse(d->control_points.begin(), d->control_points.end());
        d->spline = std::make_unique<PeriodicCubicSpline>(d->control_points);
        std::reverse(d->poly.begin(), d->poly.end());
    }

    d->area = std::abs(polygon_signed_area(d->poly));
    double mc = 0.0;
    for (int i = 0; i < kPolylinePoints; ++i)
        mc = std::max(mc, d->spline->curvature(static_cast<double>(n) * i / kPolylinePoints));
    d->max_curv = mc;
    d->finish();
    return Curve(std::move(d));
}

Curve::Kind Curve::kind() const { return data_->kind; }

int Curve::side(const Vec2& p, double tau) const {
    const Data& d = *data_;
    switch (d.kind) {
        case Kind::Circle: {
            double r = dist(p, d.center);
            return r <= d.radius + tau ? 1 : -1;
        }
        case Kind::Ellipse: {
            Vec2 q = d.to_local(p);
            double f = (q.x / d.a) * (q.x / d.a) + (q.y / d.b) * (q.y / d.b);
            if (f <= 1.0) return 1;
            // cheap reject before the iterative distance solve
            double lower = (std::sqrt(f) - 1.0) * std::min(d.a, d.b);
            if (lower > tau) return -1;
            return distance(p) <= tau ? 1 : -1;
        }
        case Kind::Spline: {
            double dmin;
            d.index->nearest_segment(p, &dmin);
            if (dmin <= tau) return 1;
            // even-odd ray cast towards +x on the dense polyline
            const std::vector<Vec2>& poly = d.poly;
            const size_t n = poly.size();
            bool inside = false;
            for (size_t i = 0; i < n; ++i) {
                const Vec2& u = poly[i];
                const Vec2& v = poly[(i + 1) % n];
                if ((u.y > p.y) != (v.y > p.y)) {
                    double xi = u.x + (p.y - u.y) * (v.x - u.x) / (v.y - u.y);
                    if (xi > p.x) inside = !inside;
                }
            }
            return inside ? 1 : -1;
        }
    }
    return -1;
}

double Curve::distance(const Vec2& p) const {
    const Data& d = *data_;
    switch (d.kind) {
        case Kind::Circle:
            return std::abs(dist(p, d.center) - d.radius);
        case Kind::Ellipse: {
            Vec2 q = d.to_local(p);
            return dist(q, ellipse_closest_local(d.a, d.b, q));
        }
        case Kind::Spline: {
            double dmin;
            d.index->nearest_segment(p, &dmin);
            return dmin;
        }
    }
    return 0.0;
}

double Curve::distance_lower_bound(const Vec2& p) const {
    const Data& d = *data_;
    switch (d.kind) {
        case Kind::Circle:
            return std::abs(dist(p, d.center) - d.radius);
        case Kind::Ellipse: {
            Vec2 q = d.to_local(p);
            double f = std::sqrt((q.x / d.a) * (q.x / d.a) + (q.y / d.b) * (q.y / d.b));
            return std::abs(1.0 - f) * std::min(d.a, d.b);
        }
        case Kind::Spline: {
            double dx = std::max({d.bb_min.x - p.x, 0.0, p.x - d.bb_max.x});
            double dy = std::max({d.bb_min.y - p.y, 0.0, p.y - d.bb_max.y});
            return std::hypot(dx, dy);
        }
    }
    return 0.0;
}

Vec2 Curve::closest_point(const Vec2& p) const {
    const Data& d = *data_;
    switch (d.kind) {
        case Kind::Circle: {
            Vec2 u = p - d.center;
            double r = u.norm();
            if (r == 0.0) return d.center + Vec2{d.radius, 0.0};
            return d.center + u * (d.radius / r);
        }
        case Kind::Ellipse: {
            Vec2 q = d.to_local(p);
            return d.to_world(ellipse_closest_local(d.a, d.b, q));
        }
        case Kind::Spline: {
            int seg = d.index->nearest_segment(p, nullptr);
            const std::vector<Vec2>& poly = d.poly;
            const Vec2& a = poly[seg];
            const Vec2& b = poly[(seg + 1) % poly.size()];
            Vec2 ab = b - a;
            double t = dot(p - a, ab) / ab.norm_sq();
            t = std::clamp(t, 0.0, 1.0);
            return a + ab * t;
        }
    }
    return p;
}

Vec2 Curve::inward_normal(const Vec2& q) const {
    const Data& d = *data_;
    switch (d.kind) {
        case Kind::Circle: {
            Vec2 u = q - d.center;
            double r = u.norm();
            if (r == 0.0) return {-1.0, 0.0};
            return u * (-1.0 / r);
        }
        case Kind::Ellipse: {
            Vec2 cp = d.to_local(closest_point(q));
            Vec2 grad{cp.x / (d.a * d.a), cp.y / (d.b * d.b)};  // outward
            return rotate(normalized(grad) * -1.0, d.rotation);
        }
        case Kind::Spline: {
            int seg = d.index->nearest_segment(q, nullptr);
            const std::vector<Vec2>& poly = d.poly;
            Vec2 edge = poly[(seg + 1) % poly.size()] - poly[seg];
            return normalized(perp_left(edge));  // CCW: interior on the left
        }
    }
    return {1.0, 0.0};
}

double Curve::max_curvature() const { return data_->max_curv; }
double Curve::enclosed_area() const { return data_->area; }
const std::vector<Vec2>& Curve::polyline() const { return data_->poly; }
Vec2 Curve::bbox_min() const { return data_->bb_min; }
Vec2 Curve::bbox_max() const { return data_->bb_max; }

std::optional<double> Curve::circle_radius() const {
    if (data_->kind == Kind::Circle) return data_->radius;
    return std::nullopt;
}

Vec2 Curve::reference_center() const { return data_->center; }

std::optional<std::array<double, 3>> Curve::ellipse_params() const {
    if (data_->kind != Kind::Ellipse) return std::nullopt;
    return std::array<double, 3>{data_->a, data_->b, data_->rotation};
}

const std::vector<Vec2>* Curve::spline_control_points() const {
    if (data_->kind != Kind::Spline) return nullptr;
    return &data_->control_points;
}

std::optional<Curve::Hit> Curve::first_crossing(const Vec2& p0, const Vec2& p1,
                                                double t_min) const {
    const Data& d = *data_;
    Vec2 v = p1 - p0;
    switch (d.kind) {
        case Kind::Circle: {
            Vec2 w = p0 - d.center;
            double A = v.norm_sq();
            if (A == 0.0) return std::nullopt;
            double B = 2.0 * dot(w, v);
            double C = w.norm_sq() - d.radius * d.radius;
            double disc = B * B - 4.0 * A * C;
            if (disc <= 0.0) return std::nullopt;
            double sq = std::sqrt(disc);
            for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
                if (t > t_min && t <= 1.0) {
                    Vec2 q = p0 + v * t;
                    return Hit{t, q, inward_normal(q)};
                }
            }
            return std::nullopt;
        }
        case Kind::Ellipse: {
            // scale local frame onto the unit circle
            Vec2 q0 = d.to_local(p0);
            Vec2 q1 = d.to_local(p1);
            Vec2 s0{q0.x / d.a, q0.y / d.b};
            Vec2 s1{q1.x / d.a, q1.y / d.b};
            Vec2 sv = s1 - s0;
            double A = sv.norm_sq();
            if (A == 0.0) return std::nullopt;
            double B = 2.0 * dot(s0, sv);
            double C = s0.norm_sq() - 1.0;
            double disc = B * B - 4.0 * A * C;
            if (disc <= 0.0) return std::nullopt;
            double sq = std::sqrt(disc);
            for (double t : {(-B - sq) / (2.0 * A), (-B + sq) / (2.0 * A)}) {
                if (t > t_min && t <= 1.0) {
                    Vec2 q = p0 + v * t;
                    Vec2 cl = q0 + (q1 - q0) * t;
                    Vec2 grad{cl.x / (d.a * d.a), cl.y / (d.b * d.b)};
                    Vec2 n = rotate(normalized(grad) * -1.0, d.rotation);
                    return Hit{t, q, n};
                }
            }
            return std::nullopt;
        }
        case Kind::Spline: {
            const std::vector<Vec2>& poly = d.poly;
            const size_t n = poly.size();
            double best_t = std::numeric_limits<double>::infinity();
            int best_seg = -1;
            d.index->for_segments_near(p0, p1, [&](int s) {
                double t = segment_segment_param(p0, p1, poly[s], poly[(s + 1) % n]);
                if (t >= 0.0 && t > t_min && t <= 1.0 && t < best_t) {
                    best_t = t;
                    best_seg = s;
                }
            });
            if (best_seg < 0) return std::nullopt;
            Vec2 q = p0 + v * best_t;
            Vec2 edge = poly[(best_seg + 1) % n] - poly[best_seg];
            return Hit{best_t, q, normalized(perp_left(edge))};
        }
    }
    return std::nullopt;
}

void Curve::horizontal_crossings(double y, std::vector<double>& xs) const {
    const Data& d = *data_;
    switch (d.kind) {
        case Kind::Circle: {
            double dy = y - d.center.y;
            if (std::abs(dy) >= d.radius) return;
            double s = std::sqrt(d.radius * d.radius - dy * dy);
            xs.push_back(d.center.x - s);
            xs.push_back(d.center.x + s);
            return;
        }
        case Kind::Ellipse: {
            double c = std::cos(d.rotation), s = std::sin(d.rotation);
            double dy = y - d.center.y;
            double ia = 1.0 / (d.a * d.a), ib = 1.0 / (d.b * d.b);
            double A = c * c * ia + s * s * ib;
            double B = 2.0 * c * s * dy * (ia - ib);
            double C = s * s * dy * dy * ia + c * c * dy * dy * ib - 1.0;
            double disc = B * B - 4.0 * A * C;
            if (disc <= 0.0) return;
            double sq = std::sqrt(disc);
            xs.push_back(d.center.x + (-B - sq) / (2.0 * A));
            xs.push_back(d.center.x + (-B + sq) / (2.0 * A));
            return;
        }
        case Kind::Spline: {
            const std::vector<Vec2>& poly = d.poly;
            const size_t n = poly.size();
            for (size_t i = 0; i < n; ++i) {
                const Vec2& u = poly[i];
                const Vec2& v = poly[(i + 1) % n];
                if ((u.y > y) != (v.y > y))
                    xs.push_back(u.x + (y - u.y) * (v.x - u.x) / (v.y - u.y));
            }
            return;
        }
    }
}

bool Curve::is_simple() const {
    const Data& d = *data_;
    if (d.kind != Kind::Spline) return true;
    const std::vector<Vec2>& poly = d.poly;
    const int n = static_cast<int>(poly.size());
    for (int i = 0; i < n; ++i) {
        const Vec2& a0 = poly[i];
        const Vec2& a1 = poly[(i + 1) % n];
        bool bad = false;
        d.index->for_segments_near(a0, a1, [&](int j) {
            if (j == i) return;
            // adjacent segments share an endpoint
            if ((j + 1) % n == i || (i + 1) % n == j) return;
            if (segment_segment_param(a0, a1, poly[j], poly[(j + 1) % n]) >= 0.0) bad = true;
        });
        if (bad) return false;
    }
    return true;
}

Curve Curve::transformed(double angle, Vec2 translation) const {
    const Data& d = *data_;
    switch (d.kind) {
        case Kind::Circle:
            return circle(rotate(d.center, angle) + translation, d.radius);
        case Kind::Ellipse:
            return ellipse(rotate(d.center, angle) + translation, d.a, d.b,
                           d.rotation + angle);
        case Kind::Spline: {
            std::vector<Vec2> pts;
            pts.reserve(d.control_points.size());
            for (const Vec2& p : d.control_points) pts.push_back(rotate(p, angle) + translation);
            return closed_spline(std::move(pts));
        }
    }
    throw std::logic_error("unreachable");
}

// ---------------------------------------------------------------------------

namespace {

double polyline_diameter(const std::vector<Vec2>& poly, int stride) {
    double best = 0.0;
    for (size_t i = 0; i < poly.size(); i += stride)
        for (size_t j = i + stride; j < poly.size(); j += stride)
            best = std::max(best, (poly[i] - poly[j]).norm_sq());
    return std::sqrt(best);
}

double min_curve_distance(const Curve& a, const Curve& b) {
    const std::vector<Vec2>& pa = a.polyline();
    double best = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < pa.size(); i += 4) best = std::min(best, b.distance(pa[i]));
    const std::vector<Vec2>& pb = b.polyline();
    for (size_t i = 0; i < pb.size(); i += 4) best = std::min(best, a.distance(pb[i]));
    return best;
}

bool curves_intersect(const Curve& a, const Curve& b) {
    const std::vector<Vec2>& pa = a.polyline();
    const size_t n = pa.size();
    for (size_t i = 0; i < n; ++i)
        if (b.first_crossing(pa[i], pa[(i + 1) % n], 0.0).has_value()) return true;
    return false;
}

}  // namespace

DomainSpec::DomainSpec(Curve boundary, std::vector<Barrier> barriers)
    : boundary_(std::move(boundary)), barriers_(std::move(barriers)) {
    for (size_t i = 0; i < barriers_.size(); ++i) {
        if (!(barriers_[i].lambda_plus > 0.0) || !(barriers_[i].lambda_minus > 0.0)) {
            std::ostringstream os;
            os << "barrier " << i + 1 << ": permeability rates must be positive";
            throw InvalidDomain(os.str());
        }
    }

    diameter_ = polyline_diameter(boundary_.polyline(), 4);
    if (!(diameter_ > 0.0)) throw InvalidDomain("degenerate boundary");
    tau_geo_ = 1e-9 * diameter_;
    bbox_min_ = boundary_.bbox_min();
    bbox_max_ = boundary_.bbox_max();

    if (!boundary_.is_simple()) throw InvalidDomain("boundary curve self-intersects");
    for (size_t i = 0; i < barriers_.size(); ++i) {
        if (!barriers_[i].curve.is_simple()) {
            std::ostringstream os;
            os << "barrier " << i + 1 << " self-intersects";
            throw InvalidDomain(os.str());
        }
        const std::vector<Vec2>& poly = barriers_[i].curve.polyline();
        for (size_t k = 0; k < poly.size(); k += 4) {
            if (boundary_.side(poly[k], tau_geo_) < 0 ||
                boundary_.distance(poly[k]) <= tau_geo_) {
                std::ostringstream os;
                os << "barrier " << i + 1 << " is not strictly inside the boundary";
                throw InvalidDomain(os.str());
            }
        }
    }
    for (int i = 0; i < num_curves(); ++i) {
        for (int j = i + 1; j < num_curves(); ++j) {
            if (curves_intersect(curve(i), curve(j)) ||
                min_curve_distance(curve(i), curve(j)) <= tau_geo_) {
                std::ostringstream os;
                os << "curves " << i << " and " << j << " are not disjoint";
                throw InvalidDomain(os.str());
            }
        }
    }
}

std::vector<int> DomainSpec::signs_at(const Vec2& p) const {
    std::vector<int> s(barriers_.size());
    for (size_t i = 0; i < barriers_.size(); ++i) s[i] = barriers_[i].curve.side(p, tau_geo_);
    return s;
}

// ---------------------------------------------------------------------------

int side_of(const Barrier& barrier, const Vec2& x, double tau) {
    return barrier.curve.side(x, tau);
}

Vec2 normal_at(const Curve& curve, const Vec2& x, double tau) {
    if (curve.distance(x) > tau) {
        std::ostringstream os;
        os << "point (" << x.x << ", " << x.y << ") is not on the curve";
        throw PointNotOnCurve(os.str());
    }
    return curve.inward_normal(x);
}

double max_curvature(const DomainSpec& domain) {
    double k = domain.boundary().max_curvature();
    for (const Barrier& b : domain.barriers()) k = std::max(k, b.curve.max_curvature());
    return k;
}

double area(const DomainSpec& domain) { return domain.boundary().enclosed_area(); }

GeometryReport geometry_report(const DomainSpec& domain, double c) {
    if (!(c > 0.0)) throw std::invalid_argument("geometry_report: c must be positive");
    GeometryReport rep;
    rep.c = c;
    rep.kappa = max_curvature(domain);
    rep.rho = separation_rho(domain);
    rep.delta = geodesic_diameter(domain);
    rep.area = area(domain);
    double base = std::min(1.0 / rep.kappa, rep.rho);
    if (!domain.barriers().empty()) {
        double lmin = std::numeric_limits<double>::infinity();
        double lmax = 0.0;
        for (const Barrier& b : domain.barriers()) {
            lmin = std::min({lmin, b.lambda_plus, b.lambda_minus});
            lmax = std::max({lmax, b.lambda_plus, b.lambda_minus});
        }
        rep.lambda_min = lmin;
        rep.lambda_max = lmax;
        base = std::min(base, 1.0 / lmax);
    }
    rep.R = c * base;
    return rep;
}

DomainSpec transformed(const DomainSpec& domain, double angle, Vec2 translation) {
    std::vector<Barrier> bs;
    bs.reserve(domain.barriers().size());
    for (const Barrier& b : domain.barriers())
        bs.push_back({b.curve.transformed(angle, translation), b.lambda_plus, b.lambda_minus});
    return DomainSpec(domain.boundary().transformed(angle, translation), std::move(bs));
}

}  // namespace snapbm
