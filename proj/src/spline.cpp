#include "snapbm/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace snapbm {

namespace {

// Solves the cyclic tridiagonal system with diagonal 4, off-diagonals 1
// (Sherman-Morrison on top of the Thomas algorithm).
std::vector<double> solve_cyclic_141(const std::vector<double>& rhs) {
    const int n = static_cast<int>(rhs.size());
    if (n == 1) return {rhs[0] / 6.0};
    if (n == 2) {
        // rows: 4 x0 + 2 x1 = r0 ; 2 x0 + 4 x1 = r1
        double det = 12.0;
        return {(4.0 * rhs[0] - 2.0 * rhs[1]) / det, (4.0 * rhs[1] - 2.0 * rhs[0]) / det};
    }

    auto thomas = [n](std::vector<double> b, std::vector<double> d) {
        // generic tridiagonal, sub/super diagonals are all 1
        std::vector<double> c(n, 1.0);
        for (int i = 1; i < n; ++i) {
            double w = 1.0 / b[i - 1];
            b[i] -= w * c[i - 1];
            d[i] -= w * d[i - 1];
        }
        std::vector<double> x(n);
        x[n - 1] = d[n - 1] / b[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = (d[i] - c[i] * x[i + 1]) / b[i];
        return x;
    };

    const double gamma = -4.0;
    std::vector<double> b(n, 4.0);
    b[0] -= gamma;
    b[n - 1] -= 1.0 / gamma;  // corner entries folded into the rank-1 update

    std::vector<double> u(n, 0.0);
    u[0] = gamma;
    u[n - 1] = 1.0;

    std::vector<double> y = thomas(b, rhs);
    std::vector<double> z = thomas(b, u);

    double fact = (y[0] + y[n - 1] / gamma) / (1.0 + z[0] + z[n - 1] / gamma);
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = y[i] - fact * z[i];
    return x;
}

}  // namespace

PeriodicCubicSpline::PeriodicCubicSpline(std::vector<Vec2> points) : pts_(std::move(points)) {
    const int n = size();
    if (n < 3) throw std::invalid_argument("periodic spline needs at least 3 control points");

    std::vector<double> rx(n), ry(n);
    for (int i = 0; i < n; ++i) {
        const Vec2& prev = pts_[(i + n - 1) % n];
        const Vec2& next = pts_[(i + 1) % n];
        rx[i] = 6.0 * (prev.x - 2.0 * pts_[i].x + next.x);
        ry[i] = 6.0 * (prev.y - 2.0 * pts_[i].y + next.y);
    }
    std::vector<double> mx = solve_cyclic_141(rx);
    std::vector<double> my = solve_cyclic_141(ry);
    m_.resize(n);
    for (int i = 0; i < n; ++i) m_[i] = {mx[i], my[i]};
}

void PeriodicCubicSpline::locate(double t, int& i, int& j, double& s) const {
    const int n = size();
    t = std::fmod(t, static_cast<double>(n));
    if (t < 0) t += n;
    i = static_cast<int>(t);
    if (i >= n) i = n - 1;
    j = (i + 1) % n;
    s = t - i;
}

Vec2 PeriodicCubicSpline::position(double t) const {
    int i, j;
    double s;
    locate(t, i, j, s);
    double a = 1.0 - s;
    auto comp = [&](double pi, double pj, double mi, double mj) {
        return a * pi + s * pj + ((a * a * a - a) * mi + (s * s * s - s) * mj) / 6.0;
    };
    return {comp(pts_[i].x, pts_[j].x, m_[i].x, m_[j].x),
            comp(pts_[i].y, pts_[j].y, m_[i].y, m_[j].y)};
}

Vec2 PeriodicCubicSpline::derivative(double t) const {
    int i, j;
    double s;
    locate(t, i, j, s);
    double a = 1.0 - s;
    auto comp = [&](double pi, double pj, double mi, double mj) {
        return pj - pi + ((1.0 - 3.0 * a * a) * mi + (3.0 * s * s - 1.0) * mj) / 6.0;
    };
    return {comp(pts_[i].x, pts_[j].x, m_[i].x, m_[j].x),
            comp(pts_[i].y, pts_[j].y, m_[i].y, m_[j].y)};
}

Vec2 PeriodicCubicSpline::second_derivative(double t) const {
    int i, j;
    double s;
    locate(t, i, j, s);
    double a = 1.0 - s;
    return {a * m_[i].x + s * m_[j].x, a * m_[i].y + s * m_[j].y};
}

double PeriodicCubicSpline::curvature(double t) const {
    Vec2 d1 = derivative(t);
    Vec2 d2 = second_derivative(t);
    double speed_sq = d1.norm_sq();
    if (speed_sq <= 0.0) return 0.0;
    return std::abs(cross(d1, d2)) / (speed_sq * std::sqrt(speed_sq));
}

}  // namespace snapbm
