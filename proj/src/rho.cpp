#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "snapbm/geometry.hpp"

namespace snapbm {

namespace {

constexpr int kRhoVerticesPerCurve = 512;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct CurveProfile {
    const Curve* curve;
    std::vector<Vec2> verts;
};

// Computes, per center, the smallest radius at which the ball meets the
// union of curves in >= 2 components. Sublevel-set components of each
// curve's cyclic distance profile are (#minima <= r) - (#maxima <= r),
// clamped to 1 once the curve is engulfed; arcs of distinct (disjoint)
// curves never join, so counts add across curves. Events above `cutoff` are
// censored to +inf (callers prune those centers anyway).
class DisconnectionEvaluator {
public:
    DisconnectionEvaluator(std::vector<CurveProfile> profiles, double tol)
        : profiles_(std::move(profiles)), tol_(tol) {}

    double radius(const Vec2& center, double cutoff) {
        events_.clear();
        for (const CurveProfile& cp : profiles_) {
            if (cp.curve->distance_lower_bound(center) > cutoff) continue;
            dists_.resize(cp.verts.size());
            double gmax = 0.0;
            for (size_t k = 0; k < cp.verts.size(); ++k) {
                dists_[k] = dist(center, cp.verts[k]);
                gmax = std::max(gmax, dists_[k]);
            }
            // maxima at the curve's global max are suppressed, so an
            // engulfed curve's net count settles at 1
            cyclic_extrema(gmax);
        }
        if (events_.empty()) return kInf;
        std::sort(events_.begin(), events_.end());

        // sweep: +1 = arc born (minimum), -1 = arcs merge (maximum); the
        // per-curve running net is a component count and never dips below 0
        int net = 0;
        for (const Event& e : events_) {
            if (e.value > cutoff) return kInf;
            net += e.kind;
            if (net >= 2) return e.value;
        }
        return kInf;
    }

private:
    struct Event {
        double value;
        int kind;
        bool operator<(const Event& o) const {
            return value < o.value || (value == o.value && kind < o.kind);
        }
    };

    // plateau-aware cyclic extrema of dists_, appended to events_
    void cyclic_extrema(double gmax) {
        const int n = static_cast<int>(dists_.size());
        int start = -1;
        for (int i = 0; i < n; ++i) {
            if (std::abs(dists_[i] - dists_[(i + n - 1) % n]) > tol_) {
                start = i;
                break;
            }
        }
        if (start < 0) {
            // constant profile: one birth at the common value
            events_.push_back({dists_[0], +1});
            return;
        }
        int i = start;
        do {
            int j = i;  // plateau [i..j]
            while (std::abs(dists_[(j + 1) % n] - dists_[i]) <= tol_ && (j + 1) % n != start)
                j = (j + 1) % n;
            double prev = dists_[(i + n - 1) % n];
            double next = dists_[(j + 1) % n];
            if (prev > dists_[i] + tol_ && next > dists_[i] + tol_)
                events_.push_back({dists_[i], +1});
            if (prev < dists_[i] - tol_ && next < dists_[i] - tol_ && dists_[i] < gmax - tol_)
                events_.push_back({dists_[i], -1});
            i = (j + 1) % n;
        } while (i != start);
    }

    std::vector<CurveProfile> profiles_;
    double tol_;
    std::vector<double> dists_;
    std::vector<Event> events_;
};

struct Candidate {
    Vec2 center;
    double value;
};

}  // namespace

RhoEstimate separation_rho_detailed(const DomainSpec& domain) {
    std::vector<CurveProfile> profiles;
    for (int i = 0; i < domain.num_curves(); ++i) {
        const std::vector<Vec2>& poly = domain.curve(i).polyline();
        CurveProfile cp;
        cp.curve = &domain.curve(i);
        size_t stride = std::max<size_t>(1, poly.size() / kRhoVerticesPerCurve);
        for (size_t k = 0; k < poly.size(); k += stride) cp.verts.push_back(poly[k]);
        profiles.push_back(std::move(cp));
    }

    const double diam = domain.euclidean_diameter();
    const double tol = 1e-9 * diam;
    const Vec2 lo = domain.bbox_min();
    const Vec2 hi = domain.bbox_max();
    DisconnectionEvaluator eval(std::move(profiles), tol);

    double pitch = diam / 64.0;
    std::vector<Candidate> cands;
    Candidate best{{0.0, 0.0}, kInf};
    {
        int nx = static_cast<int>((hi.x - lo.x) / pitch) + 1;
        int ny = static_cast<int>((hi.y - lo.y) / pitch) + 1;
        for (int j = 0; j <= ny; ++j)
            for (int i = 0; i <= nx; ++i) {
                Vec2 c{lo.x + i * pitch, lo.y + j * pitch};
                if (!domain.contains(c)) continue;
                double r = eval.radius(c, best.value + 2.0 * pitch);
                if (!std::isfinite(r)) continue;
                cands.push_back({c, r});
                if (r < best.value) best = {c, r};
            }
    }
    if (cands.empty())
        // no center ever disconnects the union: capped at the diameter of D
        return RhoEstimate{diam, Vec2{0.5 * (lo.x + hi.x), 0.5 * (lo.y + hi.y)}, pitch};

    // iterative narrowing: keep centers that could still host the minimum
    // (the disconnection radius is 1-Lipschitz in the center) and re-sample
    // their neighborhoods at a finer pitch
    const size_t kMaxCands = 1500;
    while (pitch > best.value / 50.0 && pitch > 10.0 * tol) {
        std::vector<Candidate> keep;
        for (const Candidate& c : cands)
            if (c.value <= best.value + 2.0 * pitch) keep.push_back(c);
        if (keep.size() > kMaxCands) {
            std::sort(keep.begin(), keep.end(),
                      [](const Candidate& a, const Candidate& b) { return a.value < b.value; });
            std::vector<Candidate> thin(keep.begin(), keep.begin() + kMaxCands / 2);
            size_t stride = (keep.size() - kMaxCands / 2) / (kMaxCands / 2) + 1;
            for (size_t i = kMaxCands / 2; i < keep.size(); i += stride) thin.push_back(keep[i]);
            keep.swap(thin);
        }

        double fine = pitch / 4.0;
        std::vector<Candidate> next;
        for (const Candidate& c : keep) {
            for (int dj = -2; dj <= 2; ++dj)
                for (int di = -2; di <= 2; ++di) {
                    Vec2 p{c.center.x + di * fine, c.center.y + dj * fine};
                    if (!domain.contains(p)) continue;
                    double r = eval.radius(p, best.value + 2.0 * fine);
                    if (!std::isfinite(r)) continue;
                    next.push_back({p, r});
                    if (r < best.value) best = {p, r};
                }
        }
        cands.swap(next);
        pitch = fine;
        if (cands.empty()) break;
    }

    RhoEstimate est{std::min(best.value, diam), best.center, pitch};
    if (est.value < 10.0 * domain.tau_geo())
        throw DegenerateGeometry("separation radius is below 10*tau_geo");
    return est;
}

double separation_rho(const DomainSpec& domain) { return separation_rho_detailed(domain).value; }

}  // namespace snapbm
