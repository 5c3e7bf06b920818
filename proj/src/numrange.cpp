#include "jordanenv/numrange.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace jordanenv {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Disk::Disk(Complex c, double r) : center(c), radius(r) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag()) || !std::isfinite(r))
        throw std::invalid_argument("disk parameters must be finite");
    if (r < 0.0) throw std::invalid_argument("disk radius must be nonnegative");
}

Disk jordan_numrange(int m, Complex lambda, double radius_bias) {
    if (m < 1) throw std::invalid_argument("block size must be >= 1");
    if (m == 1) return Disk(lambda, 0.0);
    const double r = std::cos(std::numbers::pi / (m + 1)) + radius_bias;
    return Disk(lambda, std::max(0.0, r));
}

SupportProfile support_profile(const ComplexMatrix& t, int n_theta, const Tolerances& tol) {
    if (!t.square()) throw std::invalid_argument("support_profile expects a square matrix");
    if (n_theta < tol.n_theta_min) throw std::invalid_argument("direction grid too coarse");
    SupportProfile p;
    p.directions.resize(n_theta);
    p.values.resize(n_theta);
    for (int i = 0; i < n_theta; ++i) {
        const double theta = kTwoPi * i / n_theta;
        p.directions[i] = theta;
        const auto h = real_part_rotated(t, theta, tol);
        p.values[i] = hermitian_eigen(h, tol).values.back();
    }
    return p;
}

Membership point_in_numrange(Complex z, const ComplexMatrix& t, double band, int n_theta,
                             const Tolerances& tol) {
    const SupportProfile p = support_profile(t, n_theta, tol);
    bool inside = true;
    for (size_t i = 0; i < p.directions.size(); ++i) {
        const double v = z.real() * std::cos(p.directions[i]) + z.imag() * std::sin(p.directions[i]);
        if (v > p.values[i] + band) return Membership::Out;
        if (v > p.values[i] - band) inside = false;
    }
    return inside ? Membership::In : Membership::BoundaryAmbiguous;
}

DiskHull::DiskHull(std::vector<Disk> disks) : disks_(std::move(disks)) {
    if (disks_.empty()) throw std::invalid_argument("hull of no disks");
}

double DiskHull::support(double theta) const {
    double h = -std::numeric_limits<double>::infinity();
    const double cs = std::cos(theta);
    const double sn = std::sin(theta);
    for (const Disk& d : disks_)
        h = std::max(h, d.center.real() * cs + d.center.imag() * sn + d.radius);
    return h;
}

double DiskHull::signed_gap(Complex z) const {
    // g(theta) = min_j [ |z-c_j| cos(theta - arg(z-c_j)) - r_j ]; its maximum
    // over theta is attained at a peak direction of one term or at a crossing
    // of two terms, both available in closed form.
    std::vector<double> candidates;
    candidates.push_back(0.0);
    const int n = static_cast<int>(disks_.size());
    for (int j = 0; j < n; ++j) {
        const Complex w = z - disks_[j].center;
        if (std::abs(w) > 0.0) candidates.push_back(std::atan2(w.imag(), w.real()));
    }
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const Complex d = disks_[j].center - disks_[i].center;
            const double rr = disks_[i].radius - disks_[j].radius;
            const double mag = std::abs(d);
            if (mag <= 0.0 || std::abs(rr) > mag) continue;
            const double base = std::atan2(d.imag(), d.real());
            const double off = std::acos(std::clamp(rr / mag, -1.0, 1.0));
            candidates.push_back(base + off);
            candidates.push_back(base - off);
        }
    }

    double best = -std::numeric_limits<double>::infinity();
    for (double theta : candidates) {
        const double cs = std::cos(theta);
        const double sn = std::sin(theta);
        double g = std::numeric_limits<double>::infinity();
        for (const Disk& d : disks_) {
            const Complex w = z - d.center;
            g = std::min(g, w.real() * cs + w.imag() * sn - d.radius);
        }
        best = std::max(best, g);
    }
    return best;
}

bool DiskHull::contains_closed(Complex z, const Tolerances& tol) const {
    return signed_gap(z) <= tol.exact_eq;
}

Membership DiskHull::classify_point(Complex z, double band) const {
    const double g = signed_gap(z);
    if (g > band) return Membership::Out;
    if (g < -band) return Membership::In;
    return Membership::BoundaryAmbiguous;
}

namespace {

struct Arc {
    double lo;
    double hi;
};

// Shift b by whole turns until its midpoint sits within pi of the midpoint
// of a, then intersect as plain intervals.
bool intersect_anchored(Arc& a, Arc b) {
    const double ca = 0.5 * (a.lo + a.hi);
    double cb = 0.5 * (b.lo + b.hi);
    while (cb - ca > std::numbers::pi) {
        b.lo -= kTwoPi;
        b.hi -= kTwoPi;
        cb -= kTwoPi;
    }
    while (ca - cb > std::numbers::pi) {
        b.lo += kTwoPi;
        b.hi += kTwoPi;
        cb += kTwoPi;
    }
    a.lo = std::max(a.lo, b.lo);
    a.hi = std::min(a.hi, b.hi);
    return a.lo <= a.hi + 1e-12;
}

} // namespace

bool DiskHull::extreme_point(Complex z, const Tolerances& tol) const {
    // Supporting directions of the hull at z form the intersection of one
    // arc per disk; z is extreme when that set is a nondegenerate arc, or a
    // single direction at which z is an endpoint of the contact segment.
    bool have = false;
    Arc theta_set{0.0, kTwoPi};
    for (const Disk& d : disks_) {
        const Complex w = z - d.center;
        const double dist = std::abs(w);
        if (dist <= tol.exact_eq) {
            if (d.radius > tol.exact_eq) return false; // z is the center of a fat disk
            continue;                                   // z's own degenerate disk constrains nothing
        }
        if (dist < d.radius - tol.exact_eq) return false; // strictly inside a disk
        const double half = std::acos(std::clamp(d.radius / dist, -1.0, 1.0));
        const double mid = std::atan2(w.imag(), w.real());
        Arc arc{mid - half, mid + half};
        if (!have) {
            theta_set = arc;
            have = true;
        } else if (!intersect_anchored(theta_set, arc)) {
            return false;
        }
    }
    if (!have) return true; // hull degenerates to {z}

    const double width = theta_set.hi - theta_set.lo;
    if (width > 1e-9) return true; // exposed point

    // single supporting direction: z must not lie strictly between two
    // contact points of that supporting line
    const double theta0 = 0.5 * (theta_set.lo + theta_set.hi);
    const Complex dir = std::polar(1.0, theta0);
    const double h = support(theta0);
    double smin = std::numeric_limits<double>::infinity();
    double smax = -smin;
    for (const Disk& d : disks_) {
        const double val = d.center.real() * dir.real() + d.center.imag() * dir.imag() + d.radius;
        if (val < h - 1e-9) continue;
        const Complex contact = d.center + d.radius * dir;
        const double s = std::imag(contact * std::conj(dir));
        smin = std::min(smin, s);
        smax = std::max(smax, s);
    }
    const double sz = std::imag(z * std::conj(dir));
    return sz <= smin + 1e-9 || sz >= smax - 1e-9;
}

std::vector<Complex> DiskHull::boundary_sample(int n) const {
    if (n < 1) throw std::invalid_argument("boundary sample needs at least one point");
    std::vector<Complex> pts;
    pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        const double theta = kTwoPi * i / n;
        const Complex dir = std::polar(1.0, theta);
        double best = -std::numeric_limits<double>::infinity();
        const Disk* active = &disks_.front();
        for (const Disk& d : disks_) {
            const double val =
                d.center.real() * dir.real() + d.center.imag() * dir.imag() + d.radius;
            if (val > best) {
                best = val;
                active = &d;
            }
        }
        pts.push_back(active->center + active->radius * dir);
    }
    return pts;
}

std::vector<Disk> block_range_disks(const JordanSpec& spec, double radius_bias) {
    std::vector<Disk> out;
    out.reserve(spec.blocks.size());
    for (const auto& b : spec.blocks)
        out.push_back(jordan_numrange(b.size, b.eigenvalue, radius_bias));
    return out;
}

DiskHull hull_of_block_ranges(const JordanSpec& spec, int skip, double radius_bias) {
    std::vector<Disk> disks;
    for (int i = 0; i < spec.block_count(); ++i) {
        if (i == skip) continue;
        const auto& b = spec.blocks[i];
        disks.push_back(jordan_numrange(b.size, b.eigenvalue, radius_bias));
    }
    if (disks.empty()) throw std::invalid_argument("hull over an empty block selection");
    return DiskHull(std::move(disks));
}

} // namespace jordanenv
