#pragma once

#include <vector>

#include "jordanenv/jordan_model.hpp"
#include "jordanenv/matrix.hpp"

namespace jordanenv {

// Closed disk in the complex plane.
struct Disk {
    Complex center{0.0, 0.0};
    double radius = 0.0;

    Disk(Complex c, double r);
};

// Numerical range of a basic Jordan block: the closed disk about lambda of
// radius cos(pi/(m+1)), degenerating to the point {lambda} for m = 1.
// radius_bias shifts the radius of nondegenerate disks; it exists as a fault
// injection hook for the verification harness and defaults to zero.
Disk jordan_numrange(int m, Complex lambda, double radius_bias = 0.0);

// Support function h(theta) = max eigenvalue of Re(e^{-i theta} T) sampled on
// an even grid over [0, 2pi).
struct SupportProfile {
    std::vector<double> directions;
    std::vector<double> values;
};

SupportProfile support_profile(const ComplexMatrix& t, int n_theta,
                               const Tolerances& tol = default_tolerances());

enum class Membership { In, Out, BoundaryAmbiguous };

// Grid-sampled membership of z in the numerical range of an arbitrary square
// matrix: In when Re(e^{-i theta} z) <= h(theta) - band everywhere, Out when
// some direction is violated by more than band, BoundaryAmbiguous otherwise.
Membership point_in_numrange(Complex z, const ComplexMatrix& t, double band,
                             int n_theta, const Tolerances& tol = default_tolerances());

// Convex hull of finitely many closed disks, with closed-form support
// queries. This is the exact-arithmetic path membership escalates to when
// every summand is a Jordan block.
class DiskHull {
  public:
    explicit DiskHull(std::vector<Disk> disks);

    const std::vector<Disk>& disks() const { return disks_; }

    double support(double theta) const;

    // max over theta of Re(e^{-i theta} z) - support(theta); positive exactly
    // when z lies outside the hull, and equal to the Euclidean distance then.
    double signed_gap(Complex z) const;

    bool contains_closed(Complex z, const Tolerances& tol = default_tolerances()) const;
    Membership classify_point(Complex z, double band) const;

    // Is z an extreme point of the hull?
    bool extreme_point(Complex z, const Tolerances& tol = default_tolerances()) const;

    // Contact points of the supporting lines on an even direction grid;
    // suitable as a plot trace of the hull boundary.
    std::vector<Complex> boundary_sample(int n) const;

  private:
    std::vector<Disk> disks_;
};

// Disks of the individual block ranges, multiplicities ignored.
std::vector<Disk> block_range_disks(const JordanSpec& spec, double radius_bias = 0.0);

// Hull of the block ranges of all blocks except `skip` (pass a negative
// index to keep every block).
DiskHull hull_of_block_ranges(const JordanSpec& spec, int skip = -1,
                              double radius_bias = 0.0);

} // namespace jordanenv
