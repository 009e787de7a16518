#include "orient/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "orient/errors.hpp"

namespace orient {

UnitVector3 UnitVector3::of(const Vec3& raw) {
    const double n = raw.norm();
    if (!(n > 1e-300)) {
        throw std::invalid_argument("UnitVector3: cannot normalize a zero vector");
    }
    return UnitVector3{raw / n};
}

double angular_distance(const Vec3& a, const Vec3& b) {
    // atan2 form is accurate near 0 and pi, unlike acos of the dot product.
    return std::atan2(a.cross(b).norm(), a.dot(b));
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + stream * 0x9e3779b97f4a7c15ull;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

PlaneBasis canonical_frame(const UnitVector3& x) {
    const Vec3& v = x.v;
    Vec3 b1;
    if (std::abs(v.z()) <= 0.99) {
        b1 = Vec3::UnitZ().cross(v).normalized();
    } else {
        b1 = Vec3::UnitY().cross(v).normalized();
    }
    const Vec3 b2 = v.cross(b1);
    return PlaneBasis{b1, b2, v};
}

double RandomStream::uniform01() {
    // 53 random bits -> double in [0, 1).
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double a, double b) {
    return a + (b - a) * uniform01();
}

double RandomStream::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform01();
    while (u1 <= 0.0) u1 = uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
}

UnitVector3 RandomStream::unit_vector() {
    for (;;) {
        const Vec3 g(gaussian(), gaussian(), gaussian());
        const double n = g.norm();
        if (n > 1e-12) return UnitVector3{g / n};
    }
}

DirectionSet sample_uniform(int n, std::uint64_t seed) {
    if (n < 2) {
        throw std::invalid_argument("sample_uniform: need n >= 2");
    }
    // Reject candidates within kMinPairSeparation of an accepted point or its
    // antipode; both cases collapse to a bound on |dot|.
    const double dot_limit = std::cos(kMinPairSeparation);

    RandomStream rng(seed);
    DirectionSet ds;
    ds.seed = seed;
    ds.points.reserve(static_cast<std::size_t>(n));
    ds.frames.reserve(static_cast<std::size_t>(n));
    while (ds.size() < n) {
        const UnitVector3 cand = rng.unit_vector();
        bool ok = true;
        for (const UnitVector3& p : ds.points) {
            if (std::abs(p.dot(cand)) >= dot_limit) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        ds.points.push_back(cand);
        ds.frames.push_back(canonical_frame(cand));
    }
    return ds;
}

Mat3 geodesic_rotation(const UnitVector3& from, const UnitVector3& to) {
    const double sep = angular_distance(from.v, to.v);
    if (sep <= kMinPairSeparation || sep >= M_PI - kMinPairSeparation) {
        throw AntipodalOrEqualError("geodesic_rotation: directions equal or antipodal");
    }
    const Vec3 cr = from.v.cross(to.v);
    const Vec3 axis = cr.normalized();
    const double c = from.v.dot(to.v);
    const double s = cr.norm();
    // Rodrigues: R = c I + s [axis]_x + (1-c) axis axis^T
    Mat3 k;
    k << 0.0, -axis.z(), axis.y(),
         axis.z(), 0.0, -axis.x(),
        -axis.y(), axis.x(), 0.0;
    return c * Mat3::Identity() + s * k + (1.0 - c) * (axis * axis.transpose());
}

}  // namespace orient
