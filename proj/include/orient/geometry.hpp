#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace orient {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;

// Angular separation below which a pair of directions counts as equal or
// antipodal; the pairwise kernels are singular there.
inline constexpr double kMinPairSeparation = 1e-6;

// A point on the unit sphere. Doubles as a viewing direction.
struct UnitVector3 {
    Vec3 v{0.0, 0.0, 1.0};

    // Normalizes `raw`; throws std::invalid_argument on a (near-)zero vector.
    static UnitVector3 of(const Vec3& raw);

    double dot(const UnitVector3& o) const { return v.dot(o.v); }
};

// Ordered right-handed orthonormal frame (b1, b2) of the plane orthogonal to
// `normal`. In-plane coordinates (a, b) embed into 3-space as a*b1 + b*b2.
struct PlaneBasis {
    Vec3 b1{1.0, 0.0, 0.0};
    Vec3 b2{0.0, 1.0, 0.0};
    Vec3 normal{0.0, 0.0, 1.0};

    // 3x2 matrix [b1 b2]: the embedding of plane coordinates into 3-space.
    Eigen::Matrix<double, 3, 2> embedding() const {
        Eigen::Matrix<double, 3, 2> e;
        e.col(0) = b1;
        e.col(1) = b2;
        return e;
    }

    // In-plane coordinates of a 3-vector (orthogonal projection).
    Vec2 project(const Vec3& w) const { return Vec2(b1.dot(w), b2.dot(w)); }

    // Back to 3-space.
    Vec3 lift(const Vec2& c) const { return c.x() * b1 + c.y() * b2; }
};

// N viewing directions with their plane frames. points[k] is always
// frames[k].normal.
struct DirectionSet {
    std::vector<UnitVector3> points;
    std::vector<PlaneBasis> frames;
    std::uint64_t seed = 0;

    int size() const { return static_cast<int>(points.size()); }
};

// Deterministic right-handed frame for the plane x^perp:
//   b1 = normalize(e_z x x)   when |x . e_z| <= 0.99,
//   b1 = normalize(e_y x x)   otherwise (pole fallback),
//   b2 = x x b1, normal = x.
PlaneBasis canonical_frame(const UnitVector3& x);

// n i.i.d. uniform points on S^2 with canonical frames. Deterministic per
// seed. Any draw closer than kMinPairSeparation radians to an existing point
// or its antipode is rejected and redrawn. Requires n >= 2.
DirectionSet sample_uniform(int n, std::uint64_t seed);

// Rotation in span{from, to} sending from -> to and fixing the orthogonal
// direction. Throws AntipodalOrEqualError when the pair is within
// kMinPairSeparation of equality or antipodality.
Mat3 geodesic_rotation(const UnitVector3& from, const UnitVector3& to);

// Angle in [0, pi] between two unit vectors.
double angular_distance(const Vec3& a, const Vec3& b);

// Independent sub-stream seed (splitmix64) so one user seed can feed several
// consumers without overlap.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Seeded random stream. Distributions are hand-rolled on top of mt19937_64
// so that a fixed seed gives the same stream on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform01();            // in [0, 1)
    double uniform(double a, double b);
    double gaussian();             // standard normal, Box-Muller
    UnitVector3 unit_vector();     // uniform on S^2

private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace orient
