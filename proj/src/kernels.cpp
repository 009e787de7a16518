#include "orient/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "orient/errors.hpp"

namespace orient {

std::string to_string(BlockKind kind) {
    switch (kind) {
        case BlockKind::Common: return "common";
        case BlockKind::Orthographic: return "orthographic";
        case BlockKind::Transport: return "transport";
    }
    return "?";
}

namespace {

void require_valid_pair(const Vec3& x, const Vec3& y, const char* who) {
    const double sep = angular_distance(x, y);
    if (sep <= kMinPairSeparation || sep >= M_PI - kMinPairSeparation) {
        throw AntipodalOrEqualError(std::string(who) + ": directions equal or antipodal");
    }
}

}  // namespace

LinePair common_line_directions(const PlaneBasis& px, const PlaneBasis& py) {
    require_valid_pair(px.normal, py.normal, "common_line_directions");
    const Vec3 u = px.normal.cross(py.normal).normalized();
    return LinePair{px.project(u), py.project(u)};
}

Mat2 common_block(const Vec2& c_xy, const Vec2& c_yx) {
    if (std::abs(c_xy.norm() - 1.0) > 1e-9 || std::abs(c_yx.norm() - 1.0) > 1e-9) {
        throw std::invalid_argument("common_block: inputs must be unit vectors");
    }
    return c_xy * c_yx.transpose();
}

Mat2 orthographic_block(const PlaneBasis& px, const PlaneBasis& py) {
    require_valid_pair(px.normal, py.normal, "orthographic_block");
    // project() already discards the normal component, so these are the
    // in-plane coordinates of Pr_x(y) and Pr_y(x).
    const Vec2 o_xy = px.project(py.normal).normalized();
    const Vec2 o_yx = py.project(px.normal).normalized();
    return o_xy * o_yx.transpose();
}

Mat2 transport_block(const PlaneBasis& px, const PlaneBasis& py) {
    require_valid_pair(px.normal, py.normal, "transport_block");
    const Mat3 r = geodesic_rotation(UnitVector3{py.normal}, UnitVector3{px.normal});
    // Columns: transported py basis vectors, read in px coordinates.
    Mat2 b;
    b.col(0) = px.project(r * py.b1);
    b.col(1) = px.project(r * py.b2);
    return b;
}

const CommonLinesDatum::Pair* CommonLinesDatum::find(int i, int j) const {
    if (i > j) std::swap(i, j);
    const auto it = std::lower_bound(
        pairs.begin(), pairs.end(), std::make_pair(i, j),
        [](const Pair& p, const std::pair<int, int>& key) {
            return std::make_pair(p.i, p.j) < key;
        });
    if (it == pairs.end() || it->i != i || it->j != j) return nullptr;
    return &*it;
}

bool CommonLinesDatum::complete() const {
    return static_cast<long long>(pairs.size()) ==
           static_cast<long long>(n) * (n - 1) / 2;
}

void CommonLinesDatum::validate() const {
    if (n < 2) throw MalformedDatumError("datum: node count must be >= 2");
    int prev_i = -1, prev_j = -1;
    for (const Pair& p : pairs) {
        if (p.i < 0 || p.j <= p.i || p.j >= n) {
            throw MalformedDatumError("datum: pair indices out of range", p.i, p.j);
        }
        if (std::make_pair(p.i, p.j) <= std::make_pair(prev_i, prev_j)) {
            throw MalformedDatumError("datum: pairs out of order or duplicated", p.i, p.j);
        }
        if (std::abs(p.c_ij.norm() - 1.0) > 1e-12 || std::abs(p.c_ji.norm() - 1.0) > 1e-12) {
            throw MalformedDatumError("datum: stored line factor not unit", p.i, p.j);
        }
        prev_i = p.i;
        prev_j = p.j;
    }
}

CommonLinesDatum oracle_datum(const DirectionSet& ds) {
    const int n = ds.size();
    CommonLinesDatum datum;
    datum.n = n;
    datum.provenance = Provenance::Oracle;
    datum.pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            try {
                const LinePair lp = common_line_directions(ds.frames[i], ds.frames[j]);
                datum.pairs.push_back({i, j, lp.c_xy, lp.c_yx});
            } catch (const AntipodalOrEqualError&) {
                throw AntipodalOrEqualError(
                    "oracle_datum: degenerate pair {" + std::to_string(i) + ", " +
                    std::to_string(j) + "}");
            }
        }
    }
    return datum;
}

}  // namespace orient
