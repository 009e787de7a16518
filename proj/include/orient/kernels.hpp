#pragma once

#include <string>
#include <vector>

#include "orient/geometry.hpp"

namespace orient {

enum class BlockKind { Common, Orthographic, Transport };

std::string to_string(BlockKind kind);

// In-plane unit vectors identifying the common line of two planes, expressed
// in each plane's own frame coordinates.
struct LinePair {
    Vec2 c_xy;  // in px coordinates
    Vec2 c_yx;  // in py coordinates
};

// Common line of the planes of px and py. The sign is fixed by lifting
// u = x cross y (not y cross x) for the ordered call (px, py); the
// simultaneous flip (-c_xy, -c_yx) is the other valid representative.
// Throws AntipodalOrEqualError when the normals are within
// kMinPairSeparation of equality or antipodality.
LinePair common_line_directions(const PlaneBasis& px, const PlaneBasis& py);

// Rank-one common-lines kernel block c_xy c_yx^T. Both inputs must be unit
// within 1e-9 (std::invalid_argument otherwise). Invariant under the
// simultaneous sign flip of both inputs.
Mat2 common_block(const Vec2& c_xy, const Vec2& c_yx);

// Rank-one orthographic-lines kernel block o_xy o_yx^T, where o_xy is the
// normalized projection of y onto the plane of x (in px coordinates) and
// vice versa.
Mat2 orthographic_block(const PlaneBasis& px, const PlaneBasis& py);

// Parallel transport along the geodesic from y to x, restricted to the two
// planes and expressed in their frames. Orthogonal 2x2; equals
// common_block - orthographic_block.
Mat2 transport_block(const PlaneBasis& px, const PlaneBasis& py);

enum class Provenance { Oracle, Detected };

// The algorithm's sole input: for every unordered pair {i, j} the pair of
// in-plane unit vectors identifying the common line in each plane's frame.
// Stores the rank-one factors, not the 2x2 blocks; blocks are recomputable
// exactly via common_block.
struct CommonLinesDatum {
    struct Pair {
        int i = 0;
        int j = 0;
        Vec2 c_ij;
        Vec2 c_ji;
    };

    int n = 0;
    Provenance provenance = Provenance::Oracle;
    std::vector<Pair> pairs;  // sorted by (i, j), i < j

    // nullptr when the pair is absent. Accepts arguments in either order.
    const Pair* find(int i, int j) const;

    bool complete() const;

    // Schema checks: indices in range, i < j, sorted, no duplicates, stored
    // factors unit within 1e-12. Throws MalformedDatumError.
    void validate() const;
};

// Exact datum from known geometry (provenance Oracle): for every pair,
// common_line_directions of the stored frames. Propagates
// AntipodalOrEqualError with the offending pair identified in the message.
CommonLinesDatum oracle_datum(const DirectionSet& ds);

}  // namespace orient
