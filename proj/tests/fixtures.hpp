#pragma once

// Supports shared by the ECI, critical-locus and acceptance tests.

#include "helpers.hpp"

namespace toric::test {

/// Two non-parallel triangles in Z^3: deg_x is 0 on the first and 1, 2, 3
/// on the second.
inline PointSet two_triangles() {
    return pts(3, {{0, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 0, 0}, {2, 1, 0}, {3, 0, 1}});
}

/// Support for f'_x = f'_y = 0: x{1, z, x} and y{1, z, xy}.
inline PointSet gradient_support() {
    return pts(3, {{1, 0, 0}, {1, 0, 1}, {2, 0, 0}, {0, 1, 0}, {0, 1, 1}, {1, 2, 0}});
}

/// Support for f = f'_x = f''_x = 0 in Z^4: {1, y, z, w}, x{1, y, z, w} and
/// {x^2, x^3 y, x^4 z}.
inline PointSet tower_support() {
    return pts(4, {{0, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1},
                   {1, 0, 0, 0}, {1, 1, 0, 0}, {1, 0, 1, 0}, {1, 0, 0, 1},
                   {2, 0, 0, 0}, {3, 1, 0, 0}, {4, 0, 1, 0}});
}

}  // namespace toric::test
