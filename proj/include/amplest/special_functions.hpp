#pragma once

namespace amplest {

/// Inverse error function on (-1, 1), accurate to ~1e-15 relative.
/// Throws std::domain_error for |y| >= 1 or NaN.
double erfinv(double y);

}  // namespace amplest
