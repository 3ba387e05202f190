#pragma once

#include <stdexcept>
#include <string>

namespace skewloc {

// Numerically singular window: a pivot collapsed below 1e-14 * scale,
// i.e. E sits in the window spectrum to machine resolution.
struct SingularWindowError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Request exceeds a desk-scale guard (window size, k-box size, ...).
struct ResourceLimitError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A numeric contract failed (residual too large, iteration did not converge).
struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// No continued-fraction denominator in the requested range, etc.
struct NotFoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed spec/config file; carries the offending line when known.
struct FormatError : std::runtime_error {
    int line = 0;
    FormatError(const std::string& msg, int line_no = 0)
        : std::runtime_error(line_no > 0 ? msg + " (line " + std::to_string(line_no) + ")" : msg),
          line(line_no) {}
};

} // namespace skewloc
