#pragma once

#include <stdexcept>
#include <string>

namespace apm {

// Error taxonomy mirrors the CLI exit codes: validation failures (bad
// dimensions, out-of-domain parameters) exit 2, resource-cap hits exit 3,
// I/O failures exit 4.

struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct validation_error : error {
    using error::error;
};

// Length/shape mismatch between two values that must agree.
struct dimension_error : validation_error {
    using validation_error::validation_error;
};

// A parameter outside the operation's domain.
struct domain_error : validation_error {
    using validation_error::validation_error;
};

// An exact computation would exceed a configured enumeration cap.
struct resource_error : error {
    using error::error;
};

struct io_error : error {
    using error::error;
};

}  // namespace apm
