#pragma once

#include <stdexcept>
#include <string>

namespace rsskl {

// Base of every library error.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad arguments, configuration, or lookup keys. CLI exit code 1.
struct validation_error : error {
    using error::error;
};

// Data-dependent failure: ties spanning a window, zero variance, and the
// like. Continuous simulation data essentially never trigger these; real
// data with ties get a clear diagnostic. CLI exit code 2.
struct degenerate_error : error {
    using error::error;
};

struct invalid_window : validation_error {
    using validation_error::validation_error;
};

struct unsupported_distribution : validation_error {
    using validation_error::validation_error;
};

struct insufficient_data : validation_error {
    using validation_error::validation_error;
};

struct insufficient_cycles : validation_error {
    using validation_error::validation_error;
};

struct insufficient_set_size : validation_error {
    using validation_error::validation_error;
};

struct key_mismatch : validation_error {
    using validation_error::validation_error;
};

struct parse_error : validation_error {
    using validation_error::validation_error;
};

struct degenerate_spacing : degenerate_error {
    using degenerate_error::degenerate_error;
};

struct degenerate_breakpoints : degenerate_error {
    using degenerate_error::degenerate_error;
};

struct degenerate_variance : degenerate_error {
    using degenerate_error::degenerate_error;
};

struct invalid_scale : degenerate_error {
    using degenerate_error::degenerate_error;
};

}  // namespace rsskl
