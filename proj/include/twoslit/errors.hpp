#pragma once

#include <stdexcept>
#include <string>

namespace twoslit {

/// Base class for all library errors.
struct error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An operation was applied to a state it is not defined for
/// (e.g. applying the lens twice).
struct invalid_state_error : error {
    using error::error;
};

/// A basis change was requested that no operation provides
/// (e.g. converting the path basis directly to the detector basis).
struct invalid_target_error : error {
    using error::error;
};

/// Physical layout is inconsistent: overlapping slits, overlapping
/// detector windows, wires outside the grid, ...
struct geometry_error : error {
    using error::error;
};

/// A numerical precondition is violated; the message names the
/// violated inequality.
struct config_error : error {
    using error::error;
};

/// Fringe minima were requested from a pattern with no usable contrast.
struct no_fringes_error : error {
    using error::error;
};

/// Catalog / scenario file syntax error with source location.
struct parse_error : error {
    int line;
    int column;
    std::string message;  ///< without the location prefix
    parse_error(int line_, int column_, const std::string& message_)
        : error("line " + std::to_string(line_) + ", column " + std::to_string(column_) + ": " +
                message_),
          line(line_),
          column(column_),
          message(message_) {}
};

}  // namespace twoslit
