#pragma once

#include <stdexcept>
#include <string>

namespace ecd {

/// A matrix handed in as a quantum state fails the density-matrix
/// contract (hermiticity, unit trace, positive semidefiniteness).
struct invalid_state_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A channel violates its family's construction contract, or produced
/// an output that is not a valid state.
struct invalid_channel_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A sweep or run configuration field is out of range or inconsistent.
/// `field` names the offending key.
struct config_error : std::runtime_error {
    std::string field;
    config_error(std::string field_, const std::string& what_)
        : std::runtime_error(what_), field(std::move(field_)) {}
};

/// Not enough data to carry out the requested computation
/// (e.g. classifying from fewer than two values, plotting one point).
struct insufficient_data_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A classical orbit left its map's domain box. `escape_index` is the
/// iterate at which it happened.
struct divergence_error : std::runtime_error {
    std::size_t escape_index;
    divergence_error(std::size_t at, const std::string& what_)
        : std::runtime_error(what_), escape_index(at) {}
};

/// File could not be opened or written.
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace ecd
