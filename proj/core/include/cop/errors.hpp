#pragma once

#include <stdexcept>
#include <string>

namespace cop {

/// Invalid configuration (bad alpha, empty grids, unknown enum values, ...).
struct config_error : std::invalid_argument {
    explicit config_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Corrupt input stream (non-finite score, malformed CSV row, ...).
struct stream_error : std::runtime_error {
    explicit stream_error(const std::string& what) : std::runtime_error(what) {}
};

/// CDF estimator not ready (empty window, too few samples for a bandwidth).
struct estimator_unready_error : std::runtime_error {
    explicit estimator_unready_error(const std::string& what) : std::runtime_error(what) {}
};

/// CDF estimator broke its contract (value outside [0,1]).
struct estimator_contract_error : std::runtime_error {
    explicit estimator_contract_error(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem/serialization failure.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace cop
