#pragma once

#include <string>
#include <vector>

namespace cop {

/**
 * Reads the harness CSV input schema: UTF-8, header "t,value", one
 * observation per row, decimal point. Malformed rows raise stream_error with
 * the offending line number; a non-monotone timestamp only warns on stderr
 * and the file order is preserved. With log_transform the values are
 * log-transformed (stock series); non-positive values are then rejected.
 */
std::vector<double> ingest_csv(const std::string& path, bool log_transform = false);

} // namespace cop
