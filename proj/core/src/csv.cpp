#include "cop/csv.hpp"

#include "cop/errors.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>

namespace cop {

namespace {

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

} // namespace

std::vector<double> ingest_csv(const std::string& path, bool log_transform) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("ingest_csv: cannot open " + path);
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw stream_error(path + ": empty file");
    }
    if (strip_cr(line) != "t,value") {
        throw stream_error(path + ":1: expected header \"t,value\"");
    }

    std::vector<double> values;
    std::int64_t prev_t = 0;
    bool have_prev = false;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = strip_cr(line);
        if (line.empty()) continue;

        const auto where = path + ":" + std::to_string(line_no);
        const auto comma = line.find(',');
        if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos) {
            throw stream_error(where + ": expected exactly two fields");
        }

        std::int64_t t = 0;
        const char* tb = line.data();
        const char* te = line.data() + comma;
        auto tres = std::from_chars(tb, te, t);
        if (tres.ec != std::errc{} || tres.ptr != te) {
            throw stream_error(where + ": malformed timestamp");
        }

        double v = 0.0;
        const char* vb = line.data() + comma + 1;
        const char* ve = line.data() + line.size();
        auto vres = std::from_chars(vb, ve, v);
        if (vres.ec != std::errc{} || vres.ptr != ve || !std::isfinite(v)) {
            throw stream_error(where + ": malformed value");
        }

        if (have_prev && t <= prev_t) {
            std::cerr << "warning: " << where << ": non-monotone timestamp " << t
                      << " (order preserved as-is)\n";
        }
        prev_t = t;
        have_prev = true;

        if (log_transform) {
            if (!(v > 0.0)) {
                throw stream_error(where + ": log transform needs positive values");
            }
            v = std::log(v);
        }
        values.push_back(v);
    }
    if (values.empty()) {
        throw stream_error(path + ": no data rows");
    }
    return values;
}

} // namespace cop
