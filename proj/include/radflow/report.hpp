#pragma once

#include <string>
#include <vector>

namespace radflow {

/// One named check: a computed value against a bound or target.
/// `hard` entries gate exit codes; fitted constants are informational.
struct EstimateEntry {
    std::string name;
    double value = 0.0;
    double bound = 0.0;
    double tolerance = 0.0;
    bool pass = true;
    bool hard = true;
    std::string note;  // what kind of statement backs the entry
};

struct EstimateReport {
    std::string title;
    std::vector<EstimateEntry> entries;

    void add(EstimateEntry e) { entries.push_back(std::move(e)); }
    bool all_pass() const;
    bool hard_pass() const;
    std::string text_summary() const;
    std::string to_json() const;
};

} // namespace radflow
