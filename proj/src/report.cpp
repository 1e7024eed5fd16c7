#include "radflow/report.hpp"

#include <json.hpp>

#include <sstream>

namespace radflow {

bool EstimateReport::all_pass() const {
    for (const auto& e : entries)
        if (!e.pass) return false;
    return true;
}

bool EstimateReport::hard_pass() const {
    for (const auto& e : entries)
        if (e.hard && !e.pass) return false;
    return true;
}

std::string EstimateReport::text_summary() const {
    std::ostringstream os;
    os << title << "\n";
    for (const auto& e : entries) {
        os.precision(12);
        os << (e.pass ? "  [pass] " : "  [FAIL] ") << e.name
           << ": value=" << e.value << " bound=" << e.bound
           << " tol=" << e.tolerance;
        if (!e.hard) os << " (informational)";
        if (!e.note.empty()) os << "  # " << e.note;
        os << "\n";
    }
    return os.str();
}

std::string EstimateReport::to_json() const {
    nlohmann::ordered_json j;
    j["title"] = title;
    j["all_pass"] = all_pass();
    j["hard_pass"] = hard_pass();
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : entries) {
        nlohmann::ordered_json je;
        je["name"] = e.name;
        je["value"] = e.value;
        je["bound"] = e.bound;
        je["tolerance"] = e.tolerance;
        je["pass"] = e.pass;
        je["hard"] = e.hard;
        je["note"] = e.note;
        arr.push_back(je);
    }
    j["entries"] = arr;
    return j.dump(2);
}

} // namespace radflow
