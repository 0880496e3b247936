#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace cla {

// Two-layer command output: a human-readable rendering followed by a
// machine section of `key = value` lines in a fixed canonical order.
// Identical inputs produce byte-identical reports.
struct Report {
    std::string human;
    std::vector<std::pair<std::string, std::string>> machine;

    void add(const std::string& key, const std::string& value) {
        machine.push_back({key, value});
    }
    void add(const std::string& key, long long value) {
        machine.push_back({key, std::to_string(value)});
    }
    void add(const std::string& key, bool value) {
        machine.push_back({key, value ? "true" : "false"});
    }

    std::string render_plain() const {
        std::ostringstream os;
        if (!human.empty()) {
            os << human;
            if (human.back() != '\n') os << "\n";
        }
        os << "[machine]\n";
        for (const auto& [k, v] : machine) os << k << " = " << v << "\n";
        return os.str();
    }

    std::string render_json() const {
        nlohmann::ordered_json j;
        for (const auto& [k, v] : machine) j[k] = v;
        return j.dump(2) + "\n";
    }
};

} // namespace cla
