#pragma once

#include <string>
#include <vector>

namespace et14 {

struct CheckResult {
    std::string id;      // identity label, e.g. "eq-17.1"
    bool pass = false;
    std::string detail;  // offending monomial / index on failure, empty on pass
};

struct CheckReport {
    std::vector<CheckResult> checks;

    void add(std::string id, bool pass, std::string detail = std::string()) {
        checks.push_back({std::move(id), pass, std::move(detail)});
    }

    void merge(const CheckReport& o) {
        checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    }

    bool all_passed() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    const CheckResult* find(const std::string& id) const {
        for (const auto& c : checks)
            if (c.id == id) return &c;
        return nullptr;
    }

    std::vector<std::string> failed_ids() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.pass) out.push_back(c.id);
        return out;
    }
};

}  // namespace et14
