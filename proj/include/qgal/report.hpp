#pragma once

#include <string>
#include <vector>

namespace qgal {

/// Line-oriented verification report shared by all check_* operations.
struct VerificationReport {
    struct Check {
        std::string id;
        bool pass = true;
        std::string residual;  // empty on pass
    };

    std::string suite;
    std::vector<Check> checks;

    bool all_pass() const {
        for (auto& c : checks)
            if (!c.pass) return false;
        return true;
    }

    void add(std::string id, bool pass, std::string residual = "") {
        checks.push_back({std::move(id), pass, std::move(residual)});
    }

    std::string text() const {
        std::string out = "suite: " + suite + "\n";
        for (auto& c : checks) {
            out += "check: " + c.id + "\nstatus: " + (c.pass ? "PASS" : "FAIL") + "\n";
            if (!c.residual.empty()) out += "residual: " + c.residual + "\n";
        }
        out += "overall: " + std::string(all_pass() ? "PASS" : "FAIL") + "\n";
        return out;
    }
};

} // namespace qgal
