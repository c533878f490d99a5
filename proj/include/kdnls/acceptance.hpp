#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace kdnls {

struct Check {
    std::string label;
    bool ok = false;
    std::string detail;
};

struct CriterionResult {
    int id = 0;
    std::string title;
    std::vector<Check> checks;
    double seconds = 0.0;
    double time_limit = 0.0;  // seconds; 0 means none

    bool passed() const;
};

// Criteria ids 1..8.
const std::vector<std::pair<int, std::string>>& criteria();

CriterionResult run_criterion(int id);

// Runs the selected criteria (all when empty); on_done is called as each finishes.
std::vector<CriterionResult> run_acceptance(const std::set<int>& ids = {},
                                            const std::function<void(const CriterionResult&)>& on_done = {});

// "PASS [3] engine-oracle equivalence (0.41 s)"
std::string summary_line(const CriterionResult& r);

std::string results_json(const std::vector<CriterionResult>& rs);

}  // namespace kdnls
