// One line per acceptance criterion. Exit status is 0 when every criterion
// passes, or when the only failures are the ones named by --known-failures.
#include <CLI11.hpp>

#include <cstdio>
#include <set>

#include "kdnls/acceptance.hpp"

int main(int argc, char** argv) {
    CLI::App app{"acceptance suite"};
    std::vector<int> only, known;
    bool details = false;
    app.add_option("--criteria", only, "run only these ids")->delimiter(',');
    app.add_option("--known-failures", known, "ids documented as unattainable")->delimiter(',');
    app.add_flag("--details", details, "print every check");
    CLI11_PARSE(app, argc, argv);

    const std::set<int> allowed(known.begin(), known.end());
    std::set<int> failed;
    kdnls::run_acceptance({only.begin(), only.end()}, [&](const kdnls::CriterionResult& r) {
        std::printf("%s\n", kdnls::summary_line(r).c_str());
        for (const auto& c : r.checks)
            if (details || !c.ok) std::printf("    %s %s: %s\n", c.ok ? "ok  " : "FAIL", c.label.c_str(), c.detail.c_str());
        std::fflush(stdout);
        if (!r.passed()) failed.insert(r.id);
    });
    int unexpected = 0;
    for (int id : failed)
        if (!allowed.count(id)) ++unexpected;
    for (int id : failed)
        if (allowed.count(id)) std::printf("known failure [%d], see README\n", id);
    return unexpected == 0 ? 0 : 1;
}
