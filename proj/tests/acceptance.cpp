#include <cstdio>
#include <string>

namespace {

std::string g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", x);
    return buf;
}

}  // namespace

#include "tva/experiments.hpp"

// One line per acceptance criterion; the checks behind each follow indented.
int main() {
    const tva::ExperimentReport rep = tva::run_experiment("all", tva::ExperimentOptions{});
    bool ok = true;
    for (const auto& c : tva::criteria(rep)) {
        std::printf("criterion %2d %-24s %s\n", c.id, c.name.c_str(), c.pass ? "PASS" : "FAIL");
        for (const auto& ch : rep.checks) {
            if (ch.criterion != c.id) continue;
            const std::string rule = ch.relation == "abs" ? "|m - (" + g(ch.expected) + ")| <= " + g(ch.tolerance)
                                                          : ch.relation + " " + g(ch.expected);
            std::printf("    %s %-40s measured=%.6g (%s)\n", ch.pass ? "pass" : "FAIL", ch.name.c_str(), ch.measured,
                        rule.c_str());
        }
        ok = ok && c.pass;
    }
    return ok ? 0 : 1;
}
