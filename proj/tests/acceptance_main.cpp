// Runs the eight acceptance checks and prints one PASS/FAIL line each.
#include <cstdio>

#include "livsic/acceptance.hpp"

int main() {
    const auto results = livsic::run_acceptance();
    std::fputs(livsic::format_acceptance(results).c_str(), stdout);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::printf("%s\n", all ? "all criteria passed" : "SOME CRITERIA FAILED");
    return all ? 0 : 1;
}
