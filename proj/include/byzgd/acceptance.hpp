#ifndef BYZGD_ACCEPTANCE_HPP
#define BYZGD_ACCEPTANCE_HPP

#include <functional>
#include <string>
#include <vector>

namespace byzgd::harness {

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    std::string threshold;
    std::string detail;
};

using ReportSink = std::function<void(const std::string& line)>;

// Named acceptance bundles: aggregation, statistics, data, convergence.
std::vector<std::string> suite_names();

// Runs one bundle; one CheckResult per criterion. Throws InvalidArgument on
// an unknown suite name.
std::vector<CheckResult> verify_suite(const std::string& name, int threads = 1);

// Formats "[PASS]/[FAIL] name: measured (threshold) detail".
std::string format_check(const CheckResult& check);

// Runs the named suites (all when empty), streaming one line per check.
// Returns the number of failed checks.
int run_verification(const std::vector<std::string>& suites, int threads,
                     const ReportSink& sink);

} // namespace byzgd::harness

#endif
