// Acceptance gate: runs every verification suite and prints one line per
// criterion. Exit status is nonzero when any check fails.
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "byzgd/acceptance.hpp"

int main(int argc, char** argv) {
    int threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    if (argc > 1) threads = std::atoi(argv[1]);

    int failures = byzgd::harness::run_verification(
        {}, threads, [](const std::string& line) { std::printf("%s\n", line.c_str()); });
    std::printf("%d check(s) failed\n", failures);
    return failures > 0 ? 1 : 0;
}
