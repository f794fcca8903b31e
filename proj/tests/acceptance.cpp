#include <cstdio>

#include "nomura/acceptance.hpp"

int main() {
    int failed = 0;
    for (const auto& r : nomura::run_acceptance()) {
        std::puts(nomura::format_line(r).c_str());
        failed += !r.pass;
    }
    std::printf("%d of 11 criteria failed\n", failed);
    return failed == 0 ? 0 : 1;
}
