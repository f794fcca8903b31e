#pragma once

#include <string>
#include <vector>

#include "nomura/matrix.hpp"

namespace nomura {

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    std::string expected;
    std::string computed;
};

/// Runs the eleven acceptance checks. tol drives every library call and
/// any threshold that is nominally 1e-8; the other thresholds are fixed.
/// Never throws: a stage error marks its criterion failed.
std::vector<CriterionResult> run_acceptance(const Tolerance& tol = {});

/// One line per criterion: "PASS  3  title | expected ... | computed ...".
std::string format_line(const CriterionResult& r);

} // namespace nomura
