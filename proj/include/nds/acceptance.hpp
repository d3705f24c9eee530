#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "nds/paperbench.hpp"

namespace nds {

struct CriterionResult {
    std::string name;
    std::string title;
    bool passed = false;
    std::vector<std::string> details;
};

struct AcceptanceOptions {
    Example41Pieces pieces = example41_pieces();
};

/// Criterion names in suite order.
const std::vector<std::string>& criterion_names();
std::string criterion_title(const std::string& name);

/// Throws std::invalid_argument for an unknown name.
CriterionResult run_criterion(const std::string& name, const AcceptanceOptions& options = {});

/// One line per criterion plus the indented details.
std::string format_result(const CriterionResult& r);

/// Runs the named criteria (all when `only` is empty), prints one line each and a
/// summary, and returns 0 iff every criterion passed, otherwise 1.
int run_verify(const std::vector<std::string>& only, const AcceptanceOptions& options, std::ostream& out);

} // namespace nds
