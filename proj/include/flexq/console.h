#pragma once

#include <iosfwd>
#include <string>

#include "flexq/engine.h"
#include "flexq/executor.h"

namespace flexq {

// Plain-text table; cells wider than max_width are cut with "...".
std::string format_grid(const ResultSet& rs, size_t max_width = 24);

// Interactive loop: query -> SQL -> results -> accept/reject prompt.
// Ends on EOF or ":quit". Returns the number of queries answered.
int run_repl(Engine& engine, std::istream& in, std::ostream& out);

}  // namespace flexq
