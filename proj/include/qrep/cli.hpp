#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace qrep {

// Runs one command line (program name excluded). The report goes to out,
// diagnostics to err. Exit codes: 0 success, 1 verification failure,
// 2 malformed input, 3 a construction asked for outside its hypotheses.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qrep
