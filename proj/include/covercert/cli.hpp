#ifndef COVERCERT_CLI_HPP
#define COVERCERT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace covercert::cli {

/// Runs the command line front end. Exit codes: 0 = COVERS / certificate
/// obtained / FOUND-or-clean-EXHAUSTED / report printed; 1 = does-not-cover
/// witness / INCONCLUSIVE / BUDGET; 2 = usage or input error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace covercert::cli

#endif
