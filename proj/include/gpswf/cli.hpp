#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace gpswf::cli {

enum ExitCode { Ok = 0, Usage = 1, BoundViolated = 2, Runtime = 3 };

// args excludes the program name. Output goes to `out` unless --out is given.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// %.17g, with null for non-finite values (JSON) or inf/nan spelled out (CSV)
std::string format_real(double v);

}  // namespace gpswf::cli
