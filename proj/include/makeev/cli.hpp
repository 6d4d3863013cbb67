#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "makeev/error.hpp"

namespace makeev::cli {

enum ExitCode : int { ok = 0, validation = 2, numerical = 3 };

// Exit code reported for a library failure of the given kind.
int exit_code(ErrorKind kind) noexcept;

// args excludes the program name. JSON goes to --json/--out when given, else
// to out; diagnostics go to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace makeev::cli
