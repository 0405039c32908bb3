#pragma once

#include "jacobs/errors.hpp"

#include <iosfwd>

namespace jacobs::cli {

// 0 ok, 1 internal, 2 usage, 3 domain, 4 precision, 5 budget, 6 solver,
// 7 integrity, 8 compatibility, 9 range, 10 io.
int exit_code(ErrorKind kind);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jacobs::cli
