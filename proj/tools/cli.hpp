#pragma once

#include <iosfwd>

namespace qseries::cli
{

// Exit codes: 0 success, 1 mathematical mismatch, 2 usage or input error.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace qseries::cli
