#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace posram::cli
{
    /// Runs one command line (without the program name). Exit status 0 means
    /// found or verified, 1 a definite negative answer, 2 a usage or
    /// internal error.
    auto run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err) -> int;
}
