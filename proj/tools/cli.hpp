#pragma once

// The occbloom command line, callable in-process so tests can drive it.

#include <iosfwd>
#include <string>
#include <vector>

namespace occbloom::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kVerifyFailed = 3 };

/// `args` excludes the program name. Elements for insert/query are read
/// from `in` unless --in names a file.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::istream& in);

}  // namespace occbloom::cli
