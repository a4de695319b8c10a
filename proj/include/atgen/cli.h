/// @file cli.h
/// Command-line front end: validate, generate, regen, export, serve.
/// Exit codes: 0 success, 1 load/validation/generation failure, 2 usage.

#ifndef ATGEN_CLI_H_
#define ATGEN_CLI_H_

#include <ostream>

namespace atgen {

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace atgen

#endif  // ATGEN_CLI_H_
