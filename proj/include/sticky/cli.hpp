// Command-line front end. run_cli() is the whole program; the executable in
// tools/ only forwards argv.

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sticky::cli {

enum ExitCode : int {
    kSuccess = 0,
    kVerificationFailure = 1,
    kInputError = 2,
};

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Test-function specs accepted by `gas --test-function`:
//   standard            the three built-ins spread over the relevant range
//   bump:CENTER:RADIUS
//   bspline:CENTER:WIDTH
// Throws Error(ParseError) on anything else.
struct TestFunctionSpec {
    std::string kind;  // "standard", "bump" or "bspline"
    double center = 0.0;
    double scale = 0.0;
};
TestFunctionSpec parse_test_function_spec(const std::string& text);

// "t1:t2"
std::pair<double, double> parse_window(const std::string& text);

}  // namespace sticky::cli
