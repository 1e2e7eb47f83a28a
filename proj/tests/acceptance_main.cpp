// Runs the built-in verification suite and prints one pass/fail line per
// criterion, the same report `fracgreedy verify` produces.
#include <iostream>
#include <string>

#include "fracgreedy/verify.hpp"

int main(int argc, char** argv) {
  fracgreedy::VerifyOptions options;
  if (argc > 1) {
    options.only = argv[1];
  }
  const auto results = fracgreedy::run_verification(options);
  fracgreedy::print_report(std::cout, results);
  return fracgreedy::all_passed(results) ? 0 : 1;
}
