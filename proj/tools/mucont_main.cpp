#include <iostream>
#include <string>
#include <vector>

#include "mucont/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  const auto result = mucont::cli::run(args, std::cin);
  std::cout << result.report;
  if (!result.error.empty()) std::cerr << "mucont: " << result.error << "\n";
  return result.exit_code;
}
