#include <exception>
#include <iostream>

#include "kronsync/cli.hpp"

int main(int argc, char** argv) {
  try {
    return kronsync::run_cli(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kronsync::kExitNumerical;
  }
}
