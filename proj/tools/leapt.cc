#include <exception>
#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  try {
    return leapt::cli::run(std::vector<std::string>(argv + 1, argv + argc));
  } catch (const std::exception& e) {
    std::cerr << "leapt: " << e.what() << '\n';
    return 1;
  }
}
