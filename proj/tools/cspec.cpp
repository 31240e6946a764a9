#include <unistd.h>

#include <cstdio>
#include <iostream>

#include "cspec/cli.hpp"

int main(int argc, char** argv) {
  return cspec::cli::main_entry(argc, argv, std::cout, std::cerr, ::isatty(::fileno(stdout)) != 0);
}
