// SPDX-License-Identifier: MIT
#include "fhd/cli.hpp"

int main(int argc, char** argv) { return fhd::cli::main(argc, argv); }
