// SPDX-License-Identifier: MIT
#include "menukit/cli.hpp"

int main(int argc, char** argv) { return menukit::cli::run(argc, argv); }
