// Copyright 2026 The fermient Authors
// SPDX-License-Identifier: Apache-2.0

#include "fermient/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return fermient::cli::run(argc, argv, std::cout, std::cerr); }
