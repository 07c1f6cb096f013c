// Copyright (C) 2026 The duoseed Authors
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "duoseed/cli.hpp"

int main(int argc, char** argv) {
    return duoseed::cli::run(argc, argv, std::cout, std::cerr);
}
