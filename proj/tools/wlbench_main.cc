//
// wlbench - Copyright 2026 The wlbench Authors.
// SPDX-License-Identifier: Apache-2.0
//

#include <iostream>

#include "cli.h"

int main(int argc, char** argv) {
  return wlbench::cli::run(argc, argv, std::cerr);
}
