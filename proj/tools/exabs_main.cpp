// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

#include "exabs/cli.hpp"

int main(int argc, char **argv) { return exabs::cli::run(argc, argv); }
