// Copyright 2026 The exabs Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "exabs/errors.hpp"
#include "exabs/evolution.hpp"
#include "exabs/exchange.hpp"
#include "exabs/experiment.hpp"
#include "exabs/hilbert.hpp"
#include "exabs/oracle.hpp"
