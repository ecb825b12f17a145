// Copyright 2026 The hexrg Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#define HEXRG_VERSION "0.1.0"
