// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "bigfloat.hpp"
#include "context.hpp"
#include "errors.hpp"
#include "functions.hpp"
