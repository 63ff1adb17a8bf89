// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "rai/alpha_wealth.hpp"
#include "rai/csv.hpp"
#include "rai/diagnostics.hpp"
#include "rai/engine.hpp"
#include "rai/error.hpp"
#include "rai/interactions.hpp"
#include "rai/oracle_bounds.hpp"
#include "rai/regression.hpp"
#include "rai/report.hpp"
#include "rai/simulation.hpp"
