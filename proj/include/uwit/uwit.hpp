// Copyright 2026 The uwit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef UWIT_UWIT_HPP
#define UWIT_UWIT_HPP

#include "uwit/collective.hpp"
#include "uwit/invariants.hpp"
#include "uwit/linalg.hpp"
#include "uwit/matrix.hpp"
#include "uwit/measurement.hpp"
#include "uwit/random.hpp"
#include "uwit/state_io.hpp"
#include "uwit/states.hpp"
#include "uwit/verify.hpp"
#include "uwit/witness.hpp"

#endif  // UWIT_UWIT_HPP
