// Copyright 2026 the speedsched authors
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

#include <vector>

#include "speedsched/model.hpp"
#include "speedsched/step_function.hpp"

namespace speedsched {

struct EdfItem {
  int key = 0;  // becomes Slice::job
  Rational release, deadline, volume;
};

/// Preemptive earliest-deadline-first simulation on one machine running at
/// the profile's speed: at any time the released unfinished item with the
/// smallest (deadline, key) runs. Every item must complete by its deadline
/// and the profile must carry enough volume; otherwise InternalError.
std::vector<Slice> edf_schedule(std::vector<EdfItem> items, const StepFunction& profile);

}  // namespace speedsched
