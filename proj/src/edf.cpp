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

#include "speedsched/edf.hpp"

#include <algorithm>

#include "speedsched/errors.hpp"

namespace speedsched {

std::vector<Slice> edf_schedule(std::vector<EdfItem> items, const StepFunction& profile) {
  std::vector<Slice> slices;
  if (items.empty()) return slices;
  std::sort(items.begin(), items.end(), [](const EdfItem& a, const EdfItem& b) {
    return a.deadline != b.deadline ? a.deadline < b.deadline : a.key < b.key;
  });

  std::vector<Rational> remaining;
  remaining.reserve(items.size());
  Rational t = items.front().release;
  for (const EdfItem& it : items) {
    remaining.push_back(it.volume);
    t = min(t, it.release);
  }

  while (true) {
    int pick = -1;
    for (std::size_t k = 0; k < items.size(); ++k)
      if (!remaining[k].is_zero() && items[k].release <= t) {
        pick = static_cast<int>(k);
        break;
      }
    if (pick < 0) {
      bool any = false;
      Rational next;
      for (std::size_t k = 0; k < items.size(); ++k)
        if (!remaining[k].is_zero()) {
          if (!any || items[k].release < next) next = items[k].release;
          any = true;
        }
      if (!any) break;
      t = next;
      continue;
    }

    const EdfItem& item = items[static_cast<std::size_t>(pick)];
    if (t >= item.deadline)
      throw InternalError("EDF deadline miss for item " + std::to_string(item.key));
    const Rational speed = profile.value_at(t);

    // Run until the next profile breakpoint or release, whichever is first.
    bool bounded = false;
    Rational seg_end;
    for (const Rational& b : profile.bounds())
      if (b > t && (!bounded || b < seg_end)) {
        seg_end = b;
        bounded = true;
      }
    for (std::size_t k = 0; k < items.size(); ++k)
      if (!remaining[k].is_zero() && items[k].release > t &&
          (!bounded || items[k].release < seg_end)) {
        seg_end = items[k].release;
        bounded = true;
      }

    if (speed.is_zero()) {
      if (!bounded)
        throw InternalError("profile exhausted with item " + std::to_string(item.key) +
                            " unfinished");
      t = seg_end;
      continue;
    }

    Rational& rem = remaining[static_cast<std::size_t>(pick)];
    Rational end = t + rem / speed;
    if (bounded && seg_end < end) end = seg_end;
    if (end > item.deadline)
      throw InternalError("EDF deadline miss for item " + std::to_string(item.key));
    rem -= (end - t) * speed;
    if (!slices.empty() && slices.back().job == item.key && slices.back().t1 == t &&
        slices.back().speed == speed)
      slices.back().t1 = end;
    else
      slices.push_back({item.key, t, end, speed});
    t = end;
  }
  return slices;
}

}  // namespace speedsched
