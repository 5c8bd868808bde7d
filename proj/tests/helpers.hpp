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

#include <random>
#include <vector>

#include "speedsched/model.hpp"

namespace speedsched::testing {

inline Rational rat(const char* text) { return *Rational::parse(text); }

/// The 4-job / 2-machine walkthrough instance: alpha = 3, unit weights,
/// volumes (machine x job) = ((1,3,4,2),(2,5,3,1)), windows [0,2], [1,3],
/// [0,5], [1,3].
inline Instance walkthrough_instance() {
  std::vector<Job> jobs(4);
  jobs[0].release = 0; jobs[0].deadline = 2; jobs[0].volume = {Rational(1), Rational(2)};
  jobs[1].release = 1; jobs[1].deadline = 3; jobs[1].volume = {Rational(3), Rational(5)};
  jobs[2].release = 0; jobs[2].deadline = 5; jobs[2].volume = {Rational(4), Rational(3)};
  jobs[3].release = 1; jobs[3].deadline = 3; jobs[3].volume = {Rational(2), Rational(1)};
  for (Job& j : jobs) j.weight = 1;
  return Instance::create(2, Rational(3), std::move(jobs), 3);
}

inline long uniform(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

/// Random unrelated-machines instance for primal-dual property tests.
/// Windows are integer with r < d <= max_time; a pair (i,j) is occasionally
/// unassignable when allow_gaps is set (never leaving a job machineless).
inline Instance random_unrelated(std::mt19937_64& rng, int max_jobs, int max_machines,
                                 int alpha_lo = 2, int alpha_hi = 3, long max_time = 6,
                                 long max_volume = 4, long max_weight = 3,
                                 bool allow_gaps = true) {
  const int n = static_cast<int>(uniform(rng, 1, max_jobs));
  const int m = static_cast<int>(uniform(rng, 1, max_machines));
  const int alpha = static_cast<int>(uniform(rng, alpha_lo, alpha_hi));
  std::vector<Job> jobs(static_cast<std::size_t>(n));
  for (Job& job : jobs) {
    const long r = uniform(rng, 0, max_time - 1);
    job.release = Rational(r);
    job.deadline = Rational(uniform(rng, r + 1, max_time));
    job.weight = uniform(rng, 1, max_weight);
    const int home = static_cast<int>(uniform(rng, 0, m - 1));
    for (int i = 0; i < m; ++i) {
      const bool gap = allow_gaps && i != home && uniform(rng, 0, 4) == 0;
      if (gap)
        job.volume.emplace_back(std::nullopt);
      else
        job.volume.emplace_back(Rational(uniform(rng, 1, max_volume)));
    }
  }
  return Instance::create(m, Rational(alpha), std::move(jobs));
}

}  // namespace speedsched::testing
