// Copyright 2026 The Exosort Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "exosort/common.hpp"

namespace exosort {

enum class TaskKind : std::uint8_t { kMap = 0, kMerge = 1, kReduce = 2 };

inline const char* task_kind_name(TaskKind k) {
  switch (k) {
    case TaskKind::kMap: return "map";
    case TaskKind::kMerge: return "merge";
    case TaskKind::kReduce: return "reduce";
  }
  return "?";
}

// Human-readable task lineage names used in errors and the event log.
std::string map_task_name(std::uint32_t index, std::uint32_t attempt);
std::string merge_task_name(std::uint32_t worker, std::uint32_t seq,
                            std::uint32_t attempt);
std::string reduce_task_name(std::uint32_t worker, std::uint32_t local_reducer,
                             std::uint32_t attempt);

// Kills one specific task attempt. `a`/`b` are kind-specific coordinates:
// map: (index, -); merge: (worker, merge_seq); reduce: (worker, local_reducer).
struct FaultSpec {
  TaskKind kind = TaskKind::kMap;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
  std::uint32_t attempt = 0;
};

struct FaultPlan {
  std::vector<FaultSpec> faults;

  bool empty() const { return faults.empty(); }

  bool should_fail(TaskKind kind, std::uint32_t a, std::uint32_t b,
                   std::uint32_t attempt) const {
    for (const FaultSpec& f : faults)
      if (f.kind == kind && f.a == a && f.b == b && f.attempt == attempt)
        return true;
    return false;
  }

  void maybe_throw(TaskKind kind, std::uint32_t a, std::uint32_t b,
                   std::uint32_t attempt, const std::string& task_name) const {
    if (should_fail(kind, a, b, attempt))
      throw InjectedFault("injected fault: " + task_name);
  }
};

}  // namespace exosort
