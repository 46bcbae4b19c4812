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
#include <vector>

#include "exosort/common.hpp"
#include "exosort/record.hpp"

namespace exosort {

// Upper bounds may be 2^64, which does not fit a PartitionKey; boundary
// values therefore travel as 128-bit integers.
using KeyBound = u128;

inline constexpr KeyBound kKeySpaceEnd = static_cast<KeyBound>(1) << 64;

// Job geometry: M input partitions, W workers, R output partitions,
// R1 = R / W reducers per worker.
struct PartitionPlan {
  std::uint64_t total_bytes = 0;
  std::uint64_t input_partition_bytes = 0;
  std::uint32_t map_partitions = 0;      // M
  std::uint32_t workers = 0;             // W
  std::uint32_t reducers = 0;            // R
  std::uint32_t reducers_per_worker = 0; // R1

  std::uint64_t records_per_partition() const {
    return input_partition_bytes / kRecordBytes;
  }
  std::uint64_t total_records() const {
    return static_cast<std::uint64_t>(map_partitions) * records_per_partition();
  }

  // M is derived: total_bytes must divide exactly into input partitions,
  // input partitions must be whole records, and R must divide by W.
  static PartitionPlan create(std::uint64_t total_bytes,
                              std::uint64_t input_partition_bytes,
                              std::uint32_t workers, std::uint32_t reducers);

  // Count-based construction; permits the degenerate records_per_partition=0
  // geometry used by empty-input runs.
  static PartitionPlan from_counts(std::uint32_t map_partitions,
                                   std::uint64_t records_per_partition,
                                   std::uint32_t workers,
                                   std::uint32_t reducers);
};

struct KeyRange {
  PartitionKey lo = 0;          // inclusive
  KeyBound hi_exclusive = 0;    // exclusive; may equal 2^64

  bool contains(PartitionKey k) const {
    return k >= lo && static_cast<KeyBound>(k) < hi_exclusive;
  }
};

// bound(i) = ceil(i * 2^64 / R). bound(0) = 0, bound(R) = 2^64, and the R
// ranges [bound(i), bound(i+1)) tile [0, 2^64) with sizes differing by at
// most one.
KeyBound reducer_bound(std::uint32_t i, std::uint32_t reducer_count);

// floor(key * R / 2^64); agrees exactly with reducer_bound:
// reducer_of(k) == i iff bound(i) <= k < bound(i+1).
std::uint32_t reducer_of(PartitionKey key, std::uint32_t reducer_count);

std::uint32_t worker_of(PartitionKey key, const PartitionPlan& plan);

KeyRange reducer_range(std::uint32_t i, std::uint32_t reducer_count);

// The R1+1 boundaries of worker w's local reducer ranges,
// i.e. bound(w*R1 + j) for j = 0..R1.
std::vector<KeyBound> local_reducer_bounds(const PartitionPlan& plan,
                                           std::uint32_t worker);

// The W+1 worker range boundaries.
std::vector<KeyBound> worker_bounds(const PartitionPlan& plan);

}  // namespace exosort
