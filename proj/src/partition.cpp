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

#include "exosort/partition.hpp"

namespace exosort {

PartitionPlan PartitionPlan::create(std::uint64_t total_bytes,
                                    std::uint64_t input_partition_bytes,
                                    std::uint32_t workers,
                                    std::uint32_t reducers) {
  if (input_partition_bytes == 0)
    throw ConfigError("input_partition_bytes must be positive");
  if (input_partition_bytes % kRecordBytes != 0)
    throw ConfigError(strformat(
        "input_partition_bytes (%llu) must be a multiple of the record size",
        static_cast<unsigned long long>(input_partition_bytes)));
  if (total_bytes % input_partition_bytes != 0)
    throw ConfigError(strformat(
        "total_bytes (%llu) must divide exactly into %llu-byte partitions",
        static_cast<unsigned long long>(total_bytes),
        static_cast<unsigned long long>(input_partition_bytes)));
  std::uint64_t m = total_bytes / input_partition_bytes;
  if (m == 0) throw ConfigError("plan has zero input partitions");
  if (m > 0xFFFFFFFFull) throw ConfigError("too many input partitions");
  PartitionPlan plan = from_counts(static_cast<std::uint32_t>(m),
                                   input_partition_bytes / kRecordBytes,
                                   workers, reducers);
  return plan;
}

PartitionPlan PartitionPlan::from_counts(std::uint32_t map_partitions,
                                         std::uint64_t records_per_partition,
                                         std::uint32_t workers,
                                         std::uint32_t reducers) {
  if (map_partitions == 0) throw ConfigError("plan has zero input partitions");
  if (workers == 0) throw ConfigError("plan has zero workers");
  if (reducers == 0) throw ConfigError("plan has zero output partitions");
  if (reducers % workers != 0)
    throw ConfigError(strformat(
        "output partitions (%u) must divide evenly across workers (%u)",
        reducers, workers));
  PartitionPlan plan;
  plan.input_partition_bytes = records_per_partition * kRecordBytes;
  plan.total_bytes = plan.input_partition_bytes * map_partitions;
  plan.map_partitions = map_partitions;
  plan.workers = workers;
  plan.reducers = reducers;
  plan.reducers_per_worker = reducers / workers;
  return plan;
}

KeyBound reducer_bound(std::uint32_t i, std::uint32_t reducer_count) {
  if (reducer_count == 0) throw ConfigError("invalid plan: zero reducers");
  if (i > reducer_count)
    throw ConfigError(strformat("boundary index %u exceeds reducer count %u",
                                i, reducer_count));
  // ceil(i * 2^64 / R) in 128-bit arithmetic.
  KeyBound numerator = (static_cast<KeyBound>(i) << 64) + (reducer_count - 1);
  return numerator / reducer_count;
}

std::uint32_t reducer_of(PartitionKey key, std::uint32_t reducer_count) {
  if (reducer_count == 0) throw ConfigError("invalid plan: zero reducers");
  return static_cast<std::uint32_t>(
      (static_cast<KeyBound>(key) * reducer_count) >> 64);
}

std::uint32_t worker_of(PartitionKey key, const PartitionPlan& plan) {
  return reducer_of(key, plan.reducers) / plan.reducers_per_worker;
}

KeyRange reducer_range(std::uint32_t i, std::uint32_t reducer_count) {
  KeyRange r;
  r.lo = static_cast<PartitionKey>(reducer_bound(i, reducer_count));
  r.hi_exclusive = reducer_bound(i + 1, reducer_count);
  return r;
}

std::vector<KeyBound> local_reducer_bounds(const PartitionPlan& plan,
                                           std::uint32_t worker) {
  std::vector<KeyBound> bounds(plan.reducers_per_worker + 1);
  for (std::uint32_t j = 0; j <= plan.reducers_per_worker; ++j)
    bounds[j] = reducer_bound(worker * plan.reducers_per_worker + j,
                              plan.reducers);
  return bounds;
}

std::vector<KeyBound> worker_bounds(const PartitionPlan& plan) {
  std::vector<KeyBound> bounds(plan.workers + 1);
  for (std::uint32_t w = 0; w <= plan.workers; ++w)
    bounds[w] = reducer_bound(w * plan.reducers_per_worker, plan.reducers);
  return bounds;
}

}  // namespace exosort
