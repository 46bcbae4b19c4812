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
#include <filesystem>
#include <fstream>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace exosort {

// One line of the structured event log. `seq` is a per-log monotonic
// counter; replay tooling orders by it, not by wall-clock ts.
struct Event {
  std::uint64_t seq = 0;
  double ts = 0;
  std::string event;
  std::optional<std::string> task;
  std::optional<std::uint32_t> worker;
  std::optional<std::uint64_t> block;
  std::optional<std::uint64_t> bytes;
  // small open-ended extras (attempt, deferred, status, input counts)
  std::vector<std::pair<std::string, std::string>> extra;

  std::string json() const;
};

// Thread-safe line-delimited JSON event log with an in-memory mirror.
class EventLog {
 public:
  EventLog() = default;  // memory-only
  explicit EventLog(const std::filesystem::path& path);

  void log(Event e);

  // Convenience builder.
  void log(std::string event, std::optional<std::string> task = {},
           std::optional<std::uint32_t> worker = {},
           std::optional<std::uint64_t> block = {},
           std::optional<std::uint64_t> bytes = {},
           std::vector<std::pair<std::string, std::string>> extra = {});

  std::vector<Event> snapshot() const;

  static std::vector<Event> load(const std::filesystem::path& path);

 private:
  mutable std::mutex mu_;
  std::ofstream file_;
  bool to_file_ = false;
  std::uint64_t next_seq_ = 0;
  std::vector<Event> mirror_;
};

// --- replay helpers -------------------------------------------------------
//
// All replay scans walk events in seq order, which reproduces each logging
// site's happens-before order within one process.

// Peak number of simultaneously open [start_event, end_event) intervals for
// one worker (or all workers when `worker` is empty).
int replay_max_concurrent(const std::vector<Event>& events,
                          const std::string& start_event,
                          const std::string& end_event,
                          std::optional<std::uint32_t> worker = {});

// Peak count of buffered-but-unmerged blocks in a worker's merge controller.
int replay_peak_buffered_blocks(const std::vector<Event>& events,
                                std::uint32_t worker);

std::uint64_t replay_count(const std::vector<Event>& events,
                           const std::string& event,
                           std::optional<std::uint32_t> worker = {});

// Count of acknowledgements that were deferred by back pressure.
std::uint64_t replay_deferred_acks(const std::vector<Event>& events,
                                   std::optional<std::uint32_t> worker = {});

// True when no reduce_start precedes the map-stage barrier event.
bool replay_stage_barrier_respected(const std::vector<Event>& events);

}  // namespace exosort
