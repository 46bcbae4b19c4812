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
#include <variant>
#include <vector>

#include "exosort/record.hpp"
#include "exosort/runtime/block.hpp"
#include "exosort/runtime/fault.hpp"
#include "exosort/storage.hpp"

namespace exosort {

// Node ids: workers are 0..W-1; the driver is node W.
using NodeId = std::uint32_t;

// --- control-plane messages (cross the transport) ---

// A map output slice pushed to its target worker's merge controller.
struct SlicePush {
  std::uint32_t map_task = 0;
  NodeId origin = 0;  // worker that ran the map task; receives the ack
  BlockId block_id = 0;
  BlockData bytes;
};

struct Ack {
  BlockId block_id = 0;
};

struct MapOrder {
  std::uint32_t map_index = 0;
  std::uint32_t attempt = 0;
  ObjectKey object;
  std::uint64_t size_bytes = 0;
};

struct ReduceOrder {
  std::uint32_t worker = 0;
  std::uint32_t local_reducer = 0;
  std::uint32_t attempt = 0;
  std::uint32_t expected_blocks = 0;  // one spilled block per merge task
  ObjectKey output;
};

struct FlushOrder {};
struct ShutdownOrder {};

// TCP bootstrap: tells a worker every peer's listen port.
struct StartOrder {
  std::vector<std::uint16_t> peer_ports;
};

struct MapStats {
  double total_seconds = 0;
  double download_seconds = 0;
  double sort_seconds = 0;
  double shuffle_seconds = 0;  // slice sends + ack waits
  std::uint64_t get_requests = 0;
  std::uint64_t records = 0;
};

struct MapDone {
  std::uint32_t map_index = 0;
  std::uint32_t attempt = 0;
  bool ok = false;
  std::string error;
  MapStats stats;
};

struct ReduceStats {
  double total_seconds = 0;
  std::uint64_t put_requests = 0;
  std::uint64_t output_bytes = 0;
  std::uint64_t records = 0;
  Checksum128 checksum;
};

struct ReduceDone {
  std::uint32_t worker = 0;
  std::uint32_t local_reducer = 0;
  std::uint32_t attempt = 0;
  bool ok = false;
  bool retryable = true;  // false: fail the stage without retrying
  std::string error;
  ReduceStats stats;
};

struct FlushDone {
  std::uint32_t worker = 0;
  std::uint32_t merge_count = 0;
  std::uint64_t unique_blocks = 0;
  std::uint64_t duplicate_blocks = 0;
  std::uint64_t spilled_bytes = 0;
};

// A task failed for good on the worker (retries exhausted or a
// non-retryable error); the driver aborts the job with this lineage.
struct TaskFatal {
  std::string task;
  std::string error;
};

struct Heartbeat {
  std::uint32_t worker = 0;
  std::uint16_t listen_port = 0;
};

// --- worker-internal messages (never serialized) ---

struct MergeDone {
  std::uint32_t seq = 0;
  std::uint32_t attempt = 0;
  bool ok = false;
  std::string error;
  std::vector<BlockRef> outputs;  // in-memory, one per local reducer
  std::uint32_t input_blocks = 0;
};

struct SpillDone {
  bool ok = false;
  std::string error;
  std::uint64_t bytes = 0;
};

using Message =
    std::variant<SlicePush, Ack, MapOrder, ReduceOrder, FlushOrder,
                 ShutdownOrder, StartOrder, MapDone, ReduceDone, FlushDone,
                 TaskFatal, Heartbeat, MergeDone, SpillDone>;

struct Envelope {
  NodeId from = 0;
  Message msg;
};

}  // namespace exosort
