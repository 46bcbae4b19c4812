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
#include <memory>
#include <string>
#include <vector>

#include "exosort/common.hpp"

namespace exosort {

using BlockId = std::uint64_t;
using BlockData = std::shared_ptr<const std::vector<unsigned char>>;

enum class BlockState { kInMemory, kSpilled, kRemote };

// A handle to one immutable byte block (a map slice or a merged block).
// Exactly one location state holds at a time; the size is fixed at creation.
struct BlockRef {
  BlockId id = 0;
  std::uint64_t size_bytes = 0;
  std::string producer_task;
  BlockState state = BlockState::kInMemory;

  BlockData data;                    // kInMemory
  std::filesystem::path spill_path;  // kSpilled
  std::uint32_t remote_worker = 0;   // kRemote
};

BlockRef make_memory_block(BlockId id, BlockData data, std::string producer_task);

// Writes an in-memory block to `path` (staged then renamed, so a retried
// spill overwrites cleanly) and returns the spilled handle.
BlockRef spill_block_to(const BlockRef& block, const std::filesystem::path& path);

// Convenience: spills under `dir` with a name derived from the block id.
BlockRef spill_block(const BlockRef& block, const std::filesystem::path& dir);

// Reads a spilled block back; byte-identical to what was spilled.
std::vector<unsigned char> restore_block(const BlockRef& block);

// Spill file naming contract for merge outputs:
// merge_{worker}_{merge_seq}_{local_reducer}.blk
std::string merge_spill_filename(std::uint32_t worker, std::uint32_t merge_seq,
                                 std::uint32_t local_reducer);

// Deterministic id for the slice of map task `map_index` destined for
// `worker`; identical across retried sends, which is what makes receipt
// idempotent.
inline BlockId slice_block_id(std::uint32_t map_index, std::uint32_t workers,
                              std::uint32_t worker) {
  return static_cast<BlockId>(map_index) * workers + worker;
}

}  // namespace exosort
