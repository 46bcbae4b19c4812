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

#include "exosort/runtime/block.hpp"

#include <fstream>
#include <system_error>

namespace exosort {

namespace fs = std::filesystem;

BlockRef make_memory_block(BlockId id, BlockData data,
                           std::string producer_task) {
  BlockRef ref;
  ref.id = id;
  ref.size_bytes = data ? data->size() : 0;
  ref.producer_task = std::move(producer_task);
  ref.state = BlockState::kInMemory;
  ref.data = std::move(data);
  return ref;
}

BlockRef spill_block_to(const BlockRef& block, const fs::path& path) {
  if (block.state != BlockState::kInMemory)
    throw ContractViolation("only in-memory blocks can be spilled");
  fs::create_directories(path.parent_path());
  fs::path temp = path;
  temp += ".tmp";
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw StorageError("cannot open spill file: " + temp.string());
    if (block.data && !block.data->empty()) {
      out.write(reinterpret_cast<const char*>(block.data->data()),
                static_cast<std::streamsize>(block.data->size()));
    }
    if (!out) throw StorageError("spill write failed: " + temp.string());
  }
  std::error_code ec;
  fs::rename(temp, path, ec);
  if (ec) throw StorageError("cannot publish spill file: " + path.string());

  BlockRef spilled = block;
  spilled.state = BlockState::kSpilled;
  spilled.data.reset();
  spilled.spill_path = path;
  return spilled;
}

BlockRef spill_block(const BlockRef& block, const fs::path& dir) {
  return spill_block_to(
      block, dir / strformat("block_%llu.blk",
                             static_cast<unsigned long long>(block.id)));
}

std::vector<unsigned char> restore_block(const BlockRef& block) {
  if (block.state == BlockState::kInMemory)
    return block.data ? *block.data : std::vector<unsigned char>{};
  if (block.state != BlockState::kSpilled)
    throw ContractViolation("cannot restore a remote block locally");
  std::ifstream in(block.spill_path, std::ios::binary);
  if (!in)
    throw StorageError("missing spill file: " + block.spill_path.string());
  std::vector<unsigned char> bytes(
      static_cast<std::size_t>(fs::file_size(block.spill_path)));
  if (!bytes.empty())
    in.read(reinterpret_cast<char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!in) throw StorageError("restore read failed: " + block.spill_path.string());
  if (bytes.size() != block.size_bytes)
    throw StorageError(
        strformat("spill file %s has %zu bytes, expected %llu",
                  block.spill_path.string().c_str(), bytes.size(),
                  static_cast<unsigned long long>(block.size_bytes)));
  return bytes;
}

std::string merge_spill_filename(std::uint32_t worker, std::uint32_t merge_seq,
                                 std::uint32_t local_reducer) {
  return strformat("merge_%u_%u_%u.blk", worker, merge_seq, local_reducer);
}

}  // namespace exosort
