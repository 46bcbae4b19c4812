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

#include "exosort/sortlib.hpp"

#include <algorithm>
#include <cstring>

namespace exosort {

std::vector<SortedRun> sort_and_slice(std::span<const unsigned char> buffer,
                                      const PartitionPlan& plan) {
  if (buffer.size() % kRecordBytes != 0)
    throw FormatError(
        strformat("record buffer length %zu is not a multiple of %zu",
                  buffer.size(), kRecordBytes),
        buffer.size() - buffer.size() % kRecordBytes);

  const std::size_t n = buffer.size() / kRecordBytes;
  const Record* records = reinterpret_cast<const Record*>(buffer.data());

  std::vector<const Record*> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = records + i;
  std::sort(order.begin(), order.end(), [](const Record* a, const Record* b) {
    return compare_keys(a->key, b->key) < 0;
  });

  std::vector<KeyBound> bounds = worker_bounds(plan);
  std::vector<SortedRun> slices(plan.workers);
  for (std::uint32_t w = 0; w < plan.workers; ++w) {
    slices[w].key_range =
        KeyRange{static_cast<PartitionKey>(bounds[w]), bounds[w + 1]};
  }

  // Sorted order visits workers monotonically, so one forward walk
  // materializes every slice.
  std::uint32_t w = 0;
  for (std::size_t i = 0; i < n; ++i) {
    PartitionKey pk = partition_key_of(*order[i]);
    while (static_cast<KeyBound>(pk) >= bounds[w + 1]) ++w;
    auto& dst = slices[w].bytes;
    const unsigned char* src = reinterpret_cast<const unsigned char*>(order[i]);
    dst.insert(dst.end(), src, src + kRecordBytes);
  }
  return slices;
}

std::vector<SortedRun> merge_runs(std::span<const std::span<const Record>> runs,
                                  std::span<const KeyBound> local_bounds) {
  if (local_bounds.size() < 2)
    throw ContractViolation("merge_runs needs at least one reducer range");
  const std::size_t reducer_count = local_bounds.size() - 1;

  struct Cursor {
    const Record* pos;
    const Record* end;
  };
  std::vector<Cursor> cursors(runs.size());
  std::size_t total_records = 0;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    cursors[i] = {runs[i].data(), runs[i].data() + runs[i].size()};
    total_records += runs[i].size();
  }

  // Binary min-heap of run heads ordered by (key, run index).
  std::vector<std::size_t> heap;
  heap.reserve(runs.size());
  auto before = [&cursors](std::size_t a, std::size_t b) {
    int c = compare_keys(cursors[a].pos->key, cursors[b].pos->key);
    return c < 0 || (c == 0 && a < b);
  };
  auto sift_up = [&](std::size_t i) {
    while (i > 0) {
      std::size_t parent = (i - 1) / 2;
      if (!before(heap[i], heap[parent])) break;
      std::swap(heap[i], heap[parent]);
      i = parent;
    }
  };
  auto sift_down = [&](std::size_t i) {
    for (;;) {
      std::size_t smallest = i;
      for (std::size_t child = 2 * i + 1; child <= 2 * i + 2; ++child)
        if (child < heap.size() && before(heap[child], heap[smallest]))
          smallest = child;
      if (smallest == i) break;
      std::swap(heap[i], heap[smallest]);
      i = smallest;
    }
  };

  for (std::size_t i = 0; i < runs.size(); ++i) {
    if (cursors[i].pos != cursors[i].end) {
      heap.push_back(i);
      sift_up(heap.size() - 1);
    }
  }

  std::vector<SortedRun> out(reducer_count);
  for (std::size_t j = 0; j < reducer_count; ++j) {
    out[j].key_range = KeyRange{static_cast<PartitionKey>(local_bounds[j]),
                                local_bounds[j + 1]};
  }

  std::size_t j = 0;  // current output reducer, advances monotonically
  while (!heap.empty()) {
    std::size_t run = heap[0];
    const Record* rec = cursors[run].pos;

    PartitionKey pk = partition_key_of(*rec);
    if (static_cast<KeyBound>(pk) < local_bounds.front() ||
        static_cast<KeyBound>(pk) >= local_bounds.back())
      throw ContractViolation(strformat(
          "run %zu holds a key outside this worker's range", run));
    while (static_cast<KeyBound>(pk) >= local_bounds[j + 1]) ++j;
    const unsigned char* src = reinterpret_cast<const unsigned char*>(rec);
    out[j].bytes.insert(out[j].bytes.end(), src, src + kRecordBytes);

    ++cursors[run].pos;
    if (cursors[run].pos == cursors[run].end) {
      heap[0] = heap.back();
      heap.pop_back();
    } else {
      if (compare_keys(rec->key, cursors[run].pos->key) > 0)
        throw ContractViolation(
            strformat("input run %zu is not sorted", run));
      // head advanced; restore heap order
    }
    if (!heap.empty()) sift_down(0);
  }

  std::size_t out_records = 0;
  for (const auto& block : out) out_records += block.record_count();
  if (out_records != total_records)
    throw ContractViolation("merge lost records");  // unreachable by design
  return out;
}

MergingRecordSource::MergingRecordSource(
    std::vector<std::unique_ptr<RecordSource>> sources)
    : sources_(std::move(sources)),
      last_key_(sources_.size()),
      have_last_(sources_.size(), false) {
  heap_.reserve(sources_.size());
  for (std::size_t i = 0; i < sources_.size(); ++i) refill(i);
  peak_buffered_ = heap_.size();
}

bool MergingRecordSource::entry_before(const Entry& a, const Entry& b) const {
  int c = compare_keys(a.record.key, b.record.key);
  return c < 0 || (c == 0 && a.source < b.source);
}

void MergingRecordSource::heap_push(Entry e) {
  heap_.push_back(e);
  std::size_t i = heap_.size() - 1;
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!entry_before(heap_[i], heap_[parent])) break;
    std::swap(heap_[i], heap_[parent]);
    i = parent;
  }
  peak_buffered_ = std::max(peak_buffered_, heap_.size());
}

MergingRecordSource::Entry MergingRecordSource::heap_pop() {
  Entry top = heap_.front();
  heap_.front() = heap_.back();
  heap_.pop_back();
  std::size_t i = 0;
  for (;;) {
    std::size_t smallest = i;
    for (std::size_t child = 2 * i + 1; child <= 2 * i + 2; ++child)
      if (child < heap_.size() && entry_before(heap_[child], heap_[smallest]))
        smallest = child;
    if (smallest == i) break;
    std::swap(heap_[i], heap_[smallest]);
    i = smallest;
  }
  return top;
}

void MergingRecordSource::refill(std::size_t source_index) {
  Entry e;
  e.source = source_index;
  bool more;
  try {
    more = sources_[source_index]->next(e.record);
  } catch (const std::exception& ex) {
    throw StorageError(strformat("merge source %zu failed: %s", source_index,
                                 ex.what()),
                       false);
  }
  if (!more) return;
  if (have_last_[source_index] &&
      std::memcmp(last_key_[source_index].data(), e.record.key, kKeyBytes) > 0)
    throw ContractViolation(
        strformat("merge source %zu yielded out-of-order records",
                  source_index));
  last_key_[source_index] = key_of(e.record);
  have_last_[source_index] = true;
  heap_push(e);
}

bool MergingRecordSource::next(Record& out) {
  if (heap_.empty()) return false;
  Entry top = heap_pop();
  out = top.record;
  refill(top.source);
  return true;
}

}  // namespace exosort
