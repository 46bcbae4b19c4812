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
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "exosort/partition.hpp"
#include "exosort/record.hpp"

namespace exosort {

// A record-aligned buffer whose records are non-decreasing by 10-byte key.
struct SortedRun {
  std::vector<unsigned char> bytes;
  std::optional<KeyRange> key_range;

  std::size_t record_count() const { return bytes.size() / kRecordBytes; }
  std::span<const Record> records() const {
    return {reinterpret_cast<const Record*>(bytes.data()), record_count()};
  }
};

// Sorts a raw record buffer and slices it into one sorted run per worker
// range. Record payloads move once, during materialization; the sort itself
// permutes record pointers only. The concatenation of the returned slices is
// the fully sorted input.
std::vector<SortedRun> sort_and_slice(std::span<const unsigned char> buffer,
                                      const PartitionPlan& plan);

// Single-pass k-way merge of sorted runs into one sorted block per local
// reducer range. `local_bounds` holds R1+1 boundaries; all input keys must
// lie in [local_bounds.front(), local_bounds.back()). Ties between equal
// keys go to the lowest run index. Throws ContractViolation (naming the
// run) if an input run turns out not to be sorted.
std::vector<SortedRun> merge_runs(std::span<const std::span<const Record>> runs,
                                  std::span<const KeyBound> local_bounds);

// A pull source of records, already sorted by the producer.
class RecordSource {
 public:
  virtual ~RecordSource() = default;
  // Returns false at end of stream.
  virtual bool next(Record& out) = 0;
};

class SpanRecordSource : public RecordSource {
 public:
  explicit SpanRecordSource(std::span<const Record> records)
      : records_(records) {}
  bool next(Record& out) override {
    if (pos_ == records_.size()) return false;
    out = records_[pos_++];
    return true;
  }

 private:
  std::span<const Record> records_;
  std::size_t pos_ = 0;
};

class ByteSourceRecordSource : public RecordSource {
 public:
  explicit ByteSourceRecordSource(std::unique_ptr<ByteSource> source)
      : source_(std::move(source)), reader_(*source_) {}
  bool next(Record& out) override { return reader_.next(out); }

 private:
  std::unique_ptr<ByteSource> source_;
  RecordStreamReader reader_;
};

// Merges k sorted sources into one sorted stream with bounded memory: one
// buffered record per source. Source read failures propagate wrapped with
// the source index; a source that yields out-of-order records trips a
// ContractViolation naming it.
class MergingRecordSource : public RecordSource {
 public:
  explicit MergingRecordSource(
      std::vector<std::unique_ptr<RecordSource>> sources);
  bool next(Record& out) override;

  std::size_t buffered_records() const { return heap_.size(); }
  std::size_t peak_buffered_records() const { return peak_buffered_; }

 private:
  struct Entry {
    Record record;
    std::size_t source;
  };
  bool entry_before(const Entry& a, const Entry& b) const;
  void heap_push(Entry e);
  Entry heap_pop();
  void refill(std::size_t source_index);

  std::vector<std::unique_ptr<RecordSource>> sources_;
  std::vector<Entry> heap_;
  std::vector<Key> last_key_;
  std::vector<bool> have_last_;
  std::size_t peak_buffered_ = 0;
};

}  // namespace exosort
