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

#include <array>
#include <cstdint>
#include <cstring>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "exosort/common.hpp"

namespace exosort {

inline constexpr std::size_t kKeyBytes = 10;
inline constexpr std::size_t kRecordBytes = 100;
inline constexpr std::size_t kPayloadBytes = kRecordBytes - kKeyBytes;

// The 100-byte sort record: 10-byte key, 90-byte payload. Records are
// ordered lexicographically by key.
struct Record {
  unsigned char key[kKeyBytes];
  unsigned char payload[kPayloadBytes];
};
static_assert(sizeof(Record) == kRecordBytes, "Record must pack to 100 bytes");

using Key = std::array<unsigned char, kKeyBytes>;

inline Key key_of(const Record& r) {
  Key k;
  std::memcpy(k.data(), r.key, kKeyBytes);
  return k;
}

inline int compare_keys(const unsigned char* a, const unsigned char* b) {
  return std::memcmp(a, b, kKeyBytes);
}

inline bool record_less(const Record& a, const Record& b) {
  return compare_keys(a.key, b.key) < 0;
}

std::string key_hex(const Key& k);
Key key_from_hex(std::string_view hex);

// The first 8 key bytes read as a big-endian unsigned 64-bit integer.
// Integer order on partition keys agrees with lexicographic order on the
// underlying 8-byte prefixes.
using PartitionKey = std::uint64_t;

inline PartitionKey partition_key_of(const Record& r) { return load_be64(r.key); }

// 128-bit order-independent checksum: the sum, modulo 2^128, of a fixed
// 64-bit digest of each record. The empty stream sums to 0.
struct Checksum128 {
  std::uint64_t hi = 0;
  std::uint64_t lo = 0;

  Checksum128& operator+=(std::uint64_t digest) {
    lo += digest;
    if (lo < digest) ++hi;
    return *this;
  }

  Checksum128& operator+=(const Checksum128& other) {
    lo += other.lo;
    if (lo < other.lo) ++hi;
    hi += other.hi;
    return *this;
  }

  friend bool operator==(const Checksum128& a, const Checksum128& b) {
    return a.hi == b.hi && a.lo == b.lo;
  }
  friend bool operator!=(const Checksum128& a, const Checksum128& b) {
    return !(a == b);
  }

  std::string to_hex() const;  // 32 lowercase hex chars
  static Checksum128 from_hex(std::string_view hex);
};

std::uint64_t record_digest(const Record& r);

// Deterministic record synthesis: the bytes of record g are a pure function
// of the global record index g, so generation can start at any offset and
// concatenation of adjacent ranges is byte-identical to one long run.
void make_record(std::uint64_t global_index, Record& out);

// Writes `record_count` records starting at global index
// `global_record_offset` and returns the checksum of the written range.
Checksum128 generate_partition(std::uint64_t global_record_offset,
                               std::uint64_t record_count, ByteSink& sink);

// Checksum of the same range without materializing any bytes.
Checksum128 partition_checksum(std::uint64_t global_record_offset,
                               std::uint64_t record_count);

struct ValidationSummary {
  std::uint64_t record_count = 0;
  std::optional<Key> first_key;
  std::optional<Key> last_key;
  bool is_sorted = true;
  Checksum128 checksum;
};

// Single streaming pass: count, first/last key, non-decreasing check and
// checksum. Throws FormatError (with the offending byte offset) if the
// stream length is not a multiple of the record size.
ValidationSummary validate_partition(ByteSource& stream);

enum class TotalOrderViolation {
  kNone,
  kUnsortedPartition,   // summary i has is_sorted == false
  kBoundary,            // last_key(i) > first_key(i+1)
  kChecksumMismatch,    // sum of checksums != expected input checksum
};

struct TotalOrderReport {
  bool pass = false;
  TotalOrderViolation violation = TotalOrderViolation::kNone;
  // For kUnsortedPartition: the partition; for kBoundary: the left partition
  // of the offending pair.
  std::uint64_t violating_partition = 0;
  std::uint64_t total_records = 0;
  Checksum128 total_checksum;
  std::string message;
};

// Summaries must be given in output-partition order.
TotalOrderReport validate_total(std::span<const ValidationSummary> summaries,
                                const Checksum128& expected_input_checksum);

// Summary file line: `index record_count first_key_hex last_key_hex sorted
// checksum_hex`, keys as 20 hex chars (`-` when the partition is empty),
// sorted as 0/1, checksum as 32 hex chars.
std::string format_summary_line(std::uint64_t index, const ValidationSummary& s);
ValidationSummary parse_summary_line(std::string_view line, std::uint64_t* index_out);

// Pulls whole records out of a byte stream; enforces 100-byte framing.
class RecordStreamReader {
 public:
  explicit RecordStreamReader(ByteSource& source) : source_(&source) {}
  // Returns false at a clean end of stream; throws FormatError on a
  // truncated trailing record.
  bool next(Record& out);
  std::uint64_t bytes_consumed() const { return bytes_consumed_; }

 private:
  ByteSource* source_;
  std::uint64_t bytes_consumed_ = 0;
};

}  // namespace exosort
