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

#include "exosort/record.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>

namespace exosort {

namespace {

// Distinct input streams for the three derived quantities of a record.
constexpr std::uint64_t kKeyTailSalt = 0x7C9A1F3B5D60E2F1ull;
constexpr std::uint64_t kPayloadSalt = 0xA5B35E1CD9F27843ull;

constexpr std::uint64_t kFnvOffset = 1469598103934665603ull;
constexpr std::uint64_t kFnvPrime = 1099511628211ull;

}  // namespace

std::string key_hex(const Key& k) { return to_hex(std::span(k.data(), k.size())); }

Key key_from_hex(std::string_view hex) {
  if (hex.size() != 2 * kKeyBytes) throw FormatError("key hex must be 20 chars");
  auto bytes = from_hex(hex);
  Key k;
  std::copy_n(bytes.begin(), kKeyBytes, k.begin());
  return k;
}

std::string Checksum128::to_hex() const {
  unsigned char buf[16];
  store_be64(buf, hi);
  store_be64(buf + 8, lo);
  return exosort::to_hex(buf);
}

Checksum128 Checksum128::from_hex(std::string_view hex) {
  if (hex.size() != 32) throw FormatError("checksum hex must be 32 chars");
  auto bytes = exosort::from_hex(hex);
  Checksum128 c;
  c.hi = load_be64(bytes.data());
  c.lo = load_be64(bytes.data() + 8);
  return c;
}

std::uint64_t record_digest(const Record& r) {
  const unsigned char* p = reinterpret_cast<const unsigned char*>(&r);
  std::uint64_t h = kFnvOffset;
  for (std::size_t i = 0; i < kRecordBytes; ++i) {
    h ^= p[i];
    h *= kFnvPrime;
  }
  return h;
}

void make_record(std::uint64_t g, Record& out) {
  // Key prefix: one mixed word, big-endian, so the 64-bit partition key of
  // record g is exactly mix64(g) and keys are uniform over the key space.
  std::uint64_t prefix = mix64(g);
  store_be64(out.key, prefix);
  std::uint64_t tail = mix64(g ^ kKeyTailSalt);
  out.key[8] = static_cast<unsigned char>(tail >> 56);
  out.key[9] = static_cast<unsigned char>(tail >> 48);

  // Counter-based payload expansion: 90 bytes = 11 full words + 2 bytes.
  std::uint64_t seed = mix64(g ^ kPayloadSalt);
  unsigned char word[8];
  for (std::size_t j = 0; j < kPayloadBytes / 8; ++j) {
    store_be64(word, mix64(seed + j));
    std::memcpy(out.payload + 8 * j, word, 8);
  }
  store_be64(word, mix64(seed + kPayloadBytes / 8));
  std::memcpy(out.payload + 8 * (kPayloadBytes / 8), word, kPayloadBytes % 8);
}

Checksum128 generate_partition(std::uint64_t global_record_offset,
                               std::uint64_t record_count, ByteSink& sink) {
  constexpr std::size_t kBatchRecords = 4096;
  std::vector<Record> batch(std::min<std::uint64_t>(kBatchRecords, record_count));
  Checksum128 sum;
  std::uint64_t written = 0;
  while (written < record_count) {
    std::size_t n = static_cast<std::size_t>(
        std::min<std::uint64_t>(kBatchRecords, record_count - written));
    for (std::size_t i = 0; i < n; ++i) {
      make_record(global_record_offset + written + i, batch[i]);
      sum += record_digest(batch[i]);
    }
    sink.write(std::span(reinterpret_cast<const unsigned char*>(batch.data()),
                         n * kRecordBytes));
    written += n;
  }
  return sum;
}

Checksum128 partition_checksum(std::uint64_t global_record_offset,
                               std::uint64_t record_count) {
  Checksum128 sum;
  Record r;
  for (std::uint64_t i = 0; i < record_count; ++i) {
    make_record(global_record_offset + i, r);
    sum += record_digest(r);
  }
  return sum;
}

bool RecordStreamReader::next(Record& out) {
  unsigned char* dst = reinterpret_cast<unsigned char*>(&out);
  std::size_t have = 0;
  while (have < kRecordBytes) {
    std::size_t got = source_->read(std::span(dst + have, kRecordBytes - have));
    if (got == 0) {
      if (have == 0) return false;
      throw FormatError(
          strformat("stream length is not a multiple of %zu: truncated record "
                    "starts at byte %llu",
                    kRecordBytes,
                    static_cast<unsigned long long>(bytes_consumed_)),
          bytes_consumed_);
    }
    have += got;
  }
  bytes_consumed_ += kRecordBytes;
  return true;
}

ValidationSummary validate_partition(ByteSource& stream) {
  ValidationSummary s;
  RecordStreamReader reader(stream);
  Record r;
  Key prev{};
  while (reader.next(r)) {
    Key k = key_of(r);
    if (s.record_count == 0) {
      s.first_key = k;
    } else if (s.is_sorted &&
               std::memcmp(prev.data(), k.data(), kKeyBytes) > 0) {
      s.is_sorted = false;
    }
    prev = k;
    s.checksum += record_digest(r);
    ++s.record_count;
  }
  if (s.record_count > 0) s.last_key = prev;
  return s;
}

TotalOrderReport validate_total(std::span<const ValidationSummary> summaries,
                                const Checksum128& expected_input_checksum) {
  TotalOrderReport report;
  Checksum128 sum;
  const Key* prev_last = nullptr;
  std::uint64_t prev_index = 0;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    const ValidationSummary& s = summaries[i];
    if (!s.is_sorted) {
      report.violation = TotalOrderViolation::kUnsortedPartition;
      report.violating_partition = i;
      report.message = strformat("partition %zu is not sorted", i);
      return report;
    }
    if (s.record_count > 0) {
      if (prev_last != nullptr &&
          std::memcmp(prev_last->data(), s.first_key->data(), kKeyBytes) > 0) {
        report.violation = TotalOrderViolation::kBoundary;
        report.violating_partition = prev_index;
        report.message = strformat(
            "boundary violation between partitions %llu and %zu",
            static_cast<unsigned long long>(prev_index), i);
        return report;
      }
      prev_last = &*s.last_key;
      prev_index = i;
    }
    sum += s.checksum;
    report.total_records += s.record_count;
  }
  report.total_checksum = sum;
  if (sum != expected_input_checksum) {
    report.violation = TotalOrderViolation::kChecksumMismatch;
    report.message = strformat("output checksum %s != input checksum %s",
                               sum.to_hex().c_str(),
                               expected_input_checksum.to_hex().c_str());
    return report;
  }
  report.pass = true;
  return report;
}

std::string format_summary_line(std::uint64_t index, const ValidationSummary& s) {
  std::string first = s.first_key ? key_hex(*s.first_key) : "-";
  std::string last = s.last_key ? key_hex(*s.last_key) : "-";
  return strformat("%llu %llu %s %s %d %s",
                   static_cast<unsigned long long>(index),
                   static_cast<unsigned long long>(s.record_count),
                   first.c_str(), last.c_str(), s.is_sorted ? 1 : 0,
                   s.checksum.to_hex().c_str());
}

namespace {
std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ') ++end;
    if (end > pos) fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::uint64_t parse_u64_field(std::string_view f, const char* what) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (ec != std::errc() || ptr != f.data() + f.size())
    throw FormatError(strformat("bad %s field in summary line", what));
  return v;
}
}  // namespace

ValidationSummary parse_summary_line(std::string_view line,
                                     std::uint64_t* index_out) {
  auto fields = split_fields(line);
  if (fields.size() != 6)
    throw FormatError("summary line must have 6 fields");
  ValidationSummary s;
  std::uint64_t index = parse_u64_field(fields[0], "index");
  s.record_count = parse_u64_field(fields[1], "record_count");
  if (fields[2] != "-") s.first_key = key_from_hex(fields[2]);
  if (fields[3] != "-") s.last_key = key_from_hex(fields[3]);
  if (fields[4] == "1" || fields[4] == "true")
    s.is_sorted = true;
  else if (fields[4] == "0" || fields[4] == "false")
    s.is_sorted = false;
  else
    throw FormatError("bad sorted field in summary line");
  s.checksum = Checksum128::from_hex(fields[5]);
  if ((s.record_count == 0) != (!s.first_key && !s.last_key))
    throw FormatError("summary line count/key presence mismatch");
  if (index_out != nullptr) *index_out = index;
  return s;
}

}  // namespace exosort
