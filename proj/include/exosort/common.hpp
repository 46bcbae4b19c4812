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

#include <cstdarg>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exosort {

using u128 = unsigned __int128;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad job/cluster configuration. CLI maps this to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed on-disk or on-wire data.
class FormatError : public Error {
 public:
  FormatError(const std::string& msg, std::uint64_t byte_offset)
      : Error(msg), byte_offset(byte_offset) {}
  explicit FormatError(const std::string& msg) : Error(msg), byte_offset(0) {}
  std::uint64_t byte_offset;
};

// A caller violated a documented precondition (e.g. fed an unsorted run
// into a merge).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class NotFoundError : public Error {
 public:
  using Error::Error;
};

class StorageError : public Error {
 public:
  explicit StorageError(const std::string& msg, bool retryable = true)
      : Error(msg), retryable(retryable) {}
  bool retryable;
};

// A task or job failed for good; carries the task lineage string.
class JobError : public Error {
 public:
  JobError(std::string task, const std::string& msg)
      : Error(msg), task(std::move(task)) {}
  std::string task;
};

// Thrown by the fault-injection hooks to emulate a killed task attempt.
class InjectedFault : public Error {
 public:
  using Error::Error;
};

inline std::string strformat(const char* fmt, ...) {
  va_list args;
  va_start(args, fmt);
  va_list copy;
  va_copy(copy, args);
  int n = std::vsnprintf(nullptr, 0, fmt, copy);
  va_end(copy);
  std::string out(n > 0 ? static_cast<std::size_t>(n) : 0, '\0');
  if (n > 0) std::vsnprintf(out.data(), out.size() + 1, fmt, args);
  va_end(args);
  return out;
}

// --- big-endian load/store ---

inline void store_be16(unsigned char* p, std::uint16_t v) {
  p[0] = static_cast<unsigned char>(v >> 8);
  p[1] = static_cast<unsigned char>(v);
}

inline void store_be32(unsigned char* p, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) p[i] = static_cast<unsigned char>(v >> (24 - 8 * i));
}

inline void store_be64(unsigned char* p, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) p[i] = static_cast<unsigned char>(v >> (56 - 8 * i));
}

inline std::uint16_t load_be16(const unsigned char* p) {
  return static_cast<std::uint16_t>((p[0] << 8) | p[1]);
}

inline std::uint32_t load_be32(const unsigned char* p) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) v = (v << 8) | p[i];
  return v;
}

inline std::uint64_t load_be64(const unsigned char* p) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v = (v << 8) | p[i];
  return v;
}

// --- hex ---

std::string to_hex(std::span<const unsigned char> bytes);
std::vector<unsigned char> from_hex(std::string_view hex);

// splitmix64 finalizer; the generator's fixed 64-bit mixing function.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// --- minimal byte-stream interfaces ---

class ByteSink {
 public:
  virtual ~ByteSink() = default;
  virtual void write(std::span<const unsigned char> data) = 0;
};

class ByteSource {
 public:
  virtual ~ByteSource() = default;
  // Fills up to out.size() bytes; returns bytes read, 0 at end of stream.
  virtual std::size_t read(std::span<unsigned char> out) = 0;
};

class VectorSink : public ByteSink {
 public:
  void write(std::span<const unsigned char> data) override {
    bytes.insert(bytes.end(), data.begin(), data.end());
  }
  std::vector<unsigned char> bytes;
};

class SpanSource : public ByteSource {
 public:
  explicit SpanSource(std::span<const unsigned char> data) : data_(data) {}
  std::size_t read(std::span<unsigned char> out) override {
    std::size_t n = std::min(out.size(), data_.size() - pos_);
    std::copy_n(data_.data() + pos_, n, out.data());
    pos_ += n;
    return n;
  }

 private:
  std::span<const unsigned char> data_;
  std::size_t pos_ = 0;
};

class FileSink : public ByteSink {
 public:
  explicit FileSink(const std::string& path);
  void write(std::span<const unsigned char> data) override;

 private:
  std::ofstream out_;
  std::string path_;
};

class FileSource : public ByteSource {
 public:
  explicit FileSource(const std::string& path);
  std::size_t read(std::span<unsigned char> out) override;

 private:
  std::ifstream in_;
  std::string path_;
};

}  // namespace exosort
