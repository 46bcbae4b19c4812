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

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <vector>

#include "exosort/common.hpp"

namespace exosort {

struct ObjectKey {
  std::string bucket;
  std::string key;

  friend bool operator==(const ObjectKey& a, const ObjectKey& b) {
    return a.bucket == b.bucket && a.key == b.key;
  }
  friend bool operator<(const ObjectKey& a, const ObjectKey& b) {
    return a.bucket != b.bucket ? a.bucket < b.bucket : a.key < b.key;
  }
  std::string str() const { return bucket + "/" + key; }
};

struct RequestCounts {
  std::uint64_t get_count = 0;
  std::uint64_t put_count = 0;
  std::uint64_t bytes_in = 0;   // uploaded
  std::uint64_t bytes_out = 0;  // downloaded
};

class RequestMeter {
 public:
  void add_get(std::uint64_t bytes) {
    gets_.fetch_add(1, std::memory_order_relaxed);
    bytes_out_.fetch_add(bytes, std::memory_order_relaxed);
  }
  void add_put(std::uint64_t bytes) {
    puts_.fetch_add(1, std::memory_order_relaxed);
    bytes_in_.fetch_add(bytes, std::memory_order_relaxed);
  }
  RequestCounts snapshot() const {
    RequestCounts c;
    c.get_count = gets_.load(std::memory_order_relaxed);
    c.put_count = puts_.load(std::memory_order_relaxed);
    c.bytes_in = bytes_in_.load(std::memory_order_relaxed);
    c.bytes_out = bytes_out_.load(std::memory_order_relaxed);
    return c;
  }

 private:
  std::atomic<std::uint64_t> gets_{0};
  std::atomic<std::uint64_t> puts_{0};
  std::atomic<std::uint64_t> bytes_in_{0};
  std::atomic<std::uint64_t> bytes_out_{0};
};

// One in-flight multipart upload. Each uploaded part counts as one PUT
// request; complete() publishes the object atomically and is free.
class MultipartUpload {
 public:
  virtual ~MultipartUpload() = default;
  virtual void upload_part(std::span<const unsigned char> data) = 0;
  virtual void complete() = 0;
  virtual void abort() = 0;
};

// Object-store abstraction. Backends must be safe for concurrent requests;
// every ranged read and part upload is metered.
class ObjectStore {
 public:
  virtual ~ObjectStore() = default;

  virtual bool object_exists(const ObjectKey& key) const = 0;
  // Size lookup; not a metered request. Throws NotFoundError.
  virtual std::uint64_t object_size(const ObjectKey& key) const = 0;
  // One GET request: reads up to out.size() bytes at `offset`, returns the
  // number of bytes read. Counted even when out is empty.
  virtual std::size_t read_range(const ObjectKey& key, std::uint64_t offset,
                                 std::span<unsigned char> out) = 0;
  virtual std::unique_ptr<MultipartUpload> begin_multipart(
      const ObjectKey& key) = 0;
  virtual void remove(const ObjectKey& key) = 0;

  RequestMeter& meter() { return meter_; }
  const RequestMeter& meter() const { return meter_; }

 protected:
  RequestMeter meter_;
};

// ceil(size / chunk), with a 0-byte object costing one request.
std::uint64_t chunked_get_request_count(std::uint64_t size_bytes,
                                        std::uint64_t chunk_bytes);
std::uint64_t multipart_put_request_count(std::uint64_t size_bytes,
                                          std::uint64_t part_bytes);

// Streams an object in fixed-size ranged reads (default 16 MiB chunks at
// the job-config level). Issues exactly chunked_get_request_count requests.
class ChunkedObjectSource : public ByteSource {
 public:
  ChunkedObjectSource(ObjectStore& store, ObjectKey key,
                      std::uint64_t chunk_bytes);
  std::size_t read(std::span<unsigned char> out) override;

  std::uint64_t requests_issued() const { return requests_; }
  std::uint64_t size_bytes() const { return size_; }

 private:
  void fetch_next_chunk();

  ObjectStore* store_;
  ObjectKey key_;
  std::uint64_t chunk_bytes_;
  std::uint64_t size_;
  std::uint64_t offset_ = 0;
  std::uint64_t requests_ = 0;
  std::vector<unsigned char> chunk_;
  std::size_t chunk_pos_ = 0;
  bool done_ = false;
};

// Whole-object convenience wrapper over ChunkedObjectSource.
std::vector<unsigned char> get_object_chunked(ObjectStore& store,
                                              const ObjectKey& key,
                                              std::uint64_t chunk_bytes);

// Buffers writes into fixed-size parts and streams them through a multipart
// upload. Every part except the last is exactly part_bytes; a 0-byte object
// still uploads one empty part. finish() completes the upload and returns
// the object size; the destructor aborts an unfinished upload.
class MultipartWriter : public ByteSink {
 public:
  MultipartWriter(ObjectStore& store, const ObjectKey& key,
                  std::uint64_t part_bytes);
  ~MultipartWriter() override;
  void write(std::span<const unsigned char> data) override;
  std::uint64_t finish();

  std::uint64_t parts_uploaded() const { return parts_; }

 private:
  void flush_part();

  std::unique_ptr<MultipartUpload> upload_;
  std::uint64_t part_bytes_;
  std::vector<unsigned char> buffer_;
  std::uint64_t total_bytes_ = 0;
  std::uint64_t parts_ = 0;
  bool finished_ = false;
};

// Single-shot put, one part.
void put_object(ObjectStore& store, const ObjectKey& key,
                std::span<const unsigned char> data);

// Deterministic, approximately uniform bucket choice for a partition.
std::string assign_bucket(std::uint64_t partition_index,
                          std::span<const std::string> buckets,
                          std::uint64_t seed);

// In-memory backend, for tests and in-process runs.
class MemoryObjectStore : public ObjectStore {
 public:
  bool object_exists(const ObjectKey& key) const override;
  std::uint64_t object_size(const ObjectKey& key) const override;
  std::size_t read_range(const ObjectKey& key, std::uint64_t offset,
                         std::span<unsigned char> out) override;
  std::unique_ptr<MultipartUpload> begin_multipart(
      const ObjectKey& key) override;
  void remove(const ObjectKey& key) override;

 private:
  friend class MemoryMultipartUpload;
  mutable std::mutex mu_;
  std::map<ObjectKey, std::vector<unsigned char>> objects_;
};

// Local-filesystem backend: object (bucket, key) lives at {root}/{bucket}/{key}.
// Multipart uploads stage into a hidden temp file and rename on complete.
class LocalFsObjectStore : public ObjectStore {
 public:
  explicit LocalFsObjectStore(std::filesystem::path root);

  bool object_exists(const ObjectKey& key) const override;
  std::uint64_t object_size(const ObjectKey& key) const override;
  std::size_t read_range(const ObjectKey& key, std::uint64_t offset,
                         std::span<unsigned char> out) override;
  std::unique_ptr<MultipartUpload> begin_multipart(
      const ObjectKey& key) override;
  void remove(const ObjectKey& key) override;

  std::filesystem::path object_path(const ObjectKey& key) const;
  const std::filesystem::path& root() const { return root_; }

 private:
  std::filesystem::path root_;
  std::atomic<std::uint64_t> temp_counter_{0};
};

}  // namespace exosort
