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

#include "exosort/storage.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <system_error>

namespace exosort {

namespace fs = std::filesystem;

std::uint64_t chunked_get_request_count(std::uint64_t size_bytes,
                                        std::uint64_t chunk_bytes) {
  if (chunk_bytes == 0) throw ConfigError("chunk size must be positive");
  if (size_bytes == 0) return 1;
  return (size_bytes + chunk_bytes - 1) / chunk_bytes;
}

std::uint64_t multipart_put_request_count(std::uint64_t size_bytes,
                                          std::uint64_t part_bytes) {
  if (part_bytes == 0) throw ConfigError("part size must be positive");
  if (size_bytes == 0) return 1;
  return (size_bytes + part_bytes - 1) / part_bytes;
}

ChunkedObjectSource::ChunkedObjectSource(ObjectStore& store, ObjectKey key,
                                         std::uint64_t chunk_bytes)
    : store_(&store), key_(std::move(key)), chunk_bytes_(chunk_bytes) {
  if (chunk_bytes_ == 0) throw ConfigError("chunk size must be positive");
  size_ = store_->object_size(key_);
}

void ChunkedObjectSource::fetch_next_chunk() {
  std::uint64_t remaining = size_ - offset_;
  std::uint64_t want = std::min(chunk_bytes_, remaining);
  chunk_.resize(static_cast<std::size_t>(want));
  std::size_t got = store_->read_range(key_, offset_, chunk_);
  ++requests_;
  if (got != want)
    throw StorageError(strformat("short read on %s at offset %llu",
                                 key_.str().c_str(),
                                 static_cast<unsigned long long>(offset_)));
  chunk_.resize(got);
  chunk_pos_ = 0;
  offset_ += got;
  if (offset_ >= size_) done_ = true;
}

std::size_t ChunkedObjectSource::read(std::span<unsigned char> out) {
  // A 0-byte object still costs one ranged read.
  if (size_ == 0 && requests_ == 0) {
    store_->read_range(key_, 0, {});
    ++requests_;
    done_ = true;
    return 0;
  }
  std::size_t produced = 0;
  while (produced < out.size()) {
    if (chunk_pos_ == chunk_.size()) {
      if (done_) break;
      fetch_next_chunk();
      continue;
    }
    std::size_t n = std::min(out.size() - produced, chunk_.size() - chunk_pos_);
    std::copy_n(chunk_.data() + chunk_pos_, n, out.data() + produced);
    chunk_pos_ += n;
    produced += n;
  }
  return produced;
}

std::vector<unsigned char> get_object_chunked(ObjectStore& store,
                                              const ObjectKey& key,
                                              std::uint64_t chunk_bytes) {
  ChunkedObjectSource source(store, key, chunk_bytes);
  std::vector<unsigned char> out(
      static_cast<std::size_t>(source.size_bytes()));
  std::size_t have = 0;
  while (have < out.size())
    have += source.read(std::span(out.data() + have, out.size() - have));
  if (out.empty()) source.read({});  // meter the empty-object read
  return out;
}

MultipartWriter::MultipartWriter(ObjectStore& store, const ObjectKey& key,
                                 std::uint64_t part_bytes)
    : upload_(store.begin_multipart(key)), part_bytes_(part_bytes) {
  if (part_bytes_ == 0) throw ConfigError("part size must be positive");
  buffer_.reserve(static_cast<std::size_t>(
      std::min<std::uint64_t>(part_bytes_, 64 * 1024 * 1024)));
}

MultipartWriter::~MultipartWriter() {
  if (!finished_ && upload_) upload_->abort();
}

void MultipartWriter::flush_part() {
  upload_->upload_part(buffer_);
  ++parts_;
  buffer_.clear();
}

void MultipartWriter::write(std::span<const unsigned char> data) {
  total_bytes_ += data.size();
  while (!data.empty()) {
    std::size_t room = static_cast<std::size_t>(part_bytes_) - buffer_.size();
    std::size_t n = std::min(room, data.size());
    buffer_.insert(buffer_.end(), data.begin(), data.begin() + n);
    data = data.subspan(n);
    if (buffer_.size() == part_bytes_) flush_part();
  }
}

std::uint64_t MultipartWriter::finish() {
  if (finished_) throw StorageError("multipart writer already finished", false);
  if (!buffer_.empty() || parts_ == 0) flush_part();
  upload_->complete();
  finished_ = true;
  return total_bytes_;
}

void put_object(ObjectStore& store, const ObjectKey& key,
                std::span<const unsigned char> data) {
  auto upload = store.begin_multipart(key);
  upload->upload_part(data);
  upload->complete();
}

std::string assign_bucket(std::uint64_t partition_index,
                          std::span<const std::string> buckets,
                          std::uint64_t seed) {
  if (buckets.empty()) throw ConfigError("bucket list is empty");
  std::uint64_t h = mix64(mix64(seed) ^ partition_index);
  return buckets[h % buckets.size()];
}

// --- memory backend ---

namespace {
class MemoryMultipartUploadImpl : public MultipartUpload {
 public:
  MemoryMultipartUploadImpl(RequestMeter* meter, ObjectKey key, std::mutex* mu,
                            std::map<ObjectKey, std::vector<unsigned char>>* objects)
      : meter_(meter), key_(std::move(key)), mu_(mu), objects_(objects) {}

  void upload_part(std::span<const unsigned char> data) override {
    if (done_) throw StorageError("upload already completed", false);
    staged_.insert(staged_.end(), data.begin(), data.end());
    meter_->add_put(data.size());
  }
  void complete() override {
    std::lock_guard lock(*mu_);
    (*objects_)[key_] = std::move(staged_);
    done_ = true;
  }
  void abort() override {
    staged_.clear();
    done_ = true;
  }

 private:
  RequestMeter* meter_;
  ObjectKey key_;
  std::mutex* mu_;
  std::map<ObjectKey, std::vector<unsigned char>>* objects_;
  std::vector<unsigned char> staged_;
  bool done_ = false;
};
}  // namespace

bool MemoryObjectStore::object_exists(const ObjectKey& key) const {
  std::lock_guard lock(mu_);
  return objects_.count(key) > 0;
}

std::uint64_t MemoryObjectStore::object_size(const ObjectKey& key) const {
  std::lock_guard lock(mu_);
  auto it = objects_.find(key);
  if (it == objects_.end())
    throw NotFoundError("no such object: " + key.str());
  return it->second.size();
}

std::size_t MemoryObjectStore::read_range(const ObjectKey& key,
                                          std::uint64_t offset,
                                          std::span<unsigned char> out) {
  std::lock_guard lock(mu_);
  auto it = objects_.find(key);
  if (it == objects_.end())
    throw NotFoundError("no such object: " + key.str());
  const auto& bytes = it->second;
  std::size_t n = 0;
  if (offset < bytes.size())
    n = std::min(out.size(), bytes.size() - static_cast<std::size_t>(offset));
  std::copy_n(bytes.data() + offset, n, out.data());
  meter_.add_get(n);
  return n;
}

std::unique_ptr<MultipartUpload> MemoryObjectStore::begin_multipart(
    const ObjectKey& key) {
  if (key.bucket.empty() || key.key.empty())
    throw ConfigError("object key needs nonempty bucket and key");
  return std::make_unique<MemoryMultipartUploadImpl>(&meter_, key, &mu_,
                                                     &objects_);
}

void MemoryObjectStore::remove(const ObjectKey& key) {
  std::lock_guard lock(mu_);
  objects_.erase(key);
}

// --- local filesystem backend ---

LocalFsObjectStore::LocalFsObjectStore(fs::path root) : root_(std::move(root)) {
  fs::create_directories(root_);
}

fs::path LocalFsObjectStore::object_path(const ObjectKey& key) const {
  if (key.bucket.empty() || key.key.empty())
    throw ConfigError("object key needs nonempty bucket and key");
  if (key.bucket.find("..") != std::string::npos ||
      key.key.find("..") != std::string::npos)
    throw ConfigError("object key must not contain '..': " + key.str());
  return root_ / key.bucket / key.key;
}

bool LocalFsObjectStore::object_exists(const ObjectKey& key) const {
  std::error_code ec;
  return fs::is_regular_file(object_path(key), ec);
}

std::uint64_t LocalFsObjectStore::object_size(const ObjectKey& key) const {
  std::error_code ec;
  auto size = fs::file_size(object_path(key), ec);
  if (ec) throw NotFoundError("no such object: " + key.str());
  return size;
}

std::size_t LocalFsObjectStore::read_range(const ObjectKey& key,
                                           std::uint64_t offset,
                                           std::span<unsigned char> out) {
  std::ifstream in(object_path(key), std::ios::binary);
  if (!in) throw NotFoundError("no such object: " + key.str());
  in.seekg(static_cast<std::streamoff>(offset));
  std::size_t n = 0;
  if (in && !out.empty()) {
    in.read(reinterpret_cast<char*>(out.data()),
            static_cast<std::streamsize>(out.size()));
    std::streamsize got = in.gcount();
    if (got < 0 || (!in && !in.eof()))
      throw StorageError("read failed: " + key.str());
    n = static_cast<std::size_t>(got);
  }
  meter_.add_get(n);
  return n;
}

namespace {
class LocalFsMultipartUploadImpl : public MultipartUpload {
 public:
  LocalFsMultipartUploadImpl(RequestMeter* meter, fs::path final_path,
                             fs::path temp_path)
      : meter_(meter), final_path_(std::move(final_path)),
        temp_path_(std::move(temp_path)) {
    fs::create_directories(final_path_.parent_path());
    out_.open(temp_path_, std::ios::binary | std::ios::trunc);
    if (!out_)
      throw StorageError("cannot stage upload: " + temp_path_.string());
  }
  ~LocalFsMultipartUploadImpl() override {
    if (!done_) abort();
  }

  void upload_part(std::span<const unsigned char> data) override {
    if (done_) throw StorageError("upload already completed", false);
    out_.write(reinterpret_cast<const char*>(data.data()),
               static_cast<std::streamsize>(data.size()));
    if (!out_) throw StorageError("write failed: " + temp_path_.string());
    meter_->add_put(data.size());
  }
  void complete() override {
    out_.close();
    std::error_code ec;
    fs::rename(temp_path_, final_path_, ec);
    if (ec)
      throw StorageError("cannot publish object: " + final_path_.string());
    done_ = true;
  }
  void abort() override {
    out_.close();
    std::error_code ec;
    fs::remove(temp_path_, ec);
    done_ = true;
  }

 private:
  RequestMeter* meter_;
  fs::path final_path_;
  fs::path temp_path_;
  std::ofstream out_;
  bool done_ = false;
};
}  // namespace

std::unique_ptr<MultipartUpload> LocalFsObjectStore::begin_multipart(
    const ObjectKey& key) {
  fs::path final_path = object_path(key);
  fs::path temp_path = final_path;
  temp_path += strformat(".upload.%llu",
                         static_cast<unsigned long long>(
                             temp_counter_.fetch_add(1)));
  return std::make_unique<LocalFsMultipartUploadImpl>(&meter_, final_path,
                                                      temp_path);
}

void LocalFsObjectStore::remove(const ObjectKey& key) {
  std::error_code ec;
  fs::remove(object_path(key), ec);
}

}  // namespace exosort
