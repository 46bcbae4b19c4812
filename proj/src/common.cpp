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

#include "exosort/common.hpp"

namespace exosort {

namespace {
constexpr char kHexDigits[] = "0123456789abcdef";

int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}
}  // namespace

std::string to_hex(std::span<const unsigned char> bytes) {
  std::string out;
  out.reserve(bytes.size() * 2);
  for (unsigned char b : bytes) {
    out.push_back(kHexDigits[b >> 4]);
    out.push_back(kHexDigits[b & 0xF]);
  }
  return out;
}

std::vector<unsigned char> from_hex(std::string_view hex) {
  if (hex.size() % 2 != 0) throw FormatError("hex string has odd length");
  std::vector<unsigned char> out(hex.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) {
    int hi = hex_value(hex[2 * i]);
    int lo = hex_value(hex[2 * i + 1]);
    if (hi < 0 || lo < 0)
      throw FormatError("invalid hex digit", 2 * i);
    out[i] = static_cast<unsigned char>((hi << 4) | lo);
  }
  return out;
}

FileSink::FileSink(const std::string& path)
    : out_(path, std::ios::binary | std::ios::trunc), path_(path) {
  if (!out_) throw StorageError("cannot open for writing: " + path, false);
}

void FileSink::write(std::span<const unsigned char> data) {
  out_.write(reinterpret_cast<const char*>(data.data()),
             static_cast<std::streamsize>(data.size()));
  if (!out_) throw StorageError("write failed: " + path_);
}

FileSource::FileSource(const std::string& path)
    : in_(path, std::ios::binary), path_(path) {
  if (!in_) throw NotFoundError("cannot open for reading: " + path);
}

std::size_t FileSource::read(std::span<unsigned char> out) {
  in_.read(reinterpret_cast<char*>(out.data()),
           static_cast<std::streamsize>(out.size()));
  std::streamsize got = in_.gcount();
  if (got < 0 || (!in_ && !in_.eof()))
    throw StorageError("read failed: " + path_);
  return static_cast<std::size_t>(got);
}

}  // namespace exosort
