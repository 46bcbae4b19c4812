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

#include "exosort/runtime/events.hpp"

#include <algorithm>
#include <chrono>
#include <map>

#include <json.hpp>

#include "exosort/common.hpp"

namespace exosort {

namespace {
double now_seconds() {
  return std::chrono::duration<double>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}
}  // namespace

std::string Event::json() const {
  nlohmann::json j;
  j["seq"] = seq;
  j["ts"] = ts;
  j["event"] = event;
  j["task"] = task ? nlohmann::json(*task) : nlohmann::json(nullptr);
  j["worker"] = worker ? nlohmann::json(*worker) : nlohmann::json(nullptr);
  j["block"] = block ? nlohmann::json(*block) : nlohmann::json(nullptr);
  j["bytes"] = bytes ? nlohmann::json(*bytes) : nlohmann::json(nullptr);
  for (const auto& [k, v] : extra) j[k] = v;
  return j.dump();
}

EventLog::EventLog(const std::filesystem::path& path) {
  std::filesystem::create_directories(path.parent_path());
  file_.open(path, std::ios::trunc);
  if (!file_) throw StorageError("cannot open event log: " + path.string());
  to_file_ = true;
}

void EventLog::log(Event e) {
  std::lock_guard lock(mu_);
  e.seq = next_seq_++;
  e.ts = now_seconds();
  if (to_file_) {
    file_ << e.json() << '\n';
    file_.flush();
  }
  mirror_.push_back(std::move(e));
}

void EventLog::log(std::string event, std::optional<std::string> task,
                   std::optional<std::uint32_t> worker,
                   std::optional<std::uint64_t> block,
                   std::optional<std::uint64_t> bytes,
                   std::vector<std::pair<std::string, std::string>> extra) {
  Event e;
  e.event = std::move(event);
  e.task = std::move(task);
  e.worker = worker;
  e.block = block;
  e.bytes = bytes;
  e.extra = std::move(extra);
  log(std::move(e));
}

std::vector<Event> EventLog::snapshot() const {
  std::lock_guard lock(mu_);
  return mirror_;
}

std::vector<Event> EventLog::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw NotFoundError("cannot open event log: " + path.string());
  std::vector<Event> events;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    nlohmann::json j = nlohmann::json::parse(line);
    Event e;
    e.seq = j.at("seq").get<std::uint64_t>();
    e.ts = j.at("ts").get<double>();
    e.event = j.at("event").get<std::string>();
    if (j.contains("task") && !j["task"].is_null())
      e.task = j["task"].get<std::string>();
    if (j.contains("worker") && !j["worker"].is_null())
      e.worker = j["worker"].get<std::uint32_t>();
    if (j.contains("block") && !j["block"].is_null())
      e.block = j["block"].get<std::uint64_t>();
    if (j.contains("bytes") && !j["bytes"].is_null())
      e.bytes = j["bytes"].get<std::uint64_t>();
    for (auto it = j.begin(); it != j.end(); ++it) {
      const std::string& k = it.key();
      if (k == "seq" || k == "ts" || k == "event" || k == "task" ||
          k == "worker" || k == "block" || k == "bytes")
        continue;
      e.extra.emplace_back(k, it.value().is_string()
                                  ? it.value().get<std::string>()
                                  : it.value().dump());
    }
    events.push_back(std::move(e));
  }
  std::sort(events.begin(), events.end(),
            [](const Event& a, const Event& b) { return a.seq < b.seq; });
  return events;
}

namespace {
const std::string* find_extra(const Event& e, const std::string& key) {
  for (const auto& [k, v] : e.extra)
    if (k == key) return &v;
  return nullptr;
}
}  // namespace

int replay_max_concurrent(const std::vector<Event>& events,
                          const std::string& start_event,
                          const std::string& end_event,
                          std::optional<std::uint32_t> worker) {
  int current = 0;
  int peak = 0;
  for (const Event& e : events) {
    if (worker && e.worker != worker) continue;
    if (e.event == start_event) {
      ++current;
      peak = std::max(peak, current);
    } else if (e.event == end_event) {
      --current;
    }
  }
  return peak;
}

int replay_peak_buffered_blocks(const std::vector<Event>& events,
                                std::uint32_t worker) {
  int current = 0;
  int peak = 0;
  for (const Event& e : events) {
    if (e.worker != worker) continue;
    if (e.event == "block_received") {
      const std::string* disposition = find_extra(e, "disposition");
      if (disposition != nullptr && *disposition == "buffered") {
        ++current;
        peak = std::max(peak, current);
      }
    } else if (e.event == "block_admitted") {
      ++current;
      peak = std::max(peak, current);
    } else if (e.event == "merge_launch") {
      const std::string* inputs = find_extra(e, "input_blocks");
      current -= inputs != nullptr ? std::stoi(*inputs) : 0;
    }
  }
  return peak;
}

std::uint64_t replay_count(const std::vector<Event>& events,
                           const std::string& event,
                           std::optional<std::uint32_t> worker) {
  std::uint64_t n = 0;
  for (const Event& e : events)
    if (e.event == event && (!worker || e.worker == worker)) ++n;
  return n;
}

std::uint64_t replay_deferred_acks(const std::vector<Event>& events,
                                   std::optional<std::uint32_t> worker) {
  std::uint64_t n = 0;
  for (const Event& e : events) {
    if (e.event != "ack_sent" || (worker && e.worker != worker)) continue;
    const std::string* deferred = find_extra(e, "deferred");
    if (deferred != nullptr && (*deferred == "1" || *deferred == "true")) ++n;
  }
  return n;
}

bool replay_stage_barrier_respected(const std::vector<Event>& events) {
  std::uint64_t last_map_side = 0;
  std::uint64_t first_reduce = UINT64_MAX;
  bool saw_map_side = false;
  for (const Event& e : events) {
    if (e.event == "map_done" || e.event == "merge_done" ||
        e.event == "spill_done" || e.event == "flush_done") {
      last_map_side = std::max(last_map_side, e.seq);
      saw_map_side = true;
    } else if (e.event == "reduce_start") {
      first_reduce = std::min(first_reduce, e.seq);
    }
  }
  if (!saw_map_side || first_reduce == UINT64_MAX) return true;
  return last_map_side < first_reduce;
}

}  // namespace exosort
