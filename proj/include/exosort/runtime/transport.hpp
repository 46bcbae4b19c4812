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

#include <condition_variable>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <vector>

#include "exosort/runtime/messages.hpp"

namespace exosort {

// Unbounded MPSC queue; each node's control loop drains its own mailbox.
class Mailbox {
 public:
  void post(Envelope e) {
    {
      std::lock_guard lock(mu_);
      queue_.push_back(std::move(e));
    }
    cv_.notify_one();
  }

  // Blocks until a message arrives or the mailbox is closed.
  std::optional<Envelope> take() {
    std::unique_lock lock(mu_);
    cv_.wait(lock, [this] { return !queue_.empty() || closed_; });
    if (queue_.empty()) return std::nullopt;
    Envelope e = std::move(queue_.front());
    queue_.pop_front();
    return e;
  }

  void close() {
    {
      std::lock_guard lock(mu_);
      closed_ = true;
    }
    cv_.notify_all();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Envelope> queue_;
  bool closed_ = false;
};

// Sends messages to other nodes. Implementations must be callable from any
// thread and must never block indefinitely on a healthy peer.
class Endpoint {
 public:
  virtual ~Endpoint() = default;
  virtual void send(NodeId to, Message msg) = 0;
  virtual NodeId self() const = 0;
};

// In-process transport: a routing table of mailboxes shared by the driver
// and all workers of one job.
class InProcessRouter {
 public:
  explicit InProcessRouter(std::size_t nodes) : mailboxes_(nodes) {
    for (auto& m : mailboxes_) m = std::make_unique<Mailbox>();
  }

  Mailbox& mailbox(NodeId node) { return *mailboxes_.at(node); }

  class LocalEndpoint : public Endpoint {
   public:
    LocalEndpoint(InProcessRouter* router, NodeId self)
        : router_(router), self_(self) {}
    void send(NodeId to, Message msg) override {
      router_->mailbox(to).post(Envelope{self_, std::move(msg)});
    }
    NodeId self() const override { return self_; }

   private:
    InProcessRouter* router_;
    NodeId self_;
  };

  LocalEndpoint endpoint(NodeId node) { return LocalEndpoint(this, node); }

  void close_all() {
    for (auto& m : mailboxes_) m->close();
  }

 private:
  std::vector<std::unique_ptr<Mailbox>> mailboxes_;
};

}  // namespace exosort
