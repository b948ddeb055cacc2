#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <vector>

#include "mgrit/transport.hpp"

namespace mgrit {

/// In-process message network: each worker is a thread holding one endpoint.
class ThreadNetwork {
 public:
  explicit ThreadNetwork(int size,
                         std::chrono::milliseconds timeout = std::chrono::minutes(5));
  ThreadNetwork(const ThreadNetwork&) = delete;
  ThreadNetwork& operator=(const ThreadNetwork&) = delete;
  ~ThreadNetwork();

  int size() const noexcept { return static_cast<int>(endpoints_.size()); }
  Transport& endpoint(int rank);

  /// Wake every blocked receiver with a TransportError.
  void abort();
  bool aborted() const noexcept { return aborted_.load(); }

 private:
  class Endpoint;
  struct Message {
    int tag;
    std::vector<double> data;
  };
  struct Mailbox {
    std::mutex mutex;
    std::condition_variable ready;
    std::vector<std::deque<Message>> from;  // indexed by source rank
  };

  void post(int source, int dest, int tag, std::vector<double> data);
  std::vector<double> take(int source, int dest, int tag);

  std::vector<std::unique_ptr<Mailbox>> mailboxes_;
  std::vector<std::unique_ptr<Endpoint>> endpoints_;
  std::chrono::milliseconds timeout_;
  std::atomic<bool> aborted_{false};
};

/// Run `body` on `workers` threads connected by a fresh ThreadNetwork and
/// join them. If any worker throws, the network is aborted and the first
/// non-transport error (lowest rank) is rethrown.
void run_workers(int workers, const std::function<void(Transport&)>& body);

}  // namespace mgrit
