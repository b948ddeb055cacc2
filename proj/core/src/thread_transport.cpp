#include "mgrit/thread_transport.hpp"

#include <exception>
#include <string>
#include <thread>

#include "mgrit/errors.hpp"

namespace mgrit {

class ThreadNetwork::Endpoint final : public Transport {
 public:
  Endpoint(ThreadNetwork& net, int rank) : net_(net), rank_(rank) {}
  int rank() const override { return rank_; }
  int size() const override { return net_.size(); }

 protected:
  void do_send(int dest, int tag, std::span<const double> data) override {
    net_.post(rank_, dest, tag, std::vector<double>(data.begin(), data.end()));
  }
  std::vector<double> do_receive(int source, int tag) override {
    return net_.take(source, rank_, tag);
  }

 private:
  ThreadNetwork& net_;
  int rank_;
};

ThreadNetwork::ThreadNetwork(int size, std::chrono::milliseconds timeout) : timeout_(timeout) {
  if (size < 1) throw TransportError("thread network needs at least one worker");
  for (int r = 0; r < size; ++r) {
    auto box = std::make_unique<Mailbox>();
    box->from.resize(static_cast<std::size_t>(size));
    mailboxes_.push_back(std::move(box));
  }
  for (int r = 0; r < size; ++r) endpoints_.push_back(std::make_unique<Endpoint>(*this, r));
}

ThreadNetwork::~ThreadNetwork() = default;

Transport& ThreadNetwork::endpoint(int rank) { return *endpoints_.at(static_cast<std::size_t>(rank)); }

void ThreadNetwork::abort() {
  aborted_.store(true);
  for (auto& box : mailboxes_) {
    std::lock_guard lock(box->mutex);
    box->ready.notify_all();
  }
}

void ThreadNetwork::post(int source, int dest, int tag, std::vector<double> data) {
  auto& box = *mailboxes_[static_cast<std::size_t>(dest)];
  {
    std::lock_guard lock(box.mutex);
    box.from[static_cast<std::size_t>(source)].push_back({tag, std::move(data)});
  }
  box.ready.notify_all();
}

std::vector<double> ThreadNetwork::take(int source, int dest, int tag) {
  auto& box = *mailboxes_[static_cast<std::size_t>(dest)];
  auto& queue = box.from[static_cast<std::size_t>(source)];
  std::unique_lock lock(box.mutex);
  const bool arrived = box.ready.wait_for(lock, timeout_, [&] { return !queue.empty() || aborted_; });
  if (!queue.empty()) {
    Message msg = std::move(queue.front());
    queue.pop_front();
    if (msg.tag != tag) {
      throw TransportError("rank " + std::to_string(dest) + " expected tag " + std::to_string(tag) +
                           " from rank " + std::to_string(source) + ", got " +
                           std::to_string(msg.tag));
    }
    return std::move(msg.data);
  }
  if (aborted_) throw TransportError("network aborted while rank " + std::to_string(dest) +
                                     " waited on rank " + std::to_string(source));
  (void)arrived;
  throw TransportError("rank " + std::to_string(dest) + " timed out waiting for tag " +
                       std::to_string(tag) + " from rank " + std::to_string(source));
}

void run_workers(int workers, const std::function<void(Transport&)>& body) {
  ThreadNetwork net(workers);
  if (workers == 1) {
    body(net.endpoint(0));
    return;
  }
  std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
  std::vector<std::thread> threads;
  threads.reserve(static_cast<std::size_t>(workers));
  for (int r = 0; r < workers; ++r) {
    threads.emplace_back([&, r] {
      try {
        body(net.endpoint(r));
      } catch (...) {
        errors[static_cast<std::size_t>(r)] = std::current_exception();
        net.abort();
      }
    });
  }
  for (auto& t : threads) t.join();

  std::exception_ptr transport_error;
  for (auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const TransportError&) {
      if (!transport_error) transport_error = e;
    } catch (...) {
      throw;
    }
  }
  if (transport_error) std::rethrow_exception(transport_error);
}

}  // namespace mgrit
