#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mgrit {

struct TransportStats {
  std::size_t messages_sent = 0;
  std::size_t values_sent = 0;
};

/// Point-to-point exchange of packed buffers between the workers of one time
/// communicator, plus gather/scatter rooted at a single worker.
///
/// Messages between a fixed (source, destination) pair are delivered in send
/// order. Receivers name the tag they expect; a mismatch is a TransportError.
class Transport {
 public:
  virtual ~Transport() = default;

  virtual int rank() const = 0;
  virtual int size() const = 0;

  void send(int dest, int tag, std::span<const double> data);
  std::vector<double> receive(int source, int tag);

  /// Root returns one buffer per rank in rank order; other ranks get {}.
  std::vector<std::vector<double>> gather(int root, int tag, std::span<const double> data);
  /// Root supplies one buffer per rank; every rank returns its own piece.
  std::vector<double> scatter(int root, int tag, const std::vector<std::vector<double>>& pieces);
  double broadcast(int root, int tag, double value);

  const TransportStats& stats() const noexcept { return stats_; }
  void reset_stats() noexcept { stats_ = {}; }

 protected:
  virtual void do_send(int dest, int tag, std::span<const double> data) = 0;
  virtual std::vector<double> do_receive(int source, int tag) = 0;

 private:
  TransportStats stats_;
};

/// The only worker of a one-worker run. Never communicates.
class SerialTransport final : public Transport {
 public:
  int rank() const override { return 0; }
  int size() const override { return 1; }

 protected:
  void do_send(int dest, int tag, std::span<const double> data) override;
  std::vector<double> do_receive(int source, int tag) override;
};

/// Message tags. Combined with a level index by make_tag().
enum class TagKind : int {
  f_relax = 1,
  c_relax,
  residual,
  restrict_fine,
  restrict_coarse,
  coarse_gather,
  coarse_scatter,
  norm_gather,
  norm_broadcast,
  solution_gather,
  user,
};

constexpr int make_tag(TagKind kind, std::size_t level) {
  return static_cast<int>(kind) * 256 + static_cast<int>(level % 256);
}

}  // namespace mgrit
