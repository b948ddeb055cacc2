#pragma once

#include <cstddef>
#include <optional>

#include "mgrit/decomposition.hpp"
#include "mgrit/hierarchy.hpp"
#include "mgrit/transport.hpp"
#include "mgrit/vector.hpp"

namespace mgrit {

/// Which update a left-boundary value feeds, and therefore which workers
/// depend on their left neighbor:
///  - f_relax: the first owned point is an F-point;
///  - c_relax, residual, restrict_fine: the first owned point is a C-point;
///  - restrict_coarse: every point but index 0 reads its predecessor.
enum class ExchangePhase { f_relax, c_relax, residual, restrict_fine, restrict_coarse };

/// One worker's view of one level: its owned range and the single value it
/// may send right / receive from the left in each phase.
class BoundaryExchange {
 public:
  BoundaryExchange(Transport& transport, const TimeDecomposition& decomposition,
                   const LevelProblem& problem, std::size_t level);

  IndexRange owned() const noexcept { return owned_; }
  std::size_t level() const noexcept { return level_; }

  bool needs_left(ExchangePhase phase) const;
  bool sends_right(ExchangePhase phase) const;

  /// Send the last owned point to the right neighbor. Only valid when
  /// sends_right(phase).
  void send_right(ExchangePhase phase, const State& last_owned);
  /// Receive the left neighbor's last point, unpacked into a copy of
  /// `prototype`. Only valid when needs_left(phase).
  State receive_left(ExchangePhase phase, const State& prototype);

  /// Send-then-receive for phases whose sent value does not depend on the
  /// received one. Returns the left value when needs_left(phase).
  std::optional<State> exchange_left_boundary(ExchangePhase phase, const State* last_owned,
                                              const State& prototype);

 private:
  bool depends_on_predecessor(ExchangePhase phase, std::size_t index) const;
  int tag(ExchangePhase phase) const;

  Transport& transport_;
  const LevelProblem& problem_;
  std::size_t level_;
  IndexRange owned_;
  std::optional<int> left_;
  std::optional<int> right_;
  std::size_t right_first_ = 0;
};

}  // namespace mgrit
