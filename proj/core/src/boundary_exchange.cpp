#include "mgrit/boundary_exchange.hpp"

#include <string>

#include "mgrit/errors.hpp"

namespace mgrit {

BoundaryExchange::BoundaryExchange(Transport& transport, const TimeDecomposition& decomposition,
                                   const LevelProblem& problem, std::size_t level)
    : transport_(transport),
      problem_(problem),
      level_(level),
      owned_(decomposition.range(level, transport.rank())) {
  if (owned_.empty()) return;
  left_ = decomposition.left_neighbor(level, transport.rank());
  right_ = decomposition.right_neighbor(level, transport.rank());
  if (right_) right_first_ = decomposition.range(level, *right_).begin;
}

bool BoundaryExchange::depends_on_predecessor(ExchangePhase phase, std::size_t index) const {
  if (index == 0) return false;
  switch (phase) {
    case ExchangePhase::f_relax:
      return !problem_.c_point(index);
    case ExchangePhase::c_relax:
    case ExchangePhase::residual:
    case ExchangePhase::restrict_fine:
      return problem_.c_point(index);
    case ExchangePhase::restrict_coarse:
      return true;
  }
  return false;
}

bool BoundaryExchange::needs_left(ExchangePhase phase) const {
  return !owned_.empty() && left_ && depends_on_predecessor(phase, owned_.begin);
}

bool BoundaryExchange::sends_right(ExchangePhase phase) const {
  return !owned_.empty() && right_ && depends_on_predecessor(phase, right_first_);
}

int BoundaryExchange::tag(ExchangePhase phase) const {
  switch (phase) {
    case ExchangePhase::f_relax:
      return make_tag(TagKind::f_relax, level_);
    case ExchangePhase::c_relax:
      return make_tag(TagKind::c_relax, level_);
    case ExchangePhase::residual:
      return make_tag(TagKind::residual, level_);
    case ExchangePhase::restrict_fine:
      return make_tag(TagKind::restrict_fine, level_);
    case ExchangePhase::restrict_coarse:
      return make_tag(TagKind::restrict_coarse, level_);
  }
  return 0;
}

void BoundaryExchange::send_right(ExchangePhase phase, const State& last_owned) {
  if (!sends_right(phase)) {
    throw TransportError("level " + std::to_string(level_) + ": unexpected right send");
  }
  const auto buffer = last_owned.pack();
  transport_.send(*right_, tag(phase), buffer);
}

State BoundaryExchange::receive_left(ExchangePhase phase, const State& prototype) {
  if (!needs_left(phase)) {
    throw TransportError("level " + std::to_string(level_) + ": unexpected left receive");
  }
  try {
    const auto buffer = transport_.receive(*left_, tag(phase));
    return prototype.unpacked_like(buffer);
  } catch (const TransportError& e) {
    throw TransportError("level " + std::to_string(level_) + " boundary exchange: " + e.what());
  }
}

std::optional<State> BoundaryExchange::exchange_left_boundary(ExchangePhase phase,
                                                              const State* last_owned,
                                                              const State& prototype) {
  if (sends_right(phase)) {
    if (!last_owned) throw TransportError("boundary exchange without a value to send");
    send_right(phase, *last_owned);
  }
  if (needs_left(phase)) return receive_left(phase, prototype);
  return std::nullopt;
}

}  // namespace mgrit
