#include "mgrit/solver.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "mgrit/errors.hpp"

namespace mgrit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<double> pack_all(std::span<const State> states) {
  std::vector<double> buffer;
  for (const auto& s : states) {
    const auto packed = s.pack();
    buffer.insert(buffer.end(), packed.begin(), packed.end());
  }
  return buffer;
}

void unpack_all(std::span<const double> buffer, std::span<State> states) {
  std::size_t offset = 0;
  for (auto& s : states) {
    const std::size_t n = s.packed_size();
    if (offset + n > buffer.size()) throw StructureError("packed slice shorter than expected");
    s.unpack(buffer.subspan(offset, n));
    offset += n;
  }
  if (offset != buffer.size()) throw StructureError("packed slice longer than expected");
}

}  // namespace

void MgritSettings::validate(std::size_t num_levels) const {
  if (!(tol > 0.0)) throw ConfigError("tol must be positive");
  if (cf_iter < 0) throw ConfigError("cf_iter must be non-negative");
  if (max_iter < 1) throw ConfigError("max_iter must be at least 1");
  if (!transfers.empty() && transfers.size() + 1 != num_levels) {
    std::ostringstream msg;
    msg << "expected " << (num_levels > 0 ? num_levels - 1 : 0) << " spatial transfers, got "
        << transfers.size();
    throw ConfigError(msg.str());
  }
  for (const auto& t : transfers) {
    if (!t) throw ConfigError("null spatial transfer");
  }
}

std::string format_trace_event(const TraceEvent& event) {
  std::ostringstream out;
  out << event.level << ',' << event.op << ',' << event.first << ',' << event.last;
  return out.str();
}

double residual_norm(std::span<const double> per_point_norms) {
  double sum = 0.0;
  for (double n : per_point_norms) sum += n * n;
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------

Solver::Solver(std::shared_ptr<const Hierarchy> hierarchy, MgritSettings settings)
    : Solver(std::move(hierarchy), std::move(settings), serial_) {}

Solver::Solver(std::shared_ptr<const Hierarchy> hierarchy, MgritSettings settings,
               Transport& transport)
    : hierarchy_(std::move(hierarchy)),
      settings_(std::move(settings)),
      transport_(&transport),
      decomposition_(*hierarchy_, transport.size()) {
  settings_.validate(hierarchy_->num_levels());
  for (std::size_t l = 0; l < hierarchy_->num_levels(); ++l) {
    exchange_.emplace_back(*transport_, decomposition_, hierarchy_->level(l), l);
  }
  states_.resize(hierarchy_->num_levels());
  initialize();
}

const SpatialTransfer& Solver::transfer(std::size_t fine_level) const {
  if (settings_.transfers.empty()) return identity_;
  return *settings_.transfers.at(fine_level);
}

void Solver::record(std::size_t level, const char* op) {
  if (!settings_.trace) return;
  const auto owned = states_[level].owned;
  if (owned.empty()) return;
  trace_.push_back({level, op, owned.begin, owned.end - 1});
}

void Solver::initialize() {
  for (std::size_t l = 0; l < hierarchy_->num_levels(); ++l) {
    auto& st = states_[l];
    st.owned = decomposition_.range(l, transport_->rank());
    const State zero = app(l).vector_template().zero_like();
    st.u.assign(st.owned.size(), zero);
    st.g.assign(st.owned.size(), zero);
    st.v.clear();
    if (l > 0) st.v.assign(st.owned.size(), zero);
  }

  auto& finest = states_[0];
  if (finest.owned.empty()) return;
  const bool random_guess = !settings_.nested_iteration && hierarchy_->num_levels() > 1;
  for (std::size_t i = finest.owned.begin; i < finest.owned.end; ++i) {
    if (i == 0) {
      finest.u_at(0) = app(0).vector_t_start();
      finest.g_at(0) = app(0).vector_t_start();
    } else if (random_guess) {
      // Seeded per global index so the guess does not depend on the worker count.
      std::seed_seq seq{static_cast<std::uint32_t>(settings_.random_seed),
                        static_cast<std::uint32_t>(settings_.random_seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(i >> 32)};
      Rng rng(seq);
      finest.u_at(i) = app(0).vector_template().random_like(rng);
    }
  }
}

void Solver::step_into(std::size_t level, std::size_t index, const State& previous) {
  const auto& grid = app(level).time_grid();
  auto& st = states_[level];
  State next;
  try {
    next = app(level).propagate(previous, grid[index - 1], grid[index]);
  } catch (const PropagationError& e) {
    std::ostringstream msg;
    msg << "level " << level << ", point " << index << ": " << e.what();
    throw PropagationError(msg.str());
  }
  next += st.g_at(index);
  st.u_at(index) = std::move(next);
}

State Solver::residual_at(std::size_t index, const State& previous) const {
  const auto& grid = app(0).time_grid();
  const auto& st = states_[0];
  State r = app(0).propagate(previous, grid[index - 1], grid[index]);
  r -= st.u_at(index);
  r += st.g_at(index);
  return r;
}

// ---------------------------------------------------------------------------
// Relaxation

void Solver::f_relax(std::size_t level) {
  auto& st = states_[level];
  if (st.owned.empty()) return;
  record(level, "f_relax");
  const auto& lp = hierarchy_->level(level);
  auto& ex = exchange_[level];
  const auto [lo, hi] = st.owned;

  // Points lo..first_c-1 continue an F-block that starts on the left neighbor.
  std::size_t first_c = lo;
  while (first_c < hi && !lp.c_point(first_c)) ++first_c;
  const bool chain_holds_last = first_c == hi;

  if (!chain_holds_last) {
    for (std::size_t i = first_c + 1; i < hi; ++i) {
      if (!lp.c_point(i)) step_into(level, i, st.u_at(i - 1));
    }
    if (ex.sends_right(ExchangePhase::f_relax)) ex.send_right(ExchangePhase::f_relax, st.u_at(hi - 1));
  }
  if (first_c > lo) {
    const State left = ex.receive_left(ExchangePhase::f_relax, app(level).vector_template());
    step_into(level, lo, left);
    for (std::size_t i = lo + 1; i < first_c; ++i) step_into(level, i, st.u_at(i - 1));
  }
  if (chain_holds_last && ex.sends_right(ExchangePhase::f_relax)) {
    ex.send_right(ExchangePhase::f_relax, st.u_at(hi - 1));
  }
}

void Solver::c_relax(std::size_t level) {
  auto& st = states_[level];
  if (st.owned.empty()) return;
  record(level, "c_relax");
  const auto& lp = hierarchy_->level(level);
  auto& ex = exchange_[level];
  const auto [lo, hi] = st.owned;
  const bool sends = ex.sends_right(ExchangePhase::c_relax);

  // An F-point is final before the sweep; a C-point only after it.
  if (sends && !lp.c_point(hi - 1)) ex.send_right(ExchangePhase::c_relax, st.u_at(hi - 1));
  State left;
  if (ex.needs_left(ExchangePhase::c_relax)) {
    left = ex.receive_left(ExchangePhase::c_relax, app(level).vector_template());
  }
  for (std::size_t i = lo; i < hi; ++i) {
    if (i == 0 || !lp.c_point(i)) continue;
    step_into(level, i, i == lo ? left : st.u_at(i - 1));
  }
  if (sends && lp.c_point(hi - 1)) ex.send_right(ExchangePhase::c_relax, st.u_at(hi - 1));
}

void Solver::relax(std::size_t level, int cf_iter, bool leading_f) {
  if (leading_f) f_relax(level);
  for (int k = 0; k < cf_iter; ++k) {
    c_relax(level);
    f_relax(level);
  }
}

// ---------------------------------------------------------------------------
// Residual

std::vector<double> Solver::residual_at_c_points() {
  auto& st = states_[0];
  std::vector<double> norms;
  if (st.owned.empty()) return norms;
  record(0, "residual");
  const auto& lp = hierarchy_->level(0);
  const auto [lo, hi] = st.owned;
  const auto left = exchange_[0].exchange_left_boundary(ExchangePhase::residual, &st.u_at(hi - 1),
                                                        app(0).vector_template());
  for (std::size_t i = lo; i < hi; ++i) {
    if (!lp.c_point(i)) continue;
    if (i == 0) {
      norms.push_back((st.g_at(0) - st.u_at(0)).norm());
    } else {
      norms.push_back(residual_at(i, i == lo ? *left : st.u_at(i - 1)).norm());
    }
  }
  return norms;
}

double Solver::space_time_residual() {
  const auto local = residual_at_c_points();
  if (transport_->size() == 1) return residual_norm(local);
  const int root = 0;
  const auto all = transport_->gather(root, make_tag(TagKind::norm_gather, 0), local);
  double norm = 0.0;
  if (transport_->rank() == root) {
    std::vector<double> flat;
    for (const auto& part : all) flat.insert(flat.end(), part.begin(), part.end());
    norm = residual_norm(flat);
  }
  return transport_->broadcast(root, make_tag(TagKind::norm_broadcast, 0), norm);
}

// ---------------------------------------------------------------------------
// Level transfer

void Solver::restrict_fas(std::size_t fine_level) {
  const std::size_t coarse_level = fine_level + 1;
  auto& fine = states_[fine_level];
  auto& coarse = states_[coarse_level];
  const auto& cf = hierarchy_->level(fine_level).cf_map;
  const auto& R = transfer(fine_level);

  std::optional<State> fine_left;
  if (!fine.owned.empty()) {
    fine_left = exchange_[fine_level].exchange_left_boundary(
        ExchangePhase::restrict_fine, &fine.u_at(fine.owned.end - 1),
        app(fine_level).vector_template());
  }
  if (coarse.owned.empty()) return;
  record(coarse_level, "restrict");

  const auto& fine_grid = app(fine_level).time_grid();
  std::vector<State> restricted_residual(coarse.owned.size());
  for (std::size_t ic = coarse.owned.begin; ic < coarse.owned.end; ++ic) {
    const std::size_t i = cf[ic];
    coarse.u_at(ic) = R.restrict_to_coarse(fine.u_at(i));
    if (ic == 0) continue;
    const State& previous = i == fine.owned.begin ? *fine_left : fine.u_at(i - 1);
    State r = app(fine_level).propagate(previous, fine_grid[i - 1], fine_grid[i]);
    r -= fine.u_at(i);
    r += fine.g_at(i);
    restricted_residual[ic - coarse.owned.begin] = R.restrict_to_coarse(r);
  }
  coarse.v = coarse.u;

  const auto coarse_left = exchange_[coarse_level].exchange_left_boundary(
      ExchangePhase::restrict_coarse, &coarse.u_at(coarse.owned.end - 1),
      app(coarse_level).vector_template());
  const auto& coarse_grid = app(coarse_level).time_grid();
  for (std::size_t ic = coarse.owned.begin; ic < coarse.owned.end; ++ic) {
    if (ic == 0) {
      coarse.g_at(0) = coarse.u_at(0);
      continue;
    }
    const State& previous = ic == coarse.owned.begin ? *coarse_left : coarse.u_at(ic - 1);
    State tau = coarse.u_at(ic) -
                app(coarse_level).propagate(previous, coarse_grid[ic - 1], coarse_grid[ic]);
    State g = std::move(restricted_residual[ic - coarse.owned.begin]);
    g += tau;
    coarse.g_at(ic) = std::move(g);
  }
}

void Solver::coarse_solve() {
  const std::size_t level = hierarchy_->coarsest();
  auto& st = states_[level];
  record(level, "coarse_solve");
  const std::size_t n = hierarchy_->level(level).count();

  if (transport_->size() == 1) {
    st.u_at(0) = st.g_at(0);
    for (std::size_t i = 1; i < n; ++i) step_into(level, i, st.u_at(i - 1));
    return;
  }

  const int root = decomposition_.coarse_solver();
  const auto gathered =
      transport_->gather(root, make_tag(TagKind::coarse_gather, level), pack_all(st.g));
  std::vector<std::vector<double>> pieces;
  if (transport_->rank() == root) {
    const State& proto = app(level).vector_template();
    std::vector<State> g(n, proto);
    std::vector<State> u(n, proto);
    std::size_t next = 0;
    for (int w = 0; w < transport_->size(); ++w) {
      const auto range = decomposition_.range(level, w);
      unpack_all(gathered[static_cast<std::size_t>(w)],
                 std::span<State>(g).subspan(range.begin, range.size()));
      next += range.size();
    }
    if (next != n) throw StructureError("coarsest level gather incomplete");
    const auto& grid = app(level).time_grid();
    u[0] = g[0];
    for (std::size_t i = 1; i < n; ++i) {
      u[i] = app(level).propagate(u[i - 1], grid[i - 1], grid[i]);
      u[i] += g[i];
    }
    for (int w = 0; w < transport_->size(); ++w) {
      const auto range = decomposition_.range(level, w);
      pieces.push_back(pack_all(std::span<const State>(u).subspan(range.begin, range.size())));
    }
  }
  const auto mine = transport_->scatter(root, make_tag(TagKind::coarse_scatter, level), pieces);
  unpack_all(mine, st.u);
}

void Solver::correct_and_interpolate(std::size_t fine_level) {
  const std::size_t coarse_level = fine_level + 1;
  auto& fine = states_[fine_level];
  auto& coarse = states_[coarse_level];
  const auto& cf = hierarchy_->level(fine_level).cf_map;
  const auto& P = transfer(fine_level);
  record(fine_level, "interpolate");
  for (std::size_t ic = coarse.owned.begin; ic < coarse.owned.end; ++ic) {
    const State error = coarse.u_at(ic) - coarse.v_at(ic);
    fine.u_at(cf[ic]) += P.interpolate_to_fine(error);
  }
  f_relax(fine_level);
}

// ---------------------------------------------------------------------------
// Cycles

void Solver::v_cycle(std::size_t level, bool leading_f) {
  relax(level, settings_.cf_iter, leading_f);
  restrict_fas(level);
  if (level + 1 == hierarchy_->coarsest()) {
    coarse_solve();
  } else {
    v_cycle(level + 1);
  }
  correct_and_interpolate(level);
}

void Solver::f_cycle(std::size_t level, bool leading_f) {
  relax(level, settings_.cf_iter, leading_f);
  restrict_fas(level);
  if (level + 1 == hierarchy_->coarsest()) {
    coarse_solve();
  } else {
    f_cycle(level + 1);
  }
  correct_and_interpolate(level);
  if (level != 0) v_cycle(level);
}

void Solver::nested_iteration() {
  const std::size_t coarsest = hierarchy_->coarsest();
  // Coarse levels solve the re-discretized original problem.
  for (std::size_t l = 1; l <= coarsest; ++l) {
    auto& st = states_[l];
    if (st.owned.contains(0)) {
      st.g_at(0) = app(l).vector_t_start();
      st.u_at(0) = app(l).vector_t_start();
    }
  }
  coarse_solve();
  for (std::size_t l = coarsest; l-- > 0;) {
    auto& fine = states_[l];
    const auto& coarse = states_[l + 1];
    const auto& cf = hierarchy_->level(l).cf_map;
    const auto& P = transfer(l);
    record(l, "inject");
    for (std::size_t ic = coarse.owned.begin; ic < coarse.owned.end; ++ic) {
      if (ic == 0) continue;
      fine.u_at(cf[ic]) = P.interpolate_to_fine(coarse.u_at(ic));
    }
    f_relax(l);
    if (l > 0) v_cycle(l);
  }
}

// ---------------------------------------------------------------------------

SolveInfo Solver::solve() {
  SolveInfo info;
  const auto start = Clock::now();
  initialize();
  if (hierarchy_->num_levels() == 1) {
    coarse_solve();
  } else if (settings_.nested_iteration) {
    nested_iteration();
  }
  info.setup_residual = space_time_residual();
  info.setup_seconds = seconds_since(start);
  if (!std::isfinite(info.setup_residual)) {
    throw DivergenceError("non-finite residual after setup", 0);
  }
  info.converged = hierarchy_->num_levels() == 1 || info.setup_residual < settings_.tol;

  const auto solve_start = Clock::now();
  for (int k = 0; !info.converged && k < settings_.max_iter; ++k) {
    const bool leading_f = !(settings_.skip_first_f_relax_after_two_iters && k >= 2);
    if (settings_.cycle_type == CycleType::V) {
      v_cycle(0, leading_f);
    } else {
      f_cycle(0, leading_f);
    }
    const double residual = space_time_residual();
    if (!std::isfinite(residual)) {
      throw DivergenceError("non-finite space-time residual in iteration " + std::to_string(k + 1),
                            k + 1);
    }
    info.residual_history.push_back(residual);
    info.cumulative_seconds.push_back(seconds_since(start));
    info.iterations = k + 1;
    info.converged = residual < settings_.tol;
  }
  info.solve_seconds = seconds_since(solve_start);
  return info;
}

std::vector<State> Solver::gather_solution() {
  const auto& st = states_[0];
  const std::size_t n = hierarchy_->level(0).count();
  if (transport_->size() == 1) return st.u;
  const auto gathered = transport_->gather(0, make_tag(TagKind::solution_gather, 0), pack_all(st.u));
  if (transport_->rank() != 0) return {};
  std::vector<State> all(n, app(0).vector_template());
  for (int w = 0; w < transport_->size(); ++w) {
    const auto range = decomposition_.range(0, w);
    unpack_all(gathered[static_cast<std::size_t>(w)],
               std::span<State>(all).subspan(range.begin, range.size()));
  }
  return all;
}

}  // namespace mgrit
