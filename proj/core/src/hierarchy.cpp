#include "mgrit/hierarchy.hpp"

#include <charconv>

#include <sstream>

#include "mgrit/errors.hpp"

namespace mgrit {

namespace {

LevelProblem make_level(std::shared_ptr<const Application> app) {
  LevelProblem level;
  level.is_c_point.assign(app->time_grid().count(), 1);
  level.app = std::move(app);
  return level;
}

void link_levels(LevelProblem& fine, std::vector<std::size_t> cf_map) {
  fine.is_c_point.assign(fine.count(), 0);
  for (std::size_t i : cf_map) fine.is_c_point[i] = 1;
  fine.f_blocks = cf_splitting(fine.count(), cf_map);
  fine.cf_map = std::move(cf_map);
}

}  // namespace

Hierarchy::Hierarchy(std::vector<LevelProblem> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) throw StructureError("hierarchy needs at least one level");
  for (std::size_t l = 0; l + 1 < levels_.size(); ++l) {
    const auto& fine = levels_[l];
    if (fine.cf_map.size() != levels_[l + 1].count()) {
      throw StructureError("level " + std::to_string(l) + " cf_map does not match level " +
                           std::to_string(l + 1) + " size");
    }
  }
}

std::vector<std::size_t> Hierarchy::level_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& level : levels_) sizes.push_back(level.count());
  return sizes;
}

std::vector<IndexRange> cf_splitting(std::size_t fine_count,
                                     std::span<const std::size_t> coarse_indices) {
  std::vector<IndexRange> blocks;
  for (std::size_t k = 0; k < coarse_indices.size(); ++k) {
    const std::size_t first = coarse_indices[k] + 1;
    const std::size_t end = k + 1 < coarse_indices.size() ? coarse_indices[k + 1] : fine_count;
    if (first < end) blocks.push_back({first, end});
  }
  return blocks;
}

std::vector<std::size_t> uniform_level_sizes(std::size_t fine_points,
                                             std::span<const std::size_t> factors) {
  std::vector<std::size_t> sizes{fine_points};
  for (std::size_t l = 0; l < factors.size(); ++l) {
    const std::size_t m = factors[l];
    if (m < 2) {
      throw StructureError("coarsening factor " + std::to_string(m) + " between level " +
                           std::to_string(l) + " and " + std::to_string(l + 1) +
                           " must be at least 2");
    }
    const std::size_t coarse = (sizes.back() - 1) / m + 1;
    if (coarse < 2) {
      std::ostringstream msg;
      msg << "coarsening by " << m << " exhausts level " << l + 1 << ": level " << l << " has "
          << sizes.back() << " points, level " << l + 1 << " would have " << coarse;
      throw StructureError(msg.str());
    }
    sizes.push_back(coarse);
  }
  return sizes;
}

Hierarchy build_uniform_hierarchy(std::shared_ptr<const Application> problem, std::size_t levels,
                                  std::span<const std::size_t> coarsening) {
  if (!problem) throw StructureError("build_uniform_hierarchy: null problem");
  if (levels == 0) throw StructureError("hierarchy needs at least one level");
  std::vector<std::size_t> factors;
  if (levels > 1) {
    if (coarsening.size() == 1) {
      factors.assign(levels - 1, coarsening[0]);
    } else if (coarsening.size() == levels - 1) {
      factors.assign(coarsening.begin(), coarsening.end());
    } else {
      throw StructureError("expected 1 or " + std::to_string(levels - 1) +
                           " coarsening factors, got " + std::to_string(coarsening.size()));
    }
  }
  uniform_level_sizes(problem->time_grid().count(), factors);

  std::vector<LevelProblem> out;
  out.push_back(make_level(problem));
  for (std::size_t l = 0; l + 1 < levels; ++l) {
    const std::size_t m = factors[l];
    const auto& fine_grid = out.back().app->time_grid();
    std::vector<std::size_t> cf_map;
    for (std::size_t i = 0; i < fine_grid.count(); i += m) cf_map.push_back(i);
    auto coarse_app = problem->rediscretize(fine_grid.select(cf_map));
    link_levels(out.back(), std::move(cf_map));
    out.push_back(make_level(std::move(coarse_app)));
  }
  return Hierarchy(std::move(out));
}

Hierarchy build_uniform_hierarchy(std::shared_ptr<const Application> problem, std::size_t levels,
                                  std::size_t coarsening) {
  const std::size_t factors[] = {coarsening};
  return build_uniform_hierarchy(std::move(problem), levels, factors);
}

Hierarchy build_hierarchy_from_grids(std::vector<std::shared_ptr<const Application>> apps) {
  if (apps.empty()) throw StructureError("hierarchy needs at least one level");
  std::vector<LevelProblem> out;
  for (std::size_t l = 0; l < apps.size(); ++l) {
    if (!apps[l]) throw StructureError("null application on level " + std::to_string(l));
    out.push_back(make_level(apps[l]));
  }
  for (std::size_t l = 0; l + 1 < out.size(); ++l) {
    const auto fine = out[l].app->time_grid().points();
    const auto coarse = out[l + 1].app->time_grid().points();
    if (coarse.size() >= fine.size()) {
      throw StructureError("level " + std::to_string(l + 1) + " has " +
                           std::to_string(coarse.size()) + " points, not fewer than level " +
                           std::to_string(l) + "'s " + std::to_string(fine.size()));
    }
    std::vector<std::size_t> cf_map;
    std::size_t i = 0;
    for (double t : coarse) {
      while (i < fine.size() && fine[i] < t) ++i;
      if (i == fine.size() || fine[i] != t) {
        char buf[32];
        const auto end = std::to_chars(buf, buf + sizeof buf, t).ptr;
        throw StructureError("time " + std::string(buf, end) + " on level " + std::to_string(l + 1) +
                             " is not a point of level " + std::to_string(l));
      }
      cf_map.push_back(i);
    }
    if (cf_map.front() != 0) {
      throw StructureError("level " + std::to_string(l + 1) + " does not start at t_start of level " +
                           std::to_string(l));
    }
    link_levels(out[l], std::move(cf_map));
  }
  return Hierarchy(std::move(out));
}

}  // namespace mgrit
