#include <gtest/gtest.h>

#include <atomic>
#include <mutex>

#include "mgrit/apps/heat1d.hpp"
#include "mgrit/decomposition.hpp"
#include "mgrit/errors.hpp"
#include "mgrit/solver.hpp"
#include "mgrit/thread_transport.hpp"
#include "support.hpp"

namespace mgrit {
namespace {

using testing::dahlquist;
using testing::max_diff;
using testing::uniform;

std::vector<std::size_t> sizes(const std::vector<IndexRange>& ranges) {
  std::vector<std::size_t> out;
  for (auto r : ranges) out.push_back(r.size());
  return out;
}

TEST(DistributePoints, Examples) {
  EXPECT_EQ(distribute_points(33, 2), (std::vector<IndexRange>{{0, 17}, {17, 33}}));
  EXPECT_EQ(distribute_points(10, 1), (std::vector<IndexRange>{{0, 10}}));
  EXPECT_EQ(sizes(distribute_points(5, 4)), (std::vector<std::size_t>{2, 1, 1, 1}));
}

TEST(SplitCommunicator, Examples) {
  for (int r = 0; r < 64; ++r) {
    const auto s = split_communicator(64, r, 4);
    EXPECT_EQ(s.time_size, 16);
    EXPECT_EQ(s.space_size, 4);
    EXPECT_EQ(s.space_rank, r % 4);
    EXPECT_EQ(s.time_rank, r / 4);
  }
  const auto single = split_communicator(6, 5, 1);
  EXPECT_EQ(single.time_size, 6);
  EXPECT_EQ(single.time_rank, 5);
  EXPECT_THROW(split_communicator(4, 0, 3), ConfigError);
}

TEST(TimeDecomposition, CoarseOwnershipFollowsFineImage) {
  // 33 points, factor 4: coarse points sit at fine indices 0, 4, ..., 32.
  const auto h = uniform(dahlquist(3.2, 33), 3, 4);
  const TimeDecomposition d(*h, 2);
  EXPECT_EQ(d.range(0, 0), (IndexRange{0, 17}));
  EXPECT_EQ(d.range(1, 0), (IndexRange{0, 5}));  // fine 0..16
  EXPECT_EQ(d.range(1, 1), (IndexRange{5, 9}));
  EXPECT_EQ(d.range(2, 0), (IndexRange{0, 2}));  // fine 0 and 16
  EXPECT_EQ(d.range(2, 1), (IndexRange{2, 3}));
  EXPECT_EQ(d.coarse_solver(), 0);
}

TEST(TimeDecomposition, EmptyWorkersSkippedAsNeighbors) {
  // 9 points on 5 workers: coarse points 0, 4, 8 land on workers 0, 2, 4.
  const auto h = uniform(dahlquist(0.8, 9), 2, 4);
  const TimeDecomposition d(*h, 5);
  EXPECT_TRUE(d.range(1, 1).empty());
  EXPECT_TRUE(d.range(1, 3).empty());
  EXPECT_EQ(d.left_neighbor(1, 2), 0);
  EXPECT_EQ(d.right_neighbor(1, 2), 4);
  EXPECT_EQ(d.boundaries(1), 2u);
}

// Messages sent by all workers while each runs `sweep` once.
template <class Sweep>
std::size_t count_messages(std::shared_ptr<const Hierarchy> h, int workers, Sweep sweep) {
  std::atomic<std::size_t> total{0};
  MgritSettings s;
  s.nested_iteration = false;
  run_workers(workers, [&](Transport& t) {
    Solver solver(h, s, t);
    t.reset_stats();
    sweep(solver);
    total += t.stats().messages_sent;
  });
  return total;
}

TEST(BoundaryExchange, SingleWorkerSendsNothing) {
  const auto h = uniform(dahlquist(1.6, 17), 2, 4);
  EXPECT_EQ(count_messages(h, 1, [](Solver& s) { s.solve(); }), 0u);
}

TEST(BoundaryExchange, BoundaryInsideFBlock) {
  // Two workers own [0,9) and [9,17); 9 continues the F-block started at 8.
  const auto h = uniform(dahlquist(1.6, 17), 2, 4);
  EXPECT_EQ(count_messages(h, 2, [](Solver& s) { s.f_relax(0); }), 1u);
  EXPECT_EQ(count_messages(h, 2, [](Solver& s) { s.c_relax(0); }), 0u);
}

TEST(BoundaryExchange, BoundaryAtCPoint) {
  // Three workers own [0,6), [6,12), [12,17); C-point 12 needs F-point 11.
  const auto h = uniform(dahlquist(1.6, 17), 2, 4);
  EXPECT_EQ(count_messages(h, 3, [](Solver& s) { s.c_relax(0); }), 1u);
  EXPECT_EQ(count_messages(h, 3, [](Solver& s) { s.f_relax(0); }), 1u);
}

TEST(BoundaryExchange, SweepBudget) {
  const auto h = uniform(dahlquist(6.4, 65), 4, 2);
  for (int workers : {2, 3, 4, 5}) {
    const TimeDecomposition d(*h, workers);
    for (std::size_t l = 0; l < h->num_levels(); ++l) {
      const auto budget = 2 * d.boundaries(l);
      EXPECT_LE(count_messages(h, workers, [l](Solver& s) { s.f_relax(l); }), budget);
      EXPECT_LE(count_messages(h, workers, [l](Solver& s) { s.c_relax(l); }), budget);
    }
  }
}

TEST(GatherSolveBroadcast, MatchesSerialBitwise) {
  const auto h = uniform(dahlquist(0.8, 9), 2, 4);
  MgritSettings s;
  s.nested_iteration = false;
  Solver serial(h, s);
  serial.restrict_fas(0);
  serial.coarse_solve();
  const auto expected = serial.state(1).u;

  for (int workers : {2, 4, 5}) {
    std::mutex lock;
    int empty_workers = 0;
    run_workers(workers, [&](Transport& t) {
      Solver solver(h, s, t);
      solver.restrict_fas(0);
      solver.coarse_solve();
      const auto& st = solver.state(1);
      std::lock_guard guard(lock);
      if (st.owned.empty()) ++empty_workers;
      for (std::size_t i = st.owned.begin; i < st.owned.end; ++i) {
        EXPECT_EQ(st.u_at(i).pack(), expected[i].pack()) << workers << " workers, point " << i;
      }
    });
    EXPECT_EQ(empty_workers, std::max(0, workers - 3));
  }
}

struct RunResult {
  SolveInfo info;
  std::vector<State> solution;
};

RunResult run_on(std::shared_ptr<const Hierarchy> h, const MgritSettings& s, int workers) {
  RunResult out;
  run_workers(workers, [&](Transport& t) {
    Solver solver(h, s, t);
    auto info = solver.solve();
    auto solution = solver.gather_solution();
    if (t.rank() == 0) {
      out.info = std::move(info);
      out.solution = std::move(solution);
    }
  });
  return out;
}

TEST(WorkerCount, HistoriesAndSolutionsIdentical) {
  const auto h = uniform(std::make_shared<apps::Heat1D>(TimeGrid::uniform(0.0, 2.0, 65), 17), 3, 4);
  for (auto cycle : {CycleType::V, CycleType::F}) {
    for (bool nested : {true, false}) {
      MgritSettings s;
      s.cycle_type = cycle;
      s.nested_iteration = nested;
      s.random_seed = 5;
      const auto one = run_on(h, s, 1);
      for (int workers : {2, 3, 4, 7}) {
        const auto many = run_on(h, s, workers);
        EXPECT_EQ(many.info.residual_history, one.info.residual_history) << workers;
        EXPECT_EQ(many.info.setup_residual, one.info.setup_residual);
        ASSERT_EQ(many.solution.size(), one.solution.size());
        EXPECT_EQ(max_diff(many.solution, one.solution), 0.0);
      }
    }
  }
}

TEST(WorkerCount, MoreWorkersThanCoarsePoints) {
  const auto h = uniform(dahlquist(1.6, 17), 3, 4);  // 17, 5, 2 points
  MgritSettings s;
  s.nested_iteration = false;
  const auto one = run_on(h, s, 1);
  const auto many = run_on(h, s, 8);
  EXPECT_EQ(many.info.residual_history, one.info.residual_history);
}

TEST(ThreadNetwork, FifoPerPair) {
  run_workers(2, [](Transport& t) {
    if (t.rank() == 0) {
      for (int k = 0; k < 5; ++k) t.send(1, 7, std::vector<double>{double(k)});
    } else {
      for (int k = 0; k < 5; ++k) EXPECT_EQ(t.receive(0, 7), std::vector<double>{double(k)});
    }
  });
}

TEST(ThreadNetwork, TagMismatchIsTransportError) {
  EXPECT_THROW(run_workers(2,
                           [](Transport& t) {
                             if (t.rank() == 0) t.send(1, 1, std::vector<double>{1.0});
                             else t.receive(0, 2);
                           }),
               TransportError);
}

TEST(ThreadNetwork, WorkerErrorAbortsPeers) {
  EXPECT_THROW(run_workers(3,
                           [](Transport& t) {
                             if (t.rank() == 1) throw StructureError("boom");
                             t.receive(1, 1);
                           }),
               StructureError);
}

TEST(ThreadNetwork, TimeoutSurfaces) {
  ThreadNetwork net(2, std::chrono::milliseconds(20));
  EXPECT_THROW(net.endpoint(0).receive(1, 1), TransportError);
}

TEST(Transport, GatherScatterBroadcast) {
  run_workers(3, [](Transport& t) {
    const std::vector<double> mine(static_cast<std::size_t>(t.rank()) + 1, t.rank());
    const auto all = t.gather(0, 9, mine);
    std::vector<std::vector<double>> pieces;
    if (t.rank() == 0) {
      ASSERT_EQ(all.size(), 3u);
      EXPECT_EQ(all[2], (std::vector<double>{2.0, 2.0, 2.0}));
      pieces = {{10.0}, {11.0}, {12.0}};
    }
    EXPECT_EQ(t.scatter(0, 10, pieces), std::vector<double>{10.0 + t.rank()});
    EXPECT_EQ(t.broadcast(0, 11, t.rank() == 0 ? 3.5 : 0.0), 3.5);
  });
}

TEST(SerialTransport, RejectsMessages) {
  SerialTransport t;
  EXPECT_THROW(t.send(0, 1, std::vector<double>{}), TransportError);
}

}  // namespace
}  // namespace mgrit
