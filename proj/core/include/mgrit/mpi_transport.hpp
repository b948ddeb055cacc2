#pragma once

#include <mpi.h>

#include "mgrit/transport.hpp"

namespace mgrit {

/// Transport over an MPI communicator. The communicator is borrowed.
class MpiTransport final : public Transport {
 public:
  explicit MpiTransport(MPI_Comm comm);

  int rank() const override { return rank_; }
  int size() const override { return size_; }

 protected:
  void do_send(int dest, int tag, std::span<const double> data) override;
  std::vector<double> do_receive(int source, int tag) override;

 private:
  MPI_Comm comm_;
  int rank_ = 0;
  int size_ = 1;
};

}  // namespace mgrit
