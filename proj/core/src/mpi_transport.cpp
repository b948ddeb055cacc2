#include "mgrit/mpi_transport.hpp"

#include <string>

#include "mgrit/errors.hpp"

namespace mgrit {

namespace {

void check(int code, const char* what) {
  if (code != MPI_SUCCESS) throw TransportError(std::string(what) + " failed");
}

}  // namespace

MpiTransport::MpiTransport(MPI_Comm comm) : comm_(comm) {
  check(MPI_Comm_rank(comm_, &rank_), "MPI_Comm_rank");
  check(MPI_Comm_size(comm_, &size_), "MPI_Comm_size");
}

void MpiTransport::do_send(int dest, int tag, std::span<const double> data) {
  check(MPI_Send(data.data(), static_cast<int>(data.size()), MPI_DOUBLE, dest, tag, comm_),
        "MPI_Send");
}

std::vector<double> MpiTransport::do_receive(int source, int tag) {
  MPI_Status status;
  check(MPI_Probe(source, tag, comm_, &status), "MPI_Probe");
  int count = 0;
  check(MPI_Get_count(&status, MPI_DOUBLE, &count), "MPI_Get_count");
  std::vector<double> data(static_cast<std::size_t>(count));
  check(MPI_Recv(data.data(), count, MPI_DOUBLE, source, tag, comm_, MPI_STATUS_IGNORE),
        "MPI_Recv");
  return data;
}

}  // namespace mgrit
