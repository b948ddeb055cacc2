#include "mgrit/transport.hpp"

#include <string>

#include "mgrit/errors.hpp"

namespace mgrit {

void Transport::send(int dest, int tag, std::span<const double> data) {
  if (dest < 0 || dest >= size() || dest == rank()) {
    throw TransportError("invalid destination " + std::to_string(dest) + " from rank " +
                         std::to_string(rank()));
  }
  do_send(dest, tag, data);
  ++stats_.messages_sent;
  stats_.values_sent += data.size();
}

std::vector<double> Transport::receive(int source, int tag) {
  if (source < 0 || source >= size() || source == rank()) {
    throw TransportError("invalid source " + std::to_string(source) + " at rank " +
                         std::to_string(rank()));
  }
  return do_receive(source, tag);
}

std::vector<std::vector<double>> Transport::gather(int root, int tag,
                                                   std::span<const double> data) {
  if (rank() != root) {
    send(root, tag, data);
    return {};
  }
  std::vector<std::vector<double>> all(static_cast<std::size_t>(size()));
  for (int r = 0; r < size(); ++r) {
    if (r == root) {
      all[r].assign(data.begin(), data.end());
    } else {
      all[r] = receive(r, tag);
    }
  }
  return all;
}

std::vector<double> Transport::scatter(int root, int tag,
                                       const std::vector<std::vector<double>>& pieces) {
  if (rank() != root) return receive(root, tag);
  if (pieces.size() != static_cast<std::size_t>(size())) {
    throw TransportError("scatter needs one piece per rank");
  }
  for (int r = 0; r < size(); ++r) {
    if (r != root) send(r, tag, pieces[r]);
  }
  return pieces[root];
}

double Transport::broadcast(int root, int tag, double value) {
  if (size() == 1) return value;
  std::vector<std::vector<double>> pieces;
  if (rank() == root) pieces.assign(static_cast<std::size_t>(size()), {value});
  return scatter(root, tag, pieces).at(0);
}

void SerialTransport::do_send(int, int, std::span<const double>) {
  throw TransportError("serial transport cannot send");
}

std::vector<double> SerialTransport::do_receive(int, int) {
  throw TransportError("serial transport cannot receive");
}

}  // namespace mgrit
