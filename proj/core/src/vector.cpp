#include "mgrit/vector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <typeinfo>

#include "mgrit/errors.hpp"

namespace mgrit {

double StateVector::norm() const {
  std::vector<double> buffer(packed_size());
  pack(buffer);
  double sum = 0.0;
  for (double v : buffer) sum += v * v;
  return std::sqrt(sum);
}

bool StateVector::is_finite() const {
  std::vector<double> buffer(packed_size());
  pack(buffer);
  for (double v : buffer) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

StateVector& State::get() {
  if (!impl_) throw StructureError("access to an empty State");
  return *impl_;
}

const StateVector& State::get() const {
  if (!impl_) throw StructureError("access to an empty State");
  return *impl_;
}

State& State::operator+=(const State& other) {
  get().add(other.get());
  return *this;
}

State& State::operator-=(const State& other) {
  get().subtract(other.get());
  return *this;
}

double State::norm() const { return get().norm(); }
bool State::is_finite() const { return get().is_finite(); }
std::size_t State::packed_size() const { return get().packed_size(); }

std::vector<double> State::pack() const {
  std::vector<double> buffer(packed_size());
  get().pack(buffer);
  return buffer;
}

void State::pack_into(std::span<double> out) const {
  if (out.size() != packed_size()) {
    throw StructureError("pack: buffer has " + std::to_string(out.size()) +
                         " entries, vector packs " + std::to_string(packed_size()));
  }
  get().pack(out);
}

void State::unpack(std::span<const double> in) { get().unpack(in); }

State State::zero_like() const { return State(get().clone_zero()); }
State State::random_like(Rng& rng) const { return State(get().clone_rand(rng)); }

State State::unpacked_like(std::span<const double> buffer) const {
  State out = zero_like();
  out.unpack(buffer);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_length(std::size_t expected, std::size_t got) {
  if (expected != got) {
    std::ostringstream msg;
    msg << "unpack: expected " << expected << " values, got " << got;
    throw StructureError(msg.str());
  }
}

const ScalarVector& as_scalar(const StateVector& v) {
  auto* p = dynamic_cast<const ScalarVector*>(&v);
  if (!p) throw StructureError("ScalarVector combined with " + std::string(typeid(v).name()));
  return *p;
}

}  // namespace

std::unique_ptr<StateVector> ScalarVector::clone() const {
  return std::make_unique<ScalarVector>(value_);
}

std::unique_ptr<StateVector> ScalarVector::clone_zero() const {
  return std::make_unique<ScalarVector>(0.0);
}

std::unique_ptr<StateVector> ScalarVector::clone_rand(Rng& rng) const {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  return std::make_unique<ScalarVector>(dist(rng));
}

void ScalarVector::add(const StateVector& other) { value_ += as_scalar(other).value_; }
void ScalarVector::subtract(const StateVector& other) { value_ -= as_scalar(other).value_; }
double ScalarVector::norm() const { return std::abs(value_); }

void ScalarVector::pack(std::span<double> out) const {
  check_length(1, out.size());
  out[0] = value_;
}

void ScalarVector::unpack(std::span<const double> in) {
  check_length(1, in.size());
  value_ = in[0];
}

// ---------------------------------------------------------------------------

const GridVector& GridVector::same_shape(const StateVector& other) const {
  auto* p = dynamic_cast<const GridVector*>(&other);
  if (!p) throw StructureError("GridVector combined with " + std::string(typeid(other).name()));
  if (p->values_.size() != values_.size()) {
    std::ostringstream msg;
    msg << "GridVector size mismatch: " << values_.size() << " vs " << p->values_.size();
    throw StructureError(msg.str());
  }
  return *p;
}

std::unique_ptr<StateVector> GridVector::clone() const {
  return std::make_unique<GridVector>(values_);
}

std::unique_ptr<StateVector> GridVector::clone_zero() const {
  return std::make_unique<GridVector>(values_.size());
}

std::unique_ptr<StateVector> GridVector::clone_rand(Rng& rng) const {
  std::uniform_real_distribution<double> dist(0.0, 1.0);
  std::vector<double> values(values_.size());
  for (double& v : values) v = dist(rng);
  return std::make_unique<GridVector>(std::move(values));
}

void GridVector::add(const StateVector& other) {
  const auto& rhs = same_shape(other).values_;
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += rhs[i];
}

void GridVector::subtract(const StateVector& other) {
  const auto& rhs = same_shape(other).values_;
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= rhs[i];
}

double GridVector::norm() const {
  double sum = 0.0;
  for (double v : values_) sum += v * v;
  return std::sqrt(sum);
}

void GridVector::pack(std::span<double> out) const {
  check_length(values_.size(), out.size());
  std::copy(values_.begin(), values_.end(), out.begin());
}

void GridVector::unpack(std::span<const double> in) {
  check_length(values_.size(), in.size());
  std::copy(in.begin(), in.end(), values_.begin());
}

}  // namespace mgrit
