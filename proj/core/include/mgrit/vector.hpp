#pragma once

#include <cstddef>
#include <memory>
#include <random>
#include <span>
#include <utility>
#include <vector>

namespace mgrit {

using Rng = std::mt19937_64;

/// Solution at a single time point.
///
/// Implementations hold an opaque payload of 64-bit reals. The packed layout
/// is the payload in storage order with no header; it is the unit exchanged
/// between time workers.
class StateVector {
 public:
  virtual ~StateVector() = default;

  virtual std::unique_ptr<StateVector> clone() const = 0;
  virtual std::unique_ptr<StateVector> clone_zero() const = 0;
  /// Same shape, entries drawn i.i.d. uniform in [0, 1).
  virtual std::unique_ptr<StateVector> clone_rand(Rng& rng) const = 0;

  /// this += other
  virtual void add(const StateVector& other) = 0;
  /// this -= other
  virtual void subtract(const StateVector& other) = 0;

  /// Euclidean norm of the packed buffer unless overridden.
  virtual double norm() const;

  virtual std::size_t packed_size() const = 0;
  virtual void pack(std::span<double> out) const = 0;
  /// Throws StructureError if `in` does not have packed_size() entries.
  virtual void unpack(std::span<const double> in) = 0;

  bool is_finite() const;
};

/// Value-semantic handle around a StateVector. Copies deep-clone.
class State {
 public:
  State() = default;
  explicit State(std::unique_ptr<StateVector> impl) : impl_(std::move(impl)) {}

  template <class V, class... Args>
  static State make(Args&&... args) {
    return State(std::make_unique<V>(std::forward<Args>(args)...));
  }

  State(const State& other) : impl_(other.impl_ ? other.impl_->clone() : nullptr) {}
  State& operator=(const State& other) {
    if (this != &other) impl_ = other.impl_ ? other.impl_->clone() : nullptr;
    return *this;
  }
  State(State&&) noexcept = default;
  State& operator=(State&&) noexcept = default;

  bool empty() const noexcept { return impl_ == nullptr; }

  State& operator+=(const State& other);
  State& operator-=(const State& other);
  friend State operator+(State lhs, const State& rhs) { return lhs += rhs; }
  friend State operator-(State lhs, const State& rhs) { return lhs -= rhs; }

  double norm() const;
  bool is_finite() const;
  std::size_t packed_size() const;
  std::vector<double> pack() const;
  void pack_into(std::span<double> out) const;
  void unpack(std::span<const double> in);

  State zero_like() const;
  State random_like(Rng& rng) const;
  /// zero_like() followed by unpack(buffer).
  State unpacked_like(std::span<const double> buffer) const;

  StateVector& get();
  const StateVector& get() const;

  template <class V>
  V& as() {
    return dynamic_cast<V&>(get());
  }
  template <class V>
  const V& as() const {
    return dynamic_cast<const V&>(get());
  }

 private:
  std::unique_ptr<StateVector> impl_;
};

/// Scalar payload (ODE with one unknown).
class ScalarVector final : public StateVector {
 public:
  explicit ScalarVector(double value = 0.0) : value_(value) {}

  double value() const noexcept { return value_; }
  void set_value(double v) noexcept { value_ = v; }

  std::unique_ptr<StateVector> clone() const override;
  std::unique_ptr<StateVector> clone_zero() const override;
  std::unique_ptr<StateVector> clone_rand(Rng& rng) const override;
  void add(const StateVector& other) override;
  void subtract(const StateVector& other) override;
  double norm() const override;
  std::size_t packed_size() const override { return 1; }
  void pack(std::span<double> out) const override;
  void unpack(std::span<const double> in) override;

 private:
  double value_;
};

/// Flat array payload, used for grid functions of any dimension.
class GridVector final : public StateVector {
 public:
  explicit GridVector(std::size_t size) : values_(size, 0.0) {}
  explicit GridVector(std::vector<double> values) : values_(std::move(values)) {}

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }

  std::unique_ptr<StateVector> clone() const override;
  std::unique_ptr<StateVector> clone_zero() const override;
  std::unique_ptr<StateVector> clone_rand(Rng& rng) const override;
  void add(const StateVector& other) override;
  void subtract(const StateVector& other) override;
  double norm() const override;
  std::size_t packed_size() const override { return values_.size(); }
  void pack(std::span<double> out) const override;
  void unpack(std::span<const double> in) override;

 private:
  const GridVector& same_shape(const StateVector& other) const;

  std::vector<double> values_;
};

}  // namespace mgrit
