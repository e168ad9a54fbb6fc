// Copyright 2026 The stx Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Dense float64 tensors with a reverse-mode tape.
//
// Every op records its operands and a backward rule when at least one operand
// requires a gradient; otherwise the result is a plain value and nothing is
// recorded, so frozen sub-networks cost no tape memory. Graphs are meant to be
// rebuilt for every batch.

#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace stx::grad {

using Shape = std::vector<int>;

std::string shape_string(const Shape& shape);
std::size_t shape_size(const Shape& shape);

class ShapeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct Node {
  Shape shape;
  std::vector<double> value;
  std::vector<double> grad;
  bool requires_grad = false;
  std::string name;
  std::vector<std::shared_ptr<Node>> parents;
  std::function<void(Node&)> backward;

  // Lazily sized gradient buffer.
  std::vector<double>& grad_buffer();
};

class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(const Shape& shape);
  static Tensor full(const Shape& shape, double value);
  static Tensor from(const Shape& shape, std::vector<double> values);
  static Tensor scalar(double value);
  // Named leaf that takes part in gradient computation unless frozen.
  static Tensor parameter(std::string name, const Shape& shape,
                          std::vector<double> values);

  bool defined() const { return node_ != nullptr; }
  const Shape& shape() const { return node_->shape; }
  int dim(int axis) const;
  int rank() const { return static_cast<int>(node_->shape.size()); }
  std::size_t size() const { return node_->value.size(); }

  std::span<const double> data() const { return node_->value; }
  // Only leaves may be written in place.
  std::span<double> mutable_data();
  double item() const;
  double at(std::size_t flat_index) const { return node_->value[flat_index]; }

  bool requires_grad() const { return node_->requires_grad; }
  void set_requires_grad(bool flag);
  bool is_leaf() const { return node_->parents.empty() && !node_->backward; }
  const std::string& name() const { return node_->name; }

  // Gradient from the most recent backward pass, empty if none reached it.
  std::span<const double> grad() const { return node_->grad; }

  // Same value, detached from the tape.
  Tensor detach() const;

  Node* node() const { return node_.get(); }
  const std::shared_ptr<Node>& handle() const { return node_; }
  explicit Tensor(std::shared_ptr<Node> node) : node_(std::move(node)) {}

 private:
  std::shared_ptr<Node> node_;
};

using GradientMap = std::map<std::string, std::vector<double>>;

enum class OpKind { kAdd, kSub, kMul, kMatmul, kConcat, kSlice, kTranspose };
enum class Activation { kSigmoid, kTanh, kSoftmax, kLogSoftmax };

// Elementwise ops accept equal shapes, or one operand whose shape is a suffix
// of the other's (broadcast over the leading dimensions).
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor matmul(const Tensor& a, const Tensor& b);
Tensor concat(const std::vector<Tensor>& parts, int axis);
Tensor slice(const Tensor& x, int axis, int start, int length);
Tensor transpose(const Tensor& x);
Tensor reshape(const Tensor& x, const Shape& shape);

Tensor sigmoid(const Tensor& x);
Tensor tanh(const Tensor& x);
Tensor softmax(const Tensor& x, int axis);
Tensor log_softmax(const Tensor& x, int axis);
Tensor activation(Activation kind, const Tensor& x, int axis = -1);

Tensor scale(const Tensor& x, double factor);
Tensor sum(const Tensor& x);
// rows[i] = x[i, ids[i]] for a rank-2 x.
Tensor pick(const Tensor& x, std::span<const int> ids);
// Gathers rows of a rank-2 table.
Tensor embedding(const Tensor& table, std::span<const int> ids);

// Fused LSTM cell. `gates` holds pre-activations [B, 4H] in (input, forget,
// candidate, output) order; the result is [B, 2H] = (h | c).
Tensor lstm_cell(const Tensor& gates, const Tensor& c_prev);
// Row r comes from `a` where keep[r] != 0 and from `b` otherwise.
Tensor select_rows(std::span<const double> keep, const Tensor& a, const Tensor& b);

// While alive, ops on this thread record nothing.
class NoGradGuard {
 public:
  NoGradGuard();
  ~NoGradGuard();
  NoGradGuard(const NoGradGuard&) = delete;
  NoGradGuard& operator=(const NoGradGuard&) = delete;

 private:
  bool previous_;
};
bool grad_enabled();

// Dispatch used by gradient-check sweeps. Concat and slice act on axis 0 of
// the first operand; slice takes the leading half.
Tensor tensor_op(OpKind kind, const std::vector<Tensor>& operands);

// Runs reverse mode from a scalar loss. Gradients of every node reached are
// reset first, so the returned map holds exactly this loss's adjoints for the
// named leaves that require a gradient.
GradientMap backward(const Tensor& loss);

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

class OptimizerState {
 public:
  struct Moments {
    std::vector<double> first;
    std::vector<double> second;
    long updates = 0;
  };

  OptimizerState() = default;
  explicit OptimizerState(AdamConfig config) : config_(config) {}

  const AdamConfig& config() const { return config_; }
  void set_learning_rate(double lr) { config_.learning_rate = lr; }
  long step() const { return step_; }
  const std::map<std::string, Moments>& moments() const { return moments_; }
  // Reinstates a saved state, e.g. from a checkpoint.
  void restore(long step, std::map<std::string, Moments> moments) {
    step_ = step;
    moments_ = std::move(moments);
  }

 private:
  friend void adam_step(std::span<const Tensor>, const GradientMap&,
                        OptimizerState&);
  AdamConfig config_;
  long step_ = 0;
  std::map<std::string, Moments> moments_;
};

// Bias-corrected adaptive-moment update of every trainable tensor in
// `params`. Frozen tensors are skipped. Bias correction uses each
// parameter's own update count, so parameters shared by only some tasks of a
// multi-task run are corrected consistently.
void adam_step(std::span<const Tensor> params, const GradientMap& grads,
               OptimizerState& state);

}  // namespace stx::grad
