#pragma once

#include <cmath>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cfgsim/errors.hpp"

// Reverse-mode autodiff over dense row-major matrices. A Tape records
// one node per operation in execution order; backward() walks them in
// exact reverse, pushing adjoints from outputs to inputs through a
// per-call side table and finally accumulating into each tensor's
// persistent grad buffer. Repeated backward calls therefore add up, and
// grads survive across tapes until zero_grad().
//
// Every op validates shapes up front and checks its output for NaN/Inf.

namespace cfgsim {

struct TensorImpl {
  int rows = 0;
  int cols = 0;
  std::vector<double> value;
  std::vector<double> grad;  // sized on demand, only when requires_grad
  bool requires_grad = false;
};

class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(int rows, int cols, bool requires_grad = false) {
    auto impl = std::make_shared<TensorImpl>();
    impl->rows = rows;
    impl->cols = cols;
    impl->value.assign(static_cast<std::size_t>(rows) * cols, 0.0);
    impl->requires_grad = requires_grad;
    return Tensor(std::move(impl));
  }

  static Tensor of(int rows, int cols, std::vector<double> data,
                   bool requires_grad = false) {
    if (static_cast<std::size_t>(rows) * cols != data.size())
      throw NumericError("Tensor::of: data length does not match shape");
    auto t = zeros(rows, cols, requires_grad);
    t.impl_->value = std::move(data);
    return t;
  }

  static Tensor scalar(double v) { return of(1, 1, {v}); }

  bool defined() const { return impl_ != nullptr; }
  int rows() const { return impl_->rows; }
  int cols() const { return impl_->cols; }
  std::size_t size() const { return impl_->value.size(); }
  bool requires_grad() const { return impl_->requires_grad; }

  double at(int r, int c) const { return impl_->value[r * impl_->cols + c]; }
  void set(int r, int c, double v) { impl_->value[r * impl_->cols + c] = v; }
  double item() const {
    if (size() != 1) throw NumericError("Tensor::item: tensor is not scalar");
    return impl_->value[0];
  }

  const std::vector<double>& values() const { return impl_->value; }
  std::vector<double>& mutable_values() { return impl_->value; }

  const std::vector<double>& grad() const {
    ensure_grad(*impl_);
    return impl_->grad;
  }

  void zero_grad() {
    if (impl_->requires_grad)
      impl_->grad.assign(impl_->value.size(), 0.0);
  }

  TensorImpl* raw() const { return impl_.get(); }
  const std::shared_ptr<TensorImpl>& shared() const { return impl_; }

  static void ensure_grad(TensorImpl& impl) {
    if (impl.grad.size() != impl.value.size())
      impl.grad.assign(impl.value.size(), 0.0);
  }

 private:
  explicit Tensor(std::shared_ptr<TensorImpl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<TensorImpl> impl_;
};

class Tape {
 public:
  // recording=false gives a pure forward evaluator: identical values
  // through the same kernels, no nodes, no gradients.
  explicit Tape(bool recording = true) : recording_(recording) {}

  Tensor matmul(const Tensor& a, const Tensor& b) {
    if (a.cols() != b.rows())
      throw NumericError("matmul: shapes (" + shape(a) + ")x(" + shape(b) +
                         ") do not chain");
    Tensor out = fresh(a.rows(), b.cols(), a, b);
    const int n = a.rows(), k = a.cols(), m = b.cols();
    const auto& av = a.values();
    const auto& bv = b.values();
    auto& ov = out.mutable_values();
    for (int i = 0; i < n; ++i)
      for (int kk = 0; kk < k; ++kk) {
        const double aik = av[i * k + kk];
        if (aik == 0.0) continue;
        for (int j = 0; j < m; ++j) ov[i * m + j] += aik * bv[kk * m + j];
      }
    finish(out, "matmul");
    if (tracked(out))
      record([a, b, out, this] {
        const int n = a.rows(), k = a.cols(), m = b.cols();
        const auto& og = adj(out);
        if (grad_flows(a)) {
          auto& ag = adj_mut(a);
          const auto& bv = b.values();
          for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
              const double g = og[i * m + j];
              if (g == 0.0) continue;
              for (int kk = 0; kk < k; ++kk)
                ag[i * k + kk] += g * bv[kk * m + j];
            }
        }
        if (grad_flows(b)) {
          auto& bg = adj_mut(b);
          const auto& av = a.values();
          for (int i = 0; i < n; ++i)
            for (int kk = 0; kk < k; ++kk) {
              const double aik = av[i * k + kk];
              if (aik == 0.0) continue;
              for (int j = 0; j < m; ++j)
                bg[kk * m + j] += aik * og[i * m + j];
            }
        }
      });
    return out;
  }

  Tensor add(const Tensor& a, const Tensor& b) {
    return zip(a, b, "add", [](double x, double y) { return x + y; },
               [](double, double, double g) { return std::pair{g, g}; });
  }

  Tensor sub(const Tensor& a, const Tensor& b) {
    return zip(a, b, "sub", [](double x, double y) { return x - y; },
               [](double, double, double g) { return std::pair{g, -g}; });
  }

  Tensor mul_elem(const Tensor& a, const Tensor& b) {
    return zip(a, b, "mul_elem", [](double x, double y) { return x * y; },
               [](double x, double y, double g) {
                 return std::pair{g * y, g * x};
               });
  }

  Tensor scale(const Tensor& a, double s) {
    Tensor out = fresh(a.rows(), a.cols(), a);
    auto& ov = out.mutable_values();
    const auto& av = a.values();
    for (std::size_t i = 0; i < av.size(); ++i) ov[i] = av[i] * s;
    finish(out, "scale");
    if (tracked(out))
      record([a, out, s, this] {
        const auto& og = adj(out);
        auto& ag = adj_mut(a);
        for (std::size_t i = 0; i < ag.size(); ++i) ag[i] += s * og[i];
      });
    return out;
  }

  Tensor transpose(const Tensor& a) {
    Tensor out = fresh(a.cols(), a.rows(), a);
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) out.set(j, i, a.at(i, j));
    finish(out, "transpose");
    if (tracked(out))
      record([a, out, this] {
        const auto& og = adj(out);
        auto& ag = adj_mut(a);
        const int r = a.rows(), c = a.cols();
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < c; ++j) ag[i * c + j] += og[j * r + i];
      });
    return out;
  }

  Tensor concat_rows(const std::vector<Tensor>& parts) {
    if (parts.empty()) throw NumericError("concat_rows: no inputs");
    const int cols = parts[0].cols();
    int rows = 0;
    for (const auto& p : parts) {
      if (p.cols() != cols)
        throw NumericError("concat_rows: column mismatch (" + shape(p) +
                           " vs " + std::to_string(cols) + " cols)");
      rows += p.rows();
    }
    bool any = false;
    for (const auto& p : parts) any = any || grad_flows(p);
    Tensor out = Tensor::zeros(rows, cols, recording_ && any);
    auto& ov = out.mutable_values();
    std::size_t offset = 0;
    for (const auto& p : parts) {
      const auto& pv = p.values();
      std::copy(pv.begin(), pv.end(), ov.begin() + offset);
      offset += pv.size();
    }
    finish(out, "concat_rows");
    if (tracked(out))
      record([parts, out, this] {
        const auto& og = adj(out);
        std::size_t offset = 0;
        for (const auto& p : parts) {
          if (grad_flows(p)) {
            auto& pg = adj_mut(p);
            for (std::size_t i = 0; i < pg.size(); ++i) pg[i] += og[offset + i];
          }
          offset += p.size();
        }
      });
    return out;
  }

  Tensor mean_rows(const Tensor& a) {
    if (a.rows() < 1) throw NumericError("mean_rows: empty tensor");
    Tensor out = fresh(1, a.cols(), a);
    const int r = a.rows(), c = a.cols();
    auto& ov = out.mutable_values();
    const auto& av = a.values();
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) ov[j] += av[i * c + j];
    for (int j = 0; j < c; ++j) ov[j] /= r;
    finish(out, "mean_rows");
    if (tracked(out))
      record([a, out, this] {
        const auto& og = adj(out);
        auto& ag = adj_mut(a);
        const int r = a.rows(), c = a.cols();
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < c; ++j) ag[i * c + j] += og[j] / r;
      });
    return out;
  }

  Tensor inner_product(const Tensor& a, const Tensor& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw NumericError("inner_product: shape mismatch (" + shape(a) +
                         " vs " + shape(b) + ")");
    double s = 0.0;
    const auto& av = a.values();
    const auto& bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) s += av[i] * bv[i];
    Tensor out = fresh(1, 1, a, b);
    out.mutable_values()[0] = s;
    finish(out, "inner_product");
    if (tracked(out))
      record([a, b, out, this] {
        const double g = adj(out)[0];
        if (grad_flows(a)) {
          auto& ag = adj_mut(a);
          const auto& bv = b.values();
          for (std::size_t i = 0; i < ag.size(); ++i) ag[i] += g * bv[i];
        }
        if (grad_flows(b)) {
          auto& bg = adj_mut(b);
          const auto& av = a.values();
          for (std::size_t i = 0; i < bg.size(); ++i) bg[i] += g * av[i];
        }
      });
    return out;
  }

  Tensor relu(const Tensor& a) {
    Tensor out = fresh(a.rows(), a.cols(), a);
    auto& ov = out.mutable_values();
    const auto& av = a.values();
    for (std::size_t i = 0; i < av.size(); ++i)
      ov[i] = av[i] > 0.0 ? av[i] : 0.0;
    finish(out, "relu");
    if (tracked(out))
      record([a, out, this] {
        const auto& og = adj(out);
        auto& ag = adj_mut(a);
        const auto& av = a.values();
        // subgradient 0 at exactly 0
        for (std::size_t i = 0; i < ag.size(); ++i)
          if (av[i] > 0.0) ag[i] += og[i];
      });
    return out;
  }

  Tensor sigmoid(const Tensor& a) {
    Tensor out = fresh(a.rows(), a.cols(), a);
    auto& ov = out.mutable_values();
    const auto& av = a.values();
    for (std::size_t i = 0; i < av.size(); ++i)
      ov[i] = 1.0 / (1.0 + std::exp(-av[i]));
    finish(out, "sigmoid");
    if (tracked(out))
      record([a, out, this] {
        const auto& og = adj(out);
        const auto& ov = out.values();
        auto& ag = adj_mut(a);
        for (std::size_t i = 0; i < ag.size(); ++i)
          ag[i] += og[i] * ov[i] * (1.0 - ov[i]);
      });
    return out;
  }

  // Identity forward, no gradient past it.
  Tensor stop_gradient(const Tensor& a) {
    Tensor out = Tensor::zeros(a.rows(), a.cols(), false);
    out.mutable_values() = a.values();
    return out;
  }

  // out row i = table row idx[i]; the one-hot × table matmul without
  // materializing the one-hot matrix.
  Tensor gather_rows(const Tensor& table, const std::vector<int>& idx) {
    const int c = table.cols();
    for (int i : idx)
      if (i < 0 || i >= table.rows())
        throw NumericError("gather_rows: row index out of range");
    Tensor out = fresh(static_cast<int>(idx.size()), c, table);
    auto& ov = out.mutable_values();
    const auto& tv = table.values();
    for (std::size_t i = 0; i < idx.size(); ++i)
      std::copy(tv.begin() + idx[i] * c, tv.begin() + (idx[i] + 1) * c,
                ov.begin() + i * c);
    finish(out, "gather_rows");
    if (tracked(out))
      record([table, out, idx, this] {
        const auto& og = adj(out);
        auto& tg = adj_mut(table);
        const int c = table.cols();
        for (std::size_t i = 0; i < idx.size(); ++i)
          for (int j = 0; j < c; ++j) tg[idx[i] * c + j] += og[i * c + j];
      });
    return out;
  }

  // out row v = mean of rows groups[v]; groups must be non-empty.
  Tensor group_mean_rows(const Tensor& a,
                         const std::vector<std::vector<int>>& groups) {
    const int c = a.cols();
    for (const auto& g : groups) {
      if (g.empty()) throw NumericError("group_mean_rows: empty group");
      for (int i : g)
        if (i < 0 || i >= a.rows())
          throw NumericError("group_mean_rows: row index out of range");
    }
    Tensor out = fresh(static_cast<int>(groups.size()), c, a);
    auto& ov = out.mutable_values();
    const auto& av = a.values();
    for (std::size_t v = 0; v < groups.size(); ++v) {
      for (int u : groups[v])
        for (int j = 0; j < c; ++j) ov[v * c + j] += av[u * c + j];
      for (int j = 0; j < c; ++j) ov[v * c + j] /= groups[v].size();
    }
    finish(out, "group_mean_rows");
    if (tracked(out))
      record([a, out, groups, this] {
        const auto& og = adj(out);
        auto& ag = adj_mut(a);
        const int c = a.cols();
        for (std::size_t v = 0; v < groups.size(); ++v) {
          const double inv = 1.0 / groups[v].size();
          for (int u : groups[v])
            for (int j = 0; j < c; ++j)
              ag[u * c + j] += og[v * c + j] * inv;
        }
      });
    return out;
  }

  Tensor constant(const Tensor& t) { return t; }

  // Seeds d(loss) = 1 and pulls adjoints through the tape in reverse
  // execution order, then adds them onto every requires_grad tensor.
  void backward(const Tensor& loss) {
    if (!recording_)
      throw NumericError("backward: tape is not recording");
    if (loss.size() != 1)
      throw NumericError("backward: loss must be scalar, got (" +
                         shape(loss) + ")");
    adjoints_.clear();
    adj_mut(loss)[0] = 1.0;
    for (auto it = nodes_.rbegin(); it != nodes_.rend(); ++it) (*it)();
    for (auto& [impl, buf] : adjoints_) {
      if (!impl->requires_grad) continue;
      Tensor::ensure_grad(*impl);
      for (std::size_t i = 0; i < buf.size(); ++i) impl->grad[i] += buf[i];
    }
  }

  std::size_t node_count() const { return nodes_.size(); }
  bool recording() const { return recording_; }

 private:
  bool recording_;
  std::vector<std::function<void()>> nodes_;
  std::unordered_map<TensorImpl*, std::vector<double>> adjoints_;

  static std::string shape(const Tensor& t) {
    return std::to_string(t.rows()) + "x" + std::to_string(t.cols());
  }

  // Gradient should flow into t: either a parameter tensor or an
  // intermediate this tape produced from one.
  bool grad_flows(const Tensor& t) const { return t.requires_grad(); }

  bool tracked(const Tensor& out) const {
    return recording_ && out.requires_grad();
  }

  Tensor fresh(int rows, int cols, const Tensor& a) {
    return Tensor::zeros(rows, cols, recording_ && a.requires_grad());
  }
  Tensor fresh(int rows, int cols, const Tensor& a, const Tensor& b) {
    return Tensor::zeros(rows, cols,
                         recording_ && (a.requires_grad() || b.requires_grad()));
  }

  void record(std::function<void()> fn) { nodes_.push_back(std::move(fn)); }

  void finish(const Tensor& out, const char* op) {
    for (double v : out.values())
      if (!std::isfinite(v))
        throw NumericError(std::string(op) + " produced a non-finite value");
  }

  const std::vector<double>& adj(const Tensor& t) {
    return adj_mut(t);
  }

  std::vector<double>& adj_mut(const Tensor& t) {
    auto& buf = adjoints_[t.raw()];
    if (buf.size() != t.size()) buf.assign(t.size(), 0.0);
    return buf;
  }

  template <typename F, typename B>
  Tensor zip(const Tensor& a, const Tensor& b, const char* op, F fwd, B bwd) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
      throw NumericError(std::string(op) + ": shape mismatch (" + shape(a) +
                         " vs " + shape(b) + ")");
    Tensor out = fresh(a.rows(), a.cols(), a, b);
    auto& ov = out.mutable_values();
    const auto& av = a.values();
    const auto& bv = b.values();
    for (std::size_t i = 0; i < av.size(); ++i) ov[i] = fwd(av[i], bv[i]);
    finish(out, op);
    if (tracked(out))
      record([a, b, out, bwd, this] {
        const auto& og = adj(out);
        const auto& av = a.values();
        const auto& bv = b.values();
        const bool fa = grad_flows(a), fb = grad_flows(b);
        std::vector<double>* ag = fa ? &adj_mut(a) : nullptr;
        std::vector<double>* bg = fb ? &adj_mut(b) : nullptr;
        for (std::size_t i = 0; i < og.size(); ++i) {
          auto [ga, gb] = bwd(av[i], bv[i], og[i]);
          if (fa) (*ag)[i] += ga;
          if (fb) (*bg)[i] += gb;
        }
      });
    return out;
  }
};

}  // namespace cfgsim
