#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "tsfm/rng.hpp"

namespace tsfm::ad {

using Mat = Eigen::MatrixXd;

/// Handle to a node on a Tape.
struct Var {
    int id = -1;
    bool valid() const { return id >= 0; }
};

/// Reverse-mode tape over dense double matrices. Nodes are appended in
/// evaluation order, which is a valid topological order, so backward() is a
/// single reverse sweep. Sequence tensors use the (B*T) x C layout with row
/// index b*T + t.
class Tape {
public:
    Var leaf(Mat value, bool requires_grad);
    Var constant(Mat value) { return leaf(std::move(value), false); }

    const Mat& value(Var v) const { return nodes_[check(v)].value; }
    const Mat& grad(Var v) const;

    int size() const { return static_cast<int>(nodes_.size()); }

    // Elementwise and scalar ops.
    Var add(Var a, Var b);
    Var sub(Var a, Var b);
    Var hadamard(Var a, Var b);
    Var scale(Var a, double s);
    Var add_scalar(Var a, double s);
    Var relu(Var a);
    Var tanh_(Var a);
    Var sigmoid(Var a);
    Var exp_(Var a);
    Var log_(Var a);

    // Ops with constant right-hand sides.
    Var add_const(Var a, Mat m);
    Var hadamard_const(Var a, Mat m);
    Var add_colvec_const(Var a, Eigen::VectorXd c);

    // Linear algebra.
    Var matmul(Var a, Var b);
    Var matmul_nt(Var a, Var b); // A * B^T
    Var add_rowvec(Var x, Var bias);

    // Shape ops.
    Var gather_rows(Var x, std::vector<int> rows);
    Var concat_rows(const std::vector<Var>& xs);
    Var concat_cols(Var a, Var b);
    Var slice_cols(Var x, int first, int count);

    // Reductions.
    Var row_sum(Var x);
    Var sum_all(Var x);
    Var mean_all(Var x);

    // Row-wise normalizations.
    Var layernorm(Var x, Var gamma, Var beta, double eps = 1e-5);
    Var softmax_rows(Var x);
    Var l2_normalize_rows(Var x);

    // Sequence ops on the (B*T) x C layout.
    Var conv1d(Var x, Var w, Var bias, int batch, int length, int kernel, int stride);
    Var mean_over_time(Var x, int batch, int steps);
    Var maxpool_time(Var x, int batch, int steps);

    Var dropout(Var x, double p, Rng& rng, bool training);

    /// Seeds d(loss)/d(loss) = 1 and sweeps the tape once. loss must be 1x1.
    void backward(Var loss);

private:
    struct Node {
        Mat value;
        Mat grad;
        bool requires_grad = false;
        std::function<void(Tape&)> backprop; // empty for leaves and constants
    };

    int check(Var v) const;
    Var push(Mat value, bool requires_grad, std::function<void(Tape&)> backprop);
    Mat& grad_buf(int id) { return nodes_[static_cast<std::size_t>(id)].grad; }
    bool needs(Var v) const { return nodes_[static_cast<std::size_t>(check(v))].requires_grad; }

    std::vector<Node> nodes_;
    bool ran_backward_ = false;
};

} // namespace tsfm::ad
