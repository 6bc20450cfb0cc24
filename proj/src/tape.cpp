#include "tsfm/tape.hpp"

#include <cmath>

#include "tsfm/common.hpp"

namespace tsfm::ad {

int Tape::check(Var v) const {
    if (v.id < 0 || v.id >= static_cast<int>(nodes_.size())) {
        throw UsageError("tape: invalid variable handle");
    }
    return v.id;
}

Var Tape::push(Mat value, bool requires_grad, std::function<void(Tape&)> backprop) {
    Node n;
    n.value = std::move(value);
    n.requires_grad = requires_grad;
    n.backprop = std::move(backprop);
    nodes_.push_back(std::move(n));
    return Var{static_cast<int>(nodes_.size()) - 1};
}

Var Tape::leaf(Mat value, bool requires_grad) {
    return push(std::move(value), requires_grad, nullptr);
}

const Mat& Tape::grad(Var v) const {
    const auto& n = nodes_[static_cast<std::size_t>(check(v))];
    if (!ran_backward_) {
        throw UsageError("tape: grad() before backward()");
    }
    return n.grad;
}

namespace {
void check_same_shape(const Mat& a, const Mat& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw UsageError(std::string("tape ") + op + ": shape mismatch");
    }
}
} // namespace

Var Tape::add(Var a, Var b) {
    check_same_shape(value(a), value(b), "add");
    Var out = push(value(a) + value(b), needs(a) || needs(b), nullptr);
    const int oid = out.id, ia = a.id, ib = b.id;
    nodes_.back().backprop = [oid, ia, ib](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        t.grad_buf(ia) += g;
        t.grad_buf(ib) += g;
    };
    return out;
}

Var Tape::sub(Var a, Var b) {
    check_same_shape(value(a), value(b), "sub");
    Var out = push(value(a) - value(b), needs(a) || needs(b), nullptr);
    const int oid = out.id, ia = a.id, ib = b.id;
    nodes_.back().backprop = [oid, ia, ib](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        t.grad_buf(ia) += g;
        t.grad_buf(ib) -= g;
    };
    return out;
}

Var Tape::hadamard(Var a, Var b) {
    check_same_shape(value(a), value(b), "hadamard");
    Var out = push(value(a).cwiseProduct(value(b)), needs(a) || needs(b), nullptr);
    const int oid = out.id, ia = a.id, ib = b.id;
    nodes_.back().backprop = [oid, ia, ib](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        t.grad_buf(ia) += g.cwiseProduct(t.nodes_[static_cast<std::size_t>(ib)].value);
        t.grad_buf(ib) += g.cwiseProduct(t.nodes_[static_cast<std::size_t>(ia)].value);
    };
    return out;
}

Var Tape::scale(Var a, double s) {
    Var out = push(value(a) * s, needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia, s](Tape& t) {
        t.grad_buf(ia) += t.nodes_[static_cast<std::size_t>(oid)].grad * s;
    };
    return out;
}

Var Tape::add_scalar(Var a, double s) {
    Var out = push(Mat(value(a).array() + s), needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia](Tape& t) {
        t.grad_buf(ia) += t.nodes_[static_cast<std::size_t>(oid)].grad;
    };
    return out;
}

Var Tape::relu(Var a) {
    Var out = push(value(a).cwiseMax(0.0), needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        const Mat& x = t.nodes_[static_cast<std::size_t>(ia)].value;
        t.grad_buf(ia).array() += g.array() * (x.array() > 0.0).cast<double>();
    };
    return out;
}

Var Tape::tanh_(Var a) {
    Var out = push(Mat(value(a).array().tanh()), needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        const Mat& y = t.nodes_[static_cast<std::size_t>(oid)].value;
        t.grad_buf(ia).array() += g.array() * (1.0 - y.array().square());
    };
    return out;
}

Var Tape::sigmoid(Var a) {
    Var out = push(Mat(((-value(a).array()).exp() + 1.0).inverse()), needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        const Mat& y = t.nodes_[static_cast<std::size_t>(oid)].value;
        t.grad_buf(ia).array() += g.array() * y.array() * (1.0 - y.array());
    };
    return out;
}

Var Tape::exp_(Var a) {
    Var out = push(Mat(value(a).array().exp()), needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        const Mat& y = t.nodes_[static_cast<std::size_t>(oid)].value;
        t.grad_buf(ia).array() += g.array() * y.array();
    };
    return out;
}

Var Tape::log_(Var a) {
    Var out = push(Mat(value(a).array().log()), needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        const Mat& x = t.nodes_[static_cast<std::size_t>(ia)].value;
        t.grad_buf(ia).array() += g.array() / x.array();
    };
    return out;
}

Var Tape::add_const(Var a, Mat m) {
    check_same_shape(value(a), m, "add_const");
    Var out = push(value(a) + m, needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia](Tape& t) {
        t.grad_buf(ia) += t.nodes_[static_cast<std::size_t>(oid)].grad;
    };
    return out;
}

Var Tape::hadamard_const(Var a, Mat m) {
    check_same_shape(value(a), m, "hadamard_const");
    Var out = push(value(a).cwiseProduct(m), needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia, m = std::move(m)](Tape& t) {
        t.grad_buf(ia) += t.nodes_[static_cast<std::size_t>(oid)].grad.cwiseProduct(m);
    };
    return out;
}

Var Tape::add_colvec_const(Var a, Eigen::VectorXd c) {
    if (value(a).rows() != c.size()) {
        throw UsageError("tape add_colvec_const: row count mismatch");
    }
    Var out = push(value(a).colwise() + c, needs(a), nullptr);
    const int oid = out.id, ia = a.id;
    nodes_.back().backprop = [oid, ia](Tape& t) {
        t.grad_buf(ia) += t.nodes_[static_cast<std::size_t>(oid)].grad;
    };
    return out;
}

Var Tape::matmul(Var a, Var b) {
    if (value(a).cols() != value(b).rows()) {
        throw UsageError("tape matmul: inner dimension mismatch");
    }
    Var out = push(value(a) * value(b), needs(a) || needs(b), nullptr);
    const int oid = out.id, ia = a.id, ib = b.id;
    nodes_.back().backprop = [oid, ia, ib](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        t.grad_buf(ia).noalias() += g * t.nodes_[static_cast<std::size_t>(ib)].value.transpose();
        t.grad_buf(ib).noalias() += t.nodes_[static_cast<std::size_t>(ia)].value.transpose() * g;
    };
    return out;
}

Var Tape::matmul_nt(Var a, Var b) {
    if (value(a).cols() != value(b).cols()) {
        throw UsageError("tape matmul_nt: inner dimension mismatch");
    }
    Var out = push(value(a) * value(b).transpose(), needs(a) || needs(b), nullptr);
    const int oid = out.id, ia = a.id, ib = b.id;
    nodes_.back().backprop = [oid, ia, ib](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        t.grad_buf(ia).noalias() += g * t.nodes_[static_cast<std::size_t>(ib)].value;
        t.grad_buf(ib).noalias() += g.transpose() * t.nodes_[static_cast<std::size_t>(ia)].value;
    };
    return out;
}

Var Tape::add_rowvec(Var x, Var bias) {
    if (value(bias).rows() != 1 || value(bias).cols() != value(x).cols()) {
        throw UsageError("tape add_rowvec: bias must be 1 x cols(x)");
    }
    Var out = push(value(x).rowwise() + value(bias).row(0), needs(x) || needs(bias), nullptr);
    const int oid = out.id, ix = x.id, ibias = bias.id;
    nodes_.back().backprop = [oid, ix, ibias](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        t.grad_buf(ix) += g;
        t.grad_buf(ibias) += g.colwise().sum();
    };
    return out;
}

Var Tape::gather_rows(Var x, std::vector<int> rows) {
    const Mat& v = value(x);
    Mat picked(static_cast<Eigen::Index>(rows.size()), v.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i] < 0 || rows[i] >= v.rows()) {
            throw UsageError("tape gather_rows: row index out of range");
        }
        picked.row(static_cast<Eigen::Index>(i)) = v.row(rows[i]);
    }
    Var out = push(std::move(picked), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix, rows = std::move(rows)](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        Mat& gx = t.grad_buf(ix);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            gx.row(rows[i]) += g.row(static_cast<Eigen::Index>(i));
        }
    };
    return out;
}

Var Tape::concat_rows(const std::vector<Var>& xs) {
    if (xs.empty()) {
        throw UsageError("tape concat_rows: empty list");
    }
    Eigen::Index rows = 0;
    const Eigen::Index cols = value(xs.front()).cols();
    bool req = false;
    for (Var v : xs) {
        if (value(v).cols() != cols) {
            throw UsageError("tape concat_rows: column mismatch");
        }
        rows += value(v).rows();
        req = req || needs(v);
    }
    Mat stacked(rows, cols);
    Eigen::Index at = 0;
    std::vector<int> ids;
    std::vector<Eigen::Index> extents;
    for (Var v : xs) {
        const Mat& m = value(v);
        stacked.middleRows(at, m.rows()) = m;
        at += m.rows();
        ids.push_back(v.id);
        extents.push_back(m.rows());
    }
    Var out = push(std::move(stacked), req, nullptr);
    const int oid = out.id;
    nodes_.back().backprop = [oid, ids = std::move(ids), extents = std::move(extents)](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        Eigen::Index pos = 0;
        for (std::size_t i = 0; i < ids.size(); ++i) {
            t.grad_buf(ids[i]) += g.middleRows(pos, extents[i]);
            pos += extents[i];
        }
    };
    return out;
}

Var Tape::concat_cols(Var a, Var b) {
    if (value(a).rows() != value(b).rows()) {
        throw UsageError("tape concat_cols: row mismatch");
    }
    Mat joined(value(a).rows(), value(a).cols() + value(b).cols());
    joined.leftCols(value(a).cols()) = value(a);
    joined.rightCols(value(b).cols()) = value(b);
    const Eigen::Index ca = value(a).cols();
    Var out = push(std::move(joined), needs(a) || needs(b), nullptr);
    const int oid = out.id, ia = a.id, ib = b.id;
    nodes_.back().backprop = [oid, ia, ib, ca](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        t.grad_buf(ia) += g.leftCols(ca);
        t.grad_buf(ib) += g.rightCols(g.cols() - ca);
    };
    return out;
}

Var Tape::slice_cols(Var x, int first, int count) {
    if (first < 0 || count < 1 || first + count > value(x).cols()) {
        throw UsageError("tape slice_cols: out of range");
    }
    Var out = push(value(x).middleCols(first, count), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix, first, count](Tape& t) {
        t.grad_buf(ix).middleCols(first, count) += t.nodes_[static_cast<std::size_t>(oid)].grad;
    };
    return out;
}

Var Tape::row_sum(Var x) {
    Var out = push(value(x).rowwise().sum(), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad; // N x 1
        t.grad_buf(ix).colwise() += Eigen::VectorXd(g.col(0));
    };
    return out;
}

Var Tape::sum_all(Var x) {
    Mat v(1, 1);
    v(0, 0) = value(x).sum();
    Var out = push(std::move(v), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix](Tape& t) {
        t.grad_buf(ix).array() += t.nodes_[static_cast<std::size_t>(oid)].grad(0, 0);
    };
    return out;
}

Var Tape::mean_all(Var x) {
    const double n = static_cast<double>(value(x).size());
    Mat v(1, 1);
    v(0, 0) = value(x).sum() / n;
    Var out = push(std::move(v), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix, n](Tape& t) {
        t.grad_buf(ix).array() += t.nodes_[static_cast<std::size_t>(oid)].grad(0, 0) / n;
    };
    return out;
}

Var Tape::layernorm(Var x, Var gamma, Var beta, double eps) {
    const Mat& v = value(x);
    const Eigen::Index cols = v.cols();
    if (value(gamma).rows() != 1 || value(gamma).cols() != cols || value(beta).rows() != 1 ||
        value(beta).cols() != cols) {
        throw UsageError("tape layernorm: gamma/beta must be 1 x cols(x)");
    }
    Mat xhat(v.rows(), cols);
    Eigen::VectorXd inv_std(v.rows());
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        const double mu = v.row(r).mean();
        const double var = (v.row(r).array() - mu).square().mean();
        const double is = 1.0 / std::sqrt(var + eps);
        inv_std(r) = is;
        xhat.row(r) = ((v.row(r).array() - mu) * is).matrix();
    }
    Mat normed(v.rows(), cols);
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        normed.row(r) =
            xhat.row(r).cwiseProduct(value(gamma).row(0)) + value(beta).row(0);
    }
    Var out = push(std::move(normed), needs(x) || needs(gamma) || needs(beta), nullptr);
    const int oid = out.id, ix = x.id, ig = gamma.id, ib = beta.id;
    nodes_.back().backprop = [oid, ix, ig, ib, xhat = std::move(xhat),
                              inv_std = std::move(inv_std)](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        const Mat& gam = t.nodes_[static_cast<std::size_t>(ig)].value;
        t.grad_buf(ig) += (g.array() * xhat.array()).colwise().sum().matrix();
        t.grad_buf(ib) += g.colwise().sum();
        Mat& gx = t.grad_buf(ix);
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            const Eigen::ArrayXXd gr = g.row(r).array() * gam.row(0).array();
            const double mean_g = gr.mean();
            const double mean_gx = (gr * xhat.row(r).array()).mean();
            gx.row(r).array() += inv_std(r) * (gr - mean_g - xhat.row(r).array() * mean_gx);
        }
    };
    return out;
}

Var Tape::softmax_rows(Var x) {
    const Mat& v = value(x);
    Mat probs(v.rows(), v.cols());
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        const double m = v.row(r).maxCoeff();
        Eigen::ArrayXd e = (v.row(r).array() - m).exp().transpose();
        probs.row(r) = (e / e.sum()).matrix().transpose();
    }
    Var out = push(std::move(probs), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        const Mat& p = t.nodes_[static_cast<std::size_t>(oid)].value;
        Mat& gx = t.grad_buf(ix);
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            const double dot = g.row(r).dot(p.row(r));
            gx.row(r).array() += p.row(r).array() * (g.row(r).array() - dot);
        }
    };
    return out;
}

Var Tape::l2_normalize_rows(Var x) {
    const Mat& v = value(x);
    Eigen::VectorXd norms(v.rows());
    Mat unit(v.rows(), v.cols());
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        // the epsilon keeps zero rows finite without disturbing healthy rows
        const double n = std::sqrt(v.row(r).squaredNorm() + 1e-24);
        norms(r) = n;
        unit.row(r) = v.row(r) / n;
    }
    Var out = push(std::move(unit), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix, norms = std::move(norms)](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        const Mat& v2 = t.nodes_[static_cast<std::size_t>(ix)].value;
        Mat& gx = t.grad_buf(ix);
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            const double n = norms(r);
            const double dot = g.row(r).dot(v2.row(r));
            gx.row(r) += g.row(r) / n - v2.row(r) * (dot / (n * n * n));
        }
    };
    return out;
}

Var Tape::conv1d(Var x, Var w, Var bias, int batch, int length, int kernel, int stride) {
    const Mat& v = value(x);
    const int cin = static_cast<int>(v.cols());
    if (v.rows() != static_cast<Eigen::Index>(batch) * length) {
        throw UsageError("tape conv1d: rows != batch * length");
    }
    if (value(w).rows() != static_cast<Eigen::Index>(kernel) * cin) {
        throw UsageError("tape conv1d: weight must be (kernel*cin) x cout");
    }
    if (value(bias).rows() != 1 || value(bias).cols() != value(w).cols()) {
        throw UsageError("tape conv1d: bias must be 1 x cout");
    }
    if (stride < 1 || kernel < 1) {
        throw UsageError("tape conv1d: bad kernel/stride");
    }
    const int steps = (length + stride - 1) / stride; // ceil, same padding
    const int pad = (kernel - 1) / 2;

    Mat cols(static_cast<Eigen::Index>(batch) * steps, static_cast<Eigen::Index>(kernel) * cin);
    cols.setZero();
    for (int b = 0; b < batch; ++b) {
        for (int t = 0; t < steps; ++t) {
            const Eigen::Index orow = static_cast<Eigen::Index>(b) * steps + t;
            const int s0 = t * stride - pad;
            for (int k = 0; k < kernel; ++k) {
                const int src = s0 + k;
                if (src < 0 || src >= length) {
                    continue;
                }
                cols.block(orow, static_cast<Eigen::Index>(k) * cin, 1, cin) =
                    v.row(static_cast<Eigen::Index>(b) * length + src);
            }
        }
    }
    Mat y = cols * value(w);
    y.rowwise() += value(bias).row(0);
    Var out = push(std::move(y), needs(x) || needs(w) || needs(bias), nullptr);
    const int oid = out.id, ix = x.id, iw = w.id, ibias = bias.id;
    nodes_.back().backprop = [oid, ix, iw, ibias, batch, length, kernel, stride, steps, pad, cin,
                              cols = std::move(cols)](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        t.grad_buf(iw).noalias() += cols.transpose() * g;
        t.grad_buf(ibias) += g.colwise().sum();
        const Mat dcols = g * t.nodes_[static_cast<std::size_t>(iw)].value.transpose();
        Mat& gx = t.grad_buf(ix);
        for (int b = 0; b < batch; ++b) {
            for (int s = 0; s < steps; ++s) {
                const Eigen::Index orow = static_cast<Eigen::Index>(b) * steps + s;
                const int s0 = s * stride - pad;
                for (int k = 0; k < kernel; ++k) {
                    const int src = s0 + k;
                    if (src < 0 || src >= length) {
                        continue;
                    }
                    gx.row(static_cast<Eigen::Index>(b) * length + src) +=
                        dcols.block(orow, static_cast<Eigen::Index>(k) * cin, 1, cin);
                }
            }
        }
    };
    return out;
}

Var Tape::mean_over_time(Var x, int batch, int steps) {
    const Mat& v = value(x);
    if (v.rows() != static_cast<Eigen::Index>(batch) * steps) {
        throw UsageError("tape mean_over_time: rows != batch * steps");
    }
    Mat pooled(batch, v.cols());
    for (int b = 0; b < batch; ++b) {
        pooled.row(b) = v.middleRows(static_cast<Eigen::Index>(b) * steps, steps).colwise().mean();
    }
    Var out = push(std::move(pooled), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix, batch, steps](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        Mat& gx = t.grad_buf(ix);
        for (int b = 0; b < batch; ++b) {
            gx.middleRows(static_cast<Eigen::Index>(b) * steps, steps).rowwise() +=
                (g.row(b) / static_cast<double>(steps));
        }
    };
    return out;
}

Var Tape::maxpool_time(Var x, int batch, int steps) {
    const Mat& v = value(x);
    if (v.rows() != static_cast<Eigen::Index>(batch) * steps) {
        throw UsageError("tape maxpool_time: rows != batch * steps");
    }
    const int out_steps = (steps + 1) / 2;
    Mat pooled(static_cast<Eigen::Index>(batch) * out_steps, v.cols());
    Eigen::MatrixXi argrow(pooled.rows(), pooled.cols());
    for (int b = 0; b < batch; ++b) {
        for (int u = 0; u < out_steps; ++u) {
            const Eigen::Index orow = static_cast<Eigen::Index>(b) * out_steps + u;
            const Eigen::Index r0 = static_cast<Eigen::Index>(b) * steps + 2 * u;
            const bool has_pair = 2 * u + 1 < steps;
            for (Eigen::Index c = 0; c < v.cols(); ++c) {
                if (has_pair && v(r0 + 1, c) > v(r0, c)) {
                    pooled(orow, c) = v(r0 + 1, c);
                    argrow(orow, c) = static_cast<int>(r0 + 1);
                } else {
                    pooled(orow, c) = v(r0, c);
                    argrow(orow, c) = static_cast<int>(r0);
                }
            }
        }
    }
    Var out = push(std::move(pooled), needs(x), nullptr);
    const int oid = out.id, ix = x.id;
    nodes_.back().backprop = [oid, ix, argrow = std::move(argrow)](Tape& t) {
        const Mat& g = t.nodes_[static_cast<std::size_t>(oid)].grad;
        Mat& gx = t.grad_buf(ix);
        for (Eigen::Index r = 0; r < g.rows(); ++r) {
            for (Eigen::Index c = 0; c < g.cols(); ++c) {
                gx(argrow(r, c), c) += g(r, c);
            }
        }
    };
    return out;
}

Var Tape::dropout(Var x, double p, Rng& rng, bool training) {
    if (p < 0.0 || p >= 1.0) {
        throw UsageError("tape dropout: p must lie in [0, 1)");
    }
    if (!training || p == 0.0) {
        return x;
    }
    const Mat& v = value(x);
    Mat mask(v.rows(), v.cols());
    const double keep = 1.0 - p;
    for (Eigen::Index r = 0; r < v.rows(); ++r) {
        for (Eigen::Index c = 0; c < v.cols(); ++c) {
            mask(r, c) = rng.bernoulli(keep) ? 1.0 / keep : 0.0;
        }
    }
    return hadamard_const(x, std::move(mask));
}

void Tape::backward(Var loss) {
    const int lid = check(loss);
    const Mat& lv = nodes_[static_cast<std::size_t>(lid)].value;
    if (lv.rows() != 1 || lv.cols() != 1) {
        throw UsageError("tape backward: loss must be 1x1");
    }
    for (auto& n : nodes_) {
        n.grad.setZero(n.value.rows(), n.value.cols());
    }
    nodes_[static_cast<std::size_t>(lid)].grad(0, 0) = 1.0;
    for (int i = lid; i >= 0; --i) {
        auto& n = nodes_[static_cast<std::size_t>(i)];
        if (n.backprop && n.requires_grad) {
            n.backprop(*this);
        }
    }
    ran_backward_ = true;
}

} // namespace tsfm::ad
