#include "waverom/gramian.hpp"

#include <cmath>

#include "waverom/errors.hpp"

namespace waverom {

GramianMatrix::GramianMatrix(Eigen::MatrixXd entries, GramianSource source)
    : entries_(std::move(entries)), source_(source) {
    if (entries_.rows() != entries_.cols() || entries_.rows() == 0) {
        throw ConfigError("gramian: matrix must be square and nonempty");
    }
    // Data assembly is symmetric by construction, but solver round-off is
    // not assumed away; Cholesky needs exact symmetry.
    entries_ = 0.5 * (entries_ + entries_.transpose()).eval();
}

const Eigen::MatrixXd& GramianMatrix::factor() const {
    if (!factor_.has_value()) {
        throw ConfigError("gramian: factor requested before factorization");
    }
    return *factor_;
}

GramianMatrix mass_from_data(const TransferSeries& f, int n) {
    if (n < 1) {
        throw ConfigError("mass_from_data: n must be positive");
    }
    if (f.size() < 2 * n - 1) {
        throw ConfigError("mass_from_data: need " + std::to_string(2 * n - 1) +
                          " transfer samples, got " + std::to_string(f.size()));
    }
    Eigen::MatrixXd m(n, n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l <= k; ++l) {
            const double value = 0.5 * (f(k - l) + f(k + l));
            m(k, l) = value;
            m(l, k) = value;
        }
    }
    return GramianMatrix(std::move(m), GramianSource::FromData);
}

GramianMatrix mass_from_snapshots(const SnapshotMatrix& u) {
    return GramianMatrix(cross_gramian(u, u), GramianSource::FromSnapshots);
}

Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        const double d = a(j, j) - l.row(j).head(j).squaredNorm();
        if (!(d > 0.0) || !std::isfinite(d)) {
            throw NotPositiveDefiniteError(j, d);
        }
        l(j, j) = std::sqrt(d);
        for (int i = j + 1; i < n; ++i) {
            const double s = a(i, j) - l.row(i).head(j).dot(l.row(j).head(j));
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

const Eigen::MatrixXd& cholesky(GramianMatrix& m) {
    if (!m.factor_.has_value()) {
        m.factor_ = cholesky_lower(m.entries_);
    }
    return *m.factor_;
}

double smallest_eigenvalue_estimate(GramianMatrix& m, int iterations) {
    const Eigen::MatrixXd& l = cholesky(m);
    const int n = m.size();
    Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n)));
    double lambda = 0.0;
    for (int it = 0; it < iterations; ++it) {
        Eigen::VectorXd y = l.triangularView<Eigen::Lower>().solve(x);
        y = l.transpose().triangularView<Eigen::Upper>().solve(y);
        const double norm = y.norm();
        if (!(norm > 0.0)) break;
        x = y / norm;
        lambda = x.dot(m.entries() * x);
    }
    return lambda;
}

}  // namespace waverom
