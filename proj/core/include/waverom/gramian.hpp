#pragma once

#include <optional>

#include <Eigen/Core>

#include "waverom/snapshot.hpp"
#include "waverom/transfer.hpp"

namespace waverom {

enum class GramianSource { FromData, FromSnapshots };

/// Symmetric positive-definite mass matrix with an optional cached
/// lower-triangular Cholesky factor. Entries are symmetrized on
/// construction.
class GramianMatrix {
public:
    GramianMatrix(Eigen::MatrixXd entries, GramianSource source);

    int size() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXd& entries() const { return entries_; }
    GramianSource source() const { return source_; }

    bool factored() const { return factor_.has_value(); }
    const Eigen::MatrixXd& factor() const;

private:
    friend const Eigen::MatrixXd& cholesky(GramianMatrix& m);

    Eigen::MatrixXd entries_;
    GramianSource source_;
    std::optional<Eigen::MatrixXd> factor_;
};

/// Assembles the mass matrix directly from transfer data:
/// M_kl = (F(|k-l| tau) + F((k+l) tau)) / 2. Requires at least 2n-1 samples.
GramianMatrix mass_from_data(const TransferSeries& f, int n);

/// Mass matrix of the snapshot columns through the trapezoid inner product.
GramianMatrix mass_from_snapshots(const SnapshotMatrix& u);

/// Computes (and caches) the lower-triangular Cholesky factor with positive
/// diagonal. Throws NotPositiveDefiniteError with the offending pivot index
/// and value; that failure is diagnostic information (oversampling, noise,
/// or tau below the data accuracy), not a crash.
const Eigen::MatrixXd& cholesky(GramianMatrix& m);

/// Plain lower Cholesky of a symmetric matrix (no caching); same failure
/// behavior as cholesky(GramianMatrix&).
Eigen::MatrixXd cholesky_lower(const Eigen::MatrixXd& a);

/// Estimate of the smallest eigenvalue by inverse power iteration through
/// the Cholesky factor. Used to flag oversampled configurations before they
/// reach downstream solves. Factors m if needed.
double smallest_eigenvalue_estimate(GramianMatrix& m, int iterations = 48);

}  // namespace waverom
