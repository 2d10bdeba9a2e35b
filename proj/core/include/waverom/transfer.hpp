#pragma once

#include <vector>

#include "waverom/errors.hpp"

namespace waverom {

/// Boundary transfer-function samples F(k tau), k = 0 .. 2n-2: the receiver
/// readings <g, u(., k tau)> that form the only measured data.
class TransferSeries {
public:
    TransferSeries(std::vector<double> values, double tau)
        : values_(std::move(values)), tau_(tau) {}

    int size() const { return static_cast<int>(values_.size()); }
    double tau() const { return tau_; }
    double operator()(int k) const { return values_.at(k); }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> values_;
    double tau_;
};

}  // namespace waverom
