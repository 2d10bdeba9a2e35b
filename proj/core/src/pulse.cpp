#include "waverom/pulse.hpp"

#include <algorithm>
#include <cmath>

namespace waverom {

std::string to_string(PulseKind kind) {
    return kind == PulseKind::Step ? "step" : "hat";
}

PulseKind pulse_kind_from_string(const std::string& name) {
    if (name == "step") return PulseKind::Step;
    if (name == "hat") return PulseKind::Hat;
    throw ConfigError("unknown pulse kind '" + name + "' (expected step or hat)");
}

TimeSampling::TimeSampling(double tau, int n, double final_time)
    : tau_(tau), n_(n), final_time_(final_time) {}

TimeSampling TimeSampling::for_family(PulseKind kind, double tau, int n) {
    if (!(tau > 0.0)) {
        throw ConfigError("sampling: tau must be positive");
    }
    if (n < 1) {
        throw ConfigError("sampling: snapshot count must be positive");
    }
    const double final_time = (kind == PulseKind::Step) ? (n - 0.5) * tau : n * tau;
    return TimeSampling(tau, n, final_time);
}

void validate_sampling(const TimeSampling& sampling, const SpatialGrid& grid) {
    if (!(sampling.final_time() < grid.domain_length())) {
        throw ConfigError("sampling: final time " + std::to_string(sampling.final_time()) +
                          " reaches the far boundary of the domain (length " +
                          std::to_string(grid.domain_length()) + ")");
    }
}

namespace {

// tau/h as an integer, or -1 when incommensurate.
int tau_over_h(double tau, double h) {
    const double ratio = tau / h;
    const double rounded = std::round(ratio);
    if (std::abs(ratio - rounded) > 1e-9 * ratio) return -1;
    return static_cast<int>(rounded);
}

}  // namespace

void validate_pulse_resolution(const PulseFamily& family, const SpatialGrid& grid) {
    const double h = grid.step();
    if (family.tau < 2.0 * h - 1e-12 * h) {
        throw ConfigError("pulse under-resolved: tau = " + std::to_string(family.tau) +
                          " is below two grid steps (h = " + std::to_string(h) + ")");
    }
    const int m = tau_over_h(family.tau, h);
    if (m < 0 || m % 2 != 0) {
        throw ConfigError("pulse/grid mismatch: tau/h must be an even integer, got tau = " +
                          std::to_string(family.tau) + ", h = " + std::to_string(h));
    }
}

Eigen::VectorXd evaluate_pulse(const PulseFamily& family, const SpatialGrid& grid) {
    validate_pulse_resolution(family, grid);
    const int nodes = grid.node_count();
    const double tau = family.tau;
    Eigen::VectorXd g = Eigen::VectorXd::Zero(nodes);

    if (family.kind == PulseKind::Hat) {
        const double peak = 2.0 / tau;
        for (int i = 0; i < nodes; ++i) {
            const double x = grid.node(i);
            if (x < tau) g(i) = peak * (1.0 - x / tau);
        }
        return g;
    }

    // Step: 2/tau on [0, tau/2); the jump node tau/2 takes the mean value.
    const int jump = tau_over_h(tau, grid.step()) / 2;
    for (int i = 0; i < std::min(jump, nodes); ++i) {
        g(i) = 2.0 / tau;
    }
    if (jump < nodes) g(jump) = 1.0 / tau;
    return g;
}

SupportRange background_support(const PulseFamily& family, const TimeSampling& sampling,
                                const SpatialGrid& grid, int k) {
    const int m = static_cast<int>(std::round(family.tau / grid.step()));
    const int center = k * m;
    const int last_node = grid.cell_count();
    if (family.kind == PulseKind::Hat) {
        return {std::max(0, center - m), std::min(last_node, center + m)};
    }
    if (k == 0) {
        return {0, std::min(last_node, m / 2)};
    }
    (void)sampling;
    return {std::max(0, center - m / 2 + 1), std::min(last_node, center + m / 2)};
}

SnapshotMatrix background_snapshots(const PulseFamily& family, const TimeSampling& sampling,
                                    const SpatialGrid& grid) {
    validate_pulse_resolution(family, grid);
    validate_sampling(sampling, grid);
    const int n = sampling.snapshot_count();
    const int nodes = grid.node_count();
    const double tau = family.tau;
    const int m = static_cast<int>(std::round(tau / grid.step()));

    Eigen::MatrixXd u0 = Eigen::MatrixXd::Zero(nodes, n);
    u0.col(0) = evaluate_pulse(family, grid);

    for (int k = 1; k < n; ++k) {
        const int center = k * m;
        if (family.kind == PulseKind::Hat) {
            // Full hat of peak 1/tau at x = k tau.
            for (int i = std::max(0, center - m); i <= std::min(nodes - 1, center + m); ++i) {
                u0(i, k) = (1.0 - std::abs(i - center) / static_cast<double>(m)) / tau;
            }
        } else {
            // Indicator of (k tau - tau/2, k tau + tau/2], height 1/tau.
            for (int i = std::max(0, center - m / 2 + 1);
                 i <= std::min(nodes - 1, center + m / 2); ++i) {
                u0(i, k) = 1.0 / tau;
            }
        }
    }
    return SnapshotMatrix(std::move(u0), grid, sampling);
}

}  // namespace waverom
