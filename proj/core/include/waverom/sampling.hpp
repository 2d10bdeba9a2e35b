#pragma once

#include <string>

#include "waverom/errors.hpp"
#include "waverom/grid.hpp"

namespace waverom {

enum class PulseKind { Step, Hat };

std::string to_string(PulseKind kind);
PulseKind pulse_kind_from_string(const std::string& name);

/// Probing pulse family. The step kind is g(x) = 2 H(x/tau)/tau with H the
/// unit-width indicator centered at 0; the hat kind is g(x) = 2 phi(x/tau)/tau
/// with phi the unit hat on [-1, 1]. Both are truncated to the domain and
/// integrate to one.
struct PulseFamily {
    PulseKind kind;
    double tau;
};

/// Time sampling of one experiment: n reconstructed snapshots at t = k tau,
/// 2n - 1 transfer measurements, and the final time tied to the pulse family
/// (step: T = (n - 1/2) tau, hat: T = n tau).
class TimeSampling {
public:
    static TimeSampling for_family(PulseKind kind, double tau, int n);

    double tau() const { return tau_; }
    int snapshot_count() const { return n_; }
    double final_time() const { return final_time_; }
    int measurement_count() const { return 2 * n_ - 1; }
    double snapshot_time(int k) const { return k * tau_; }

private:
    TimeSampling(double tau, int n, double final_time);

    double tau_;
    int n_;
    double final_time_;
};

/// Rejects samplings whose waves would reach the far boundary before the
/// final measurement: requires final_time < domain_length.
void validate_sampling(const TimeSampling& sampling, const SpatialGrid& grid);

/// Pulse/grid commensurability: tau must be an even integer multiple of the
/// grid step (at least 2) so that every pulse breakpoint lands on a node.
void validate_pulse_resolution(const PulseFamily& family, const SpatialGrid& grid);

}  // namespace waverom
