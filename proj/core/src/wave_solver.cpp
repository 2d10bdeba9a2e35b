#include "waverom/wave_solver.hpp"

#include <cmath>
#include <utility>
#include <vector>

namespace waverom {

namespace {

// y = A u with A = -D2 + diag(q), mirror ghost nodes at both ends.
void apply_operator(const Eigen::VectorXd& u, const Eigen::VectorXd& q, double inv_h2,
                    Eigen::VectorXd& y) {
    const int last = static_cast<int>(u.size()) - 1;
    y(0) = -inv_h2 * (2.0 * u(1) - 2.0 * u(0)) + q(0) * u(0);
    for (int i = 1; i < last; ++i) {
        y(i) = -inv_h2 * (u(i - 1) - 2.0 * u(i) + u(i + 1)) + q(i) * u(i);
    }
    y(last) = -inv_h2 * (2.0 * u(last - 1) - 2.0 * u(last)) + q(last) * u(last);
}

// Conserved leapfrog energy of the level pair (u, u_next).
double pair_energy(const Eigen::VectorXd& u, const Eigen::VectorXd& u_next,
                   const Eigen::VectorXd& q, const Eigen::VectorXd& w, double dt,
                   double inv_h2, Eigen::VectorXd& scratch) {
    const Eigen::VectorXd velocity = (u_next - u) / dt;
    apply_operator(u_next, q, inv_h2, scratch);
    return 0.5 * (w.array() * velocity.array().square()).sum() +
           0.5 * (w.array() * scratch.array() * u.array()).sum();
}

}  // namespace

SolverConfig SolverConfig::paper_default(const SpatialGrid& grid, const TimeSampling& sampling) {
    SolverConfig cfg;
    cfg.dt = 0.5 * grid.step();
    cfg.tau = sampling.tau();
    cfg.snapshot_count = sampling.snapshot_count();
    cfg.record_boundary = true;
    return cfg;
}

ForwardResult solve_fd(const Potential& q, const Eigen::VectorXd& g, const SpatialGrid& grid,
                       const SolverConfig& cfg) {
    const int nodes = grid.node_count();
    if (g.size() != nodes) {
        throw ConfigError("solve_fd: initial data does not match the grid");
    }
    if (!(cfg.dt > 0.0) || cfg.courant_ratio(grid) > 1.0 + 1e-12) {
        throw ConfigError("solve_fd: CFL violation, dt/h = " +
                          std::to_string(cfg.courant_ratio(grid)) + " exceeds 1");
    }
    const double steps_per_tau = cfg.tau / cfg.dt;
    const int stride = static_cast<int>(std::round(steps_per_tau));
    if (stride < 1 || std::abs(steps_per_tau - stride) > 1e-9 * steps_per_tau) {
        throw ConfigError("solve_fd: tau is not an integer multiple of dt");
    }
    const int n = cfg.snapshot_count;
    if (n < 1) {
        throw ConfigError("solve_fd: snapshot count must be positive");
    }
    if (!((n - 1) * cfg.tau < grid.domain_length())) {
        throw ConfigError("solve_fd: final snapshot time reaches the far boundary");
    }

    const double dt = cfg.dt;
    const double dt2 = dt * dt;
    const double inv_h2 = 1.0 / (grid.step() * grid.step());
    const double c = dt2 * inv_h2;
    const Eigen::VectorXd& qv = q.values();
    const Eigen::VectorXd& w = grid.quadrature_weights();

    const int measurements = cfg.record_boundary ? 2 * n - 1 : 0;
    const long total_steps =
        static_cast<long>(stride) * (cfg.record_boundary ? (2 * n - 2) : (n - 1));

    Eigen::MatrixXd snapshots(nodes, n);
    std::vector<double> transfer(measurements, 0.0);
    const Eigen::VectorXd wg = w.array() * g.array();

    // diag coefficient of the update u_next = a*u + c*(left+right) - u_prev
    Eigen::VectorXd a = Eigen::VectorXd::Constant(nodes, 2.0 - 2.0 * c) - dt2 * qv;

    Eigen::VectorXd u_prev = g;
    Eigen::VectorXd u = g;
    Eigen::VectorXd u_next(nodes);
    Eigen::VectorXd scratch(nodes);

    // Startup encoding u_t(0) = 0: u1 = u0 - (dt^2/2) A u0.
    apply_operator(g, qv, inv_h2, scratch);
    u = g - 0.5 * dt2 * scratch;

    snapshots.col(0) = g;
    if (cfg.record_boundary) transfer[0] = wg.dot(g);

    const double energy_start = pair_energy(u_prev, u, qv, w, dt, inv_h2, scratch);
    double energy_end = energy_start;

    // u_prev holds level m-1, u holds level m (m = 1 after startup).
    for (long m = 1; m <= total_steps; ++m) {
        if (m % stride == 0) {
            const long k = m / stride;
            if (k < n) snapshots.col(k) = u;
            if (cfg.record_boundary && k < measurements) transfer[k] = wg.dot(u);
        }
        if (m == total_steps) {
            energy_end = pair_energy(u_prev, u, qv, w, dt, inv_h2, scratch);
            break;
        }
        {
            const double* up = u_prev.data();
            const double* uc = u.data();
            const double* ac = a.data();
            double* un = u_next.data();
            un[0] = ac[0] * uc[0] + 2.0 * c * uc[1] - up[0];
            for (int i = 1; i < nodes - 1; ++i) {
                un[i] = ac[i] * uc[i] + c * (uc[i - 1] + uc[i + 1]) - up[i];
            }
            un[nodes - 1] =
                ac[nodes - 1] * uc[nodes - 1] + 2.0 * c * uc[nodes - 2] - up[nodes - 1];
        }
        u_prev.swap(u);
        u.swap(u_next);
    }

    const double scale = std::max(std::abs(energy_start), 1e-300);
    const double drift = std::abs(energy_end - energy_start) / scale;

    std::vector<double> times(n);
    for (int k = 0; k < n; ++k) times[k] = k * cfg.tau;

    ForwardResult result{SnapshotMatrix(std::move(snapshots), grid, std::move(times)),
                         std::nullopt, drift};
    if (cfg.record_boundary) {
        result.transfer = TransferSeries(std::move(transfer), cfg.tau);
    }
    return result;
}

TransferSeries sample_transfer(const ForwardResult& result) {
    if (!result.transfer.has_value()) {
        throw ConfigError("sample_transfer: the solve did not record the boundary");
    }
    return *result.transfer;
}

}  // namespace waverom
