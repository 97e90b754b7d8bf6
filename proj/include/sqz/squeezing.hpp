#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "sqz/kernel.hpp"
#include "sqz/state_vector.hpp"

namespace sqz {

/// First and symmetrized second moments of the collective spin. With a spin
/// configuration the y and z components carry the sigma weights of the
/// modified collective spin; x stays unweighted.
struct CollectiveMoments {
    Eigen::Vector3d mean;
    Eigen::Matrix3d second;  // (1/2)<J^a J^b + J^b J^a>
};

CollectiveMoments collective_moments(const StateVector& psi,
                                     const SpinConfig* config = nullptr);

/// J^axis |psi>, sigma-weighted for y/z when a configuration is given.
StateVector apply_collective(const StateVector& psi, Axis axis,
                             const SpinConfig* config = nullptr);

/// Pair expectation tables that make the transverse variance a closed form
/// in the angle phases: raise2(i,j) = <S_i+ S_j+>, exchange(i,j) = <S_i+ S_j->
/// (both zero on the diagonal), raise1(i) = <S_i+>.
struct PairExpectations {
    int n_sites = 0;
    CMatrix raise2;
    CMatrix exchange;
    Eigen::VectorXcd raise1;
};

PairExpectations pair_expectations(const StateVector& psi);

/// Var(J_perp({theta})) evaluated from the pair tables. With a configuration
/// the angles act on the sigma-rotated local axes (theta_i -> sigma_i theta_i).
double transverse_variance(const PairExpectations& pairs, const AngleSet& angles,
                           const SpinConfig* config = nullptr);
Eigen::VectorXd transverse_variance_gradient(const PairExpectations& pairs,
                                             const AngleSet& angles,
                                             const SpinConfig* config = nullptr);

/// <J_perp({theta})> from the pair tables.
double transverse_mean(const PairExpectations& pairs, const AngleSet& angles,
                       const SpinConfig* config = nullptr);

struct UniformSqueezing {
    double variance = 0.0;  // minimal transverse variance in the mean-spin frame
    double xi2 = 0.0;
    double angle = 0.0;  // minimizing direction within the transverse plane
};

/// Squeezing parameter with one common transverse direction, minimized in
/// the exact frame of the mean spin. Throws when the mean spin vanishes.
UniformSqueezing xi2_uniform(const StateVector& psi, const SpinConfig* config = nullptr);

struct LocalSqueezing {
    double variance = 0.0;
    double xi2 = 0.0;
    AngleSet angles;
    bool converged = false;
};

struct LocalOptions {
    int n_restarts = 16;
    std::vector<AngleSet> extra_seeds;  // e.g. kernel-optimal angles
    std::uint64_t seed = 0x5154u;
};

/// Squeezing parameter minimized over site-local transverse axes,
/// N * min Var(J_perp({theta})) / <J^z>^2. Throws when <J^z> vanishes.
LocalSqueezing xi2_local(const StateVector& psi, const LocalOptions& opts = {},
                         const SpinConfig* config = nullptr);

struct SqueezingReport {
    Eigen::Vector3d mean_spin;
    double var_min_uniform = 0.0;
    double xi2_uniform = 0.0;
    double var_min_local = 0.0;
    double xi2_local = 0.0;
    AngleSet optimal_local_angles;
    double optimal_uniform_angle = 0.0;
};

SqueezingReport analyze_squeezing(const StateVector& psi, const LocalOptions& opts = {},
                                  const SpinConfig* config = nullptr);

}  // namespace sqz
