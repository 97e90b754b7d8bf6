#pragma once

#include <Eigen/Dense>

#include "sqz/coupling_spec.hpp"
#include "sqz/kernel.hpp"

namespace sqz {

// Dense 2^N x 2^N operator construction. Basis convention (shared by every
// module): computational index x has bit i set iff site i is up along z;
// site 0 is the least significant bit.
//
// These builders work from generic single-site 2x2 matrix elements and are
// kept independent of the bitwise fast paths they back up.

Eigen::Matrix2cd site_sx();
Eigen::Matrix2cd site_sy();
Eigen::Matrix2cd site_sz();
Eigen::Matrix2cd site_sp();  // S+
Eigen::Matrix2cd site_sm();  // S-

Eigen::MatrixXcd dense_one_site(int n, int site, const Eigen::Matrix2cd& op);
/// Product op_i * op_j acting on distinct sites i != j.
Eigen::MatrixXcd dense_two_site(int n, int i, const Eigen::Matrix2cd& op_i,
                                int j, const Eigen::Matrix2cd& op_j);

Eigen::MatrixXcd dense_hamiltonian(const CouplingSpec& spec);

/// Collective spin component sum_i S_i^axis, optionally sigma-weighted.
Eigen::MatrixXcd dense_collective(int n, Axis axis, const SpinConfig* config = nullptr);

/// J_perp({theta}) = sum_i cos(theta_i) S_i^x + sin(theta_i) S_i^y.
Eigen::MatrixXcd dense_transverse(int n, const AngleSet& angles);

/// Diagonal of the parity operator prod_i (2 S_i^z): +-1 per basis state.
Eigen::VectorXd parity_diagonal(int n);

/// Max |[H, P]| entry for the (diagonal) parity operator.
double parity_residual(const Eigen::MatrixXcd& h, int n);

}  // namespace sqz
