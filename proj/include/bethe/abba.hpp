#pragma once

// Algebraic Bethe ansatz machinery for the periodic spin-1/2 XXX chain:
// L-operators, the R-matrix, monodromy blocks, Bethe vectors, the transfer
// matrix eigenvalue Lambda and its unwanted-term coefficients Lambda_k, and the
// regularized vectors attached to singular root sets {i/2, -i/2, ...}.

#include <array>
#include <span>
#include <string>
#include <vector>

#include "bethe/types.hpp"

namespace bethe::abba {

/// 2x2 array over the auxiliary space; each entry acts on the chain.
using AuxBlocks = std::array<std::array<OperatorMatrix, 2>, 2>;

/// L_k(lambda) = lambda I (x) 1 + (i/2) sum_a sigma^a (x) sigma^a_k, in blocks.
AuxBlocks l_operator(int k, cplx lambda, int n_sites);

/// R(lambda) = ((lambda/2 + i) I + (lambda/2) sum sigma^a (x) sigma^a) / (lambda + i).
Eigen::Matrix4cd r_matrix(cplx lambda);

/// max-entry residual of R(l - m) L_k(l) (x) L_k(m) - L_k(m) (x) L_k(l) R(l - m)
/// on aux (x) aux (x) H_N.
double yang_baxter_residual(cplx lambda, cplx mu, int k, int n_sites);

struct MonodromyBlocks {
    cplx lambda;
    OperatorMatrix a_block, b_block, c_block, d_block;

    OperatorMatrix transfer() const { return a_block + d_block; }
};

/// Blocks of T_N(lambda) = L_N ... L_1 as dense 2^N x 2^N matrices.
MonodromyBlocks monodromy(cplx lambda, int n_sites);

/// tau_N(lambda) = A + D, dense.
OperatorMatrix transfer_matrix(cplx lambda, int n_sites);

/// B_N(lambda) v without forming the operator.
StateVector apply_b(const StateVector& v, cplx lambda, int n_sites);
/// tau_N(lambda) v without forming the operator.
StateVector apply_transfer(const StateVector& v, cplx lambda, int n_sites);

/// B(lambda_1)...B(lambda_l)|0>_N. Roots must be pairwise distinct and avoid
/// +-i/2; singular sets go through regularized_nw_vector.
StateVector bethe_vector(std::span<const cplx> roots, int n_sites, double tol_singular = 1e-6);

enum class Scheme { c1, c2, naive };

std::string to_string(Scheme s);

struct RegularizationParams {
    double epsilon = 1e-3;
    cplx c{};
    Scheme scheme = Scheme::c1;
};

/// Regularized rapidities lambda_1 = i/2 + eps + c eps^N, lambda_2 = -i/2 + eps,
/// followed by the remaining roots unchanged.
std::vector<cplx> regularized_roots(std::span<const cplx> roots, int n_sites, const RegularizationParams& p);

/// (1/eps^N) B(i/2 + eps + c eps^N) B(-i/2 + eps) B(lambda_3)...|0>_N.
/// roots[0] and roots[1] must be i/2 and -i/2. Evaluated in quad precision so
/// the eps^N cancellation survives; the result is rounded to double.
StateVector regularized_nw_vector(std::span<const cplx> roots, int n_sites, const RegularizationParams& p,
                                  double tol_singular = 1e-6);

/// Lambda(lambda; roots). Throws PoleError when lambda hits a root.
cplx lambda_eigenvalue(cplx lambda, std::span<const cplx> roots, int n_sites);

/// Lambda_k(lambda; roots) with 1-based k. Throws PoleError at lambda = lambda_k.
cplx lambda_k(cplx lambda, int k, std::span<const cplx> roots, int n_sites);

/// |first - second| / (|first| + |second|) for the braces of Lambda_k; zero
/// exactly when the k-th Bethe equation holds. 1-based k.
double lambda_k_relative(int k, std::span<const cplx> roots, int n_sites);

/// Lambda_k evaluated in quad precision at the regularized rapidities.
cplx lambda_k_regularized(cplx lambda, int k, std::span<const cplx> roots, int n_sites,
                          const RegularizationParams& p);

/// Finite-difference reconstruction (iJ/2) tau'(i/2) tau(i/2)^{-1} - (NJ/2) 1.
OperatorMatrix hamiltonian_from_transfer(int n_sites, double coupling = 1.0, double step = 1e-5);

/// Outcome of sweeping eps along a ladder for one singular root set.
struct NwConvergence {
    std::vector<double> epsilons;
    std::vector<double> residuals;          ///< ||H psi - E psi|| / ||psi|| against the target energy
    std::vector<double> rayleigh_residuals; ///< same with E replaced by <psi|H|psi>/<psi|psi>
    std::vector<double> norms;              ///< ||psi^(eps)||
    double last_angle = 0.0;                ///< angle between the last two normalized vectors
    double extrapolated_residual = 0.0;     ///< residual of the first-order Richardson limit vector
    bool monotone = false;                  ///< residuals strictly decrease
    bool converged = false;
    StateVector limit;                      ///< normalized Richardson limit
};

/// Standard ladder {1e-2, 5e-3, 2.5e-3}.
std::vector<double> default_ladder();

/// Sweep regularized_nw_vector along the ladder. target_energy is in units of
/// the coupling. Convergence means monotone decrease of the Rayleigh residual
/// and an extrapolated limit whose residual is below limit_tol.
NwConvergence nw_convergence(std::span<const cplx> roots, int n_sites, cplx c, Scheme scheme,
                             double target_energy, double coupling = 1.0,
                             const std::vector<double>& ladder = default_ladder(), double limit_tol = 1e-3);

}  // namespace bethe::abba
