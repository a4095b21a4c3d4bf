#pragma once

// State-space conventions, spin operators, the periodic XXX Hamiltonian and a
// dense Hermitian eigensolver. Everything here is brute force; the rest of the
// library is checked against it.
//
// Basis convention: index b in [0, 2^N) encodes site 1 in the most significant
// bit. A 0 bit is spin up (v+ = (1,0)), a 1 bit is spin down. The all-up
// vacuum |0>_N is therefore basis index 0.

#include <cstdint>
#include <string>
#include <vector>

#include "bethe/types.hpp"

namespace bethe::hilbert {

/// Largest chain length accepted by the per-site Pauli builders.
inline constexpr int kMaxPauliSites = 16;
/// Default cap for materializing full 2^N operators.
inline constexpr int kMaxFullSites = 14;
/// Sector enumeration walks all 2^N states, so it has its own cap.
inline constexpr int kMaxSectorSites = 24;
/// Default cap on sector dimension C(N, ell).
inline constexpr std::size_t kMaxSectorDim = 10000;

/// Bit mask of site k (1-based) under the site-1-most-significant rule.
inline std::uint64_t site_mask(int k, int n_sites) {
    return std::uint64_t{1} << (n_sites - k);
}

/// 1 if site k of basis state b is spin down, 0 if up.
inline int site_bit(std::uint64_t b, int k, int n_sites) {
    return static_cast<int>((b >> (n_sites - k)) & 1U);
}

std::uint64_t full_dim(int n_sites);
std::uint64_t binomial(int n, int k);

/// The all-up vector |0>_N.
StateVector vacuum(int n_sites);

/// sigma^axis acting on site k of an N-site chain, identity elsewhere.
OperatorMatrix pauli_site(int axis, int k, int n_sites);

/// Periodic chain H = (J/4) sum_k (sigma_k . sigma_{k+1} - 1), built from
/// pauli_site products.
OperatorMatrix hamiltonian(int n_sites, double coupling = 1.0,
                           int max_sites = kMaxFullSites);

/// H restricted to the ell-magnon sector, in the order of sector_basis.
/// Built directly from the bond-exchange form (J/2) sum (P_{k,k+1} - 1).
Eigen::MatrixXd sector_hamiltonian(int n_sites, int ell, double coupling = 1.0,
                                   std::size_t max_dim = kMaxSectorDim);

/// Matrix-free H*v on the full space.
StateVector apply_hamiltonian(const StateVector& v, int n_sites, double coupling = 1.0);

/// Basis indices with exactly ell down spins, ascending.
std::vector<std::uint64_t> sector_basis(int n_sites, int ell);

/// Number of down spins in basis state b.
int magnon_count(std::uint64_t b);

/// Permutation matrix of the cyclic site shift k -> k+1.
OperatorMatrix cyclic_shift(int n_sites);

/// Total raising operator S+ = sum_k (sigma^1_k + i sigma^2_k)/2, matrix-free.
StateVector apply_total_raising(const StateVector& v, int n_sites);

struct EigenSystem {
    Eigen::VectorXd values;      ///< ascending
    OperatorMatrix vectors;      ///< column j pairs with values[j]
};

/// Eigen-decomposition of a Hermitian matrix. Throws PreconditionError when
/// the input is not Hermitian to 1e-12 * max|M_ij|.
EigenSystem eig_hermitian(const OperatorMatrix& m, double tol = 1e-10);

/// Eigenvalues only, for real symmetric sector blocks.
Eigen::VectorXd eigvals_symmetric(const Eigen::MatrixXd& m);

enum class SpectrumSource { exact_diag, regular_bethe, physical_singular };

std::string to_string(SpectrumSource s);
SpectrumSource spectrum_source_from_string(const std::string& s);

/// One energy level. sector < 0 means "diag" (the whole space).
struct SpectrumEntry {
    double energy = 0.0;
    int multiplicity = 1;
    int sector = -1;
    SpectrumSource source = SpectrumSource::exact_diag;
};

/// Default merge tolerance 1e-8 * max(1, max|e|).
double default_merge_tol(const std::vector<double>& eigs);

/// Merge an ascending list into levels; neighbours closer than merge_tol join.
std::vector<SpectrumEntry> spectrum_with_multiplicities(
    const std::vector<double>& eigs, double merge_tol,
    SpectrumSource source = SpectrumSource::exact_diag, int sector = -1);

/// Full spectrum assembled from all magnon sectors, ascending.
std::vector<double> full_spectrum_by_sectors(int n_sites, double coupling = 1.0);

}  // namespace bethe::hilbert
