#pragma once

// Rigged configurations for the spin-1/2 chain: a partition nu of ell into
// row lengths, and one rigging J_i per row with 0 <= J_i <= P_k(nu), where the
// vacancy number is P_k(nu) = N - 2 sum_i min(k, nu_i).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace bethe::rigged {

struct RiggedConfiguration {
    std::vector<int> nu;        ///< weakly decreasing, positive
    std::vector<int> riggings;  ///< one per row; descending within rows of equal length

    bool operator==(const RiggedConfiguration&) const = default;
};

/// k -> P_k(nu) for k = 1 .. nu_1.
using VacancyProfile = std::map<int, int>;

/// Throws ArgumentError on a malformed partition and PreconditionError when
/// |nu| > N/2.
VacancyProfile vacancy(const std::vector<int>& nu, int n_sites);

/// Single vacancy number P_k(nu), any k >= 1.
int vacancy_number(const std::vector<int>& nu, int k, int n_sites);

/// Partitions of ell, reverse-lexicographic (ell), (ell-1, 1), ...
std::vector<std::vector<int>> partitions(int ell);

/// Every admissible configuration, partitions in reverse-lexicographic order
/// and riggings in lexicographic order within each partition.
std::vector<RiggedConfiguration> enumerate_rcs(int n_sites, int ell);

/// Count without materializing: product over row lengths k of
/// C(P_k + m_k, m_k), m_k being the number of rows of length k.
std::uint64_t count_rcs(int n_sites, int ell);

/// |enumerate_rcs(N, ell)|, checked against C(N, ell) - C(N, ell - 1).
/// Throws ConsistencyError when they differ.
std::uint64_t rc_count(int n_sites, int ell);

/// True when nu is a partition with |nu| <= N/2, all vacancies are
/// non-negative, each rigging is within its bound, and equal rows are sorted.
bool is_admissible(const RiggedConfiguration& rc, int n_sites);

std::string to_string(const RiggedConfiguration& rc);

}  // namespace bethe::rigged
