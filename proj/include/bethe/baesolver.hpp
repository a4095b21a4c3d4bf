#pragma once

// Numerical solution of the Bethe ansatz equations
//
//   ((l_k + i/2)/(l_k - i/2))^N = prod_{j != k} (l_k - l_j + i)/(l_k - l_j - i)
//
// in their pole-free polynomial form, classification of the solutions, and the
// two regularization constants whose agreement marks a singular solution as
// physical.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bethe/types.hpp"

namespace bethe::bae {

enum class Classification { regular, physical_singular, nonphysical_singular, strange, unclassified };

std::string to_string(Classification c);
Classification classification_from_string(const std::string& s);

struct RootSet {
    int n = 0;
    int ell = 0;
    std::vector<cplx> roots;
    Classification classification = Classification::unclassified;
    double residual = 0.0;

    bool is_singular() const {
        return classification == Classification::physical_singular ||
               classification == Classification::nonphysical_singular;
    }
};

/// Seed families for the multi-start search.
enum class Seed : unsigned { random_real = 1, random_complex = 2, string_hypothesis = 4, symmetric_pairs = 8 };

struct SolverConfig {
    int max_newton_iters = 200;
    double newton_tol = 1e-11;
    int n_random_starts = 400;  ///< per seed family
    unsigned seed_strategies = 15;
    double tol_equal = 1e-9;
    double tol_singular = 1e-6;
    double dedup_tol = 1e-7;
    std::uint64_t seed = 42;

    bool uses(Seed s) const { return (seed_strategies & static_cast<unsigned>(s)) != 0; }
};

/// Relative residual of the polynomial Bethe equations, max over k of
/// |P_k - Q_k| / (|P_k| + |Q_k|), evaluated in quad precision. Singular sets are measured on the reduced
/// equations of their free roots. Throws PreconditionError on coincident roots.
double bae_residual(const RootSet& set, const SolverConfig& cfg = {});
double bae_residual(std::span<const cplx> roots, int n_sites, double tol_equal = 1e-9);

/// Residual of the reduced system obeyed by lambda_3..lambda_l when
/// lambda_1 = i/2 and lambda_2 = -i/2 are held fixed.
double reduced_residual(std::span<const cplx> free_roots, int n_sites);

struct NewtonResult {
    bool converged = false;
    RootSet roots;       ///< last iterate (classification unclassified on failure)
    int iterations = 0;
    std::string reason;  ///< empty on success
    bool extended_precision = false;  ///< finished in quad precision
};

/// Damped Newton on the polynomial system for ell = start.size() magnons.
/// Precondition: start entries pairwise distinct (PreconditionError otherwise).
NewtonResult newton_refine(std::span<const cplx> start, int n_sites, const SolverConfig& cfg = {});

/// Same on the reduced singular system; start holds lambda_3..lambda_l.
NewtonResult newton_refine_reduced(std::span<const cplx> start, int n_sites, const SolverConfig& cfg = {});

struct NwConstants {
    cplx c1;
    cplx c2;
};

/// c1 = -(2/i^{N+1}) prod_{j>=3} (l_j - 3i/2)/(l_j + i/2),
/// c2 = 2 i^{N+1} prod_{j>=3} (l_j + 3i/2)/(l_j - i/2).
NwConstants nw_constants(std::span<const cplx> roots, int n_sites, double tol_singular = 1e-6);
NwConstants nw_constants(const RootSet& set, double tol_singular = 1e-6);

bool constants_agree(const NwConstants& c);

/// Tag a converged root set. Singular sets are reordered to {i/2, -i/2, ...}.
RootSet classify(RootSet set, const SolverConfig& cfg = {});

/// Canonical order: the singular pair first, then descending real part and
/// descending imaginary part.
void canonicalize(RootSet& set, double tol_singular = 1e-6);

/// Multiset equality within tol.
bool same_multiset(std::span<const cplx> a, std::span<const cplx> b, double tol);

/// Every root's conjugate is also a root, within tol.
bool conjugation_closed(std::span<const cplx> roots, double tol);

struct SectorSolutions {
    int n = 0;
    int ell = 0;
    std::vector<RootSet> solutions;  ///< regular and singular, canonical order
    int regular = 0;
    int physical_singular = 0;
    int nonphysical_singular = 0;
    int strange = 0;  ///< starts that ended on repeated roots (never refined)
    int starts = 0;
    int diverged = 0;
    std::uint64_t target = 0;  ///< C(N, ell) - C(N, ell - 1)

    bool complete() const { return static_cast<std::uint64_t>(regular + physical_singular) == target; }
};

/// Multi-start search for all solutions with ell magnons, 0 <= ell <= N/2.
SectorSolutions solve_sector(int n_sites, int ell, const SolverConfig& cfg = {});

}  // namespace bethe::bae
