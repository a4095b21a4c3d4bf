#pragma once

// End-to-end run for one chain length: solve every magnon sector, attach
// energies, diagonalize, compare the spectra and record the audits.
//
// All energies are stored in units of the coupling J.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bethe/baesolver.hpp"
#include "bethe/energy.hpp"
#include "bethe/hilbert.hpp"

namespace bethe::pipeline {

inline constexpr int kDefaultMaxSites = 14;
inline constexpr double kClosureTol = 1e-5;

/// Regularized-vector check for a singular set, with c = c1.
struct SingularCheck {
    cplx c1;
    cplx c2;
    bool constants_agree = false;
    bool vector_converged = false;
    double final_residual = 0.0;         ///< at the smallest eps
    double extrapolated_residual = 0.0;  ///< of the eps -> 0 limit vector
    double naive_energy = 0.0;           ///< log-derivative energy with c = 0
};

struct SolutionRecord {
    bae::RootSet roots;
    std::optional<energy::EnergyResult> energy;    ///< absent for nonphysical sets
    std::optional<energy::EnergyResult> logderiv;  ///< log-derivative cross-check
    int multiplicity = 0;                          ///< N - 2 ell + 1 for counted solutions
    std::optional<SingularCheck> singular;
};

struct SectorReport {
    int ell = 0;
    std::vector<SolutionRecord> solutions;
    int regular = 0;
    int physical_singular = 0;
    int nonphysical_singular = 0;
    int strange_starts = 0;
    int starts = 0;
    int diverged = 0;
    std::uint64_t target = 0;    ///< C(N, ell) - C(N, ell - 1)
    std::uint64_t rc_count = 0;  ///< enumerated rigged configurations
    bool complete = false;
};

struct Audit {
    bool count_check = false;      ///< regular + physical singular = RC count in every sector
    bool spectral_closure = false; ///< Bethe levels plus recovered levels = diagonalization
    bool recovered_subset = false; ///< recovered levels lie inside the missing levels
    bool energy_oracle = false;    ///< every Bethe energy is a diagonalization eigenvalue
    bool formula_agreement = false;///< closed forms agree with the log-derivative route
    bool physicality_consistency = false; ///< c-compatibility verdict = vector verdict
    std::vector<std::string> notes;

    bool all() const {
        return count_check && spectral_closure && recovered_subset && energy_oracle && formula_agreement &&
               physicality_consistency;
    }
};

struct RunReport {
    std::string schema = "bethe-lab/1";
    int n = 0;
    double j = 1.0;
    std::uint64_t seed = 0;
    std::vector<SectorReport> sectors;
    std::vector<hilbert::SpectrumEntry> diag_spectrum;
    std::vector<hilbert::SpectrumEntry> bethe_spectrum;
    std::vector<hilbert::SpectrumEntry> missing_levels;
    std::vector<hilbert::SpectrumEntry> recovered_by_nw;
    std::vector<std::uint64_t> rc_counts;
    Audit audit;
};

/// Throws ArgumentError for N outside [2, max_sites] or J == 0.
RunReport run_pipeline(int n_sites, double coupling, const bae::SolverConfig& cfg = {},
                       int max_sites = kDefaultMaxSites);

/// a minus b as multisets of levels; entries closer than tol are identified.
std::vector<hilbert::SpectrumEntry> subtract_levels(const std::vector<hilbert::SpectrumEntry>& a,
                                                    const std::vector<hilbert::SpectrumEntry>& b, double tol);

/// Multiset equality of two level lists within tol.
bool same_levels(const std::vector<hilbert::SpectrumEntry>& a, const std::vector<hilbert::SpectrumEntry>& b,
                 double tol);

/// 0 when every audit passes, 2 on a count shortfall, 3 on a closure failure,
/// 1 for any other failed audit.
int exit_code(const Audit& audit);

}  // namespace bethe::pipeline
