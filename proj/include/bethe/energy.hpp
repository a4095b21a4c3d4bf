#pragma once

// Energy eigenvalues of Bethe states: the closed form for regular roots, the
// closed form for physical singular roots {i/2, -i/2, ...}, and the route
// through the logarithmic derivative of Lambda at lambda = i/2.

#include <span>
#include <string>
#include <vector>

#include "bethe/abba.hpp"
#include "bethe/baesolver.hpp"
#include "bethe/types.hpp"

namespace bethe::energy {

enum class Method { regular_formula, nw_theorem, lambda_logderiv };

std::string to_string(Method m);
Method method_from_string(const std::string& s);

/// Imaginary parts above this mark a result invalid.
inline constexpr double kImagLeakTol = 1e-8;

struct EnergyResult {
    double energy = 0.0;  ///< in units of J (the coupling is already applied)
    Method method = Method::regular_formula;
    double imag_leak = 0.0;
    bool valid = true;
};

/// Lambda(i/2) vanished, so the logarithmic derivative is undefined there.
class DegenerateDenominator : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// E = -(J/2) sum_j 1/(l_j^2 + 1/4). Throws PreconditionError when a root sits
/// at +-i/2.
EnergyResult energy_regular(std::span<const cplx> roots, double coupling = 1.0, double tol_singular = 1e-6);
EnergyResult energy_regular(const bae::RootSet& set, double coupling = 1.0);

/// E = -J - (J/2) sum_{j>=3} 1/(l_j^2 + 1/4) for {i/2, -i/2, l_3, ...}.
EnergyResult energy_nw(std::span<const cplx> roots, double coupling = 1.0, double tol_singular = 1e-6);
EnergyResult energy_nw(const bae::RootSet& set, double coupling = 1.0);

/// Dispatch on the classification. Nonphysical and strange sets are rejected.
EnergyResult energy(const bae::RootSet& set, double coupling = 1.0);

/// i Lambda'(i/2)/Lambda(i/2) with Lambda' from a central difference of step h.
cplx log_derivative(std::span<const cplx> roots, int n_sites, double step = 1e-6);

/// (J/2)(i d/dl log Lambda |_{i/2} - N) for a regular root set.
EnergyResult energy_logderiv(std::span<const cplx> roots, int n_sites, double coupling = 1.0, double step = 1e-6);

struct LadderEnergy {
    std::vector<double> epsilons;
    std::vector<cplx> energies;  ///< at each epsilon
    EnergyResult extrapolated;   ///< linear Richardson limit from the last two rungs
};

/// Singular sets: evaluate at the regularized rapidities along the ladder and
/// extrapolate to eps -> 0. c is ignored for Scheme::naive.
LadderEnergy energy_logderiv_singular(std::span<const cplx> roots, int n_sites, cplx c, abba::Scheme scheme,
                                      double coupling = 1.0,
                                      const std::vector<double>& ladder = abba::default_ladder(),
                                      double step = 1e-6);

/// Routes a classified set: regular sets directly, physical singular sets
/// through the ladder with c = c1.
EnergyResult energy_logderiv(const bae::RootSet& set, double coupling = 1.0,
                             const std::vector<double>& ladder = abba::default_ladder());

/// Pieces of i Lambda'(i/2) normalized by Lambda(i/2), each built from its own
/// product formula at the given (typically regularized) rapidities.
struct DerivationRatios {
    cplx a0;                ///< A_0 / Lambda(i/2)
    cplx pair;              ///< (A_1 + A_2) / Lambda(i/2)
    std::vector<cplx> rest; ///< A_j / Lambda(i/2), j >= 3
};

DerivationRatios derivation_ratios(std::span<const cplx> roots, int n_sites);

}  // namespace bethe::energy
