#include "bethe/energy.hpp"

#include <cmath>

namespace bethe::energy {

namespace {

EnergyResult finish(cplx e, Method m) {
    EnergyResult r;
    r.energy = e.real() + 0.0;  // no negative zero
    r.method = m;
    r.imag_leak = std::abs(e.imag());
    r.valid = std::isfinite(r.energy) && r.imag_leak <= kImagLeakTol;
    return r;
}

cplx magnon_sum(std::span<const cplx> roots) {
    cplx s = 0.0;
    for (const cplx z : roots) s += 1.0 / (z * z + 0.25);
    return s;
}

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace

std::string to_string(Method m) {
    switch (m) {
        case Method::regular_formula: return "regular_formula";
        case Method::nw_theorem: return "nw_theorem";
        case Method::lambda_logderiv: return "lambda_logderiv";
    }
    return "regular_formula";
}

Method method_from_string(const std::string& s) {
    for (auto m : {Method::regular_formula, Method::nw_theorem, Method::lambda_logderiv}) {
        if (to_string(m) == s) return m;
    }
    throw ArgumentError("unknown energy method '" + s + "'");
}

EnergyResult energy_regular(std::span<const cplx> roots, double coupling, double tol_singular) {
    for (const cplx z : roots) {
        if (near(z, kHalfI, tol_singular) || near(z, -kHalfI, tol_singular)) {
            throw PreconditionError("energy_regular: root at +-i/2; use energy_nw");
        }
    }
    return finish(-0.5 * coupling * magnon_sum(roots), Method::regular_formula);
}

EnergyResult energy_regular(const bae::RootSet& set, double coupling) { return energy_regular(set.roots, coupling); }

EnergyResult energy_nw(std::span<const cplx> roots, double coupling, double tol_singular) {
    if (roots.size() < 2 || !near(roots[0], kHalfI, tol_singular) || !near(roots[1], -kHalfI, tol_singular)) {
        throw PreconditionError("energy_nw: roots must start with i/2, -i/2");
    }
    return finish(-coupling - 0.5 * coupling * magnon_sum(roots.subspan(2)), Method::nw_theorem);
}

EnergyResult energy_nw(const bae::RootSet& set, double coupling) { return energy_nw(set.roots, coupling); }

EnergyResult energy(const bae::RootSet& set, double coupling) {
    switch (set.classification) {
        case bae::Classification::regular: return energy_regular(set, coupling);
        case bae::Classification::physical_singular: return energy_nw(set, coupling);
        default: break;
    }
    throw PreconditionError("energy: no eigenvalue formula for a " + bae::to_string(set.classification) + " set");
}

cplx log_derivative(std::span<const cplx> roots, int n_sites, double step) {
    const cplx denom = abba::lambda_eigenvalue(kHalfI, roots, n_sites);
    if (std::abs(denom) == 0.0) throw DegenerateDenominator("Lambda(i/2) = 0");
    const cplx up = abba::lambda_eigenvalue(kHalfI + step, roots, n_sites);
    const cplx down = abba::lambda_eigenvalue(kHalfI - step, roots, n_sites);
    return kI * (up - down) / (2.0 * step) / denom;
}

EnergyResult energy_logderiv(std::span<const cplx> roots, int n_sites, double coupling, double step) {
    const cplx eps = log_derivative(roots, n_sites, step);
    return finish(0.5 * coupling * (eps - static_cast<double>(n_sites)), Method::lambda_logderiv);
}

LadderEnergy energy_logderiv_singular(std::span<const cplx> roots, int n_sites, cplx c, abba::Scheme scheme,
                                      double coupling, const std::vector<double>& ladder, double step) {
    if (ladder.size() < 2) throw ArgumentError("energy_logderiv_singular: ladder needs at least two rungs");
    LadderEnergy out;
    for (const double eps : ladder) {
        const auto reg = abba::regularized_roots(roots, n_sites, {eps, c, scheme});
        const cplx e = 0.5 * coupling * (log_derivative(reg, n_sites, step) - static_cast<double>(n_sites));
        out.epsilons.push_back(eps);
        out.energies.push_back(e);
    }
    const std::size_t n = ladder.size();
    const double ea = out.epsilons[n - 2], eb = out.epsilons[n - 1];
    const cplx fa = out.energies[n - 2], fb = out.energies[n - 1];
    out.extrapolated = finish((ea * fb - eb * fa) / (ea - eb), Method::lambda_logderiv);
    return out;
}

EnergyResult energy_logderiv(const bae::RootSet& set, double coupling, const std::vector<double>& ladder) {
    switch (set.classification) {
        case bae::Classification::regular: return energy_logderiv(set.roots, set.n, coupling);
        case bae::Classification::physical_singular: {
            const auto c = bae::nw_constants(set);
            return energy_logderiv_singular(set.roots, set.n, c.c1, abba::Scheme::c1, coupling, ladder).extrapolated;
        }
        default: break;
    }
    throw PreconditionError("energy_logderiv: no eigenvalue for a " + bae::to_string(set.classification) + " set");
}

DerivationRatios derivation_ratios(std::span<const cplx> roots, int n_sites) {
    const cplx lam = kHalfI;
    const cplx denom = abba::lambda_eigenvalue(lam, roots, n_sites);
    if (std::abs(denom) == 0.0) throw DegenerateDenominator("Lambda(i/2) = 0");
    const std::size_t l = roots.size();
    std::vector<cplx> factor(l);
    for (std::size_t j = 0; j < l; ++j) {
        if (roots[j] == lam) throw PoleError("derivation_ratios: root at the evaluation point");
        factor[j] = (lam - roots[j] - kI) / (lam - roots[j]);
    }
    const cplx plus = lam + kHalfI;
    cplx all = 1.0;
    for (const cplx f : factor) all *= f;

    DerivationRatios r;
    r.a0 = kI * static_cast<double>(n_sites) * std::pow(plus, n_sites - 1) * all / denom;
    std::vector<cplx> a(l);
    for (std::size_t j = 0; j < l; ++j) {
        cplx others = 1.0;
        for (std::size_t m = 0; m < l; ++m) {
            if (m != j) others *= factor[m];
        }
        const cplx d = roots[j] - lam;
        a[j] = kI * std::pow(plus, n_sites) * others * kI / (d * d) / denom;
    }
    if (l >= 2) r.pair = a[0] + a[1];
    for (std::size_t j = 2; j < l; ++j) r.rest.push_back(a[j]);
    return r;
}

}  // namespace bethe::energy
