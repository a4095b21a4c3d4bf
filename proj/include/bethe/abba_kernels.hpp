#pragma once

// Scalar-generic kernels shared by the double and extended precision paths.
// C is std::complex<double> or a Boost.Multiprecision complex type.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace bethe::kernels {

template <class C>
C imag_unit() { return C(0.0, 1.0); }

template <class C>
C half_i() { return C(0.0, 0.5); }

template <class C>
C ipow(C base, int n) {
    C r(1.0, 0.0);
    for (int i = 0; i < n; ++i) r *= base;
    return r;
}

/// In-place action of L_k(lambda) on a vector of C^2 (aux) x H_N, stored as the
/// two auxiliary components w0 (aux up) and w1 (aux down).
template <class C>
void apply_l_site(std::vector<C>& w0, std::vector<C>& w1, int k, int n_sites, const C& lambda) {
    const std::uint64_t mask = std::uint64_t{1} << (n_sites - k);
    const std::uint64_t dim = std::uint64_t{1} << n_sites;
    const C plus = lambda + half_i<C>();
    const C minus = lambda - half_i<C>();
    const C i = imag_unit<C>();
    for (std::uint64_t u = 0; u < dim; ++u) {
        if (u & mask) continue;
        const std::uint64_t d = u | mask;
        const C a0u = w0[u], a0d = w0[d], a1u = w1[u], a1d = w1[d];
        w0[u] = plus * a0u;
        w0[d] = minus * a0d + i * a1u;
        w1[u] = i * a0d + minus * a1u;
        w1[d] = plus * a1d;
    }
}

/// Apply T_N(lambda) = L_N ... L_1 to (w0, w1) in place.
template <class C>
void apply_monodromy(std::vector<C>& w0, std::vector<C>& w1, int n_sites, const C& lambda) {
    for (int k = 1; k <= n_sites; ++k) apply_l_site(w0, w1, k, n_sites, lambda);
}

/// B_N(lambda) v, the (up, down) auxiliary entry of the monodromy matrix.
template <class C>
std::vector<C> apply_b(const std::vector<C>& v, int n_sites, const C& lambda) {
    std::vector<C> w0(v.size(), C(0.0, 0.0));
    std::vector<C> w1 = v;
    apply_monodromy(w0, w1, n_sites, lambda);
    return w0;
}

/// tau_N(lambda) v = (A + D) v.
template <class C>
std::vector<C> apply_transfer(const std::vector<C>& v, int n_sites, const C& lambda) {
    std::vector<C> a0 = v, a1(v.size(), C(0.0, 0.0));
    apply_monodromy(a0, a1, n_sites, lambda);
    std::vector<C> d0(v.size(), C(0.0, 0.0)), d1 = v;
    apply_monodromy(d0, d1, n_sites, lambda);
    for (std::size_t x = 0; x < v.size(); ++x) a0[x] += d1[x];
    return a0;
}

/// B(lambda_1) ... B(lambda_l) |0>_N. Order is immaterial since the B's commute.
template <class C>
std::vector<C> bethe_product(std::span<const C> roots, int n_sites) {
    std::vector<C> v(std::size_t{1} << n_sites, C(0.0, 0.0));
    v[0] = C(1.0, 0.0);
    for (auto it = roots.rbegin(); it != roots.rend(); ++it) v = apply_b(v, n_sites, *it);
    return v;
}

/// Lambda(lambda; roots), the transfer-matrix eigenvalue on a Bethe vector.
template <class C>
C lambda_eigenvalue(const C& lambda, std::span<const C> roots, int n_sites) {
    const C i = imag_unit<C>();
    C first = ipow(lambda + half_i<C>(), n_sites);
    C second = ipow(lambda - half_i<C>(), n_sites);
    for (const C& r : roots) {
        const C diff = lambda - r;
        if (diff == C(0.0, 0.0)) throw std::domain_error("Lambda: spectral parameter equals a root");
        first *= (diff - i) / diff;
        second *= (-diff - i) / (-diff);
    }
    return first + second;
}

/// The two terms inside the braces of Lambda_k, returned separately so callers
/// can form a relative residual.
template <class C>
std::pair<C, C> lambda_k_terms(int k, std::span<const C> roots, int n_sites) {
    const C i = imag_unit<C>();
    const C& lk = roots[static_cast<std::size_t>(k)];
    C first = ipow(lk + half_i<C>(), n_sites);
    C second = ipow(lk - half_i<C>(), n_sites);
    for (std::size_t j = 0; j < roots.size(); ++j) {
        if (j == static_cast<std::size_t>(k)) continue;
        const C diff = lk - roots[j];
        first *= (diff - i) / diff;
        second *= (-diff - i) / (-diff);
    }
    return {first, second};
}

/// Unwanted-term coefficient Lambda_k(lambda; roots); k is 0-based here.
template <class C>
C lambda_k(const C& lambda, int k, std::span<const C> roots, int n_sites) {
    const C diff = lambda - roots[static_cast<std::size_t>(k)];
    if (diff == C(0.0, 0.0)) throw std::domain_error("Lambda_k: spectral parameter equals lambda_k");
    const auto [first, second] = lambda_k_terms(k, roots, n_sites);
    return imag_unit<C>() / diff * (first - second);
}

}  // namespace bethe::kernels
