#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <map>
#include <random>

#include "bethe/abba.hpp"
#include "bethe/baesolver.hpp"
#include "bethe/energy.hpp"
#include "bethe/hilbert.hpp"

using namespace bethe;

namespace {

std::vector<cplx> random_lambdas(int count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> re(-1.5, 1.5), im(-1.0, 1.0);
    std::vector<cplx> out;
    for (int i = 0; i < count; ++i) out.emplace_back(re(rng), im(rng));
    return out;
}

double commutator(const OperatorMatrix& a, const OperatorMatrix& b) {
    return (a * b - b * a).norm() / std::max(1e-300, (a * b).norm());
}

const std::vector<bae::SectorSolutions>& solutions(int n) {
    static std::map<int, std::vector<bae::SectorSolutions>> cache;
    auto& v = cache[n];
    if (v.empty()) {
        for (int ell = 0; 2 * ell <= n; ++ell) v.push_back(bae::solve_sector(n, ell));
    }
    return v;
}

}  // namespace

TEST_CASE("Yang-Baxter on random spectral parameters") {
    const auto lam = random_lambdas(20, 1);
    for (std::size_t i = 0; i + 1 < lam.size(); i += 2) {
        CHECK(abba::yang_baxter_residual(lam[i], lam[i + 1], 1, 2) <= 1e-12);
    }
}

TEST_CASE("B and tau commute with themselves") {
    const auto lam = random_lambdas(20, 2);
    for (int n : {3, 4, 6}) {
        for (std::size_t i = 0; i + 1 < lam.size(); i += 2) {
            const auto a = abba::monodromy(lam[i], n), b = abba::monodromy(lam[i + 1], n);
            CHECK(commutator(a.b_block, b.b_block) <= 1e-10);
            CHECK(commutator(a.transfer(), b.transfer()) <= 1e-10);
        }
    }
}

TEST_CASE("tau commutes with H") {
    for (int n : {4, 5}) {
        const OperatorMatrix h = hilbert::hamiltonian(n);
        for (const cplx l : random_lambdas(5, 3)) CHECK(commutator(abba::transfer_matrix(l, n), h) <= 1e-10);
    }
}

TEST_CASE("every regular solution is an eigenvector of tau with eigenvalue Lambda") {
    const auto lam = random_lambdas(5, 4);
    for (int n : {4, 5, 6}) {
        for (const auto& sector : solutions(n)) {
            for (const auto& s : sector.solutions) {
                if (s.classification != bae::Classification::regular) continue;
                const StateVector psi = abba::bethe_vector(s.roots, n);
                REQUIRE(psi.norm() > 0.0);
                for (const cplx l : lam) {
                    const StateVector lhs = abba::apply_transfer(psi, l, n);
                    const cplx ev = abba::lambda_eigenvalue(l, s.roots, n);
                    CHECK((lhs - ev * psi).norm() <= 1e-8 * std::abs(ev) * psi.norm());
                }
                for (int k = 1; k <= s.ell; ++k) CHECK(abba::lambda_k_relative(k, s.roots, n) <= 1e-9);
            }
        }
    }
}

TEST_CASE("solutions are conjugation-closed with real energies on the diagonalization spectrum") {
    for (int n : {4, 5, 6}) {
        const auto eig = hilbert::full_spectrum_by_sectors(n);
        for (const auto& sector : solutions(n)) {
            CHECK(sector.complete());
            for (const auto& s : sector.solutions) {
                CHECK(bae::conjugation_closed(s.roots, 1e-7));
                if (s.classification == bae::Classification::nonphysical_singular) continue;
                const auto e = energy::energy(s);
                CHECK(e.valid);
                const bool on_spectrum =
                    std::any_of(eig.begin(), eig.end(), [&](double x) { return std::abs(x - e.energy) < 1e-8; });
                CHECK(on_spectrum);
                const auto alt = energy::energy_logderiv(s);
                const double tol = s.is_singular() ? 1e-4 : 1e-6;
                CHECK(std::abs(alt.energy - e.energy) <= tol * std::max(1.0, std::abs(e.energy)));
            }
        }
    }
}

TEST_CASE("the spectrum is symmetric under a change of coupling sign") {
    const auto plus = hilbert::full_spectrum_by_sectors(5, 1.0);
    auto minus = hilbert::full_spectrum_by_sectors(5, -1.0);
    for (double& x : minus) x = -x;
    std::sort(minus.begin(), minus.end());
    REQUIRE(plus.size() == minus.size());
    for (std::size_t i = 0; i < plus.size(); ++i) CHECK(plus[i] == doctest::Approx(minus[i]).epsilon(1e-12));
}
