#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bethe/hilbert.hpp"

using namespace bethe;
using namespace bethe::hilbert;

namespace {

// Oracle: the chain Hamiltonian written as (J/2) sum_k (P_{k,k+1} - 1) directly
// on bit strings, for comparison with the Pauli-product construction.
Eigen::MatrixXd bond_exchange_oracle(int n, double J) {
    const std::size_t dim = std::size_t{1} << n;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t b = 0; b < dim; ++b) {
        for (int k = 1; k <= n; ++k) {
            const int k2 = k % n + 1;
            const std::size_t m1 = std::size_t{1} << (n - k), m2 = std::size_t{1} << (n - k2);
            const bool s1 = b & m1, s2 = b & m2;
            if (s1 == s2) continue;
            const std::size_t swapped = b ^ m1 ^ m2;
            h(static_cast<Eigen::Index>(swapped), static_cast<Eigen::Index>(b)) += J / 2;
            h(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)) -= J / 2;
        }
    }
    return h;
}

}  // namespace

TEST_CASE("basis convention puts site 1 in the top bit") {
    CHECK(site_mask(1, 4) == 8);
    CHECK(site_mask(4, 4) == 1);
    CHECK(site_bit(0b1000, 1, 4) == 1);
    CHECK(site_bit(0b1000, 2, 4) == 0);
    const StateVector v = vacuum(3);
    CHECK(v.size() == 8);
    CHECK(v(0) == cplx(1.0));
    CHECK(v.norm() == doctest::Approx(1.0));
}

TEST_CASE("binomial") {
    CHECK(binomial(6, 3) == 20);
    CHECK(binomial(14, 7) == 3432);
    CHECK(binomial(6, -1) == 0);
    CHECK(binomial(3, 5) == 0);
}

TEST_CASE("Pauli algebra on each site") {
    const int n = 3;
    const OperatorMatrix id = OperatorMatrix::Identity(8, 8);
    for (int k = 1; k <= n; ++k) {
        const auto x = pauli_site(1, k, n), y = pauli_site(2, k, n), z = pauli_site(3, k, n);
        CHECK((x * x - id).norm() < 1e-14);
        CHECK((x * y - kI * z).norm() < 1e-14);
        CHECK((z * vacuum(n) - vacuum(n)).norm() < 1e-14);
    }
    CHECK((pauli_site(1, 1, n) * pauli_site(3, 2, n) - pauli_site(3, 2, n) * pauli_site(1, 1, n)).norm() < 1e-14);
    CHECK_THROWS_AS(pauli_site(4, 1, n), ArgumentError);
    CHECK_THROWS_AS(pauli_site(1, 0, n), ArgumentError);
}

TEST_CASE("Hamiltonian matches the bond-exchange oracle") {
    for (int n : {2, 3, 4, 5, 6}) {
        const OperatorMatrix h = hamiltonian(n, 1.3);
        CHECK(h.imag().norm() < 1e-14);
        CHECK((h.real() - bond_exchange_oracle(n, 1.3)).norm() < 1e-12);
    }
}

TEST_CASE("two-site chain") {
    const OperatorMatrix h = hamiltonian(2, 1.0);
    Eigen::Matrix4d expected;
    expected << 0, 0, 0, 0, 0, -1, 1, 0, 0, 1, -1, 0, 0, 0, 0, 0;
    CHECK((h.real() - expected).norm() < 1e-14);
}

TEST_CASE("trace of H is -N J 2^(N-2)") {
    for (int n : {2, 3, 4, 6, 8}) {
        const OperatorMatrix h = hamiltonian(n, 1.0);
        CHECK(h.trace().real() == doctest::Approx(-n * std::pow(2.0, n - 2)));
    }
}

TEST_CASE("Hamiltonian symmetries") {
    const int n = 6;
    const OperatorMatrix h = hamiltonian(n);
    CHECK((h - h.adjoint()).norm() < 1e-12);
    const OperatorMatrix t = cyclic_shift(n);
    CHECK((t * h - h * t).norm() < 1e-12);
    CHECK((t.adjoint() * t - OperatorMatrix::Identity(64, 64)).norm() < 1e-12);
    // H preserves the magnon number.
    for (Eigen::Index a = 0; a < h.rows(); ++a) {
        for (Eigen::Index b = 0; b < h.cols(); ++b) {
            if (std::abs(h(a, b)) > 0) CHECK(magnon_count(a) == magnon_count(b));
        }
    }
    // [H, S+] = 0 checked on random vectors.
    StateVector v = StateVector::Random(64);
    CHECK((apply_total_raising(h * v, n) - h * apply_total_raising(v, n)).norm() < 1e-12);
}

TEST_CASE("matrix-free H agrees with the dense operator") {
    for (int n : {3, 5, 7}) {
        const OperatorMatrix h = hamiltonian(n, 0.7);
        const StateVector v = StateVector::Random(h.rows());
        CHECK((apply_hamiltonian(v, n, 0.7) - h * v).norm() < 1e-12);
    }
}

TEST_CASE("sector blocks reproduce the full spectrum") {
    const int n = 6;
    const auto eig = eig_hermitian(hamiltonian(n));
    const auto by_sector = full_spectrum_by_sectors(n);
    REQUIRE(by_sector.size() == 64);
    for (std::size_t i = 0; i < 64; ++i) CHECK(by_sector[i] == doctest::Approx(eig.values(static_cast<Eigen::Index>(i))).epsilon(1e-10));

    const auto basis = sector_basis(n, 2);
    CHECK(basis.size() == 15);
    const Eigen::MatrixXd block = sector_hamiltonian(n, 2);
    const OperatorMatrix h = hamiltonian(n);
    for (std::size_t a = 0; a < basis.size(); ++a) {
        for (std::size_t b = 0; b < basis.size(); ++b) {
            CHECK(block(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) ==
                  doctest::Approx(h(static_cast<Eigen::Index>(basis[a]), static_cast<Eigen::Index>(basis[b])).real()));
        }
    }
}

TEST_CASE("eig_hermitian") {
    const OperatorMatrix h = hamiltonian(4);
    const auto es = eig_hermitian(h);
    CHECK(std::is_sorted(es.values.data(), es.values.data() + es.values.size()));
    CHECK((h * es.vectors - es.vectors * es.values.asDiagonal()).norm() < 1e-10);

    OperatorMatrix bad = h;
    bad(0, 1) += cplx(0.0, 1.0);
    CHECK_THROWS_AS(eig_hermitian(bad), PreconditionError);
}

TEST_CASE("level merging") {
    const std::vector<double> e{-3.0, -1.0, -1.0 + 1e-12, 0.0, 0.0};
    const auto s = spectrum_with_multiplicities(e, default_merge_tol(e));
    REQUIRE(s.size() == 3);
    CHECK(s[1].multiplicity == 2);
    CHECK(s[2].energy == 0.0);
    CHECK(spectrum_source_from_string(to_string(SpectrumSource::physical_singular)) ==
          SpectrumSource::physical_singular);
    CHECK_THROWS_AS(spectrum_source_from_string("nope"), ArgumentError);
}

TEST_CASE("N=2 and N=4 spectra") {
    const auto two = full_spectrum_by_sectors(2);
    const auto s2 = spectrum_with_multiplicities(two, default_merge_tol(two));
    REQUIRE(s2.size() == 2);
    CHECK(s2[0].energy == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(s2[0].multiplicity == 1);
    CHECK(s2[1].multiplicity == 3);

    const auto four = full_spectrum_by_sectors(4);
    const auto s4 = spectrum_with_multiplicities(four, default_merge_tol(four));
    REQUIRE(s4.size() == 4);
    const std::vector<std::pair<double, int>> expected{{-3.0, 1}, {-2.0, 3}, {-1.0, 7}, {0.0, 5}};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(s4[i].energy == doctest::Approx(expected[i].first).epsilon(1e-12));
        CHECK(s4[i].multiplicity == expected[i].second);
    }
}

TEST_CASE("size caps") {
    CHECK_THROWS_AS(hamiltonian(15), ArgumentError);
    CHECK_THROWS_AS(sector_hamiltonian(20, 10), ArgumentError);
    CHECK_THROWS_AS(hamiltonian(0), ArgumentError);
}
