#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "bethe/baesolver.hpp"
#include "bethe/hilbert.hpp"

using namespace bethe;
using namespace bethe::bae;

namespace {

const cplx kTwoI{0.0, 2.0};

// Oracle: the Bethe equations in their original ratio form,
// max_k |((l_k + i/2)/(l_k - i/2))^N - prod_{j != k} (l_k - l_j + i)/(l_k - l_j - i)|.
double ratio_form_defect(const std::vector<cplx>& roots, int n) {
    double worst = 0.0;
    for (std::size_t k = 0; k < roots.size(); ++k) {
        const cplx lhs = std::pow((roots[k] + kHalfI) / (roots[k] - kHalfI), n);
        cplx rhs = 1.0;
        for (std::size_t j = 0; j < roots.size(); ++j) {
            if (j != k) rhs *= (roots[k] - roots[j] + kI) / (roots[k] - roots[j] - kI);
        }
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    return worst;
}

bool contains(const SectorSolutions& s, const std::vector<cplx>& roots, double tol) {
    return std::any_of(s.solutions.begin(), s.solutions.end(),
                       [&](const RootSet& r) { return same_multiset(r.roots, roots, tol); });
}

}  // namespace

TEST_CASE("residual of known solutions") {
    const double r12 = 1.0 / std::sqrt(12.0);
    CHECK(bae_residual(std::vector<cplx>{r12, -r12}, 4) <= 1e-12);
    CHECK(bae_residual(std::vector<cplx>{std::sqrt(3.0) / 2}, 6) <= 1e-14);
    // Six-digit rounding of sqrt(3)/2 leaves a relative residual of about 1.2e-6.
    CHECK(bae_residual(std::vector<cplx>{0.866025}, 6) <= 2e-6);
    CHECK(bae_residual(std::vector<cplx>{0.3, -0.2}, 4) > 1e-3);
    CHECK_THROWS_AS(bae_residual(std::vector<cplx>{0.3, 0.3}, 4), PreconditionError);
}

TEST_CASE("singular sets are measured on the reduced system") {
    RootSet s{6, 3, {kHalfI, -kHalfI, 0.0}, Classification::physical_singular, 0.0};
    CHECK(bae_residual(s) <= 1e-14);
    CHECK(reduced_residual(std::vector<cplx>{0.0}, 6) <= 1e-14);
    CHECK(reduced_residual(std::vector<cplx>{0.2}, 6) > 1e-3);
    s.classification = Classification::strange;
    CHECK_THROWS_AS(bae_residual(s), PreconditionError);
}

TEST_CASE("Newton from a near point lands on a tabulated N=6 solution") {
    const auto r = newton_refine(std::vector<cplx>{0.63, -0.2}, 6);
    REQUIRE(r.converged);
    CHECK(same_multiset(r.roots.roots, std::vector<cplx>{0.631084, -0.198071}, 1e-5));
    CHECK(r.roots.residual <= 1e-11);
}

TEST_CASE("Newton from a converged solution stays put") {
    const auto first = newton_refine(std::vector<cplx>{0.16, -0.16}, 6);
    REQUIRE(first.converged);
    const auto again = newton_refine(first.roots.roots, 6);
    REQUIRE(again.converged);
    CHECK(again.iterations <= 1);
    CHECK(same_multiset(again.roots.roots, first.roots.roots, 1e-14));
}

TEST_CASE("Newton rejects coincident starts") {
    CHECK_THROWS_AS(newton_refine(std::vector<cplx>{0.2, 0.2}, 6), PreconditionError);
}

TEST_CASE("divergence is reported, not thrown") {
    SolverConfig cfg;
    cfg.max_newton_iters = 1;
    const auto r = newton_refine(std::vector<cplx>{5.0, -3.0, 0.1}, 8, cfg);
    CHECK_FALSE(r.converged);
    CHECK_FALSE(r.reason.empty());
    CHECK(r.roots.roots.size() == 3);
}

TEST_CASE("narrow two-string at N=8 needs the quad-precision finish") {
    const auto r = newton_refine(std::vector<cplx>{-0.2787, cplx(0.1163, 0.5), cplx(0.1163, -0.5)}, 8);
    REQUIRE(r.converged);
    CHECK(r.extended_precision);
    const auto& x = r.roots.roots;
    const auto up = std::max_element(x.begin(), x.end(), [](cplx a, cplx b) { return a.imag() < b.imag(); });
    CHECK(std::abs(up->imag() - 0.5) < 1e-6);
    CHECK(std::abs(up->imag() - 0.5) > 1e-9);
}

TEST_CASE("sign-flipped partners of two N=6 two-magnon solutions fail the equations") {
    // Both members of each pair have the same energy; only one solves the equations.
    CHECK(bae_residual(std::vector<cplx>{0.582004, -0.094167}, 6) > 0.5);
    CHECK(bae_residual(std::vector<cplx>{0.094167, -0.582004}, 6) > 0.5);
    CHECK(bae_residual(std::vector<cplx>{0.582005, 0.094167}, 6) <= 1e-5);
    CHECK(bae_residual(std::vector<cplx>{-0.094167, -0.582005}, 6) <= 1e-5);
}

TEST_CASE("regularization constants") {
    const auto c4 = nw_constants(std::vector<cplx>{kHalfI, -kHalfI}, 4);
    CHECK(std::abs(c4.c1 - kTwoI) < 1e-14);
    CHECK(std::abs(c4.c2 - kTwoI) < 1e-14);
    const auto c6 = nw_constants(std::vector<cplx>{kHalfI, -kHalfI}, 6);
    CHECK(std::abs(c6.c1 + kTwoI) < 1e-14);
    CHECK(std::abs(c6.c2 + kTwoI) < 1e-14);
    const auto c63 = nw_constants(std::vector<cplx>{0.0, kHalfI, -kHalfI}, 6);
    CHECK(std::abs(c63.c1 - cplx(0.0, 6.0)) < 1e-13);
    CHECK(std::abs(c63.c2 - cplx(0.0, 6.0)) < 1e-13);
    CHECK(constants_agree(c63));
    CHECK_FALSE(constants_agree({kTwoI, cplx(0.0, 2.1)}));
    CHECK_THROWS_AS(nw_constants(std::vector<cplx>{0.1, 0.2}, 4), PreconditionError);
}

TEST_CASE("classification") {
    CHECK(classify({4, 2, {-kHalfI, kHalfI}}).classification == Classification::physical_singular);
    const auto s = classify({6, 3, {0.0, -kHalfI, kHalfI}});
    CHECK(s.classification == Classification::physical_singular);
    CHECK(std::abs(s.roots[0] - kHalfI) < 1e-15);
    CHECK(std::abs(s.roots[1] + kHalfI) < 1e-15);
    CHECK(classify({4, 1, {0.5}}).classification == Classification::regular);
    CHECK(classify({4, 2, {0.3, 0.3}}).classification == Classification::strange);
    // A free root for which c1 != c2.
    CHECK(classify({6, 3, {0.4, kHalfI, -kHalfI}}).classification == Classification::nonphysical_singular);
    CHECK(classification_from_string(to_string(Classification::nonphysical_singular)) ==
          Classification::nonphysical_singular);
}

TEST_CASE("multiset helpers") {
    const std::vector<cplx> a{cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3};
    const std::vector<cplx> b{0.3, cplx(0.1, -0.2), cplx(0.1, 0.2)};
    CHECK(same_multiset(a, b, 1e-12));
    CHECK_FALSE(same_multiset(a, std::vector<cplx>{0.3, 0.3, cplx(0.1, 0.2)}, 1e-12));
    CHECK(conjugation_closed(a, 1e-12));
    CHECK_FALSE(conjugation_closed(std::vector<cplx>{cplx(0.1, 0.2), 0.3}, 1e-12));
}

TEST_CASE("N=4 sectors") {
    const auto one = solve_sector(4, 1);
    CHECK(one.complete());
    CHECK(one.regular == 3);
    for (double x : {0.5, 0.0, -0.5}) CHECK(contains(one, {x}, 1e-9));

    const auto two = solve_sector(4, 2);
    CHECK(two.complete());
    CHECK(two.regular == 1);
    CHECK(two.physical_singular == 1);
    const double r12 = 1.0 / std::sqrt(12.0);
    CHECK(contains(two, {r12, -r12}, 1e-9));

    const auto zero = solve_sector(4, 0);
    CHECK(zero.complete());
    CHECK(zero.solutions.size() == 1);
    CHECK(zero.solutions[0].roots.empty());
}

TEST_CASE("N=6 sectors") {
    const auto two = solve_sector(6, 2);
    CHECK(two.complete());
    CHECK(two.regular == 8);
    CHECK(two.physical_singular == 1);
    CHECK(contains(two, {cplx(0.554592, 0.512465), cplx(0.554592, -0.512465)}, 1e-5));

    const auto three = solve_sector(6, 3);
    CHECK(three.complete());
    CHECK(three.regular == 4);
    CHECK(three.physical_singular == 1);
    CHECK(contains(three, {0.0, cplx(0.0, 1.008757), cplx(0.0, -1.008757)}, 1e-5));
    CHECK(contains(three, {0.0, kHalfI, -kHalfI}, 1e-12));
}

TEST_CASE("every returned solution satisfies the ratio-form equations") {
    for (int ell = 1; ell <= 3; ++ell) {
        const auto s = solve_sector(6, ell);
        for (const auto& r : s.solutions) {
            CHECK(conjugation_closed(r.roots, 1e-7));
            if (r.classification == Classification::regular) CHECK(ratio_form_defect(r.roots, 6) < 1e-8);
        }
    }
}

TEST_CASE("solutions come out in canonical order") {
    const auto s = solve_sector(6, 1);
    REQUIRE(s.solutions.size() == 5);
    for (std::size_t i = 1; i < 5; ++i) CHECK(s.solutions[i - 1].roots[0].real() > s.solutions[i].roots[0].real());
    CHECK(s.target == 5);
}

TEST_CASE("seed families can be switched off") {
    SolverConfig cfg;
    cfg.seed_strategies = static_cast<unsigned>(Seed::random_real);
    cfg.n_random_starts = 50;
    const auto s = solve_sector(6, 1, cfg);
    CHECK(s.starts == 50);
    CHECK(s.regular == 5);
}

TEST_CASE("sector preconditions") {
    CHECK_THROWS_AS(solve_sector(6, 4), ArgumentError);
    CHECK_THROWS_AS(solve_sector(6, -1), ArgumentError);
}
