#include "bethe/abba.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <boost/multiprecision/cpp_complex.hpp>

#include "bethe/abba_kernels.hpp"
#include "bethe/hilbert.hpp"

namespace bethe::abba {

namespace {

using qcplx = boost::multiprecision::cpp_complex_quad;

std::vector<cplx> to_std(const StateVector& v) { return {v.data(), v.data() + v.size()}; }

StateVector to_eigen(const std::vector<cplx>& v) {
    return Eigen::Map<const StateVector>(v.data(), static_cast<Eigen::Index>(v.size()));
}

qcplx to_quad(cplx z) { return qcplx(z.real(), z.imag()); }

cplx to_double(const qcplx& z) {
    return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

void check_chain(int n_sites) {
    if (n_sites < 1 || n_sites > hilbert::kMaxFullSites) {
        throw ArgumentError("chain length " + std::to_string(n_sites) + " outside [1, " +
                            std::to_string(hilbert::kMaxFullSites) + "]");
    }
}

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

void require_singular_prefix(std::span<const cplx> roots, double tol) {
    if (roots.size() < 2 || !near(roots[0], kHalfI, tol) || !near(roots[1], -kHalfI, tol)) {
        throw PreconditionError("regularization needs roots of the form {i/2, -i/2, ...}");
    }
}

// Regularized rapidities in quad precision; c eps^N is far below double
// resolution of i/2 once N eps is small.
std::vector<qcplx> regularized_quad(std::span<const cplx> roots, int n_sites, const RegularizationParams& p) {
    const qcplx eps(p.epsilon, 0.0);
    const qcplx c = p.scheme == Scheme::naive ? qcplx(0.0, 0.0) : to_quad(p.c);
    std::vector<qcplx> out;
    out.reserve(roots.size());
    out.push_back(qcplx(0.0, 0.5) + eps + c * kernels::ipow(eps, n_sites));
    out.push_back(qcplx(0.0, -0.5) + eps);
    for (std::size_t j = 2; j < roots.size(); ++j) out.push_back(to_quad(roots[j]));
    return out;
}

// Embed an operator on aux (x) H, given as blocks, into aux1 (x) aux2 (x) H.
OperatorMatrix embed_aux(const AuxBlocks& blocks, int slot) {
    const Eigen::Index d = blocks[0][0].rows();
    OperatorMatrix out = OperatorMatrix::Zero(4 * d, 4 * d);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            for (int spectator = 0; spectator < 2; ++spectator) {
                const int row = slot == 1 ? 2 * a + spectator : 2 * spectator + a;
                const int col = slot == 1 ? 2 * b + spectator : 2 * spectator + b;
                out.block(row * d, col * d, d, d) = blocks[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            }
        }
    }
    return out;
}

}  // namespace

AuxBlocks l_operator(int k, cplx lambda, int n_sites) {
    check_chain(n_sites);
    if (k < 1 || k > n_sites) throw ArgumentError("site " + std::to_string(k) + " outside [1, N]");
    const auto s1 = hilbert::pauli_site(1, k, n_sites);
    const auto s2 = hilbert::pauli_site(2, k, n_sites);
    const auto s3 = hilbert::pauli_site(3, k, n_sites);
    const auto id = OperatorMatrix::Identity(s3.rows(), s3.cols());
    AuxBlocks l;
    l[0][0] = lambda * id + kHalfI * s3;
    l[0][1] = kHalfI * (s1 - kI * s2);
    l[1][0] = kHalfI * (s1 + kI * s2);
    l[1][1] = lambda * id - kHalfI * s3;
    return l;
}

Eigen::Matrix4cd r_matrix(cplx lambda) {
    if (std::abs(lambda + kI) == 0.0) throw PoleError("R-matrix pole at lambda = -i");
    Eigen::Matrix2cd s[3];
    s[0] << 0, 1, 1, 0;
    s[1] << 0, -kI, kI, 0;
    s[2] << 1, 0, 0, -1;
    Eigen::Matrix4cd sum = Eigen::Matrix4cd::Zero();
    for (const auto& m : s) {
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) sum(a, b) += m(a / 2, b / 2) * m(a % 2, b % 2);
        }
    }
    return ((lambda / 2.0 + kI) * Eigen::Matrix4cd::Identity() + (lambda / 2.0) * sum) / (lambda + kI);
}

double yang_baxter_residual(cplx lambda, cplx mu, int k, int n_sites) {
    const auto r4 = r_matrix(lambda - mu);
    const Eigen::Index d = static_cast<Eigen::Index>(hilbert::full_dim(n_sites));
    OperatorMatrix r = OperatorMatrix::Zero(4 * d, 4 * d);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) r.block(a * d, b * d, d, d) = r4(a, b) * OperatorMatrix::Identity(d, d);
    }
    const auto l1_lambda = embed_aux(l_operator(k, lambda, n_sites), 1);
    const auto l2_mu = embed_aux(l_operator(k, mu, n_sites), 2);
    const auto l1_mu = embed_aux(l_operator(k, mu, n_sites), 1);
    const auto l2_lambda = embed_aux(l_operator(k, lambda, n_sites), 2);
    const OperatorMatrix lhs = r * l1_lambda * l2_mu;
    const OperatorMatrix rhs = l1_mu * l2_lambda * r;
    return (lhs - rhs).cwiseAbs().maxCoeff();
}

MonodromyBlocks monodromy(cplx lambda, int n_sites) {
    check_chain(n_sites);
    const auto dim = hilbert::full_dim(n_sites);
    const auto d = static_cast<Eigen::Index>(dim);
    MonodromyBlocks m{lambda, OperatorMatrix(d, d), OperatorMatrix(d, d), OperatorMatrix(d, d),
                      OperatorMatrix(d, d)};
    // Column by column: T (e_aux (x) e_x).
    for (std::uint64_t x = 0; x < dim; ++x) {
        for (int aux = 0; aux < 2; ++aux) {
            std::vector<cplx> w0(dim), w1(dim);
            (aux == 0 ? w0 : w1)[x] = 1.0;
            kernels::apply_monodromy(w0, w1, n_sites, lambda);
            auto& top = aux == 0 ? m.a_block : m.b_block;
            auto& bottom = aux == 0 ? m.c_block : m.d_block;
            const auto col = static_cast<Eigen::Index>(x);
            top.col(col) = Eigen::Map<const StateVector>(w0.data(), d);
            bottom.col(col) = Eigen::Map<const StateVector>(w1.data(), d);
        }
    }
    return m;
}

OperatorMatrix transfer_matrix(cplx lambda, int n_sites) { return monodromy(lambda, n_sites).transfer(); }

StateVector apply_b(const StateVector& v, cplx lambda, int n_sites) {
    check_chain(n_sites);
    return to_eigen(kernels::apply_b(to_std(v), n_sites, lambda));
}

StateVector apply_transfer(const StateVector& v, cplx lambda, int n_sites) {
    check_chain(n_sites);
    return to_eigen(kernels::apply_transfer(to_std(v), n_sites, lambda));
}

StateVector bethe_vector(std::span<const cplx> roots, int n_sites, double tol_singular) {
    check_chain(n_sites);
    for (std::size_t i = 0; i < roots.size(); ++i) {
        if (near(roots[i], kHalfI, tol_singular) || near(roots[i], -kHalfI, tol_singular)) {
            throw PreconditionError("root at +-i/2: use regularized_nw_vector for singular sets");
        }
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (roots[i] == roots[j]) throw PreconditionError("bethe_vector: coincident roots");
        }
    }
    return to_eigen(kernels::bethe_product(roots, n_sites));
}

std::string to_string(Scheme s) {
    switch (s) {
        case Scheme::c1: return "c1";
        case Scheme::c2: return "c2";
        case Scheme::naive: return "naive";
    }
    return "c1";
}

std::vector<cplx> regularized_roots(std::span<const cplx> roots, int n_sites, const RegularizationParams& p) {
    const auto q = regularized_quad(roots, n_sites, p);
    std::vector<cplx> out;
    out.reserve(q.size());
    for (const auto& z : q) out.push_back(to_double(z));
    return out;
}

StateVector regularized_nw_vector(std::span<const cplx> roots, int n_sites, const RegularizationParams& p,
                                  double tol_singular) {
    check_chain(n_sites);
    require_singular_prefix(roots, tol_singular);
    if (!(p.epsilon > 0.0) || p.epsilon > 0.1) throw ArgumentError("epsilon must lie in (0, 0.1]");
    const auto reg = regularized_quad(roots, n_sites, p);
    const auto v = kernels::bethe_product<qcplx>(reg, n_sites);
    const qcplx scale = kernels::ipow(qcplx(p.epsilon, 0.0), n_sites);
    StateVector out(static_cast<Eigen::Index>(v.size()));
    for (std::size_t x = 0; x < v.size(); ++x) out(static_cast<Eigen::Index>(x)) = to_double(v[x] / scale);
    return out;
}

cplx lambda_eigenvalue(cplx lambda, std::span<const cplx> roots, int n_sites) {
    try {
        return kernels::lambda_eigenvalue(lambda, roots, n_sites);
    } catch (const std::domain_error& e) {
        throw PoleError(e.what());
    }
}

cplx lambda_k(cplx lambda, int k, std::span<const cplx> roots, int n_sites) {
    if (k < 1 || static_cast<std::size_t>(k) > roots.size()) throw ArgumentError("Lambda_k index out of range");
    for (std::size_t i = 0; i < roots.size(); ++i) {
        for (std::size_t j = i + 1; j < roots.size(); ++j) {
            if (roots[i] == roots[j]) throw PreconditionError("Lambda_k: coincident roots");
        }
    }
    try {
        return kernels::lambda_k(lambda, k - 1, roots, n_sites);
    } catch (const std::domain_error& e) {
        throw PoleError(e.what());
    }
}

double lambda_k_relative(int k, std::span<const cplx> roots, int n_sites) {
    if (k < 1 || static_cast<std::size_t>(k) > roots.size()) throw ArgumentError("Lambda_k index out of range");
    const auto [first, second] = kernels::lambda_k_terms(k - 1, roots, n_sites);
    const double scale = std::abs(first) + std::abs(second);
    return scale == 0.0 ? 0.0 : std::abs(first - second) / scale;
}

cplx lambda_k_regularized(cplx lambda, int k, std::span<const cplx> roots, int n_sites,
                          const RegularizationParams& p) {
    require_singular_prefix(roots, 1e-6);
    if (k < 1 || static_cast<std::size_t>(k) > roots.size()) throw ArgumentError("Lambda_k index out of range");
    const auto reg = regularized_quad(roots, n_sites, p);
    return to_double(kernels::lambda_k<qcplx>(to_quad(lambda), k - 1, reg, n_sites));
}

OperatorMatrix hamiltonian_from_transfer(int n_sites, double coupling, double step) {
    const double h = step * std::max(1.0, std::abs(kHalfI));
    const OperatorMatrix tau = transfer_matrix(kHalfI, n_sites);
    const OperatorMatrix derivative =
        (transfer_matrix(kHalfI + h, n_sites) - transfer_matrix(kHalfI - h, n_sites)) / (2.0 * h);
    const OperatorMatrix log_derivative = derivative * tau.inverse();
    const auto id = OperatorMatrix::Identity(tau.rows(), tau.cols());
    return (kI * coupling / 2.0) * log_derivative - (n_sites * coupling / 2.0) * id;
}

std::vector<double> default_ladder() { return {1e-2, 5e-3, 2.5e-3}; }

NwConvergence nw_convergence(std::span<const cplx> roots, int n_sites, cplx c, Scheme scheme,
                             double target_energy, double coupling, const std::vector<double>& ladder,
                             double limit_tol) {
    if (ladder.size() < 2) throw ArgumentError("eps ladder needs at least two values");
    NwConvergence out;
    std::vector<StateVector> unit;
    for (double eps : ladder) {
        const StateVector psi = regularized_nw_vector(roots, n_sites, {eps, c, scheme});
        const double norm = psi.norm();
        out.epsilons.push_back(eps);
        out.norms.push_back(norm);
        if (norm == 0.0) {
            out.residuals.push_back(std::numeric_limits<double>::infinity());
            out.rayleigh_residuals.push_back(std::numeric_limits<double>::infinity());
            unit.push_back(psi);
            continue;
        }
        const StateVector hpsi = hilbert::apply_hamiltonian(psi, n_sites, coupling);
        const cplx rayleigh = psi.dot(hpsi) / (norm * norm);
        out.residuals.push_back((hpsi - target_energy * coupling * psi).norm() / norm);
        out.rayleigh_residuals.push_back((hpsi - rayleigh * psi).norm() / norm);
        unit.push_back(psi / norm);
    }
    out.monotone = true;
    for (std::size_t i = 1; i < ladder.size(); ++i) {
        if (!(out.rayleigh_residuals[i] < out.rayleigh_residuals[i - 1])) out.monotone = false;
    }
    const auto& a = unit[unit.size() - 2];
    const auto& b = unit.back();
    out.last_angle = std::acos(std::clamp(std::abs(a.dot(b)), 0.0, 1.0));

    // first-order Richardson on the ray, phases aligned to the last vector
    const double r = ladder[ladder.size() - 2] / ladder.back();
    const cplx overlap = b.dot(a);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx{1.0};
    StateVector limit = (r * b - a * std::conj(phase)) / (r - 1.0);
    const double lnorm = limit.norm();
    if (lnorm > 0.0 && std::isfinite(lnorm)) {
        limit /= lnorm;
        const StateVector hl = hilbert::apply_hamiltonian(limit, n_sites, coupling);
        out.extrapolated_residual = (hl - target_energy * coupling * limit).norm();
    } else {
        out.extrapolated_residual = std::numeric_limits<double>::infinity();
    }
    out.limit = limit;
    out.converged = out.monotone && out.extrapolated_residual <= limit_tol;
    return out;
}

}  // namespace bethe::abba
