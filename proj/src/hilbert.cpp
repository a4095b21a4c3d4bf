#include "bethe/hilbert.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace bethe::hilbert {

namespace {

void check_sites(int n_sites, int cap) {
    if (n_sites < 1 || n_sites > cap) {
        throw ArgumentError("chain length " + std::to_string(n_sites) + " outside [1, " +
                            std::to_string(cap) + "]");
    }
}

// 2x2 Pauli matrix in the (up, down) local basis.
Eigen::Matrix2cd pauli(int axis) {
    Eigen::Matrix2cd s;
    switch (axis) {
        case 1: s << 0, 1, 1, 0; break;
        case 2: s << 0, -kI, kI, 0; break;
        case 3: s << 1, 0, 0, -1; break;
        default: throw ArgumentError("Pauli axis must be 1, 2 or 3, got " + std::to_string(axis));
    }
    return s;
}

}  // namespace

std::uint64_t full_dim(int n_sites) { return std::uint64_t{1} << n_sites; }

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

StateVector vacuum(int n_sites) {
    check_sites(n_sites, kMaxPauliSites);
    StateVector v = StateVector::Zero(static_cast<Eigen::Index>(full_dim(n_sites)));
    v(0) = 1.0;
    return v;
}

OperatorMatrix pauli_site(int axis, int k, int n_sites) {
    check_sites(n_sites, kMaxPauliSites);
    if (k < 1 || k > n_sites) {
        throw ArgumentError("site " + std::to_string(k) + " outside [1, " + std::to_string(n_sites) + "]");
    }
    const Eigen::Matrix2cd s = pauli(axis);
    const auto dim = full_dim(n_sites);
    const auto mask = site_mask(k, n_sites);
    OperatorMatrix m = OperatorMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t col = 0; col < dim; ++col) {
        const int in = site_bit(col, k, n_sites);
        for (int out = 0; out < 2; ++out) {
            const cplx amp = s(out, in);
            if (amp == cplx{}) continue;
            const std::uint64_t row = out ? (col | mask) : (col & ~mask);
            m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = amp;
        }
    }
    return m;
}

OperatorMatrix hamiltonian(int n_sites, double coupling, int max_sites) {
    if (n_sites < 2) throw ArgumentError("Hamiltonian needs N >= 2");
    check_sites(n_sites, max_sites);
    const auto dim = static_cast<Eigen::Index>(full_dim(n_sites));
    OperatorMatrix h = OperatorMatrix::Zero(dim, dim);
    for (int k = 1; k <= n_sites; ++k) {
        const int next = k % n_sites + 1;
        for (int a = 1; a <= 3; ++a) h += pauli_site(a, k, n_sites) * pauli_site(a, next, n_sites);
        h -= OperatorMatrix::Identity(dim, dim);
    }
    return h * (coupling / 4.0);
}

int magnon_count(std::uint64_t b) { return std::popcount(b); }

std::vector<std::uint64_t> sector_basis(int n_sites, int ell) {
    check_sites(n_sites, kMaxSectorSites);
    if (ell < 0 || ell > n_sites) {
        throw ArgumentError("magnon number " + std::to_string(ell) + " outside [0, N]");
    }
    std::vector<std::uint64_t> out;
    out.reserve(binomial(n_sites, ell));
    for (std::uint64_t b = 0; b < full_dim(n_sites); ++b) {
        if (magnon_count(b) == ell) out.push_back(b);
    }
    return out;
}

Eigen::MatrixXd sector_hamiltonian(int n_sites, int ell, double coupling, std::size_t max_dim) {
    if (n_sites < 2) throw ArgumentError("Hamiltonian needs N >= 2");
    const auto basis = sector_basis(n_sites, ell);
    if (basis.size() > max_dim) {
        throw ArgumentError("sector dimension " + std::to_string(basis.size()) + " exceeds cap " +
                            std::to_string(max_dim));
    }
    const auto dim = static_cast<Eigen::Index>(basis.size());
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const std::uint64_t b = basis[static_cast<std::size_t>(col)];
        for (int k = 1; k <= n_sites; ++k) {
            const int next = k % n_sites + 1;
            if (site_bit(b, k, n_sites) == site_bit(b, next, n_sites)) continue;
            // antiparallel bond: (J/2)(swap - 1)
            h(col, col) -= coupling / 2.0;
            const std::uint64_t swapped = b ^ site_mask(k, n_sites) ^ site_mask(next, n_sites);
            const auto it = std::lower_bound(basis.begin(), basis.end(), swapped);
            h(static_cast<Eigen::Index>(it - basis.begin()), col) += coupling / 2.0;
        }
    }
    return h;
}

StateVector apply_hamiltonian(const StateVector& v, int n_sites, double coupling) {
    const auto dim = full_dim(n_sites);
    if (static_cast<std::uint64_t>(v.size()) != dim) throw ArgumentError("vector size does not match 2^N");
    StateVector out = StateVector::Zero(v.size());
    for (std::uint64_t b = 0; b < dim; ++b) {
        const cplx amp = v(static_cast<Eigen::Index>(b));
        if (amp == cplx{}) continue;
        for (int k = 1; k <= n_sites; ++k) {
            const int next = k % n_sites + 1;
            if (site_bit(b, k, n_sites) == site_bit(b, next, n_sites)) continue;
            out(static_cast<Eigen::Index>(b)) -= 0.5 * coupling * amp;
            const std::uint64_t swapped = b ^ site_mask(k, n_sites) ^ site_mask(next, n_sites);
            out(static_cast<Eigen::Index>(swapped)) += 0.5 * coupling * amp;
        }
    }
    return out;
}

OperatorMatrix cyclic_shift(int n_sites) {
    check_sites(n_sites, kMaxFullSites);
    const auto dim = full_dim(n_sites);
    OperatorMatrix u = OperatorMatrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::uint64_t b = 0; b < dim; ++b) {
        // spin on site k moves to site k+1 (site N wraps to site 1)
        std::uint64_t shifted = 0;
        for (int k = 1; k <= n_sites; ++k) {
            if (site_bit(b, k, n_sites)) shifted |= site_mask(k % n_sites + 1, n_sites);
        }
        u(static_cast<Eigen::Index>(shifted), static_cast<Eigen::Index>(b)) = 1.0;
    }
    return u;
}

StateVector apply_total_raising(const StateVector& v, int n_sites) {
    const auto dim = full_dim(n_sites);
    if (static_cast<std::uint64_t>(v.size()) != dim) throw ArgumentError("vector size does not match 2^N");
    StateVector out = StateVector::Zero(v.size());
    for (std::uint64_t b = 0; b < dim; ++b) {
        for (int k = 1; k <= n_sites; ++k) {
            if (site_bit(b, k, n_sites) == 1) {
                out(static_cast<Eigen::Index>(b & ~site_mask(k, n_sites))) += v(static_cast<Eigen::Index>(b));
            }
        }
    }
    return out;
}

EigenSystem eig_hermitian(const OperatorMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw ArgumentError("eig_hermitian needs a square matrix");
    const double scale = m.size() ? m.cwiseAbs().maxCoeff() : 0.0;
    const double asym = m.size() ? (m - m.adjoint()).cwiseAbs().maxCoeff() : 0.0;
    if (asym > 1e-12 * std::max(scale, 1e-300)) {
        throw PreconditionError("eig_hermitian: matrix not Hermitian (max |M - M^H| = " +
                                std::to_string(asym) + ")");
    }
    Eigen::SelfAdjointEigenSolver<OperatorMatrix> solver(m);
    if (solver.info() != Eigen::Success) throw ConsistencyError("eigensolver did not converge");
    EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
    const double norm2 = out.values.size() ? out.values.cwiseAbs().maxCoeff() : 0.0;
    for (Eigen::Index j = 0; j < out.values.size(); ++j) {
        const double res = (m * out.vectors.col(j) - out.values(j) * out.vectors.col(j)).norm();
        if (res > tol * std::max(norm2, 1.0)) {
            throw ConsistencyError("eig_hermitian residual " + std::to_string(res) + " above tolerance");
        }
    }
    return out;
}

Eigen::VectorXd eigvals_symmetric(const Eigen::MatrixXd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw ConsistencyError("eigensolver did not converge");
    return solver.eigenvalues();
}

std::string to_string(SpectrumSource s) {
    switch (s) {
        case SpectrumSource::exact_diag: return "exact_diag";
        case SpectrumSource::regular_bethe: return "regular_bethe";
        case SpectrumSource::physical_singular: return "physical_singular";
    }
    return "exact_diag";
}

SpectrumSource spectrum_source_from_string(const std::string& s) {
    if (s == "exact_diag") return SpectrumSource::exact_diag;
    if (s == "regular_bethe") return SpectrumSource::regular_bethe;
    if (s == "physical_singular") return SpectrumSource::physical_singular;
    throw ArgumentError("unknown spectrum source '" + s + "'");
}

double default_merge_tol(const std::vector<double>& eigs) {
    double amax = 1.0;
    for (double e : eigs) amax = std::max(amax, std::abs(e));
    return 1e-8 * amax;
}

std::vector<SpectrumEntry> spectrum_with_multiplicities(const std::vector<double>& eigs, double merge_tol,
                                                        SpectrumSource source, int sector) {
    std::vector<SpectrumEntry> out;
    double run_sum = 0.0;
    for (std::size_t i = 0; i < eigs.size(); ++i) {
        if (!out.empty() && std::abs(eigs[i] - eigs[i - 1]) <= merge_tol) {
            auto& last = out.back();
            ++last.multiplicity;
            run_sum += eigs[i];
            last.energy = run_sum / last.multiplicity;
            continue;
        }
        run_sum = eigs[i];
        out.push_back({eigs[i], 1, sector, source});
    }
    return out;
}

std::vector<double> full_spectrum_by_sectors(int n_sites, double coupling) {
    std::vector<double> all;
    for (int ell = 0; ell <= n_sites; ++ell) {
        const auto vals = eigvals_symmetric(sector_hamiltonian(n_sites, ell, coupling));
        all.insert(all.end(), vals.begin(), vals.end());
    }
    std::sort(all.begin(), all.end());
    return all;
}

}  // namespace bethe::hilbert
