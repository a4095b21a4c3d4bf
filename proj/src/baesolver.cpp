#include "bethe/baesolver.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_complex.hpp>

#include "bethe/hilbert.hpp"

namespace bethe::bae {

namespace {

using qcplx = boost::multiprecision::cpp_complex_quad;

constexpr double kClusterTol = 1e-4;
constexpr double kRoundoffFloor = 1e-8;

// P_k = (l_k + i/2)^power prod_z (l_k - z) prod_{j != k} (l_k - l_j - i)
// Q_k = (l_k - i/2)^power prod_z (l_k - z) prod_{j != k} (l_k - l_j + i)
// The regular system has power N and no extra zeros. With i/2 and -i/2 held
// fixed, the pair's factors cancel down to power N - 1 and one extra zero each.
struct PolySystem {
    int power = 0;
    std::vector<cplx> p_zeros;
    std::vector<cplx> q_zeros;
};

PolySystem regular_system(int n_sites) { return {n_sites, {}, {}}; }

PolySystem reduced_system(int n_sites) { return {n_sites - 1, {cplx{0.0, 1.5}}, {cplx{0.0, -1.5}}}; }

template <class C>
struct Evaluation {
    std::vector<C> f;
    std::vector<double> scale;  // |P_k| + |Q_k|
    std::vector<C> jac;         // row-major l x l
};

template <class C>
double magnitude(const C& z) {
    return static_cast<double>(abs(z));
}

template <>
double magnitude<cplx>(const cplx& z) {
    return std::abs(z);
}

// Value and gradient of a product of linear factors; prefix/suffix products
// avoid dividing by a vanishing factor. dep[m] is the index of the other root
// a pair factor depends on (with derivative -1), or -1.
template <class C>
void product_with_gradient(const std::vector<C>& fs, const std::vector<int>& dep, C& value, C& d_own,
                           std::vector<std::pair<int, C>>& d_other) {
    const std::size_t m = fs.size();
    std::vector<C> prefix(m + 1, C(1.0)), suffix(m + 1, C(1.0));
    for (std::size_t i = 0; i < m; ++i) prefix[i + 1] = prefix[i] * fs[i];
    for (std::size_t i = m; i-- > 0;) suffix[i] = suffix[i + 1] * fs[i];
    value = prefix[m];
    d_own = C(0.0);
    d_other.clear();
    for (std::size_t i = 0; i < m; ++i) {
        const C others = prefix[i] * suffix[i + 1];
        d_own += others;
        if (dep[i] >= 0) d_other.emplace_back(dep[i], -others);
    }
}

template <class C>
Evaluation<C> evaluate(const PolySystem& sys, const std::vector<C>& x) {
    const std::size_t l = x.size();
    Evaluation<C> ev{std::vector<C>(l), std::vector<double>(l), std::vector<C>(l * l, C(0.0))};
    const C half_i(0.0, 0.5);
    const C i_unit(0.0, 1.0);
    C d_own;
    std::vector<std::pair<int, C>> d_other;
    std::vector<C> fs;
    std::vector<int> dep;
    for (std::size_t k = 0; k < l; ++k) {
        const C& lk = x[k];
        C values[2];
        for (int side = 0; side < 2; ++side) {
            const double sign = side == 0 ? 1.0 : -1.0;  // P uses -i in pair factors, Q uses +i
            fs.clear();
            dep.clear();
            for (int p = 0; p < sys.power; ++p) {
                fs.push_back(lk + sign * half_i);
                dep.push_back(-1);
            }
            for (const cplx z : side == 0 ? sys.p_zeros : sys.q_zeros) {
                fs.push_back(lk - C(z.real(), z.imag()));
                dep.push_back(-1);
            }
            for (std::size_t j = 0; j < l; ++j) {
                if (j == k) continue;
                fs.push_back(lk - x[j] - sign * i_unit);
                dep.push_back(static_cast<int>(j));
            }
            product_with_gradient(fs, dep, values[side], d_own, d_other);
            ev.jac[k * l + k] += sign * d_own;
            for (const auto& [j, d] : d_other) ev.jac[k * l + static_cast<std::size_t>(j)] += sign * d;
        }
        ev.f[k] = values[0] - values[1];
        ev.scale[k] = magnitude(values[0]) + magnitude(values[1]);
    }
    return ev;
}

template <class C>
double relative_residual(const Evaluation<C>& ev) {
    double r = 0.0;
    for (std::size_t k = 0; k < ev.f.size(); ++k) {
        if (ev.scale[k] == 0.0) continue;
        r = std::max(r, magnitude(ev.f[k]) / ev.scale[k]);
    }
    return r;
}

template <class C>
double weighted_norm(const std::vector<C>& f, const std::vector<double>& weights) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double a = magnitude(f[k]) * weights[k];
        s += a * a;
    }
    return std::sqrt(s);
}

// Solves jac * step = rhs by Gaussian elimination with partial pivoting.
// Returns false when a pivot vanishes relative to the row scale.
template <class C>
bool solve_linear(std::vector<C> a, std::vector<C> rhs, std::vector<C>& step) {
    const std::size_t n = rhs.size();
    double amax = 0.0;
    for (const C& v : a) amax = std::max(amax, magnitude(v));
    if (amax == 0.0) return false;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        double best = magnitude(a[c * n + c]);
        for (std::size_t r = c + 1; r < n; ++r) {
            const double v = magnitude(a[r * n + c]);
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best <= 1e-300 * amax || best == 0.0) return false;
        if (piv != c) {
            for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[piv * n + k]);
            std::swap(rhs[c], rhs[piv]);
        }
        for (std::size_t r = c + 1; r < n; ++r) {
            const C factor = a[r * n + c] / a[c * n + c];
            if (factor == C(0.0)) continue;
            for (std::size_t k = c; k < n; ++k) a[r * n + k] -= factor * a[c * n + k];
            rhs[r] -= factor * rhs[c];
        }
    }
    step.assign(n, C(0.0));
    for (std::size_t c = n; c-- > 0;) {
        C s = rhs[c];
        for (std::size_t k = c + 1; k < n; ++k) s -= a[c * n + k] * step[k];
        step[c] = s / a[c * n + c];
    }
    return true;
}

bool has_coincident(std::span<const cplx> x, double tol) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j) {
            if (std::abs(x[i] - x[j]) <= tol) return true;
        }
    }
    return false;
}

bool near(cplx a, cplx b, double tol) { return std::abs(a - b) <= tol; }

cplx to_double_any(const cplx& z) { return z; }
cplx to_double_any(const qcplx& z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

std::vector<qcplx> to_quad(std::span<const cplx> x) {
    std::vector<qcplx> out;
    out.reserve(x.size());
    for (const cplx z : x) out.emplace_back(z.real(), z.imag());
    return out;
}

struct NewtonState {
    bool converged = false;
    std::string reason;
    int iterations = 0;
    double residual = 0.0;
};

// Damped Newton. The merit function is the residual vector weighted by the
// scales at the current iterate, for which the Newton step is a descent direction.
template <class C>
NewtonState newton_loop(const PolySystem& sys, std::vector<C>& x, int max_iters, double tol, double tol_equal) {
    NewtonState st;
    Evaluation<C> ev = evaluate(sys, x);
    std::vector<C> rhs(x.size()), step, trial(x.size());
    for (int iter = 0;; ++iter) {
        st.residual = relative_residual(ev);
        st.iterations = iter;
        if (!std::isfinite(st.residual)) {
            st.reason = "non-finite residual";
            return st;
        }
        if (st.residual <= tol) {
            st.converged = true;
            // Quadratic convergence makes a few more steps nearly free; keep
            // them only while they help.
            for (int polish = 0; polish < 3 && st.residual > 0.0; ++polish) {
                for (std::size_t k = 0; k < x.size(); ++k) rhs[k] = -ev.f[k];
                if (!solve_linear(ev.jac, rhs, step)) break;
                for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] + step[k];
                Evaluation<C> polished = evaluate(sys, trial);
                const double r = relative_residual(polished);
                if (!(r < st.residual)) break;
                x = trial;
                ev = std::move(polished);
                st.residual = r;
                ++st.iterations;
            }
            return st;
        }
        if (iter >= max_iters) {
            st.reason = "iteration limit";
            return st;
        }
        for (std::size_t k = 0; k < x.size(); ++k) rhs[k] = -ev.f[k];
        if (!solve_linear(ev.jac, rhs, step)) {
            st.reason = "singular Jacobian";
            return st;
        }
        std::vector<double> weights(ev.scale.size());
        for (std::size_t k = 0; k < weights.size(); ++k) weights[k] = ev.scale[k] > 0.0 ? 1.0 / ev.scale[k] : 1.0;
        const double merit = weighted_norm(ev.f, weights);

        double t = 1.0;
        bool accepted = false;
        Evaluation<C> trial_ev;
        for (int halving = 0; halving <= 20; ++halving, t *= 0.5) {
            for (std::size_t k = 0; k < x.size(); ++k) trial[k] = x[k] + t * step[k];
            trial_ev = evaluate(sys, trial);
            if (weighted_norm(trial_ev.f, weights) < merit) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            st.reason = "line search stalled";
            return st;
        }
        x = trial;
        ev = std::move(trial_ev);
        std::vector<cplx> xd;
        for (const C& z : x) {
            const cplx zd = to_double_any(z);
            if (!std::isfinite(zd.real()) || !std::isfinite(zd.imag()) || std::abs(zd) > 1e4) {
                st.residual = relative_residual(ev);
                st.reason = "iterate escaped to infinity";
                return st;
            }
            xd.push_back(zd);
        }
        if (has_coincident(xd, tol_equal)) {
            st.residual = relative_residual(ev);
            st.reason = "roots coalesced";
            return st;
        }
    }
}

NewtonResult run_newton(const PolySystem& sys, std::span<const cplx> start, int n_sites, const SolverConfig& cfg) {
    if (has_coincident(start, cfg.tol_equal)) {
        throw PreconditionError("newton_refine: start has coincident entries (Jacobian singular by symmetry)");
    }
    NewtonResult out;
    out.roots.n = n_sites;
    out.roots.ell = static_cast<int>(start.size());
    std::vector<cplx> x(start.begin(), start.end());
    NewtonState st = newton_loop(sys, x, cfg.max_newton_iters, cfg.newton_tol, cfg.tol_equal);

    // Nearly exact strings (l_j - l_k close to i) put the double-precision
    // floor of the relative residual above newton_tol. Finish those in quad
    // precision; the residual reported is that of the rounded roots.
    if (!st.converged && st.reason == "line search stalled" && st.residual <= kRoundoffFloor) {
        std::vector<qcplx> xq = to_quad(x);
        const NewtonState sq = newton_loop(sys, xq, 40, cfg.newton_tol * cfg.newton_tol, cfg.tol_equal);
        if (sq.converged) {
            for (std::size_t k = 0; k < x.size(); ++k) x[k] = to_double_any(xq[k]);
            st.converged = true;
            st.reason.clear();
            st.iterations += sq.iterations;
            st.residual = relative_residual(evaluate(sys, to_quad(x)));
            out.extended_precision = true;
        }
    }
    out.converged = st.converged;
    out.reason = st.reason;
    out.iterations = st.iterations;
    out.roots.roots = x;
    out.roots.residual = st.residual;
    return out;
}

// Pair each root with its closest conjugate partner and average, so that the
// set is exactly conjugation symmetric. Returns false when no consistent
// pairing exists within tol.
bool symmetrize_conjugate(std::vector<cplx>& x, double tol) {
    const std::size_t l = x.size();
    std::vector<bool> used(l, false);
    std::vector<cplx> out;
    out.reserve(l);
    for (std::size_t i = 0; i < l; ++i) {
        if (used[i]) continue;
        if (std::abs(x[i].imag()) <= tol) {
            used[i] = true;
            out.emplace_back(x[i].real(), 0.0);
            continue;
        }
        std::size_t best = l;
        double best_d = tol;
        for (std::size_t j = 0; j < l; ++j) {
            if (used[j] || j == i) continue;
            const double d = std::abs(x[j] - std::conj(x[i]));
            if (d <= best_d) {
                best_d = d;
                best = j;
            }
        }
        if (best == l) return false;
        used[i] = used[best] = true;
        const cplx avg = 0.5 * (x[i] + std::conj(x[best]));
        out.push_back(avg);
        out.push_back(std::conj(avg));
    }
    x = out;
    return true;
}

struct Seeder {
    std::mt19937_64 rng;

    double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }
    int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

    std::vector<cplx> random_real(int l) {
        std::vector<cplx> x;
        for (int i = 0; i < l; ++i) x.emplace_back(uniform(-2.0, 2.0), 0.0);
        return x;
    }

    // Alternates between unconstrained points of the box and conjugation
    // symmetric ones; the Newton map preserves the latter symmetry.
    std::vector<cplx> random_complex(int l, bool symmetric) {
        std::vector<cplx> x;
        if (!symmetric) {
            for (int i = 0; i < l; ++i) x.emplace_back(uniform(-2.0, 2.0), uniform(-1.5, 1.5));
            return x;
        }
        const int pairs = uniform_int(0, l / 2);
        for (int p = 0; p < pairs; ++p) {
            const cplx z(uniform(-2.0, 2.0), uniform(0.05, 1.5));
            x.push_back(z);
            x.push_back(std::conj(z));
        }
        while (static_cast<int>(x.size()) < l) x.emplace_back(uniform(-2.0, 2.0), 0.0);
        return x;
    }

    // Perturbed 2- and 3-strings centered on the real axis, padded with reals.
    std::vector<cplx> strings(int l) {
        std::vector<cplx> x;
        while (static_cast<int>(x.size()) < l) {
            const int room = l - static_cast<int>(x.size());
            const int len = std::min(room, uniform_int(1, 3));
            const double center = uniform(-1.5, 1.5);
            if (len == 1) {
                x.emplace_back(center, 0.0);
            } else if (len == 2) {
                const double y = 0.5 + uniform(-0.15, 0.15);
                x.emplace_back(center, y);
                x.emplace_back(center, -y);
            } else {
                const double y = 1.0 + uniform(-0.2, 0.2);
                x.emplace_back(center + uniform(-0.05, 0.05), 0.0);
                x.emplace_back(center, y);
                x.emplace_back(center, -y);
            }
        }
        return x;
    }

    std::vector<cplx> symmetric_pairs(int l) {
        std::vector<cplx> x;
        if (l % 2 == 1) x.emplace_back(uniform(-0.1, 0.1), 0.0);
        while (static_cast<int>(x.size()) < l) {
            const double v = uniform(0.02, 2.0);
            x.emplace_back(v, 0.0);
            x.emplace_back(-v, 0.0);
        }
        return x;
    }
};

std::vector<std::vector<cplx>> make_seeds(int count, const SolverConfig& cfg, std::uint64_t salt_a,
                                          std::uint64_t salt_b) {
    std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                      static_cast<std::uint32_t>(salt_a), static_cast<std::uint32_t>(salt_b)};
    Seeder s{std::mt19937_64(seq)};
    std::vector<std::vector<cplx>> seeds;
    if (count == 0) return seeds;
    for (int i = 0; i < cfg.n_random_starts; ++i) {
        if (cfg.uses(Seed::random_real)) seeds.push_back(s.random_real(count));
        if (cfg.uses(Seed::random_complex)) seeds.push_back(s.random_complex(count, i % 2 == 1));
        if (cfg.uses(Seed::string_hypothesis)) seeds.push_back(s.strings(count));
        if (cfg.uses(Seed::symmetric_pairs)) seeds.push_back(s.symmetric_pairs(count));
    }
    return seeds;
}

bool approaches_singular_pair(std::span<const cplx> x, double tol) {
    bool up = false, down = false;
    for (const cplx z : x) {
        up = up || near(z, kHalfI, tol);
        down = down || near(z, -kHalfI, tol);
    }
    return up && down;
}

bool touches_pole(std::span<const cplx> x, double tol) {
    for (const cplx z : x) {
        if (near(z, kHalfI, tol) || near(z, -kHalfI, tol)) return true;
    }
    return false;
}

// Lexicographic descending comparison on canonical root lists.
bool canonical_before(const RootSet& a, const RootSet& b) {
    if (a.classification != b.classification) return a.classification < b.classification;
    const std::size_t m = std::min(a.roots.size(), b.roots.size());
    for (std::size_t i = 0; i < m; ++i) {
        const cplx u = a.roots[i], v = b.roots[i];
        if (std::abs(u.real() - v.real()) > 1e-9) return u.real() > v.real();
        if (std::abs(u.imag() - v.imag()) > 1e-9) return u.imag() > v.imag();
    }
    return a.roots.size() < b.roots.size();
}

}  // namespace

std::string to_string(Classification c) {
    switch (c) {
        case Classification::regular: return "regular";
        case Classification::physical_singular: return "physical_singular";
        case Classification::nonphysical_singular: return "nonphysical_singular";
        case Classification::strange: return "strange";
        case Classification::unclassified: return "unclassified";
    }
    return "unclassified";
}

Classification classification_from_string(const std::string& s) {
    for (auto c : {Classification::regular, Classification::physical_singular, Classification::nonphysical_singular,
                   Classification::strange, Classification::unclassified}) {
        if (to_string(c) == s) return c;
    }
    throw ArgumentError("unknown classification '" + s + "'");
}

double bae_residual(std::span<const cplx> roots, int n_sites, double tol_equal) {
    if (has_coincident(roots, tol_equal)) throw PreconditionError("bae_residual: coincident roots (strange set)");
    return relative_residual(evaluate(regular_system(n_sites), to_quad(roots)));
}

double reduced_residual(std::span<const cplx> free_roots, int n_sites) {
    return relative_residual(evaluate(reduced_system(n_sites), to_quad(free_roots)));
}

double bae_residual(const RootSet& set, const SolverConfig& cfg) {
    if (set.classification == Classification::strange || has_coincident(set.roots, cfg.tol_equal)) {
        throw PreconditionError("bae_residual: strange root set");
    }
    std::vector<cplx> free;
    bool up = false, down = false;
    for (const cplx z : set.roots) {
        if (!up && near(z, kHalfI, cfg.tol_singular)) {
            up = true;
        } else if (!down && near(z, -kHalfI, cfg.tol_singular)) {
            down = true;
        } else {
            free.push_back(z);
        }
    }
    if (up && down) return reduced_residual(free, set.n);
    return bae_residual(set.roots, set.n, cfg.tol_equal);
}

NewtonResult newton_refine(std::span<const cplx> start, int n_sites, const SolverConfig& cfg) {
    return run_newton(regular_system(n_sites), start, n_sites, cfg);
}

NewtonResult newton_refine_reduced(std::span<const cplx> start, int n_sites, const SolverConfig& cfg) {
    return run_newton(reduced_system(n_sites), start, n_sites, cfg);
}

NwConstants nw_constants(std::span<const cplx> roots, int n_sites, double tol_singular) {
    std::vector<cplx> free;
    bool up = false, down = false;
    for (const cplx z : roots) {
        if (!up && near(z, kHalfI, tol_singular)) {
            up = true;
        } else if (!down && near(z, -kHalfI, tol_singular)) {
            down = true;
        } else {
            free.push_back(z);
        }
    }
    if (!(up && down)) throw PreconditionError("nw_constants: root set has no {i/2, -i/2} pair");
    const cplx i_pow = std::pow(kI, n_sites + 1);
    cplx c1 = -2.0 / i_pow;
    cplx c2 = 2.0 * i_pow;
    for (const cplx z : free) {
        if (near(z, -kHalfI, tol_singular) || near(z, kHalfI, tol_singular)) {
            throw PoleError("nw_constants: a free root sits at +-i/2");
        }
        c1 *= (z - 1.5 * kI) / (z + kHalfI);
        c2 *= (z + 1.5 * kI) / (z - kHalfI);
    }
    return {c1, c2};
}

NwConstants nw_constants(const RootSet& set, double tol_singular) {
    return nw_constants(set.roots, set.n, tol_singular);
}

bool constants_agree(const NwConstants& c) {
    const double scale = std::max({1.0, std::abs(c.c1), std::abs(c.c2)});
    return std::abs(c.c1 - c.c2) <= 1e-8 * scale;
}

void canonicalize(RootSet& set, double tol_singular) {
    std::vector<cplx> free;
    bool up = false, down = false;
    for (const cplx z : set.roots) {
        if (!up && near(z, kHalfI, tol_singular)) {
            up = true;
        } else if (!down && near(z, -kHalfI, tol_singular)) {
            down = true;
        } else {
            free.push_back(z);
        }
    }
    std::sort(free.begin(), free.end(), [](cplx a, cplx b) {
        if (a.real() != b.real()) return a.real() > b.real();
        return a.imag() > b.imag();
    });
    if (up && down) {
        free.insert(free.begin(), {kHalfI, -kHalfI});
    } else {
        if (up) free.insert(free.begin(), kHalfI);
        if (down) free.insert(free.begin(), -kHalfI);
        std::sort(free.begin(), free.end(), [](cplx a, cplx b) {
            if (a.real() != b.real()) return a.real() > b.real();
            return a.imag() > b.imag();
        });
    }
    set.roots = free;
}

RootSet classify(RootSet set, const SolverConfig& cfg) {
    set.ell = static_cast<int>(set.roots.size());
    if (has_coincident(set.roots, cfg.tol_equal)) {
        set.classification = Classification::strange;
        return set;
    }
    if (approaches_singular_pair(set.roots, cfg.tol_singular)) {
        canonicalize(set, cfg.tol_singular);
        set.classification = constants_agree(nw_constants(set, cfg.tol_singular))
                                 ? Classification::physical_singular
                                 : Classification::nonphysical_singular;
        return set;
    }
    canonicalize(set, cfg.tol_singular);
    set.classification = Classification::regular;
    return set;
}

bool same_multiset(std::span<const cplx> a, std::span<const cplx> b, double tol) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const cplx z : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!used[j] && std::abs(z - b[j]) <= tol) {
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

bool conjugation_closed(std::span<const cplx> roots, double tol) {
    std::vector<cplx> conj;
    conj.reserve(roots.size());
    for (const cplx z : roots) conj.push_back(std::conj(z));
    return same_multiset(roots, conj, tol);
}

SectorSolutions solve_sector(int n_sites, int ell, const SolverConfig& cfg) {
    if (n_sites < 1) throw ArgumentError("chain length must be positive");
    if (ell < 0 || 2 * ell > n_sites) throw ArgumentError("magnon number must satisfy 0 <= ell <= N/2");
    SectorSolutions out;
    out.n = n_sites;
    out.ell = ell;
    out.target = hilbert::binomial(n_sites, ell) - hilbert::binomial(n_sites, ell - 1);

    auto add_unique = [&](RootSet candidate) {
        for (const auto& s : out.solutions) {
            if (same_multiset(s.roots, candidate.roots, cfg.dedup_tol)) return;
        }
        out.solutions.push_back(std::move(candidate));
    };

    if (ell == 0) {
        RootSet vac{n_sites, 0, {}, Classification::regular, 0.0};
        out.solutions.push_back(vac);
        out.regular = 1;
        return out;
    }

    // Accept a converged iterate: enforce exact conjugation symmetry, polish,
    // and keep it if it still converges to the same multiset.
    auto accept = [&](std::vector<cplx> x, bool reduced) -> std::optional<std::vector<cplx>> {
        if (!conjugation_closed(x, 1e-6)) return std::nullopt;
        std::vector<cplx> sym = x;
        if (!symmetrize_conjugate(sym, 1e-6)) return std::nullopt;
        if (has_coincident(sym, cfg.tol_equal)) return std::nullopt;
        const auto polished = reduced ? newton_refine_reduced(sym, n_sites, cfg) : newton_refine(sym, n_sites, cfg);
        if (!polished.converged) return std::nullopt;
        std::vector<cplx> y = polished.roots.roots;
        for (cplx& z : y) {
            if (std::abs(z.imag()) <= cfg.dedup_tol) z = {z.real(), 0.0};
        }
        if (!same_multiset(y, x, 1e-5)) return std::nullopt;
        return y;
    };

    // Regular branch.
    for (const auto& start : make_seeds(ell, cfg, static_cast<std::uint64_t>(n_sites), static_cast<std::uint64_t>(ell))) {
        if (has_coincident(start, cfg.tol_equal)) continue;
        ++out.starts;
        const auto res = newton_refine(start, n_sites, cfg);
        if (!res.converged) {
            ++out.diverged;
            if (res.reason == "roots coalesced") ++out.strange;
            continue;
        }
        // The polynomial form admits spurious solutions with repeated roots;
        // Newton approaches them only linearly and stops at a tight cluster.
        if (has_coincident(res.roots.roots, kClusterTol)) {
            ++out.strange;
            continue;
        }
        // Iterates drifting into {i/2, -i/2} belong to the singular branch below.
        if (approaches_singular_pair(res.roots.roots, 1e-8) || touches_pole(res.roots.roots, 1e-6)) continue;
        const auto y = accept(res.roots.roots, false);
        if (!y) continue;
        RootSet set{n_sites, ell, *y, Classification::unclassified, bae_residual(*y, n_sites, cfg.tol_equal)};
        add_unique(classify(set, cfg));
    }

    // Singular branch: lambda_1 = i/2, lambda_2 = -i/2 fixed.
    if (ell >= 2) {
        auto push_singular = [&](const std::vector<cplx>& free) {
            RootSet set{n_sites, ell, {kHalfI, -kHalfI}, Classification::unclassified, reduced_residual(free, n_sites)};
            set.roots.insert(set.roots.end(), free.begin(), free.end());
            add_unique(classify(set, cfg));
        };
        const int free_count = ell - 2;
        if (free_count == 0) {
            push_singular({});
        } else {
            for (const auto& start : make_seeds(free_count, cfg, static_cast<std::uint64_t>(n_sites) + 1000,
                                                static_cast<std::uint64_t>(ell))) {
                if (has_coincident(start, cfg.tol_equal)) continue;
                ++out.starts;
                const auto res = newton_refine_reduced(start, n_sites, cfg);
                if (!res.converged) {
                    ++out.diverged;
                    if (res.reason == "roots coalesced") ++out.strange;
                    continue;
                }
                if (has_coincident(res.roots.roots, kClusterTol)) {
                    ++out.strange;
                    continue;
                }
                if (touches_pole(res.roots.roots, 1e-3)) continue;
                const auto y = accept(res.roots.roots, true);
                if (!y) continue;
                push_singular(*y);
            }
        }
    }

    std::sort(out.solutions.begin(), out.solutions.end(), canonical_before);
    for (const auto& s : out.solutions) {
        switch (s.classification) {
            case Classification::regular: ++out.regular; break;
            case Classification::physical_singular: ++out.physical_singular; break;
            case Classification::nonphysical_singular: ++out.nonphysical_singular; break;
            case Classification::strange: break;
            case Classification::unclassified: break;
        }
    }
    return out;
}

}  // namespace bethe::bae
