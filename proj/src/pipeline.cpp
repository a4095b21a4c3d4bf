#include "bethe/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>

#include "bethe/abba.hpp"
#include "bethe/rigged.hpp"

namespace bethe::pipeline {

namespace {

using hilbert::SpectrumEntry;
using hilbert::SpectrumSource;

double scale(double e) { return std::max(1.0, std::abs(e)); }

SolutionRecord make_record(const bae::RootSet& set, int n_sites) {
    SolutionRecord rec;
    rec.roots = set;
    const int ell = static_cast<int>(set.roots.size());
    if (set.classification == bae::Classification::regular) {
        rec.energy = energy::energy_regular(set);
        rec.logderiv = energy::energy_logderiv(set.roots, n_sites);
        rec.multiplicity = n_sites - 2 * ell + 1;
        return rec;
    }
    if (!set.is_singular()) return rec;

    SingularCheck chk;
    const auto c = bae::nw_constants(set);
    chk.c1 = c.c1;
    chk.c2 = c.c2;
    chk.constants_agree = bae::constants_agree(c);
    const double target = energy::energy_nw(set).energy;
    const auto conv = abba::nw_convergence(set.roots, n_sites, c.c1, abba::Scheme::c1, target);
    chk.vector_converged = conv.converged;
    chk.final_residual = conv.residuals.back();
    chk.extrapolated_residual = conv.extrapolated_residual;
    chk.naive_energy =
        energy::energy_logderiv_singular(set.roots, n_sites, 0.0, abba::Scheme::naive).extrapolated.energy;
    rec.singular = chk;
    if (set.classification == bae::Classification::physical_singular) {
        rec.energy = energy::energy_nw(set);
        rec.logderiv = energy::energy_logderiv(set);
        rec.multiplicity = n_sites - 2 * ell + 1;
    }
    return rec;
}

SectorReport solve_one(int n_sites, int ell, const bae::SolverConfig& cfg) {
    const auto sol = bae::solve_sector(n_sites, ell, cfg);
    SectorReport s;
    s.ell = ell;
    s.regular = sol.regular;
    s.physical_singular = sol.physical_singular;
    s.nonphysical_singular = sol.nonphysical_singular;
    s.strange_starts = sol.strange;
    s.starts = sol.starts;
    s.diverged = sol.diverged;
    s.target = sol.target;
    s.rc_count = rigged::enumerate_rcs(n_sites, ell).size();
    s.complete = sol.complete();
    for (const auto& set : sol.solutions) s.solutions.push_back(make_record(set, n_sites));
    return s;
}

bool near_any_level(double e, const std::vector<SpectrumEntry>& levels, double tol) {
    return std::any_of(levels.begin(), levels.end(),
                       [&](const SpectrumEntry& l) { return std::abs(l.energy - e) <= tol; });
}

void sort_levels(std::vector<SpectrumEntry>& v) {
    std::stable_sort(v.begin(), v.end(), [](const SpectrumEntry& a, const SpectrumEntry& b) {
        if (a.energy != b.energy) return a.energy < b.energy;
        return a.sector < b.sector;
    });
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

}  // namespace

std::vector<SpectrumEntry> subtract_levels(const std::vector<SpectrumEntry>& a, const std::vector<SpectrumEntry>& b,
                                           double tol) {
    std::vector<SpectrumEntry> rest = a;
    for (const auto& e : b) {
        int remaining = e.multiplicity;
        for (auto& r : rest) {
            if (remaining == 0) break;
            if (r.multiplicity == 0 || std::abs(r.energy - e.energy) > tol) continue;
            const int take = std::min(remaining, r.multiplicity);
            r.multiplicity -= take;
            remaining -= take;
        }
    }
    std::erase_if(rest, [](const SpectrumEntry& r) { return r.multiplicity == 0; });
    return rest;
}

bool same_levels(const std::vector<SpectrumEntry>& a, const std::vector<SpectrumEntry>& b, double tol) {
    return subtract_levels(a, b, tol).empty() && subtract_levels(b, a, tol).empty();
}

int exit_code(const Audit& audit) {
    if (!audit.count_check) return 2;
    if (!audit.spectral_closure) return 3;
    return audit.all() ? 0 : 1;
}

RunReport run_pipeline(int n_sites, double coupling, const bae::SolverConfig& cfg, int max_sites) {
    if (n_sites < 2 || n_sites > max_sites) {
        throw ArgumentError("chain length must lie in [2, " + std::to_string(max_sites) + "]");
    }
    if (coupling == 0.0 || !std::isfinite(coupling)) throw ArgumentError("coupling J must be finite and nonzero");

    RunReport rep;
    rep.n = n_sites;
    rep.j = coupling;
    rep.seed = cfg.seed;

    std::vector<std::future<SectorReport>> jobs;
    for (int ell = 0; 2 * ell <= n_sites; ++ell) {
        jobs.push_back(std::async(std::launch::async, solve_one, n_sites, ell, cfg));
    }
    const auto eigs = hilbert::full_spectrum_by_sectors(n_sites, 1.0);
    rep.diag_spectrum = hilbert::spectrum_with_multiplicities(eigs, hilbert::default_merge_tol(eigs));
    for (auto& job : jobs) rep.sectors.push_back(job.get());

    Audit& audit = rep.audit;
    audit.count_check = true;
    audit.energy_oracle = true;
    audit.formula_agreement = true;
    audit.physicality_consistency = true;

    for (const auto& s : rep.sectors) {
        rep.rc_counts.push_back(s.rc_count);
        if (!s.complete || s.rc_count != s.target) {
            audit.count_check = false;
            audit.notes.push_back("sector ell=" + std::to_string(s.ell) + ": found " +
                                  std::to_string(s.regular + s.physical_singular) + " of " +
                                  std::to_string(s.target) + " (rc " + std::to_string(s.rc_count) + ")");
        }
        for (const auto& rec : s.solutions) {
            const auto cls = rec.roots.classification;
            if (rec.singular && rec.singular->constants_agree != rec.singular->vector_converged) {
                audit.physicality_consistency = false;
                audit.notes.push_back("sector ell=" + std::to_string(s.ell) +
                                      ": c-compatibility and regularized-vector verdicts differ");
            }
            if (!rec.energy) continue;
            const double e = rec.energy->energy;
            const bool nw = cls == bae::Classification::physical_singular;
            const SpectrumEntry level{e, rec.multiplicity, s.ell,
                                      nw ? SpectrumSource::physical_singular : SpectrumSource::regular_bethe};
            (nw ? rep.recovered_by_nw : rep.bethe_spectrum).push_back(level);

            if (!near_any_level(e, rep.diag_spectrum, nw ? 1e-5 : 1e-7)) {
                audit.energy_oracle = false;
                audit.notes.push_back("energy " + fmt(e) + " (ell=" + std::to_string(s.ell) +
                                      ") is not a diagonalization eigenvalue");
            }
            const double tol = (nw ? 1e-4 : 1e-6) * scale(e);
            if (!rec.energy->valid || !rec.logderiv || !rec.logderiv->valid ||
                std::abs(rec.logderiv->energy - e) > tol) {
                audit.formula_agreement = false;
                audit.notes.push_back("energy " + fmt(e) + " (ell=" + std::to_string(s.ell) +
                                      ") disagrees with its log-derivative value");
            }
        }
    }
    sort_levels(rep.bethe_spectrum);
    sort_levels(rep.recovered_by_nw);
    rep.missing_levels = subtract_levels(rep.diag_spectrum, rep.bethe_spectrum, kClosureTol);
    for (auto& m : rep.missing_levels) m.source = SpectrumSource::exact_diag;

    audit.recovered_subset = subtract_levels(rep.recovered_by_nw, rep.missing_levels, kClosureTol).empty();
    if (!audit.recovered_subset) audit.notes.push_back("a recovered level is not among the missing levels");

    std::vector<SpectrumEntry> combined = rep.bethe_spectrum;
    combined.insert(combined.end(), rep.recovered_by_nw.begin(), rep.recovered_by_nw.end());
    audit.spectral_closure = same_levels(rep.diag_spectrum, combined, kClosureTol);
    if (!audit.spectral_closure) audit.notes.push_back("Bethe and recovered levels do not reproduce the spectrum");
    return rep;
}

}  // namespace bethe::pipeline
