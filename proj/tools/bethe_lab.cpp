// bethe-lab: command-line front end for the XXX chain Bethe ansatz toolkit.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "bethe/baesolver.hpp"
#include "bethe/energy.hpp"
#include "bethe/hilbert.hpp"
#include "bethe/pipeline.hpp"
#include "bethe/plot.hpp"
#include "bethe/report.hpp"
#include "bethe/rigged.hpp"

using namespace bethe;

namespace {

int max_sites() {
    if (const char* env = std::getenv("BETHE_LAB_MAX_N")) {
        try {
            const int v = std::stoi(env);
            if (v >= 2) return v;
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring BETHE_LAB_MAX_N='" << env << "'\n";
    }
    return pipeline::kDefaultMaxSites;
}

void check_n(int n) {
    const int cap = max_sites();
    if (n < 2 || n > cap) {
        throw ArgumentError("--n must lie in [2, " + std::to_string(cap) + "] (raise the cap with BETHE_LAB_MAX_N)");
    }
}

std::string complex_str(cplx z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.9f%+.9fi", z.real(), z.imag());
    return buf;
}

void print_summary(const pipeline::RunReport& r) {
    std::printf("N=%d  J=%g  seed=%llu\n", r.n, r.j, static_cast<unsigned long long>(r.seed));
    for (const auto& s : r.sectors) {
        std::printf("  ell=%d  regular=%d  physical_singular=%d  nonphysical_singular=%d  target=%llu  %s\n", s.ell,
                    s.regular, s.physical_singular, s.nonphysical_singular,
                    static_cast<unsigned long long>(s.target), s.complete ? "complete" : "SHORT");
    }
    std::printf("  missing levels:");
    for (const auto& m : r.missing_levels) std::printf(" %.9g^%d", m.energy, m.multiplicity);
    std::printf("\n  recovered by singular states:");
    for (const auto& m : r.recovered_by_nw) std::printf(" %.9g^%d", m.energy, m.multiplicity);
    const auto& a = r.audit;
    std::printf("\n  audit: count_check=%d spectral_closure=%d recovered_subset=%d energy_oracle=%d "
                "formula_agreement=%d physicality_consistency=%d\n",
                a.count_check, a.spectral_closure, a.recovered_subset, a.energy_oracle, a.formula_agreement,
                a.physicality_consistency);
    for (const auto& n : a.notes) std::printf("  note: %s\n", n.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bethe ansatz toolkit for the periodic spin-1/2 XXX chain"};
    app.require_subcommand(1);

    int n = 4, ell = 1, starts = bae::SolverConfig{}.n_random_starts;
    double j = 1.0;
    std::uint64_t seed = bae::SolverConfig{}.seed;
    std::string out_path, csv_path, in_path;

    auto* run = app.add_subcommand("run", "solve, classify, diagonalize and audit one chain length");
    run->add_option("--n", n, "chain length")->required();
    run->add_option("--j", j, "coupling J")->capture_default_str();
    run->add_option("--seed", seed, "solver seed")->capture_default_str();
    run->add_option("--starts", starts, "random starts per seed family")->capture_default_str();
    run->add_option("--out", out_path, "JSON report path")->required();
    run->add_option("--csv", csv_path, "optional CSV solution table");

    auto* diag = app.add_subcommand("diag", "exact spectrum with multiplicities");
    diag->add_option("--n", n, "chain length")->required();
    diag->add_option("--j", j, "coupling J")->capture_default_str();

    auto* solve = app.add_subcommand("solve", "solve the Bethe equations in one sector");
    solve->add_option("--n", n, "chain length")->required();
    solve->add_option("--ell", ell, "magnon number")->required();
    solve->add_option("--seed", seed, "solver seed")->capture_default_str();
    solve->add_option("--starts", starts, "random starts per seed family")->capture_default_str();

    auto* rc = app.add_subcommand("rc", "enumerate rigged configurations");
    rc->add_option("--n", n, "chain length")->required();
    rc->add_option("--ell", ell, "magnon number")->required();

    auto* plt = app.add_subcommand("plot", "SVG root-plane plots from a JSON report");
    plt->add_option("--in", in_path, "JSON report")->required();
    plt->add_option("--out", out_path, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        bae::SolverConfig cfg;
        cfg.seed = seed;
        cfg.n_random_starts = starts;

        if (*run) {
            check_n(n);
            const auto r = pipeline::run_pipeline(n, j, cfg, max_sites());
            report::write_atomic(out_path, report::to_json(r));
            if (!csv_path.empty()) report::write_atomic(csv_path, report::to_csv(r));
            print_summary(r);
            return pipeline::exit_code(r.audit);
        }
        if (*diag) {
            check_n(n);
            const auto eigs = hilbert::full_spectrum_by_sectors(n, j);
            const auto levels = hilbert::spectrum_with_multiplicities(eigs, hilbert::default_merge_tol(eigs));
            int total = 0;
            for (const auto& l : levels) {
                std::printf("%.12g %d\n", l.energy, l.multiplicity);
                total += l.multiplicity;
            }
            std::printf("# %zu levels, %d states\n", levels.size(), total);
            return 0;
        }
        if (*solve) {
            check_n(n);
            const auto s = bae::solve_sector(n, ell, cfg);
            for (const auto& set : s.solutions) {
                std::printf("%-21s", bae::to_string(set.classification).c_str());
                if (set.classification == bae::Classification::regular ||
                    set.classification == bae::Classification::physical_singular) {
                    std::printf(" E=%-16.10g", energy::energy(set, j).energy);
                } else {
                    std::printf(" %-18s", "");
                }
                for (const cplx z : set.roots) std::printf(" %s", complex_str(z).c_str());
                std::printf("\n");
            }
            std::printf("# regular=%d physical_singular=%d nonphysical_singular=%d target=%llu starts=%d "
                        "diverged=%d\n",
                        s.regular, s.physical_singular, s.nonphysical_singular,
                        static_cast<unsigned long long>(s.target), s.starts, s.diverged);
            return s.complete() ? 0 : 2;
        }
        if (*rc) {
            check_n(n);
            const auto all = rigged::enumerate_rcs(n, ell);
            for (const auto& c : all) std::printf("%s\n", rigged::to_string(c).c_str());
            std::printf("# %zu configurations (C(N,ell) - C(N,ell-1) = %llu)\n", all.size(),
                        static_cast<unsigned long long>(rigged::rc_count(n, ell)));
            return 0;
        }
        if (*plt) {
            const auto r = report::from_json(report::read_file(in_path));
            const auto outcome = plot::plot_report(r, out_path);
            for (const auto& w : outcome.warnings) std::cerr << "warning: " << w << "\n";
            for (const auto& p : outcome.written) std::printf("%s\n", p.string().c_str());
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "bethe-lab: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
