#include "bethe/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "bethe/report.hpp"

namespace bethe::plot {

namespace {

constexpr double kPanel = 180.0;  // px, square
constexpr double kGap = 16.0;
constexpr double kHeader = 28.0;
constexpr int kColumns = 4;

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

bool is_pair_root(cplx z) { return std::abs(z - kHalfI) <= 1e-6 || std::abs(z + kHalfI) <= 1e-6; }

}  // namespace

std::vector<bae::RootSet> panel_order(std::vector<bae::RootSet> sets) {
    std::stable_sort(sets.begin(), sets.end(), [](const bae::RootSet& a, const bae::RootSet& b) {
        if (a.is_singular() != b.is_singular()) return !a.is_singular();
        if (a.is_singular() || a.roots.empty() || b.roots.empty()) return false;
        const cplx u = a.roots.front(), v = b.roots.front();
        if (u.real() != v.real()) return u.real() > v.real();
        return u.imag() > v.imag();
    });
    return sets;
}

std::string sector_file_name(int n_sites, int ell) {
    return "roots_n" + std::to_string(n_sites) + "_ell" + std::to_string(ell) + ".svg";
}

std::string render_sector(int n_sites, int ell, const std::vector<bae::RootSet>& sets) {
    const auto ordered = panel_order(sets);
    // Common half-width: a whole number of grid cells covering every root.
    double extent = 2.0 * kGridSpacing;
    for (const auto& s : ordered) {
        for (const cplx z : s.roots) extent = std::max({extent, std::abs(z.real()), std::abs(z.imag())});
    }
    const int cells = static_cast<int>(std::ceil(extent * 1.1 / kGridSpacing));
    const double half = cells * kGridSpacing;

    const int count = static_cast<int>(ordered.size());
    const int cols = std::min(kColumns, std::max(1, count));
    const int rows = (count + cols - 1) / cols;
    const double width = cols * kPanel + (cols + 1) * kGap;
    const double height = kHeader + rows * (kPanel + kGap) + kGap;

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << px(width) << "\" height=\""
       << px(height) << "\" viewBox=\"0 0 " << px(width) << ' ' << px(height) << "\">\n"
       << "<title>Bethe roots, N=" << n_sites << ", ell=" << ell << "</title>\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << "<text x=\"" << px(kGap) << "\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">N=" << n_sites
       << ", ell=" << ell << ", grid spacing " << kGridSpacing << "</text>\n";

    for (int p = 0; p < count; ++p) {
        const auto& set = ordered[static_cast<std::size_t>(p)];
        const double x0 = kGap + (p % cols) * (kPanel + kGap);
        const double y0 = kHeader + (p / cols) * (kPanel + kGap);
        const double cx = x0 + kPanel / 2, cy = y0 + kPanel / 2;
        const double unit = kPanel / (2.0 * half);
        auto sx = [&](double re) { return cx + re * unit; };
        auto sy = [&](double im) { return cy - im * unit; };

        os << "<g class=\"panel\" id=\"panel-" << p + 1 << "\" data-classification=\""
           << bae::to_string(set.classification) << "\">\n";
        os << "<rect x=\"" << px(x0) << "\" y=\"" << px(y0) << "\" width=\"" << px(kPanel) << "\" height=\""
           << px(kPanel) << "\" fill=\"none\" stroke=\"#bbbbbb\"/>\n";
        for (int k = -cells + 1; k < cells; ++k) {
            if (k == 0) continue;
            const double g = k * kGridSpacing;
            os << "<line class=\"grid\" x1=\"" << px(sx(g)) << "\" y1=\"" << px(y0) << "\" x2=\"" << px(sx(g))
               << "\" y2=\"" << px(y0 + kPanel) << "\" stroke=\"#999999\" stroke-dasharray=\"1,3\"/>\n";
            os << "<line class=\"grid\" x1=\"" << px(x0) << "\" y1=\"" << px(sy(g)) << "\" x2=\"" << px(x0 + kPanel)
               << "\" y2=\"" << px(sy(g)) << "\" stroke=\"#999999\" stroke-dasharray=\"1,3\"/>\n";
        }
        os << "<line class=\"axis\" x1=\"" << px(x0) << "\" y1=\"" << px(cy) << "\" x2=\"" << px(x0 + kPanel)
           << "\" y2=\"" << px(cy) << "\" stroke=\"black\"/>\n";
        os << "<line class=\"axis\" x1=\"" << px(cx) << "\" y1=\"" << px(y0) << "\" x2=\"" << px(cx) << "\" y2=\""
           << px(y0 + kPanel) << "\" stroke=\"black\"/>\n";
        os << "<text x=\"" << px(x0 + 6) << "\" y=\"" << px(y0 + 16) << "\" font-family=\"sans-serif\" font-size=\"12\">"
           << p + 1 << "</text>\n";
        for (const cplx z : set.roots) {
            if (set.is_singular() && is_pair_root(z)) {
                os << "<rect class=\"root singular\" x=\"" << px(sx(z.real()) - 5) << "\" y=\""
                   << px(sy(z.imag()) - 5) << "\" width=\"10\" height=\"10\" fill=\"none\" stroke=\"#c0392b\" "
                   << "stroke-width=\"2\" data-re=\"" << report::round12(z.real()) << "\" data-im=\""
                   << report::round12(z.imag()) << "\"/>\n";
            } else {
                os << "<circle class=\"root\" cx=\"" << px(sx(z.real())) << "\" cy=\"" << px(sy(z.imag()))
                   << "\" r=\"4\" fill=\"black\" data-re=\"" << report::round12(z.real()) << "\" data-im=\""
                   << report::round12(z.imag()) << "\"/>\n";
            }
        }
        os << "</g>\n";
    }
    os << "</svg>\n";
    return os.str();
}

PlotOutcome plot_report(const pipeline::RunReport& report, const std::filesystem::path& out_dir) {
    if (report.sectors.empty()) throw ArgumentError("plot: report has no sectors");
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) throw report::IoError("cannot create " + out_dir.string() + ": " + ec.message());

    PlotOutcome out;
    for (const auto& s : report.sectors) {
        std::vector<bae::RootSet> sets;
        for (const auto& sol : s.solutions) {
            if (!sol.roots.roots.empty()) sets.push_back(sol.roots);
        }
        if (sets.empty()) {
            out.warnings.push_back("sector ell=" + std::to_string(s.ell) + " has no roots to plot; no file written");
            continue;
        }
        const auto path = out_dir / sector_file_name(report.n, s.ell);
        report::write_atomic(path, render_sector(report.n, s.ell, sets));
        out.written.push_back(path);
    }
    return out;
}

}  // namespace bethe::plot
