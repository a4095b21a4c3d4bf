#pragma once

// SVG root-plane plots: one file per magnon sector, one panel per solution,
// real axis horizontal, dotted grid every 0.33.

#include <filesystem>
#include <string>
#include <vector>

#include "bethe/baesolver.hpp"
#include "bethe/pipeline.hpp"

namespace bethe::plot {

inline constexpr double kGridSpacing = 0.33;

/// Panel order: regular solutions by descending lambda_1 (real part, then
/// imaginary part), then singular ones in their canonical order.
std::vector<bae::RootSet> panel_order(std::vector<bae::RootSet> sets);

/// Standalone SVG 1.1 document for one sector.
std::string render_sector(int n_sites, int ell, const std::vector<bae::RootSet>& sets);

/// File name used for a sector, e.g. "roots_n6_ell2.svg".
std::string sector_file_name(int n_sites, int ell);

struct PlotOutcome {
    std::vector<std::filesystem::path> written;
    std::vector<std::string> warnings;  ///< one per sector left without a file
};

/// Plot every sector of a report into out_dir (created if missing). Sectors
/// whose solutions carry no roots produce a warning instead of a file.
PlotOutcome plot_report(const pipeline::RunReport& report, const std::filesystem::path& out_dir);

}  // namespace bethe::plot
