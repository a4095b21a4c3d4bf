#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <json.hpp>

#include "bethe/pipeline.hpp"
#include "bethe/plot.hpp"
#include "bethe/report.hpp"

using namespace bethe;
using namespace bethe::pipeline;

namespace {

const RunReport& cached(int n) {
    static const RunReport four = run_pipeline(4, 1.0);
    static const RunReport six = run_pipeline(6, 1.0);
    return n == 4 ? four : six;
}

std::vector<std::pair<double, int>> levels(const std::vector<hilbert::SpectrumEntry>& s) {
    std::vector<std::pair<double, int>> out;
    for (const auto& e : s) out.emplace_back(std::round(e.energy * 1e6) / 1e6, e.multiplicity);
    return out;
}

std::filesystem::path scratch_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("bethe_lab_test_" + name);
    std::filesystem::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("N=2 has no singular sector and closes on regular solutions") {
    const auto r = run_pipeline(2, 1.0);
    CHECK(r.audit.all());
    CHECK(r.missing_levels.empty());
    CHECK(r.recovered_by_nw.empty());
    CHECK(levels(r.diag_spectrum) == std::vector<std::pair<double, int>>{{-2.0, 1}, {0.0, 3}});
    CHECK(exit_code(r.audit) == 0);
}

TEST_CASE("N=4 misses one level at -J and the singular pair recovers it") {
    const auto& r = cached(4);
    CHECK(r.audit.all());
    CHECK(levels(r.missing_levels) == std::vector<std::pair<double, int>>{{-1.0, 1}});
    CHECK(levels(r.recovered_by_nw) == levels(r.missing_levels));
    CHECK(r.rc_counts == std::vector<std::uint64_t>{1, 3, 2});
    REQUIRE(r.sectors.size() == 3);
    const auto& two = r.sectors[2];
    CHECK(two.physical_singular == 1);
    for (const auto& s : two.solutions) {
        if (s.roots.classification != bae::Classification::physical_singular) continue;
        REQUIRE(s.singular.has_value());
        CHECK(s.singular->constants_agree);
        CHECK(s.singular->vector_converged);
        CHECK(std::abs(s.singular->c1 - cplx(0.0, 2.0)) < 1e-12);
        CHECK(s.multiplicity == 1);
    }
}

TEST_CASE("N=6 misses (-J)^3 and (-3J)^1, covered by the two singular states") {
    const auto& r = cached(6);
    CHECK(r.audit.all());
    CHECK(levels(r.missing_levels) == std::vector<std::pair<double, int>>{{-3.0, 1}, {-1.0, 3}});
    CHECK(levels(r.recovered_by_nw) == levels(r.missing_levels));
    CHECK(r.rc_counts == std::vector<std::uint64_t>{1, 5, 9, 5});
    CHECK(r.diag_spectrum.size() == 13);
    int states = 0;
    for (const auto& e : r.diag_spectrum) states += e.multiplicity;
    CHECK(states == 64);
}

TEST_CASE("the coupling scales the problem but energies stay in units of J") {
    const auto r = run_pipeline(4, 2.5);
    CHECK(r.audit.all());
    CHECK(r.j == 2.5);
    CHECK(levels(r.diag_spectrum) == levels(cached(4).diag_spectrum));
}

TEST_CASE("argument checks") {
    CHECK_THROWS_AS(run_pipeline(1, 1.0), ArgumentError);
    CHECK_THROWS_AS(run_pipeline(15, 1.0), ArgumentError);
    CHECK_THROWS_AS(run_pipeline(10, 1.0, {}, 8), ArgumentError);
    CHECK_THROWS_AS(run_pipeline(4, 0.0), ArgumentError);
}

TEST_CASE("exit codes") {
    Audit a;
    a.count_check = a.spectral_closure = a.recovered_subset = a.energy_oracle = a.formula_agreement =
        a.physicality_consistency = true;
    CHECK(exit_code(a) == 0);
    a.formula_agreement = false;
    CHECK(exit_code(a) == 1);
    a.spectral_closure = false;
    CHECK(exit_code(a) == 3);
    a.count_check = false;
    CHECK(exit_code(a) == 2);
}

TEST_CASE("level arithmetic") {
    using E = hilbert::SpectrumEntry;
    const std::vector<E> a{{-3.0, 1}, {-1.0, 7}, {0.0, 5}};
    const std::vector<E> b{{-1.0 + 1e-8, 4}, {0.0, 5}};
    const auto d = subtract_levels(a, b, 1e-5);
    REQUIRE(d.size() == 2);
    CHECK(d[0].energy == -3.0);
    CHECK(d[1].multiplicity == 3);
    CHECK(same_levels(a, a, 1e-12));
    CHECK_FALSE(same_levels(a, b, 1e-5));
}

TEST_CASE("JSON report round-trips field for field") {
    const auto& r = cached(4);
    const std::string text = report::to_json(r);
    const auto back = report::from_json(text);
    CHECK(report::to_json(back) == text);
    CHECK(back.n == 4);
    CHECK(back.sectors.size() == r.sectors.size());
    CHECK(back.audit.all());

    const auto j = nlohmann::json::parse(text);
    CHECK(j["schema"] == "bethe-lab/1");
    CHECK(j["audit"]["count_check"] == true);
    const auto& root = j["sectors"][1]["solutions"][0]["roots"][0];
    CHECK(root.contains("re"));
    CHECK(root.contains("im"));

    CHECK_THROWS_AS(report::from_json("{not json"), ArgumentError);
    auto wrong = j;
    wrong["schema"] = "other/2";
    CHECK_THROWS_AS(report::from_json(wrong.dump()), ArgumentError);
}

TEST_CASE("reports are deterministic for a fixed seed") {
    const auto a = report::to_json(run_pipeline(6, 1.0));
    CHECK(a == report::to_json(cached(6)));
}

TEST_CASE("twelve significant digits") {
    CHECK(report::round12(1.0 / 3.0) == 0.333333333333);
    CHECK(report::round12(-2.78070487446123) == -2.78070487446);
    CHECK(report::round12(0.0) == 0.0);
}

TEST_CASE("CSV table") {
    const std::string csv = report::to_csv(cached(6));
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "n,ell,index,classification,multiplicity,energy,residual,roots");
    int ell2 = 0;
    while (std::getline(in, line)) {
        if (line.rfind("6,2,", 0) == 0) ++ell2;
    }
    CHECK(ell2 == 9);
}

TEST_CASE("atomic writes") {
    const auto dir = scratch_dir("io");
    std::filesystem::create_directories(dir);
    const auto path = dir / "r.json";
    report::write_atomic(path, "abc");
    CHECK(report::read_file(path) == "abc");
    CHECK_FALSE(std::filesystem::exists(dir / "r.json.tmp"));
    CHECK_THROWS_AS(report::read_file(dir / "missing.json"), report::IoError);
    std::filesystem::remove_all(dir);
}

TEST_CASE("plots: one file per nonempty sector") {
    const auto dir = scratch_dir("plot");
    const auto out = plot::plot_report(cached(6), dir);
    CHECK(out.written.size() == 3);
    CHECK(out.warnings.size() == 1);
    CHECK_FALSE(std::filesystem::exists(dir / "roots_n6_ell0.svg"));
    REQUIRE(std::filesystem::exists(dir / plot::sector_file_name(6, 2)));
    const std::string svg = report::read_file(dir / "roots_n6_ell2.svg");
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("version=\"1.1\"") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("plots: panel order and singular markers") {
    const auto& sec = cached(6).sectors[2];
    std::vector<bae::RootSet> sets;
    for (const auto& s : sec.solutions) sets.push_back(s.roots);
    const auto order = plot::panel_order(sets);
    REQUIRE(order.size() == 9);
    for (std::size_t i = 1; i < 8; ++i) {
        const cplx a = order[i - 1].roots[0], b = order[i].roots[0];
        CHECK((a.real() > b.real() || (a.real() == b.real() && a.imag() >= b.imag())));
    }
    CHECK(order.back().classification == bae::Classification::physical_singular);

    const std::string svg = plot::render_sector(6, 2, sets);
    const std::regex singular("class=\"root singular\"[^>]*data-re=\"([^\"]+)\" data-im=\"([^\"]+)\"");
    int markers = 0;
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), singular); it != std::sregex_iterator(); ++it) {
        CHECK(std::abs(std::stod((*it)[1])) < 1e-12);
        CHECK(std::abs(std::abs(std::stod((*it)[2])) - 0.5) < 1e-12);
        ++markers;
    }
    CHECK(markers == 2);
    CHECK(svg.find("stroke-dasharray") != std::string::npos);
}
