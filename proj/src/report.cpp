#include "bethe/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace bethe::report {

namespace {

using json = nlohmann::ordered_json;
using hilbert::SpectrumEntry;

json num(double v) {
    if (!std::isfinite(v)) return nullptr;
    return round12(v);
}

double get_num(const json& j) {
    if (j.is_null()) return std::numeric_limits<double>::infinity();
    return j.get<double>();
}

json cnum(cplx z) { return json{{"re", num(z.real())}, {"im", num(z.imag())}}; }

cplx get_cnum(const json& j) { return {get_num(j.at("re")), get_num(j.at("im"))}; }

json energy_json(const std::optional<energy::EnergyResult>& e) {
    if (!e) return nullptr;
    return json{{"value", num(e->energy)},
                {"method", energy::to_string(e->method)},
                {"imag_leak", num(e->imag_leak)},
                {"valid", e->valid}};
}

std::optional<energy::EnergyResult> get_energy(const json& j) {
    if (j.is_null()) return std::nullopt;
    energy::EnergyResult e;
    e.energy = get_num(j.at("value"));
    e.method = energy::method_from_string(j.at("method").get<std::string>());
    e.imag_leak = get_num(j.at("imag_leak"));
    e.valid = j.at("valid").get<bool>();
    return e;
}

json level_json(const SpectrumEntry& e) {
    return json{{"energy", num(e.energy)},
                {"multiplicity", e.multiplicity},
                {"sector", e.sector},
                {"source", hilbert::to_string(e.source)}};
}

SpectrumEntry get_level(const json& j) {
    return {get_num(j.at("energy")), j.at("multiplicity").get<int>(), j.at("sector").get<int>(),
            hilbert::spectrum_source_from_string(j.at("source").get<std::string>())};
}

json levels_json(const std::vector<SpectrumEntry>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(level_json(e));
    return a;
}

std::vector<SpectrumEntry> get_levels(const json& j) {
    std::vector<SpectrumEntry> out;
    for (const auto& e : j) out.push_back(get_level(e));
    return out;
}

json solution_json(const pipeline::SolutionRecord& s) {
    json roots = json::array();
    for (const cplx z : s.roots.roots) roots.push_back(cnum(z));
    json singular = nullptr;
    if (s.singular) {
        const auto& c = *s.singular;
        singular = json{{"c1", cnum(c.c1)},
                        {"c2", cnum(c.c2)},
                        {"constants_agree", c.constants_agree},
                        {"vector_converged", c.vector_converged},
                        {"final_residual", num(c.final_residual)},
                        {"extrapolated_residual", num(c.extrapolated_residual)},
                        {"naive_energy", num(c.naive_energy)}};
    }
    return json{{"classification", bae::to_string(s.roots.classification)},
                {"roots", roots},
                {"residual", num(s.roots.residual)},
                {"multiplicity", s.multiplicity},
                {"energy", energy_json(s.energy)},
                {"logderiv", energy_json(s.logderiv)},
                {"singular", singular}};
}

pipeline::SolutionRecord get_solution(const json& j, int n, int ell) {
    pipeline::SolutionRecord s;
    s.roots.n = n;
    s.roots.ell = ell;
    s.roots.classification = bae::classification_from_string(j.at("classification").get<std::string>());
    for (const auto& z : j.at("roots")) s.roots.roots.push_back(get_cnum(z));
    s.roots.residual = get_num(j.at("residual"));
    s.multiplicity = j.at("multiplicity").get<int>();
    s.energy = get_energy(j.at("energy"));
    s.logderiv = get_energy(j.at("logderiv"));
    const auto& g = j.at("singular");
    if (!g.is_null()) {
        pipeline::SingularCheck c;
        c.c1 = get_cnum(g.at("c1"));
        c.c2 = get_cnum(g.at("c2"));
        c.constants_agree = g.at("constants_agree").get<bool>();
        c.vector_converged = g.at("vector_converged").get<bool>();
        c.final_residual = get_num(g.at("final_residual"));
        c.extrapolated_residual = get_num(g.at("extrapolated_residual"));
        c.naive_energy = get_num(g.at("naive_energy"));
        s.singular = c;
    }
    return s;
}

std::string csv_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

}  // namespace

double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.11e", v);
    return std::strtod(buf, nullptr);
}

std::string to_json(const pipeline::RunReport& r, int indent) {
    json sectors = json::array();
    for (const auto& s : r.sectors) {
        json sols = json::array();
        for (const auto& sol : s.solutions) sols.push_back(solution_json(sol));
        sectors.push_back(json{{"ell", s.ell},
                               {"target", s.target},
                               {"rc_count", s.rc_count},
                               {"complete", s.complete},
                               {"regular", s.regular},
                               {"physical_singular", s.physical_singular},
                               {"nonphysical_singular", s.nonphysical_singular},
                               {"strange_starts", s.strange_starts},
                               {"starts", s.starts},
                               {"diverged", s.diverged},
                               {"solutions", sols}});
    }
    const auto& a = r.audit;
    json doc{{"schema", kSchema},
             {"n", r.n},
             {"j", num(r.j)},
             {"seed", r.seed},
             {"sectors", sectors},
             {"diag_spectrum", levels_json(r.diag_spectrum)},
             {"bethe_spectrum", levels_json(r.bethe_spectrum)},
             {"missing_levels", levels_json(r.missing_levels)},
             {"recovered_by_nw", levels_json(r.recovered_by_nw)},
             {"rc_counts", r.rc_counts},
             {"audit", json{{"count_check", a.count_check},
                            {"spectral_closure", a.spectral_closure},
                            {"recovered_subset", a.recovered_subset},
                            {"energy_oracle", a.energy_oracle},
                            {"formula_agreement", a.formula_agreement},
                            {"physicality_consistency", a.physicality_consistency},
                            {"notes", a.notes}}}};
    return doc.dump(indent) + "\n";
}

pipeline::RunReport from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ArgumentError(std::string("report is not valid JSON: ") + e.what());
    }
    try {
        if (doc.at("schema").get<std::string>() != kSchema) {
            throw ArgumentError("unsupported report schema '" + doc.at("schema").get<std::string>() + "'");
        }
        pipeline::RunReport r;
        r.schema = kSchema;
        r.n = doc.at("n").get<int>();
        r.j = get_num(doc.at("j"));
        r.seed = doc.at("seed").get<std::uint64_t>();
        for (const auto& s : doc.at("sectors")) {
            pipeline::SectorReport sec;
            sec.ell = s.at("ell").get<int>();
            sec.target = s.at("target").get<std::uint64_t>();
            sec.rc_count = s.at("rc_count").get<std::uint64_t>();
            sec.complete = s.at("complete").get<bool>();
            sec.regular = s.at("regular").get<int>();
            sec.physical_singular = s.at("physical_singular").get<int>();
            sec.nonphysical_singular = s.at("nonphysical_singular").get<int>();
            sec.strange_starts = s.at("strange_starts").get<int>();
            sec.starts = s.at("starts").get<int>();
            sec.diverged = s.at("diverged").get<int>();
            for (const auto& sol : s.at("solutions")) sec.solutions.push_back(get_solution(sol, r.n, sec.ell));
            r.sectors.push_back(std::move(sec));
        }
        r.diag_spectrum = get_levels(doc.at("diag_spectrum"));
        r.bethe_spectrum = get_levels(doc.at("bethe_spectrum"));
        r.missing_levels = get_levels(doc.at("missing_levels"));
        r.recovered_by_nw = get_levels(doc.at("recovered_by_nw"));
        r.rc_counts = doc.at("rc_counts").get<std::vector<std::uint64_t>>();
        const auto& a = doc.at("audit");
        r.audit.count_check = a.at("count_check").get<bool>();
        r.audit.spectral_closure = a.at("spectral_closure").get<bool>();
        r.audit.recovered_subset = a.at("recovered_subset").get<bool>();
        r.audit.energy_oracle = a.at("energy_oracle").get<bool>();
        r.audit.formula_agreement = a.at("formula_agreement").get<bool>();
        r.audit.physicality_consistency = a.at("physicality_consistency").get<bool>();
        r.audit.notes = a.at("notes").get<std::vector<std::string>>();
        return r;
    } catch (const json::exception& e) {
        throw ArgumentError(std::string("malformed report: ") + e.what());
    }
}

std::string to_csv(const pipeline::RunReport& r) {
    std::ostringstream os;
    os << "n,ell,index,classification,multiplicity,energy,residual,roots\n";
    for (const auto& s : r.sectors) {
        int index = 0;
        for (const auto& sol : s.solutions) {
            os << r.n << ',' << s.ell << ',' << ++index << ',' << bae::to_string(sol.roots.classification) << ','
               << sol.multiplicity << ',' << (sol.energy ? csv_double(sol.energy->energy) : "") << ','
               << csv_double(sol.roots.residual) << ",\"";
            for (std::size_t k = 0; k < sol.roots.roots.size(); ++k) {
                const cplx z = sol.roots.roots[k];
                os << (k ? ";" : "") << csv_double(round12(z.real())) << (z.imag() < 0 ? "-" : "+")
                   << csv_double(std::abs(round12(z.imag()))) << 'i';
            }
            os << "\"\n";
        }
    }
    return os.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& contents) {
    namespace fs = std::filesystem;
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open " + tmp.string() + " for writing");
        out << contents;
        out.flush();
        if (!out) throw IoError("write failed for " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp);
        throw IoError("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace bethe::report
