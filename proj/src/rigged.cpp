#include "bethe/rigged.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "bethe/hilbert.hpp"
#include "bethe/types.hpp"

namespace bethe::rigged {

namespace {

bool is_partition(const std::vector<int>& nu) {
    for (std::size_t i = 0; i < nu.size(); ++i) {
        if (nu[i] <= 0) return false;
        if (i > 0 && nu[i] > nu[i - 1]) return false;
    }
    return true;
}

int size_of(const std::vector<int>& nu) {
    int s = 0;
    for (int v : nu) s += v;
    return s;
}

void check_sector(int n_sites, int ell) {
    if (n_sites < 1) throw ArgumentError("chain length must be positive");
    if (ell < 0 || 2 * ell > n_sites) throw ArgumentError("magnon number must satisfy 0 <= ell <= N/2");
}

// Weakly decreasing sequences of length m with entries in [0, bound], in
// lexicographic order.
std::vector<std::vector<int>> decreasing_sequences(int m, int bound) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int hi) {
        if (static_cast<int>(cur.size()) == m) {
            out.push_back(cur);
            return;
        }
        for (int v = 0; v <= hi; ++v) {
            cur.push_back(v);
            rec(v);
            cur.pop_back();
        }
    };
    rec(bound);
    return out;
}

}  // namespace

int vacancy_number(const std::vector<int>& nu, int k, int n_sites) {
    int boxes = 0;
    for (int v : nu) boxes += std::min(k, v);
    return n_sites - 2 * boxes;
}

VacancyProfile vacancy(const std::vector<int>& nu, int n_sites) {
    if (!is_partition(nu)) throw ArgumentError("vacancy: nu is not a partition");
    if (2 * size_of(nu) > n_sites) throw PreconditionError("vacancy: |nu| exceeds N/2");
    VacancyProfile p;
    const int longest = nu.empty() ? 0 : nu.front();
    for (int k = 1; k <= longest; ++k) p[k] = vacancy_number(nu, k, n_sites);
    return p;
}

std::vector<std::vector<int>> partitions(int ell) {
    if (ell < 0) throw ArgumentError("partitions: negative size");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int remaining, int hi) {
        if (remaining == 0) {
            out.push_back(cur);
            return;
        }
        for (int v = std::min(remaining, hi); v >= 1; --v) {
            cur.push_back(v);
            rec(remaining - v, v);
            cur.pop_back();
        }
    };
    rec(ell, ell);
    return out;
}

std::vector<RiggedConfiguration> enumerate_rcs(int n_sites, int ell) {
    check_sector(n_sites, ell);
    std::vector<RiggedConfiguration> out;
    for (const auto& nu : partitions(ell)) {
        // Rows grouped by length, longest first, each with its vacancy bound.
        std::vector<std::pair<int, int>> groups;  // (multiplicity, bound)
        bool empty = false;
        for (std::size_t i = 0; i < nu.size();) {
            std::size_t j = i;
            while (j < nu.size() && nu[j] == nu[i]) ++j;
            const int bound = vacancy_number(nu, nu[i], n_sites);
            if (bound < 0) empty = true;
            groups.emplace_back(static_cast<int>(j - i), bound);
            i = j;
        }
        if (empty) continue;
        std::vector<std::vector<std::vector<int>>> choices;
        for (const auto& [m, bound] : groups) choices.push_back(decreasing_sequences(m, bound));

        std::vector<int> riggings;
        std::function<void(std::size_t)> rec = [&](std::size_t g) {
            if (g == choices.size()) {
                out.push_back({nu, riggings});
                return;
            }
            for (const auto& seq : choices[g]) {
                riggings.insert(riggings.end(), seq.begin(), seq.end());
                rec(g + 1);
                riggings.resize(riggings.size() - seq.size());
            }
        };
        rec(0);
    }
    return out;
}

std::uint64_t count_rcs(int n_sites, int ell) {
    check_sector(n_sites, ell);
    std::uint64_t total = 0;
    for (const auto& nu : partitions(ell)) {
        std::uint64_t prod = 1;
        for (std::size_t i = 0; i < nu.size() && prod != 0;) {
            std::size_t j = i;
            while (j < nu.size() && nu[j] == nu[i]) ++j;
            const int bound = vacancy_number(nu, nu[i], n_sites);
            const int m = static_cast<int>(j - i);
            prod = bound < 0 ? 0 : prod * hilbert::binomial(bound + m, m);
            i = j;
        }
        total += prod;
    }
    return total;
}

std::uint64_t rc_count(int n_sites, int ell) {
    const std::uint64_t n = enumerate_rcs(n_sites, ell).size();
    const std::uint64_t expected = hilbert::binomial(n_sites, ell) - hilbert::binomial(n_sites, ell - 1);
    if (n != expected) {
        throw ConsistencyError("rc_count(" + std::to_string(n_sites) + ", " + std::to_string(ell) + ") = " +
                               std::to_string(n) + ", expected " + std::to_string(expected));
    }
    return n;
}

bool is_admissible(const RiggedConfiguration& rc, int n_sites) {
    if (!is_partition(rc.nu) || rc.riggings.size() != rc.nu.size()) return false;
    if (2 * size_of(rc.nu) > n_sites) return false;
    for (std::size_t i = 0; i < rc.nu.size(); ++i) {
        const int bound = vacancy_number(rc.nu, rc.nu[i], n_sites);
        if (rc.riggings[i] < 0 || rc.riggings[i] > bound) return false;
        if (i > 0 && rc.nu[i] == rc.nu[i - 1] && rc.riggings[i] > rc.riggings[i - 1]) return false;
    }
    return true;
}

std::string to_string(const RiggedConfiguration& rc) {
    std::ostringstream os;
    os << "nu=(";
    for (std::size_t i = 0; i < rc.nu.size(); ++i) os << (i ? "," : "") << rc.nu[i];
    os << ") J=(";
    for (std::size_t i = 0; i < rc.riggings.size(); ++i) os << (i ? "," : "") << rc.riggings[i];
    os << ")";
    return os.str();
}

}  // namespace bethe::rigged
