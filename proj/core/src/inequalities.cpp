#include "fwer/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fwer {
namespace {

constexpr double kConsistencySlack = 1e-12;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

}  // namespace

void PairwiseSystem::validate() const {
    const std::size_t n = marginals.size();
    if (n < 2) {
        throw std::invalid_argument("PairwiseSystem: needs at least two events");
    }
    if (pairwise.size() != n) {
        throw std::invalid_argument("PairwiseSystem: pairwise matrix dimension mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(marginals[i] >= -kConsistencySlack && marginals[i] <= 1.0 + kConsistencySlack)) {
            throw std::invalid_argument("PairwiseSystem: marginal outside [0, 1]");
        }
        if (pairwise[i].size() != n) {
            throw std::invalid_argument("PairwiseSystem: pairwise matrix dimension mismatch");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double p = pairwise[i][j];
            if (std::fabs(p - pairwise[j][i]) > kConsistencySlack) {
                throw std::invalid_argument("PairwiseSystem: pairwise matrix not symmetric");
            }
            const double cap = std::min(marginals[i], marginals[j]);
            if (p < -kConsistencySlack || p > cap + kConsistencySlack) {
                throw std::invalid_argument(
                    "PairwiseSystem: pairwise entry inconsistent with marginals");
            }
        }
    }
}

KwerelBound kwerel_upper(const PairwiseSystem& system) {
    system.validate();
    const std::size_t n = system.size();
    double s1 = 0.0;
    for (double m : system.marginals) s1 += m;
    double s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            s2 += system.pairwise[i][j];
        }
    }
    const double raw = s1 - 2.0 / static_cast<double>(n) * s2;
    return {clamp01(raw), raw};
}

KouniasBound kounias_upper(const PairwiseSystem& system) {
    system.validate();
    const std::size_t n = system.size();
    double s1 = 0.0;
    for (double m : system.marginals) s1 += m;

    double best_row = -1.0;
    std::size_t best_index = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double row = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (j != i) row += system.pairwise[std::min(i, j)][std::max(i, j)];
        }
        if (row > best_row) {  // strict: ties keep the smallest index
            best_row = row;
            best_index = i;
        }
    }
    const double raw = s1 - best_row;
    return {clamp01(raw), raw, best_index};
}

void FiniteEventSpace::validate() const {
    if (atom_probabilities.empty()) {
        throw std::invalid_argument("FiniteEventSpace: no atoms");
    }
    double total = 0.0;
    for (double p : atom_probabilities) {
        if (!(p >= 0.0)) {
            throw std::invalid_argument("FiniteEventSpace: negative atom probability");
        }
        total += p;
    }
    if (std::fabs(total - 1.0) > kConsistencySlack) {
        throw std::invalid_argument("FiniteEventSpace: atom probabilities must sum to 1");
    }
    for (const auto& event : membership) {
        for (std::size_t a : event) {
            if (a >= atom_probabilities.size()) {
                throw std::invalid_argument("FiniteEventSpace: atom index out of range");
            }
        }
    }
}

double union_oracle(const FiniteEventSpace& space) {
    space.validate();
    std::vector<char> covered(space.atom_probabilities.size(), 0);
    for (const auto& event : space.membership) {
        for (std::size_t a : event) covered[a] = 1;
    }
    double total = 0.0;
    for (std::size_t a = 0; a < covered.size(); ++a) {
        if (covered[a]) total += space.atom_probabilities[a];
    }
    return total;
}

PairwiseSystem pairwise_from_space(const FiniteEventSpace& space) {
    space.validate();
    const std::size_t n = space.membership.size();
    const std::size_t atoms = space.atom_probabilities.size();

    std::vector<std::vector<char>> contains(n, std::vector<char>(atoms, 0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a : space.membership[i]) contains[i][a] = 1;
    }

    PairwiseSystem system;
    system.marginals.resize(n, 0.0);
    system.pairwise.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t a = 0; a < atoms; ++a) {
            if (contains[i][a]) system.marginals[i] += space.atom_probabilities[a];
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            double inter = 0.0;
            for (std::size_t a = 0; a < atoms; ++a) {
                if (contains[i][a] && contains[j][a]) inter += space.atom_probabilities[a];
            }
            system.pairwise[i][j] = inter;
            system.pairwise[j][i] = inter;
        }
    }
    return system;
}

}  // namespace fwer
