#pragma once

#include <cstddef>
#include <vector>

namespace fwer {

/// First- and second-order intersection information about n events: the
/// marginals P(A_i) and the symmetric matrix of P(A_i ∩ A_j). The diagonal
/// of `pairwise` is ignored.
struct PairwiseSystem {
    std::vector<double> marginals;
    std::vector<std::vector<double>> pairwise;

    std::size_t size() const { return marginals.size(); }
    /// Throws std::invalid_argument when the system is inconsistent
    /// (marginal outside [0,1], pairwise entry negative or exceeding either
    /// marginal, asymmetry, shape mismatch).
    void validate() const;
};

struct KwerelBound {
    double value = 0.0;  // clamped to [0, 1]
    double raw = 0.0;    // unclamped S1 - (2/n) S2
};

struct KouniasBound {
    double value = 0.0;  // clamped to [0, 1]
    double raw = 0.0;    // unclamped S1 - max_i row_i
    std::size_t argmax_index = 0;
};

/// Union upper bound S1 - (2/n) S2 from the first two intersection sums.
KwerelBound kwerel_upper(const PairwiseSystem& system);

/// Union upper bound S1 - max_i sum_{j != i} P(A_i ∩ A_j). Never exceeds
/// kwerel_upper; ties in the maximizing row break to the smallest index.
KouniasBound kounias_upper(const PairwiseSystem& system);

/// Exact finite probability space: atom probabilities summing to one and,
/// per event, the atoms it contains. Test oracle for the union bounds.
struct FiniteEventSpace {
    std::vector<double> atom_probabilities;
    std::vector<std::vector<std::size_t>> membership;

    void validate() const;
};

/// Exact P(A_1 ∪ ... ∪ A_n) by atom enumeration.
double union_oracle(const FiniteEventSpace& space);

/// Marginals and pairwise intersections of a finite space, for feeding the
/// inequality bounds.
PairwiseSystem pairwise_from_space(const FiniteEventSpace& space);

}  // namespace fwer
