#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qadder {

using Objective = std::function<double(std::span<const double>)>;

struct SearchResult {
    std::vector<double> x;
    double value = 0;
    std::size_t evaluations = 0;
};

struct SearchOptions {
    std::size_t budget = 20000;  ///< objective evaluations
    double stall_tolerance = 1e-8;
    /// Initial simplex edge per coordinate; a single entry is broadcast.
    std::vector<double> step{0.5};
};

/// Nelder-Mead maximization. When the simplex collapses (spread of values
/// below the stall tolerance) it is rebuilt around the best point, and the
/// search ends once a rebuild gains less than the tolerance or the budget
/// runs out. Deterministic.
SearchResult nelder_mead_maximize(const Objective &f, std::vector<double> x0, const SearchOptions &opt);

/// Euclidean projection onto {w : w >= 0, sum w = 1}.
std::vector<double> project_to_simplex(std::span<const double> v);

}  // namespace qadder
