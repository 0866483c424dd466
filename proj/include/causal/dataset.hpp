#pragma once

#include <string>
#include <vector>

#include "causal/common.hpp"

namespace causal {

/// Observational data after ingestion: columns are mean-centered once and the
/// p x p Gram matrix of centered columns is precomputed, so every later BIC
/// evaluation costs O(|parents|^3) regardless of the number of observations.
struct Dataset {
    int p = 0;
    int n = 0;
    std::vector<std::string> names;
    std::vector<std::vector<double>> columns;  // centered, length n each
    std::vector<double> gram;                  // p*p row-major, symmetric
    std::vector<bool> zero_variance;           // per-column degenerate flag
    bool small_sample_warning = false;         // n < p + 2

    double gram_at(int i, int j) const { return gram[static_cast<std::size_t>(i) * p + j]; }
};

/// Centers the raw columns and computes the Gram matrix. Throws
/// ValidationError on empty data, non-finite values, duplicate names or
/// p > 64. Warns (flag + stderr) when n < p + 2.
Dataset dataset_from_columns(std::vector<std::string> names,
                             std::vector<std::vector<double>> raw_columns);

/// CSV ingestion: header row of unique names, every cell a finite real.
/// Parse failures name the offending line and column.
Dataset load_csv(const std::string& path, char delimiter = ',');
Dataset parse_csv(const std::string& text, char delimiter = ',', const std::string& origin = "<string>");

/// Gram-matrix pieces for regressing `target` on the variables in `subset`:
/// G restricted to subset x subset, the subset-to-target column, and the
/// target's own squared norm.
struct GramView {
    int k = 0;
    std::vector<double> g_ss;  // k*k row-major
    std::vector<double> c_s;   // length k
    double s_tt = 0.0;
};

GramView gram_submatrix(const Dataset& data, Mask subset, int target);

}  // namespace causal
