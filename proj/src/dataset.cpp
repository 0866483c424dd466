#include "causal/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

namespace causal {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_line(std::string line, char delimiter) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, delimiter)) fields.push_back(trimmed(field));
    if (!line.empty() && line.back() == delimiter) fields.push_back("");
    return fields;
}

}  // namespace

Dataset dataset_from_columns(std::vector<std::string> names,
                             std::vector<std::vector<double>> raw_columns) {
    const int p = static_cast<int>(names.size());
    if (p == 0) throw ValidationError("dataset has no variables");
    if (p > kMaxVariables)
        throw ValidationError("dataset has " + std::to_string(p) +
                              " variables; at most 64 are supported");
    if (static_cast<int>(raw_columns.size()) != p)
        throw ValidationError("column count does not match name count");
    const int n = static_cast<int>(raw_columns[0].size());
    if (n == 0) throw ValidationError("dataset has no observations");

    std::unordered_set<std::string> seen;
    for (const auto& name : names) {
        if (name.empty()) throw ValidationError("empty variable name in header");
        if (!seen.insert(name).second) throw ValidationError("duplicate variable name '" + name + "'");
    }

    Dataset data;
    data.p = p;
    data.n = n;
    data.names = std::move(names);
    data.columns = std::move(raw_columns);
    data.zero_variance.assign(p, false);

    double max_abs = 0.0;
    for (int j = 0; j < p; ++j) {
        auto& col = data.columns[j];
        if (static_cast<int>(col.size()) != n)
            throw ValidationError("column '" + data.names[j] + "' has inconsistent length");
        double sum = 0.0;
        for (double v : col) {
            if (!std::isfinite(v))
                throw ValidationError("non-finite value in column '" + data.names[j] + "'");
            max_abs = std::max(max_abs, std::abs(v));
            sum += v;
        }
        const double mean = sum / n;
        for (double& v : col) v -= mean;
    }

    data.gram.assign(static_cast<std::size_t>(p) * p, 0.0);
    for (int i = 0; i < p; ++i) {
        for (int j = i; j < p; ++j) {
            double dot = 0.0;
            const auto& a = data.columns[i];
            const auto& b = data.columns[j];
            for (int r = 0; r < n; ++r) dot += a[r] * b[r];
            data.gram[static_cast<std::size_t>(i) * p + j] = dot;
            data.gram[static_cast<std::size_t>(j) * p + i] = dot;
        }
    }

    const double var_floor = 1e-18 * n * std::max(1.0, max_abs * max_abs);
    for (int j = 0; j < p; ++j)
        if (data.gram_at(j, j) <= var_floor) data.zero_variance[j] = true;

    if (n < p + 2) {
        data.small_sample_warning = true;
        std::cerr << "warning: only " << n << " observations for " << p
                  << " variables; scores may be degenerate (want n >= p + 2)\n";
    }
    return data;
}

Dataset parse_csv(const std::string& text, char delimiter, const std::string& origin) {
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw ValidationError(origin + ": empty file");
    const std::vector<std::string> names = split_line(line, delimiter);
    const int p = static_cast<int>(names.size());

    std::vector<std::vector<double>> columns(p);
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) continue;
        const auto fields = split_line(line, delimiter);
        if (static_cast<int>(fields.size()) != p)
            throw ValidationError(origin + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(p) + " fields, found " +
                                  std::to_string(fields.size()));
        for (int j = 0; j < p; ++j) {
            const std::string& cell = fields[j];
            double value = 0.0;
            const char* begin = cell.data();
            const char* end = begin + cell.size();
            auto [ptr, ec] = std::from_chars(begin, end, value);
            if (cell.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value))
                throw ValidationError(origin + ":" + std::to_string(line_no) +
                                      ": cell '" + cell + "' in column '" + names[j] +
                                      "' is not a finite number");
            columns[j].push_back(value);
        }
    }
    if (columns.empty() || columns[0].empty())
        throw ValidationError(origin + ": no data rows");
    return dataset_from_columns(names, std::move(columns));
}

Dataset load_csv(const std::string& path, char delimiter) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_csv(buffer.str(), delimiter, path);
}

GramView gram_submatrix(const Dataset& data, Mask subset, int target) {
    GramView view;
    view.s_tt = data.gram_at(target, target);
    view.k = popcount(subset);
    view.g_ss.resize(static_cast<std::size_t>(view.k) * view.k);
    view.c_s.resize(view.k);
    int row = 0;
    for (Mask rm = subset; rm; rm &= rm - 1, ++row) {
        const int i = lowest_bit(rm);
        view.c_s[row] = data.gram_at(i, target);
        int col = 0;
        for (Mask cm = subset; cm; cm &= cm - 1, ++col)
            view.g_ss[static_cast<std::size_t>(row) * view.k + col] = data.gram_at(i, lowest_bit(cm));
    }
    return view;
}

}  // namespace causal
