#pragma once

#include <string>
#include <vector>

#include "causal/graph.hpp"

namespace causal {

/// A graph paired with its variable names, as carried by the JSON format:
///   { "variables": [names...],
///     "edges": [{"from": name, "to": name, "mark": "directed"|"undirected"}] }
struct GraphDoc {
    std::vector<std::string> names;
    Cpdag graph;
};

GraphDoc graph_doc_from_dag(const Dag& dag, std::vector<std::string> names);

std::string to_graph_json(const GraphDoc& doc);
GraphDoc parse_graph_json(const std::string& text);

GraphDoc load_graph_json(const std::string& path);
void save_graph_json(const std::string& path, const GraphDoc& doc);

/// DOT: `a -> b;` for directed marks, `a -> b [dir=none];` for undirected.
std::string to_dot(const GraphDoc& doc);

/// Interprets the document as a DAG; errors on undirected edges or cycles.
Dag require_dag(const GraphDoc& doc);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace causal
