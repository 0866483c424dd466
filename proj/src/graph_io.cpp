#include "causal/graph_io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace causal {

namespace {

using ordered_json = nlohmann::ordered_json;

}  // namespace

GraphDoc graph_doc_from_dag(const Dag& dag, std::vector<std::string> names) {
    if (static_cast<int>(names.size()) != dag.p)
        throw ValidationError("name list does not match the graph's variable count");
    return GraphDoc{std::move(names), Cpdag::from_dag_edges(dag)};
}

std::string to_graph_json(const GraphDoc& doc) {
    ordered_json out;
    out["variables"] = doc.names;
    ordered_json edges = ordered_json::array();
    const Cpdag& g = doc.graph;
    for (int i = 0; i < g.p(); ++i)
        for (int j = 0; j < g.p(); ++j) {
            if (g.directed(i, j))
                edges.push_back({{"from", doc.names[i]}, {"to", doc.names[j]}, {"mark", "directed"}});
            else if (i < j && g.undirected(i, j))
                edges.push_back({{"from", doc.names[i]}, {"to", doc.names[j]}, {"mark", "undirected"}});
        }
    out["edges"] = std::move(edges);
    return out.dump(2) + "\n";
}

GraphDoc parse_graph_json(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
        GraphDoc out;
        out.names = doc.at("variables").get<std::vector<std::string>>();
        const int p = static_cast<int>(out.names.size());
        if (p == 0 || p > kMaxVariables)
            throw ValidationError("graph JSON: variable count must be in [1, 64]");
        std::unordered_map<std::string, int> index;
        for (int i = 0; i < p; ++i)
            if (!index.emplace(out.names[i], i).second)
                throw ValidationError("graph JSON: duplicate variable '" + out.names[i] + "'");

        out.graph = Cpdag(p);
        if (doc.contains("edges"))
            for (const auto& edge : doc.at("edges")) {
                const auto from = index.find(edge.at("from").get<std::string>());
                const auto to = index.find(edge.at("to").get<std::string>());
                if (from == index.end() || to == index.end())
                    throw ValidationError("graph JSON: edge references an unknown variable");
                if (from->second == to->second)
                    throw ValidationError("graph JSON: self-loop on '" + from->first + "'");
                if (out.graph.adjacent(from->second, to->second))
                    throw ValidationError("graph JSON: pair '" + from->first + "', '" + to->first +
                                          "' is declared more than once");
                const std::string mark = edge.value("mark", "directed");
                if (mark == "directed")
                    out.graph.set_directed(from->second, to->second);
                else if (mark == "undirected")
                    out.graph.set_undirected(from->second, to->second);
                else
                    throw ValidationError("graph JSON: unknown mark '" + mark + "'");
            }
        if (!out.graph.directed_part_acyclic())
            throw ValidationError("graph JSON: directed edges contain a cycle");
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("graph JSON: ") + e.what());
    }
}

GraphDoc load_graph_json(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_graph_json(buffer.str());
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    out << text;
    if (!out) throw IoError("short write to '" + path + "'");
}

void save_graph_json(const std::string& path, const GraphDoc& doc) {
    write_text_file(path, to_graph_json(doc));
}

std::string to_dot(const GraphDoc& doc) {
    std::ostringstream out;
    out << "digraph g {\n";
    for (const auto& name : doc.names) out << "  \"" << name << "\";\n";
    const Cpdag& g = doc.graph;
    for (int i = 0; i < g.p(); ++i)
        for (int j = 0; j < g.p(); ++j) {
            if (g.directed(i, j))
                out << "  \"" << doc.names[i] << "\" -> \"" << doc.names[j] << "\";\n";
            else if (i < j && g.undirected(i, j))
                out << "  \"" << doc.names[i] << "\" -> \"" << doc.names[j] << "\" [dir=none];\n";
        }
    out << "}\n";
    return out.str();
}

Dag require_dag(const GraphDoc& doc) {
    const Cpdag& g = doc.graph;
    std::vector<Mask> parents(g.p(), 0);
    for (int i = 0; i < g.p(); ++i)
        for (int j = 0; j < g.p(); ++j) {
            if (g.undirected(i, j))
                throw ValidationError("graph has an undirected edge; a DAG is required");
            if (g.directed(i, j)) parents[j] |= bit(i);
        }
    return make_dag(g.p(), std::move(parents));
}

}  // namespace causal
