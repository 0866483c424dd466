#include "causal/knowledge.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include <json.hpp>

namespace causal {

namespace {

int resolve_name(const std::string& name, const std::vector<std::string>& names) {
    for (int i = 0; i < static_cast<int>(names.size()); ++i)
        if (names[i] == name) return i;
    throw ValidationError("unknown variable name '" + name + "'");
}

std::pair<int, int> ordered(int a, int b) { return a < b ? std::pair{a, b} : std::pair{b, a}; }

}  // namespace

bool Knowledge::tiers_cover_all() const {
    int covered = 0;
    for (const auto& tier : tiers) covered += static_cast<int>(tier.size());
    return !tiers.empty() && covered == p;
}

std::optional<int> Knowledge::tier_of(int v) const {
    for (int t = 0; t < static_cast<int>(tiers.size()); ++t)
        if (std::find(tiers[t].begin(), tiers[t].end(), v) != tiers[t].end()) return t;
    return std::nullopt;
}

Knowledge make_knowledge(int p, std::vector<std::pair<int, int>> known,
                         std::vector<std::pair<int, int>> forbidden,
                         std::vector<std::vector<int>> tiers) {
    if (p < 1 || p > kMaxVariables)
        throw ValidationError("knowledge requires 1 <= p <= 64, got " + std::to_string(p));

    auto check_var = [p](int v) {
        if (v < 0 || v >= p)
            throw ValidationError("variable index " + std::to_string(v) + " outside [0, p)");
    };

    for (auto& [from, to] : known) {
        check_var(from);
        check_var(to);
        if (from == to) throw ValidationError("known edge is a self-loop");
    }
    for (auto& pair : forbidden) {
        check_var(pair.first);
        check_var(pair.second);
        if (pair.first == pair.second) throw ValidationError("forbidden pair is a self-pair");
        pair = ordered(pair.first, pair.second);
    }
    std::sort(known.begin(), known.end());
    known.erase(std::unique(known.begin(), known.end()), known.end());
    std::sort(forbidden.begin(), forbidden.end());
    forbidden.erase(std::unique(forbidden.begin(), forbidden.end()), forbidden.end());

    // No pair may be both known (either direction) and forbidden.
    std::set<std::pair<int, int>> forbidden_set(forbidden.begin(), forbidden.end());
    for (const auto& [from, to] : known)
        if (forbidden_set.count(ordered(from, to)))
            throw ValidationError("conflicting knowledge: edge between variables " +
                                  std::to_string(from) + " and " + std::to_string(to) +
                                  " is both known and forbidden");

    std::vector<Mask> known_parents(p, 0);
    for (const auto& [from, to] : known) known_parents[to] |= bit(from);
    if (!is_acyclic(known_parents)) throw ValidationError("known edges form a directed cycle");

    std::vector<int> tier_index(p, -1);
    for (int t = 0; t < static_cast<int>(tiers.size()); ++t) {
        if (tiers[t].empty()) throw ValidationError("tier " + std::to_string(t + 1) + " is empty");
        for (int v : tiers[t]) {
            check_var(v);
            if (tier_index[v] != -1)
                throw ValidationError("variable " + std::to_string(v) +
                                      " appears in more than one tier");
            tier_index[v] = t;
        }
    }
    for (const auto& [from, to] : known)
        if (tier_index[from] != -1 && tier_index[to] != -1 && tier_index[from] > tier_index[to])
            throw ValidationError("known edge " + std::to_string(from) + " -> " +
                                  std::to_string(to) + " points from a later tier to an earlier one");

    return Knowledge{p, std::move(known), std::move(forbidden), std::move(tiers)};
}

Knowledge parse_knowledge(const std::string& json_text, const std::vector<std::string>& names) {
    nlohmann::json doc;
    try {
        doc = json_text.empty() ? nlohmann::json::object() : nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("knowledge JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ValidationError("knowledge JSON: top level must be an object");

    auto parse_pairs = [&](const char* key) {
        std::vector<std::pair<int, int>> pairs;
        if (!doc.contains(key)) return pairs;
        for (const auto& entry : doc.at(key)) {
            if (!entry.is_array() || entry.size() != 2)
                throw ValidationError(std::string("knowledge JSON: each '") + key +
                                      "' entry must be a [name, name] pair");
            pairs.emplace_back(resolve_name(entry[0].get<std::string>(), names),
                               resolve_name(entry[1].get<std::string>(), names));
        }
        return pairs;
    };

    try {
        std::vector<std::vector<int>> tiers;
        if (doc.contains("tiers")) {
            for (const auto& tier : doc.at("tiers")) {
                if (!tier.is_array())
                    throw ValidationError("knowledge JSON: each tier must be an array of names");
                std::vector<int> members;
                for (const auto& name : tier)
                    members.push_back(resolve_name(name.get<std::string>(), names));
                tiers.push_back(std::move(members));
            }
        }
        for (const auto& key : doc.items())
            if (key.key() != "known" && key.key() != "forbidden" && key.key() != "tiers")
                throw ValidationError("knowledge JSON: unexpected key '" + key.key() + "'");

        return make_knowledge(static_cast<int>(names.size()), parse_pairs("known"),
                              parse_pairs("forbidden"), std::move(tiers));
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("knowledge JSON: ") + e.what());
    }
}

Knowledge merge_super_structure(const Knowledge& knowledge,
                                const std::vector<std::uint8_t>& adjacency) {
    const int p = knowledge.p;
    if (static_cast<int>(adjacency.size()) != p * p)
        throw ValidationError("super-structure adjacency has wrong dimensions");
    auto at = [&](int i, int j) { return adjacency[static_cast<std::size_t>(i) * p + j] != 0; };
    for (int i = 0; i < p; ++i) {
        if (at(i, i)) throw ValidationError("super-structure has a nonzero diagonal");
        for (int j = i + 1; j < p; ++j)
            if (at(i, j) != at(j, i)) throw ValidationError("super-structure is not symmetric");
    }

    auto forbidden = knowledge.forbidden;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j)
            if (!at(i, j)) forbidden.emplace_back(i, j);

    for (const auto& [from, to] : knowledge.known)
        if (!at(from, to))
            throw ValidationError("known edge " + std::to_string(from) + " -> " +
                                  std::to_string(to) + " crosses a pair absent from the super-structure");

    return make_knowledge(p, knowledge.known, std::move(forbidden), knowledge.tiers);
}

std::vector<std::uint8_t> load_super_structure(const std::string& path,
                                               const std::vector<std::string>& names) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    const int p = static_cast<int>(names.size());
    std::vector<std::uint8_t> adjacency(static_cast<std::size_t>(p) * p, 0);

    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && (text[first] == '{' || text[first] == '[')) {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw ValidationError(path + ": " + e.what());
        }
        for (const auto& entry : doc.at("edges")) {
            if (!entry.is_array() || entry.size() != 2)
                throw ValidationError(path + ": each edge must be a [name, name] pair");
            const int a = resolve_name(entry[0].get<std::string>(), names);
            const int b = resolve_name(entry[1].get<std::string>(), names);
            if (a == b) throw ValidationError(path + ": self-loop in super-structure");
            adjacency[static_cast<std::size_t>(a) * p + b] = 1;
            adjacency[static_cast<std::size_t>(b) * p + a] = 1;
        }
        return adjacency;
    }

    // CSV matrix: header row of names, each data row led by its variable name.
    std::istringstream lines(text);
    std::string line;
    if (!std::getline(lines, line)) throw ValidationError(path + ": empty file");
    auto split = [](std::string s) {
        while (!s.empty() && (s.back() == '\r' || s.back() == '\n')) s.pop_back();
        std::vector<std::string> fields;
        std::istringstream fin(s);
        std::string f;
        while (std::getline(fin, f, ',')) fields.push_back(f);
        return fields;
    };
    auto header = split(line);
    if (!header.empty() && header.front().empty()) header.erase(header.begin());
    std::vector<int> col_of;
    for (const auto& name : header) col_of.push_back(resolve_name(name, names));
    if (static_cast<int>(col_of.size()) != p)
        throw ValidationError(path + ": header must list all " + std::to_string(p) + " variables");

    int rows = 0;
    while (std::getline(lines, line)) {
        auto fields = split(line);
        if (fields.empty() || (fields.size() == 1 && fields[0].empty())) continue;
        if (static_cast<int>(fields.size()) != p + 1)
            throw ValidationError(path + ": each row needs a name plus " + std::to_string(p) +
                                  " entries");
        const int row = resolve_name(fields[0], names);
        for (int c = 0; c < p; ++c) {
            const std::string& cell = fields[c + 1];
            if (cell != "0" && cell != "1")
                throw ValidationError(path + ": matrix entries must be 0 or 1, got '" + cell + "'");
            if (cell == "1") adjacency[static_cast<std::size_t>(row) * p + col_of[c]] = 1;
        }
        ++rows;
    }
    if (rows != p) throw ValidationError(path + ": expected " + std::to_string(p) + " matrix rows");
    return adjacency;
}

std::uint64_t AllowedSets::allowed_count(int target) const {
    const int free = p - 1 - popcount(required[target]) - popcount(banned[target]);
    return std::uint64_t{1} << free;
}

AllowedSets compile_allowed(const Knowledge& knowledge) {
    const int p = knowledge.p;
    AllowedSets sets;
    sets.p = p;
    sets.required.assign(p, 0);
    sets.banned.assign(p, 0);

    for (const auto& [from, to] : knowledge.known) {
        sets.required[to] |= bit(from);
        sets.banned[from] |= bit(to);  // the reverse edge would close a 2-cycle
    }
    for (const auto& [a, b] : knowledge.forbidden) {
        sets.banned[a] |= bit(b);
        sets.banned[b] |= bit(a);
    }
    std::vector<int> tier_index(p, -1);
    for (int t = 0; t < static_cast<int>(knowledge.tiers.size()); ++t)
        for (int v : knowledge.tiers[t]) tier_index[v] = t;
    for (int i = 0; i < p; ++i) {
        if (tier_index[i] == -1) continue;
        for (int j = 0; j < p; ++j)
            if (tier_index[j] != -1 && tier_index[j] > tier_index[i]) sets.banned[i] |= bit(j);
    }

    for (int i = 0; i < p; ++i)
        if (sets.required[i] & sets.banned[i])
            throw ValidationError("conflicting knowledge: a required parent of variable " +
                                  std::to_string(i) + " is also banned");
    return sets;
}

bool satisfies_knowledge(const Dag& dag, const Knowledge& knowledge) {
    for (const auto& [from, to] : knowledge.known)
        if (!dag.has_edge(from, to)) return false;
    for (const auto& [a, b] : knowledge.forbidden)
        if (dag.has_edge(a, b) || dag.has_edge(b, a)) return false;
    std::vector<int> tier_index(dag.p, -1);
    for (int t = 0; t < static_cast<int>(knowledge.tiers.size()); ++t)
        for (int v : knowledge.tiers[t]) tier_index[v] = t;
    for (int child = 0; child < dag.p; ++child) {
        if (tier_index[child] == -1) continue;
        for (Mask rest = dag.parents[child]; rest; rest &= rest - 1) {
            const int parent = lowest_bit(rest);
            if (tier_index[parent] != -1 && tier_index[parent] > tier_index[child]) return false;
        }
    }
    return true;
}

std::uint64_t predicted_eval_count(const AllowedSets& allowed) {
    std::uint64_t total = 0;
    for (int i = 0; i < allowed.p; ++i) total += allowed.allowed_count(i);
    return total;
}

std::uint64_t predicted_eval_count(int p, const Knowledge& knowledge) {
    if (p > 57) throw ValidationError("predicted counts overflow for p > 57");
    const std::uint64_t half_lattice = std::uint64_t{1} << (p - 1);

    const bool single_known =
        knowledge.known.size() == 1 && knowledge.forbidden.empty() && knowledge.tiers.empty();
    const bool single_forbidden =
        knowledge.forbidden.size() == 1 && knowledge.known.empty() && knowledge.tiers.empty();
    const bool full_tiers =
        knowledge.known.empty() && knowledge.forbidden.empty() && knowledge.tiers_cover_all();

    if (knowledge.empty()) return static_cast<std::uint64_t>(p) * half_lattice;
    if (single_known || single_forbidden) return static_cast<std::uint64_t>(p - 1) * half_lattice;
    if (full_tiers) {
        const int n = static_cast<int>(knowledge.tiers.size());
        std::uint64_t total = 0;
        int later = 0;
        for (int k = n - 1; k >= 0; --k) {
            const int size = static_cast<int>(knowledge.tiers[k].size());
            total += static_cast<std::uint64_t>(size) << (p - 1 - later);
            later += size;
        }
        return total;
    }
    return predicted_eval_count(compile_allowed(knowledge));
}

}  // namespace causal
