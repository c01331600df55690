#include "ncp/io.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "ncp/error.hpp"

namespace ncp {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

int parse_int(const std::string& token) {
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](unsigned char c) { return std::isdigit(c); }))
        throw ParseError("expected a positive integer, got '" + token + "'");
    try {
        return std::stoi(token);
    } catch (const std::out_of_range&) {
        throw ParseError("integer out of range: '" + token + "'");
    }
}

template <class T>
T field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

std::string quoted(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

}  // namespace

Partition parse_partition(const std::string& text, int n) {
    const std::string s = trim(text);
    if (s.empty()) throw ParseError("empty partition text");
    std::vector<Block> blocks;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] != '(') throw ParseError("expected '(' at position " + std::to_string(i) + " in '" + s + "'");
        const auto close = s.find(')', i);
        if (close == std::string::npos) throw ParseError("unterminated block in '" + s + "'");
        std::string inner = s.substr(i + 1, close - i - 1);
        for (char& c : inner)
            if (c == ',') c = ' ';
        std::istringstream tokens(inner);
        std::vector<std::string> parts;
        for (std::string t; tokens >> t;) parts.push_back(t);
        if (parts.empty()) throw ParseError("empty block in '" + s + "'");
        Block block;
        if (parts.size() == 1 && parts[0].size() > 1 && n <= 9) {
            for (char c : parts[0]) block.push_back(parse_int(std::string(1, c)));
        } else {
            for (const auto& t : parts) block.push_back(parse_int(t));
        }
        blocks.push_back(std::move(block));
        i = close + 1;
    }
    return Partition(n, std::move(blocks));
}

Partition read_partition(const std::string& text, int n) {
    const std::string s = trim(text);
    if (!s.empty() && s.front() == '{') {
        Partition p = partition_from_json(read_json(s));
        if (p.n() != n)
            throw UsageError("partition is on 1.." + std::to_string(p.n()) + ", expected n=" + std::to_string(n));
        return p;
    }
    return parse_partition(s, n);
}

Json to_json(const Partition& p) {
    Json j;
    j["n"] = p.n();
    j["blocks"] = p.blocks();
    return j;
}

Partition partition_from_json(const Json& j) {
    const int n = field<int>(j, "n");
    const auto blocks = field<std::vector<std::vector<int>>>(j, "blocks");
    return Partition(n, blocks);
}

Json to_json(const ClusterMorphism& m) {
    Json edges = Json::array();
    for (const auto& e : m.edges) edges.push_back(Json{{"from", e.child.min}, {"to", e.parent.min}});
    Json j;
    j["source"] = to_json(m.source);
    j["target"] = to_json(m.target);
    j["edges"] = std::move(edges);
    return j;
}

ClusterMorphism morphism_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("morphism must be a JSON object");
    const Partition source = partition_from_json(field<Json>(j, "source"));
    const Partition target = partition_from_json(field<Json>(j, "target"));
    const Json edges = field<Json>(j, "edges");
    if (!edges.is_array()) throw ParseError("field 'edges' must be an array");
    std::vector<EdgeVector> out;
    for (const auto& e : edges)
        out.push_back({BlockRef{field<int>(e, "from")}, BlockRef{field<int>(e, "to")}});
    if (source.n() != target.n()) throw UsageError("source and target have different ground sets");
    if (!refines(target, source))
        throw UsageError(target.to_string() + " does not refine " + source.to_string());
    for (const auto& e : out)
        if (!target.has_block(e.child) || !target.has_block(e.parent))
            throw UsageError("edge endpoint is not a block minimum of the target");
    return make_morphism(source, target, std::move(out));
}

Json to_json(const UnipotentMatrix& m) {
    Json j;
    j["n"] = m.n();
    j["rows"] = m.rows();
    return j;
}

UnipotentMatrix matrix_from_json(const Json& j) {
    const int n = field<int>(j, "n");
    auto rows = field<std::vector<std::vector<UnipotentMatrix::Entry>>>(j, "rows");
    if (static_cast<int>(rows.size()) != n) throw ParseError("row count differs from n");
    return UnipotentMatrix::from_rows(std::move(rows));
}

UnipotentMatrix parse_matrix(const std::string& text) {
    std::istringstream lines(text);
    std::vector<std::vector<UnipotentMatrix::Entry>> rows;
    for (std::string line; std::getline(lines, line);) {
        if (trim(line).empty()) continue;
        std::istringstream cells(line);
        std::vector<UnipotentMatrix::Entry> row;
        for (std::string c; cells >> c;) {
            try {
                std::size_t used = 0;
                row.push_back(std::stoll(c, &used));
                if (used != c.size()) throw ParseError("bad matrix entry '" + c + "'");
            } catch (const std::logic_error&) {
                throw ParseError("bad matrix entry '" + c + "'");
            }
        }
        rows.push_back(std::move(row));
    }
    return UnipotentMatrix::from_rows(std::move(rows));
}

Json read_json(const std::string& text_or_path) {
    std::string text = trim(text_or_path);
    if (text.empty()) throw ParseError("empty JSON input");
    if (text.front() != '{' && text.front() != '[') {
        std::ifstream in(text);
        if (!in) throw ParseError("cannot read '" + text + "' as JSON or as a file");
        std::ostringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

std::string presentation_text(const GroupPresentation& p) {
    std::string out = "generators: ";
    for (std::size_t g = 0; g < p.generators.size(); ++g) out += (g ? ", " : "") + p.label(g);
    out += "\nrelators:\n";
    for (const auto& r : p.relators) out += p.format(r) + "\n";
    return out;
}

Json to_json(const GroupPresentation& p) {
    Json gens = Json::array();
    for (std::size_t g = 0; g < p.generators.size(); ++g) gens.push_back(p.label(g));
    Json rels = Json::array();
    for (const auto& r : p.relators) rels.push_back(p.format(r));
    Json j;
    j["n"] = p.n;
    j["generators"] = std::move(gens);
    j["relators"] = std::move(rels);
    return j;
}

Json to_json(const SimplicialComplex& k) {
    Json j;
    j["vertices"] = k.vertices();
    j["facets"] = k.facets();
    j["dimension"] = k.dimension();
    return j;
}

std::string to_dot(const SimplicialComplex& k, const std::string& name) {
    std::ostringstream os;
    os << "graph " << quoted(name) << " {\n";
    for (std::size_t v = 0; v < k.vertices().size(); ++v)
        os << "  v" << v << " [label=" << quoted(k.vertices()[v]) << "];\n";
    for (auto [a, b] : k.edges()) os << "  v" << a << " -- v" << b << ";\n";
    os << "}\n";
    return os.str();
}

namespace {

std::vector<std::pair<std::size_t, std::size_t>> hasse_edges(const std::vector<Partition>& ps) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t a = 0; a < ps.size(); ++a)
        for (std::size_t b = 0; b < ps.size(); ++b)
            if (ps[a].rank() == ps[b].rank() + 1 && refines(ps[b], ps[a])) out.emplace_back(a, b);
    return out;
}

}  // namespace

std::string hasse_dot(int n) {
    const auto ps = enumerate_partitions(n);
    std::ostringstream os;
    os << "digraph " << quoted("NC" + std::to_string(n)) << " {\n";
    for (std::size_t a = 0; a < ps.size(); ++a)
        os << "  p" << a << " [label=" << quoted(ps[a].to_string()) << "];\n";
    for (auto [a, b] : hasse_edges(ps)) os << "  p" << a << " -> p" << b << ";\n";
    os << "}\n";
    return os.str();
}

Json hasse_json(int n) {
    const auto ps = enumerate_partitions(n);
    Json nodes = Json::array();
    for (const auto& p : ps) nodes.push_back(p.to_string());
    Json edges = Json::array();
    for (auto [a, b] : hasse_edges(ps)) edges.push_back(Json{{"coarse", ps[a].to_string()}, {"fine", ps[b].to_string()}});
    Json j;
    j["n"] = n;
    j["nodes"] = std::move(nodes);
    j["edges"] = std::move(edges);
    return j;
}

Json to_json(const SuiteResult& r) {
    Json j;
    j["suite"] = r.name;
    j["n"] = r.n;
    j["passed"] = r.ok();
    j["checks"] = r.checks;
    j["failures"] = r.failure_count;
    j["witnesses"] = r.failures;
    Json counts = Json::object();
    for (const auto& [k, v] : r.counts) counts[k] = v;
    j["counts"] = std::move(counts);
    return j;
}

}  // namespace ncp
