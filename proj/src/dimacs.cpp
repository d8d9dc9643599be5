#include "sepnn/dimacs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <vector>

namespace sepnn {

namespace {

struct Tokenizer {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line_no = 0;

    // Returns the next non-empty line split into whitespace tokens.
    bool next_line(std::vector<std::string_view>& tokens) {
        while (pos < text.size()) {
            std::size_t end = text.find('\n', pos);
            if (end == std::string_view::npos) end = text.size();
            std::string_view line = text.substr(pos, end - pos);
            pos = end + 1;
            ++line_no;
            tokens.clear();
            std::size_t i = 0;
            while (i < line.size()) {
                while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
                    ++i;
                std::size_t start = i;
                while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
                    ++i;
                if (i > start) tokens.push_back(line.substr(start, i - start));
            }
            if (!tokens.empty()) return true;
        }
        return false;
    }
};

std::uint64_t parse_count(std::string_view tok, std::size_t line, const char* what) {
    std::uint64_t value = 0;
    if (tok.empty()) throw DimacsError(line, std::string("missing ") + what);
    for (char c : tok) {
        if (c < '0' || c > '9')
            throw DimacsError(line, std::string("invalid ") + what + " '" + std::string(tok) + "'");
        value = value * 10 + static_cast<std::uint64_t>(c - '0');
        if (value > 0xFFFFFFFFull)
            throw DimacsError(line, std::string(what) + " out of range");
    }
    return value;
}

double parse_real(std::string_view tok, std::size_t line, const char* what) {
    std::string buf(tok);
    char* end = nullptr;
    double value = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size() || buf.empty())
        throw DimacsError(line, std::string("invalid ") + what + " '" + buf + "'");
    return value;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

DimacsError::DimacsError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

Graph parse_dimacs(std::string_view gr_text, std::optional<std::string_view> co_text) {
    Tokenizer tz{gr_text};
    std::vector<std::string_view> tok;

    std::uint64_t n = 0;
    bool have_header = false;

    struct EdgeRec {
        NodeId u, v;
        double w;
    };
    std::vector<EdgeRec> edges;                       // first-seen order, u <= v
    std::unordered_map<std::uint64_t, std::size_t> edge_index;

    while (tz.next_line(tok)) {
        if (tok[0] == "c") continue;
        if (tok[0] == "p") {
            if (have_header) throw DimacsError(tz.line_no, "duplicate problem line");
            if (tok.size() != 4 || tok[1] != "sp")
                throw DimacsError(tz.line_no, "malformed problem line (expected 'p sp <n> <m>')");
            n = parse_count(tok[2], tz.line_no, "node count");
            parse_count(tok[3], tz.line_no, "edge count");
            have_header = true;
            continue;
        }
        if (tok[0] == "a") {
            if (!have_header) throw DimacsError(tz.line_no, "arc before problem line");
            if (tok.size() != 4)
                throw DimacsError(tz.line_no, "malformed arc line (expected 'a <u> <v> <w>')");
            std::uint64_t u = parse_count(tok[1], tz.line_no, "node id");
            std::uint64_t v = parse_count(tok[2], tz.line_no, "node id");
            if (u < 1 || u > n || v < 1 || v > n)
                throw DimacsError(tz.line_no, "node id out of range 1.." + std::to_string(n));
            double w = parse_real(tok[3], tz.line_no, "weight");
            if (!(w >= 0.0) || !std::isfinite(w))
                throw DimacsError(tz.line_no, "negative or non-finite weight");
            if (u == v) continue;  // self-loops carry no shortest-path information
            NodeId a = static_cast<NodeId>(std::min(u, v) - 1);
            NodeId b = static_cast<NodeId>(std::max(u, v) - 1);
            std::uint64_t key = (static_cast<std::uint64_t>(a) << 32) | b;
            auto [it, inserted] = edge_index.try_emplace(key, edges.size());
            if (inserted)
                edges.push_back({a, b, w});
            else
                edges[it->second].w = std::min(edges[it->second].w, w);
            continue;
        }
        throw DimacsError(tz.line_no, "unrecognized line type '" + std::string(tok[0]) + "'");
    }
    if (!have_header) throw DimacsError(0, "missing problem line");

    Graph g(static_cast<NodeId>(n), /*directed=*/false);
    for (const EdgeRec& e : edges) g.add_edge(e.u, e.v, e.w);

    if (co_text) {
        Tokenizer cz{*co_text};
        std::vector<Coord> coords(n, {0.0, 0.0});
        std::vector<char> seen(n, 0);
        bool co_header = false;
        while (cz.next_line(tok)) {
            if (tok[0] == "c") continue;
            if (tok[0] == "p") {
                if (co_header) throw DimacsError(cz.line_no, "duplicate problem line");
                if (tok.size() != 5 || tok[1] != "aux" || tok[2] != "sp" || tok[3] != "co")
                    throw DimacsError(cz.line_no,
                                      "malformed problem line (expected 'p aux sp co <n>')");
                std::uint64_t cn = parse_count(tok[4], cz.line_no, "node count");
                if (cn != n)
                    throw DimacsError(cz.line_no, "coordinate node count " + std::to_string(cn) +
                                                      " does not match graph (" +
                                                      std::to_string(n) + ")");
                co_header = true;
                continue;
            }
            if (tok[0] == "v") {
                if (!co_header) throw DimacsError(cz.line_no, "vertex before problem line");
                if (tok.size() != 4)
                    throw DimacsError(cz.line_no,
                                      "malformed vertex line (expected 'v <id> <x> <y>')");
                std::uint64_t id = parse_count(tok[1], cz.line_no, "node id");
                if (id < 1 || id > n)
                    throw DimacsError(cz.line_no, "node id out of range 1.." + std::to_string(n));
                if (seen[id - 1]) throw DimacsError(cz.line_no, "duplicate coordinates for node");
                seen[id - 1] = 1;
                coords[id - 1][0] = parse_real(tok[2], cz.line_no, "x coordinate");
                coords[id - 1][1] = parse_real(tok[3], cz.line_no, "y coordinate");
                continue;
            }
            throw DimacsError(cz.line_no, "unrecognized line type '" + std::string(tok[0]) + "'");
        }
        if (!co_header) throw DimacsError(0, "missing problem line in coordinate file");
        std::size_t missing = static_cast<std::size_t>(std::count(seen.begin(), seen.end(), 0));
        if (missing)
            throw DimacsError(0, std::to_string(missing) + " node(s) missing coordinates");
        g.set_coords(std::move(coords));
    }
    return g;
}

std::string write_dimacs_gr(const Graph& g) {
    // Emit every arc; an undirected edge shows up once per direction, which is
    // the usual road-network convention and reparses to the same graph.
    struct Row {
        NodeId u, v;
        double w;
    };
    std::vector<Row> rows;
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (const Arc& a : g.out(u)) rows.push_back({u, a.to, a.weight});
    std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
        return a.u != b.u ? a.u < b.u : a.v < b.v;
    });
    std::ostringstream out;
    out << "p sp " << g.node_count() << ' ' << rows.size() << '\n';
    for (const Row& r : rows)
        out << "a " << r.u + 1 << ' ' << r.v + 1 << ' ' << format_real(r.w) << '\n';
    return out.str();
}

std::string write_dimacs_co(const Graph& g) {
    if (!g.has_coords())
        throw std::invalid_argument("graph has no coordinates to write");
    std::ostringstream out;
    out << "p aux sp co " << g.node_count() << '\n';
    for (NodeId v = 0; v < g.node_count(); ++v)
        out << "v " << v + 1 << ' ' << format_real(g.coords()[v][0]) << ' '
            << format_real(g.coords()[v][1]) << '\n';
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Graph load_dimacs(const std::string& gr_path, const std::optional<std::string>& co_path) {
    std::string gr = read_text_file(gr_path);
    if (!co_path) return parse_dimacs(gr);
    std::string co = read_text_file(*co_path);
    return parse_dimacs(gr, co);
}

}  // namespace sepnn
