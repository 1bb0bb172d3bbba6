#include "evaset/io.hpp"

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "evaset/report.hpp"

namespace evaset {

namespace {

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(std::move(line));
        pos = nl + 1;
    }
    while (!out.empty() && out.back().empty()) out.pop_back();
    return out;
}

std::vector<std::uint64_t> parse_u64_fields(const std::string& line,
                                            char sep) {
    std::vector<std::uint64_t> out;
    std::string cur;
    auto flush = [&]() {
        if (cur.empty()) throw ParseError("empty numeric field in: " + line);
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(cur, &used, 10);
        } catch (const std::exception&) {
            throw ParseError("bad number '" + cur + "' in: " + line);
        }
        if (used != cur.size())
            throw ParseError("bad number '" + cur + "' in: " + line);
        out.push_back(v);
        cur.clear();
    };
    for (char c : line) {
        if (c == sep) flush();
        else if (c == ' ' && sep != ' ') continue;
        else cur += c;
    }
    flush();
    return out;
}

std::string join_u32(const std::vector<std::uint32_t>& v, const char* sep) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += std::to_string(v[i]);
    }
    return out;
}

}  // namespace

std::string pointset_to_string(const PointSet& P) {
    std::string out = std::to_string(P.q) + " " + std::to_string(P.n) + " " +
                      std::to_string(P.size()) + "\n";
    for (PointCode c : P.pts) {
        const std::vector<Fe> coords = decode_point(c, P.q, P.n);
        for (std::uint32_t i = 0; i < P.n; ++i) {
            if (i) out += ",";
            out += std::to_string(coords[i]);
        }
        out += "\n";
    }
    return out;
}

PointSet pointset_from_string(const FieldCtx& ctx, const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty point set text");
    const std::vector<std::uint64_t> hdr = parse_u64_fields(lines[0], ' ');
    if (hdr.size() != 3) throw ParseError("point set header needs 'q n m'");
    const std::uint64_t q = hdr[0], n = hdr[1], m = hdr[2];
    if (q != ctx.q()) throw ParseError("point set written over another field");
    if (lines.size() != m + 1)
        throw ParseError("point set row count disagrees with header");
    std::vector<std::vector<Fe>> coords;
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::vector<std::uint64_t> row = parse_u64_fields(lines[i + 1], ',');
        if (row.size() != n) throw ParseError("point row width disagrees");
        std::vector<Fe> pt;
        for (std::uint64_t x : row) {
            if (x >= q) throw ParseError("coordinate out of field range");
            pt.push_back(static_cast<Fe>(x));
        }
        coords.push_back(std::move(pt));
    }
    return PointSet::from_coords(ctx, static_cast<std::uint32_t>(n), coords);
}

std::string hypergraph_to_string(const Hypergraph& H) {
    std::string out = std::to_string(H.r) + " " + std::to_string(H.nv) + " " +
                      std::to_string(H.ecount()) + "\n";
    for (std::uint64_t i = 0; i < H.ecount(); ++i) {
        const std::uint32_t* e = H.edge(i);
        for (std::uint32_t j = 0; j < H.r; ++j) {
            if (j) out += " ";
            out += std::to_string(e[j]);
        }
        out += "\n";
    }
    return out;
}

Hypergraph hypergraph_from_string(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty hypergraph text");
    const std::vector<std::uint64_t> hdr = parse_u64_fields(lines[0], ' ');
    if (hdr.size() != 3) throw ParseError("hypergraph header needs 'r |V| |E|'");
    const std::uint64_t r = hdr[0], nv = hdr[1], ne = hdr[2];
    if (r < 1 || r > 64) throw ParseError("unreasonable uniformity");
    if (nv > UINT32_MAX) throw ParseError("vertex count too large");
    if (lines.size() != ne + 1)
        throw ParseError("edge count disagrees with header");
    std::vector<std::vector<std::uint32_t>> edges;
    for (std::uint64_t i = 0; i < ne; ++i) {
        const std::vector<std::uint64_t> row = parse_u64_fields(lines[i + 1], ' ');
        if (row.size() != r) throw ParseError("edge width disagrees with r");
        std::vector<std::uint32_t> e;
        for (std::uint64_t x : row) {
            if (x >= nv) throw ParseError("edge vertex out of range");
            e.push_back(static_cast<std::uint32_t>(x));
        }
        edges.push_back(std::move(e));
    }
    return Hypergraph::make(static_cast<std::uint32_t>(r),
                            static_cast<std::uint32_t>(nv), edges);
}

std::string containers_to_string(const ContainerFamily& fam) {
    std::string out;
    for (std::size_t i = 0; i < fam.containers.size(); ++i) {
        out += join_u32(fam.fingerprints[i], " ");
        out += " | ";
        out += join_u32(fam.containers[i], " ");
        out += "\n";
    }
    return out;
}

ParsedContainers containers_from_string(const std::string& text) {
    ParsedContainers out;
    for (const std::string& line : split_lines(text)) {
        if (line.empty()) continue;
        const std::size_t bar = line.find('|');
        if (bar == std::string::npos)
            throw ParseError("container line lacks '|': " + line);
        auto parse_side = [&](const std::string& side) {
            std::vector<std::uint32_t> vs;
            std::istringstream iss(side);
            std::string tok;
            while (iss >> tok) {
                std::size_t used = 0;
                unsigned long long v = 0;
                try {
                    v = std::stoull(tok, &used, 10);
                } catch (const std::exception&) {
                    throw ParseError("bad vertex '" + tok + "' in: " + line);
                }
                if (used != tok.size() || v > UINT32_MAX)
                    throw ParseError("bad vertex '" + tok + "' in: " + line);
                vs.push_back(static_cast<std::uint32_t>(v));
            }
            return vs;
        };
        out.fingerprints.push_back(parse_side(line.substr(0, bar)));
        out.containers.push_back(parse_side(line.substr(bar + 1)));
    }
    return out;
}

std::string cctree_to_string(const CCTree& T, const TreeStats& stats) {
    std::string out = std::to_string(T.r) + " " + std::to_string(T.nv) + " " +
                      std::to_string(T.nodes.size()) + "\n";
    for (const CCNode& x : T.nodes) {
        out += std::to_string(x.id) + " " + std::to_string(x.parent) + " " +
               x.case_tag + " {" + join_u32(x.c0, " ") + "}";
        for (const auto& K : x.cliques) out += " | {" + join_u32(K, " ") + "}";
        out += "\n";
    }
    nlohmann::json js;
    js["nu"] = stats.nu;
    js["chi"] = stats.chi;
    js["kappa"] = stats.kappa;
    js["lambda"] = stats.lambda;
    js["height"] = stats.height;
    js["aleph_log2"] = std::strtod(format_double(stats.aleph_log2).c_str(), nullptr);
    out += "stats " + js.dump() + "\n";
    return out;
}

CCTree cctree_from_string(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty()) throw ParseError("empty tree text");
    const std::vector<std::uint64_t> hdr = parse_u64_fields(lines[0], ' ');
    if (hdr.size() != 3) throw ParseError("tree header needs 'r |V| nodes'");
    CCTree T;
    T.r = static_cast<std::uint32_t>(hdr[0]);
    T.nv = static_cast<std::uint32_t>(hdr[1]);
    const std::uint64_t nn = hdr[2];
    if (lines.size() < nn + 1) throw ParseError("tree node count disagrees");

    auto parse_braced = [](const std::string& s, std::size_t& pos) {
        while (pos < s.size() && s[pos] == ' ') ++pos;
        if (pos >= s.size() || s[pos] != '{')
            throw ParseError("expected '{' in tree line: " + s);
        const std::size_t close = s.find('}', pos);
        if (close == std::string::npos)
            throw ParseError("unbalanced '{' in tree line: " + s);
        std::vector<std::uint32_t> vs;
        std::istringstream iss(s.substr(pos + 1, close - pos - 1));
        unsigned long long v;
        while (iss >> v) vs.push_back(static_cast<std::uint32_t>(v));
        pos = close + 1;
        return vs;
    };

    for (std::uint64_t i = 0; i < nn; ++i) {
        const std::string& line = lines[i + 1];
        std::istringstream iss(line);
        CCNode x;
        std::string tag;
        long long id, parent;
        if (!(iss >> id >> parent >> tag))
            throw ParseError("bad tree node line: " + line);
        x.id = static_cast<std::uint64_t>(id);
        x.parent = parent;
        x.case_tag = tag;
        std::size_t pos = static_cast<std::size_t>(iss.tellg());
        x.c0 = parse_braced(line, pos);
        while (pos < line.size() && line[pos] == ' ') ++pos;
        while (pos < line.size() && line[pos] == '|') {
            ++pos;
            x.cliques.push_back(parse_braced(line, pos));
            while (pos < line.size() && line[pos] == ' ') ++pos;
        }
        if (x.id != i) throw ParseError("tree node ids must be dense");
        if (x.parent >= 0) {
            if (static_cast<std::uint64_t>(x.parent) >= i)
                throw ParseError("tree parents must precede children");
            T.nodes[static_cast<std::uint64_t>(x.parent)].children.push_back(i);
        }
        T.nodes.push_back(std::move(x));
    }
    return T;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write file: " + path);
    out << content;
    if (!out) throw ParseError("write failed for file: " + path);
}

}  // namespace evaset
