#include "evaset/report.hpp"

#include <cstdio>
#include <cstdlib>

#include <nlohmann/json.hpp>

namespace evaset {

namespace {

using njson = nlohmann::json;

// Round a double through its "%.6g" rendering so that both output formats
// carry the same value and serialization is byte-stable.
double round_6g(double v) {
    return std::strtod(format_double(v).c_str(), nullptr);
}

njson value_to_json(const Value& v) {
    switch (v.index()) {
        case 0: return std::get<bool>(v);
        case 1: return std::get<std::int64_t>(v);
        case 2: return round_6g(std::get<double>(v));
        default: return std::get<std::string>(v);
    }
}

Value value_from_json(const njson& j) {
    if (j.is_boolean()) return j.get<bool>();
    if (j.is_number_integer()) return j.get<std::int64_t>();
    if (j.is_number_float()) return j.get<double>();
    if (j.is_string()) return j.get<std::string>();
    throw ParseError("unsupported value type in report JSON");
}

std::string csv_escape(const std::string& s) {
    bool needs = false;
    for (char c : s) {
        if (c == '\n' || c == '\r')
            throw ParseError("CSV values cannot contain newlines");
        if (c == ',' || c == '"') needs = true;
    }
    if (!needs) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw ParseError("unterminated quote in CSV line");
    out.push_back(std::move(cur));
    return out;
}

std::string value_to_token(const Value& v) {
    switch (v.index()) {
        case 0: return std::get<bool>(v) ? "b:true" : "b:false";
        case 1: return "i:" + std::to_string(std::get<std::int64_t>(v));
        case 2: return "f:" + format_double(std::get<double>(v));
        default: return "s:" + std::get<std::string>(v);
    }
}

Value value_from_token(const std::string& t) {
    if (t.size() < 2 || t[1] != ':')
        throw ParseError("bad value token '" + t + "'");
    const std::string body = t.substr(2);
    switch (t[0]) {
        case 'b':
            if (body == "true") return true;
            if (body == "false") return false;
            throw ParseError("bad boolean token '" + t + "'");
        case 'i': {
            char* end = nullptr;
            const long long x = std::strtoll(body.c_str(), &end, 10);
            if (end == nullptr || *end != '\0')
                throw ParseError("bad integer token '" + t + "'");
            return static_cast<std::int64_t>(x);
        }
        case 'f': {
            char* end = nullptr;
            const double x = std::strtod(body.c_str(), &end);
            if (end == nullptr || *end != '\0')
                throw ParseError("bad float token '" + t + "'");
            return x;
        }
        case 's':
            return body;
        default:
            throw ParseError("unknown value token type '" + t + "'");
    }
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

Table& Report::table(const std::string& name, std::vector<std::string> columns) {
    Table& t = tables[name];
    if (t.columns.empty()) t.columns = std::move(columns);
    else if (t.columns != columns)
        throw ParseError("table '" + name + "' redefined with other columns");
    return t;
}

void Report::add_row(const std::string& name, std::vector<Value> row) {
    auto it = tables.find(name);
    if (it == tables.end()) throw ParseError("no table named '" + name + "'");
    if (row.size() != it->second.columns.size())
        throw ParseError("row width mismatch for table '" + name + "'");
    it->second.rows.push_back(std::move(row));
}

std::string Report::to_json() const {
    njson j;
    j["tool"] = tool;
    njson sc = njson::object();
    for (const auto& [k, v] : scalars) sc[k] = value_to_json(v);
    j["scalars"] = sc;
    njson tb = njson::object();
    for (const auto& [name, t] : tables) {
        njson jt;
        jt["columns"] = t.columns;
        njson rows = njson::array();
        for (const auto& row : t.rows) {
            njson jr = njson::array();
            for (const Value& v : row) jr.push_back(value_to_json(v));
            rows.push_back(jr);
        }
        jt["rows"] = rows;
        tb[name] = jt;
    }
    j["tables"] = tb;
    return j.dump(2) + "\n";
}

Report Report::from_json(const std::string& text) {
    njson j;
    try {
        j = njson::parse(text);
    } catch (const njson::exception& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
    Report r;
    try {
        r.tool = j.at("tool").get<std::string>();
        for (const auto& [k, v] : j.at("scalars").items())
            r.scalars[k] = value_from_json(v);
        for (const auto& [name, jt] : j.at("tables").items()) {
            Table t;
            t.columns = jt.at("columns").get<std::vector<std::string>>();
            for (const auto& jr : jt.at("rows")) {
                std::vector<Value> row;
                for (const auto& v : jr) row.push_back(value_from_json(v));
                if (row.size() != t.columns.size())
                    throw ParseError("row width mismatch in report JSON");
                t.rows.push_back(std::move(row));
            }
            r.tables[name] = std::move(t);
        }
    } catch (const njson::exception& e) {
        throw ParseError(std::string("report JSON: ") + e.what());
    }
    return r;
}

std::string Report::to_csv() const {
    std::string out = "[report]\ntool," + csv_escape(tool) + "\n";
    out += "\n[scalars]\n";
    for (const auto& [k, v] : scalars)
        out += csv_escape(k) + "," + csv_escape(value_to_token(v)) + "\n";
    for (const auto& [name, t] : tables) {
        out += "\n[table:" + name + "]\n";
        out += "columns";
        for (const std::string& c : t.columns) out += "," + csv_escape(c);
        out += "\n";
        for (const auto& row : t.rows) {
            out += "row";
            for (const Value& v : row) out += "," + csv_escape(value_to_token(v));
            out += "\n";
        }
    }
    return out;
}

Report Report::from_csv(const std::string& text) {
    Report r;
    std::string section;
    std::string tname;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) {
            if (pos > text.size()) break;
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') throw ParseError("bad section header: " + line);
            section = line.substr(1, line.size() - 2);
            if (section.rfind("table:", 0) == 0) {
                tname = section.substr(6);
                section = "table";
                if (r.tables.count(tname))
                    throw ParseError("duplicate table section '" + tname + "'");
                r.tables[tname] = Table{};
            }
            continue;
        }
        std::vector<std::string> cells = csv_split(line);
        if (section == "report") {
            if (cells.size() != 2 || cells[0] != "tool")
                throw ParseError("bad report line: " + line);
            r.tool = cells[1];
        } else if (section == "scalars") {
            if (cells.size() != 2) throw ParseError("bad scalar line: " + line);
            r.scalars[cells[0]] = value_from_token(cells[1]);
        } else if (section == "table") {
            Table& t = r.tables[tname];
            if (cells[0] == "columns") {
                t.columns.assign(cells.begin() + 1, cells.end());
            } else if (cells[0] == "row") {
                if (cells.size() != t.columns.size() + 1)
                    throw ParseError("row width mismatch in table '" + tname + "'");
                std::vector<Value> row;
                for (std::size_t i = 1; i < cells.size(); ++i)
                    row.push_back(value_from_token(cells[i]));
                t.rows.push_back(std::move(row));
            } else {
                throw ParseError("bad table line: " + line);
            }
        } else {
            throw ParseError("content outside any section: " + line);
        }
    }
    return r;
}

}  // namespace evaset
