#include "qwsink/io.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qwsink {

std::string format_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

std::string json_number_list(const std::vector<double>& v) {
    std::string out = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += format_full(v[i]);
    }
    return out + "]";
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

} // namespace

std::string RunConfig::to_json() const {
    // Hand-assembled so every number is serialized with the same %.17g rule
    // as the data files; key order is fixed for byte determinism.
    std::ostringstream os;
    os << "{"
       << "\"omega\":" << format_full(omega) << ","
       << "\"kappa\":" << format_full(kappa) << ","
       << "\"s0\":" << s0 << ","
       << "\"t_max\":" << format_full(t_max) << ","
       << "\"dt\":" << format_full(dt) << ","
       << "\"m_max\":" << m_max << ","
       << "\"k_nodes\":" << k_nodes << ","
       << "\"sites\":" << sites << ","
       << "\"format\":\"" << json_escape(format) << "\","
       << "\"output\":\"" << json_escape(output) << "\","
       << "\"eta_list\":" << json_number_list(eta_list) << ","
       << "\"snapshots\":" << json_number_list(snapshots)
       << "}";
    return os.str();
}

RunConfig RunConfig::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
    if (j.is_discarded()) throw std::invalid_argument("config: not valid JSON");
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    RunConfig cfg;
    for (const auto& [key, val] : j.items()) {
        if (key == "omega") cfg.omega = val.get<double>();
        else if (key == "kappa") cfg.kappa = val.get<double>();
        else if (key == "s0") cfg.s0 = val.get<int>();
        else if (key == "t_max") cfg.t_max = val.get<double>();
        else if (key == "dt") cfg.dt = val.get<double>();
        else if (key == "m_max") cfg.m_max = val.get<int>();
        else if (key == "k_nodes") cfg.k_nodes = val.get<int>();
        else if (key == "sites") cfg.sites = val.get<int>();
        else if (key == "format") cfg.format = val.get<std::string>();
        else if (key == "output") cfg.output = val.get<std::string>();
        else if (key == "eta_list") cfg.eta_list = val.get<std::vector<double>>();
        else if (key == "snapshots") cfg.snapshots = val.get<std::vector<double>>();
        else throw std::invalid_argument("config: unknown key '" + key + "'");
    }
    return cfg;
}

void write_csv(std::ostream& os, const Table& table) {
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ",";
        os << table.columns[c];
    }
    os << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size())
            throw std::logic_error("write_csv: ragged row");
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) os << ",";
            os << format_full(row[c]);
        }
        os << "\n";
    }
}

void write_json(std::ostream& os, const Table& table, const std::string& config_json) {
    os << "{\n"
       << "  \"schema_version\": 1,\n"
       << "  \"config\": " << config_json << ",\n"
       << "  \"columns\": [";
    for (size_t c = 0; c < table.columns.size(); ++c) {
        if (c) os << ",";
        os << "\"" << json_escape(table.columns[c]) << "\"";
    }
    os << "],\n  \"data\": [\n";
    for (size_t r = 0; r < table.rows.size(); ++r) {
        if (table.rows[r].size() != table.columns.size())
            throw std::logic_error("write_json: ragged row");
        os << "    [";
        for (size_t c = 0; c < table.rows[r].size(); ++c) {
            if (c) os << ",";
            os << format_full(table.rows[r][c]);
        }
        os << (r + 1 < table.rows.size() ? "],\n" : "]\n");
    }
    os << "  ]\n}\n";
}

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::string token;
    std::istringstream is(text);
    if (text.empty() || text.back() == ',')
        throw std::invalid_argument("parse_number_list: empty element in '" + text + "'");
    while (std::getline(is, token, ',')) {
        if (token.empty())
            throw std::invalid_argument("parse_number_list: empty element in '" + text + "'");
        size_t pos = 0;
        const double v = std::stod(token, &pos);
        while (pos < token.size() && std::isspace(static_cast<unsigned char>(token[pos]))) ++pos;
        if (pos != token.size())
            throw std::invalid_argument("parse_number_list: bad token '" + token + "'");
        out.push_back(v);
    }
    return out;
}

} // namespace qwsink
