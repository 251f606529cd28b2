#include "cesaro/table_io.hpp"

#include <cstdio>
#include <ostream>

#include <json.hpp>

namespace cesaro {

std::string fmt9(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

void CsvWriter::comment(const std::string& line) { os_ << "# " << line << "\n"; }

void CsvWriter::columns(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) os_ << ",";
        os_ << cells[i];
    }
    os_ << "\n";
}

void write_portrait_csv(std::ostream& os, const std::vector<PortraitRow>& rows,
                        const std::vector<std::size_t>& sections,
                        const std::vector<std::string>& header) {
    CsvWriter w(os);
    for (const auto& h : header) w.comment(h);
    std::vector<std::string> cols{"re_lambda", "im_lambda"};
    for (std::size_t n : sections) cols.push_back("nu_" + std::to_string(n));
    cols.push_back("growth_ratio");
    cols.push_back("classification");
    w.columns(cols);
    for (const auto& r : rows) {
        std::vector<std::string> cells{fmt9(r.lambda.real()), fmt9(r.lambda.imag())};
        for (double nu : r.nu) cells.push_back(fmt9(nu));
        cells.push_back(fmt9(r.growth_ratio));
        cells.push_back(r.classification);
        w.row(cells);
    }
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table,
                           const std::vector<std::string>& header) {
    CsvWriter w(os);
    for (const auto& h : header) w.comment(h);
    w.columns({"n", "value", "predicted"});
    for (const auto& r : table.rows)
        w.row({std::to_string(r.n), fmt9(r.value), r.predicted ? fmt9(*r.predicted) : ""});
}

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows,
                       const std::vector<std::string>& header) {
    CsvWriter w(os);
    for (const auto& h : header) w.comment(h);
    w.columns({"r", "m_r", "reliable"});
    for (const auto& r : rows) w.row({fmt9(r.r), fmt9(r.m), r.reliable ? "1" : "0"});
}

void write_catalog_csv(std::ostream& os, const std::vector<CatalogRow>& rows,
                       const std::vector<std::string>& header) {
    CsvWriter w(os);
    for (const auto& h : header) w.comment(h);
    const bool checked = !rows.empty() && rows.front().checked;
    std::vector<std::string> cols{"name", "gamma", "space", "expected"};
    if (checked) {
        cols.push_back("computed");
        cols.push_back("method");
        cols.push_back("match");
    }
    cols.push_back("provenance");
    w.columns(cols);
    for (const auto& r : rows) {
        std::vector<std::string> cells{r.name, fmt9(r.gamma), "\"" + r.space + "\"", r.expected};
        if (checked) {
            cells.push_back(r.computed);
            cells.push_back(r.method);
            cells.push_back(r.expected == r.computed ? "1" : "0");
        }
        cells.push_back("\"" + r.provenance + "\"");
        w.row(cells);
    }
}

namespace {

nlohmann::json meta_json(const std::vector<std::pair<std::string, std::string>>& meta) {
    nlohmann::json m = nlohmann::json::object();
    for (const auto& [k, v] : meta) m[k] = v;
    return m;
}

}  // namespace

std::string portrait_json(const std::vector<PortraitRow>& rows,
                          const std::vector<std::size_t>& sections,
                          const std::vector<std::pair<std::string, std::string>>& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    out["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json jr;
        jr["re_lambda"] = r.lambda.real();
        jr["im_lambda"] = r.lambda.imag();
        for (std::size_t i = 0; i < sections.size(); ++i)
            jr["nu_" + std::to_string(sections[i])] = r.nu[i];
        jr["growth_ratio"] = r.growth_ratio;
        jr["classification"] = r.classification;
        out["rows"].push_back(jr);
    }
    return out.dump(2);
}

std::string convergence_json(const ConvergenceTable& table,
                             const std::vector<std::pair<std::string, std::string>>& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    out["meta"]["kind"] = table_kind_name(table.kind);
    out["rows"] = nlohmann::json::array();
    for (const auto& r : table.rows) {
        nlohmann::json jr;
        jr["n"] = r.n;
        jr["value"] = r.value;
        if (r.predicted) jr["predicted"] = *r.predicted;
        out["rows"].push_back(jr);
    }
    return out.dump(2);
}

std::string profile_json(const std::vector<ProfileRow>& rows,
                         const std::vector<std::pair<std::string, std::string>>& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    out["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json jr;
        jr["r"] = r.r;
        jr["m_r"] = r.m;
        jr["reliable"] = r.reliable;
        out["rows"].push_back(jr);
    }
    return out.dump(2);
}

std::string catalog_json(const std::vector<CatalogRow>& rows,
                         const std::vector<std::pair<std::string, std::string>>& meta) {
    nlohmann::json out;
    out["meta"] = meta_json(meta);
    out["rows"] = nlohmann::json::array();
    for (const auto& r : rows) {
        nlohmann::json jr;
        jr["name"] = r.name;
        jr["gamma"] = r.gamma;
        jr["space"] = r.space;
        jr["expected"] = r.expected;
        jr["provenance"] = r.provenance;
        if (r.checked) {
            jr["computed"] = r.computed;
            jr["method"] = r.method;
            jr["match"] = r.expected == r.computed;
        }
        out["rows"].push_back(jr);
    }
    return out.dump(2);
}

}  // namespace cesaro
