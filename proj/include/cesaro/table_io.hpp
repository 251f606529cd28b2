#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "cesaro/ergodic.hpp"
#include "cesaro/optimal_domain.hpp"
#include "cesaro/spectrum.hpp"

namespace cesaro {

// 9 significant digits, '.' decimal separator; the CSV number contract.
std::string fmt9(double v);

// Write '#'-prefixed header lines followed by a column row and data rows.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}
    void comment(const std::string& line);
    void columns(const std::vector<std::string>& names);
    void row(const std::vector<std::string>& cells);

private:
    std::ostream& os_;
};

void write_portrait_csv(std::ostream& os, const std::vector<PortraitRow>& rows,
                        const std::vector<std::size_t>& sections,
                        const std::vector<std::string>& header);

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table,
                           const std::vector<std::string>& header);

void write_profile_csv(std::ostream& os, const std::vector<ProfileRow>& rows,
                       const std::vector<std::string>& header);

struct CatalogRow {
    std::string name;
    double gamma;
    std::string space;
    std::string expected;
    std::string provenance;
    // filled only by verification runs
    std::string computed;
    std::string method;
    bool checked = false;
};

void write_catalog_csv(std::ostream& os, const std::vector<CatalogRow>& rows,
                       const std::vector<std::string>& header);

// {meta: {...}, rows: [...]} with the same fields as the CSV columns.
std::string portrait_json(const std::vector<PortraitRow>& rows,
                          const std::vector<std::size_t>& sections,
                          const std::vector<std::pair<std::string, std::string>>& meta);
std::string convergence_json(const ConvergenceTable& table,
                             const std::vector<std::pair<std::string, std::string>>& meta);
std::string profile_json(const std::vector<ProfileRow>& rows,
                         const std::vector<std::pair<std::string, std::string>>& meta);
std::string catalog_json(const std::vector<CatalogRow>& rows,
                         const std::vector<std::pair<std::string, std::string>>& meta);

}  // namespace cesaro
