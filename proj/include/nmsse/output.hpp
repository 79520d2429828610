// output.hpp — CSV/JSON emission and the column-wise comparison report

#pragma once

#include <map>
#include <string>
#include <vector>

#include "nmsse/ensemble.hpp"

namespace nmsse {

// Fixed schema:
// t, re_rho11, im_rho11, re_rho12, im_rho12, re_rho21, im_rho21, re_rho22,
// im_rho22, trace_re, trace_im, p1_norm, p2_norm, p1_se, p2_se
void write_populations_csv(const std::string& path, const EnsembleResult& result);

struct CsvTable {
    std::vector<std::string> columns;
    RealMatrix data;  // rows x columns
    int column(const std::string& name) const;  // -1 when absent
};

CsvTable read_csv(const std::string& path);
void write_csv(const std::string& path, const CsvTable& table);

struct CompareReport {
    struct Column {
        std::string name;
        double max_abs_dev{0.0};
        double max_se_rel_dev{0.0};  // deviation / SE, -1 when no SE column pairs up
        bool pass{true};
    };
    std::vector<Column> columns;
    bool pass{true};
};

// Compares the columns common to both files (by header name) on matching time
// grids. A point passes when |a - b| <= max(abs_tol, se_tol * combined SE);
// SE columns (*_se) are paired with their population columns and are
// themselves excluded from the comparison.
CompareReport compare_tables(const CsvTable& a, const CsvTable& b, double abs_tol, double se_tol);

}  // namespace nmsse
