#include "nmsse/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nmsse {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void write_populations_csv(const std::string& path, const EnsembleResult& result) {
    if (result.rho.empty() || result.rho.front().rows() != 2)
        throw std::invalid_argument("populations CSV schema assumes a two-level system");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << "t, re_rho11, im_rho11, re_rho12, im_rho12, re_rho21, im_rho21, re_rho22, im_rho22, "
           "trace_re, trace_im, p1_norm, p2_norm, p1_se, p2_se\n";
    for (size_t i = 0; i < result.times.size(); ++i) {
        const auto& r = result.rho[i];
        out << fmt(result.times[i]);
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                out << ',' << fmt(r(a, b).real()) << ',' << fmt(r(a, b).imag());
        out << ',' << fmt(result.trace(i).real()) << ',' << fmt(result.trace(i).imag());
        out << ',' << fmt(result.pop_norm(i, 0)) << ',' << fmt(result.pop_norm(i, 1));
        out << ',' << fmt(result.pop_se(i, 0)) << ',' << fmt(result.pop_se(i, 1));
        out << '\n';
    }
}

int CsvTable::column(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty CSV: " + path);
    {
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            const auto b = cell.find_first_not_of(" \t\r");
            const auto e = cell.find_last_not_of(" \t\r");
            table.columns.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
        }
    }
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ss, cell, ',')) row.push_back(std::stod(cell));
        if (row.size() != table.columns.size())
            throw std::runtime_error("ragged CSV row in " + path);
        rows.push_back(std::move(row));
    }
    table.data.resize(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(table.columns.size()));
    for (size_t i = 0; i < rows.size(); ++i)
        for (size_t j = 0; j < rows[i].size(); ++j)
            table.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return table;
}

void write_csv(const std::string& path, const CsvTable& table) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (size_t j = 0; j < table.columns.size(); ++j)
        out << (j ? ", " : "") << table.columns[j];
    out << '\n';
    for (Eigen::Index i = 0; i < table.data.rows(); ++i) {
        for (Eigen::Index j = 0; j < table.data.cols(); ++j)
            out << (j ? "," : "") << fmt(table.data(i, j));
        out << '\n';
    }
}

CompareReport compare_tables(const CsvTable& a, const CsvTable& b, double abs_tol,
                             double se_tol) {
    const int ta = a.column("t");
    const int tb = b.column("t");
    if (ta < 0 || tb < 0) throw std::runtime_error("both tables need a t column");
    if (a.data.rows() != b.data.rows())
        throw std::runtime_error("time grids differ in length");
    for (Eigen::Index i = 0; i < a.data.rows(); ++i)
        if (std::abs(a.data(i, ta) - b.data(i, tb)) > 1e-12)
            throw std::runtime_error("time grids do not match");

    CompareReport report;
    for (size_t j = 0; j < a.columns.size(); ++j) {
        const std::string& name = a.columns[j];
        if (name == "t" || (name.size() > 3 && name.substr(name.size() - 3) == "_se")) continue;
        const int jb = b.column(name);
        if (jb < 0) continue;

        // pair p1_norm with p1_se etc.
        std::string se_name;
        if (name.size() > 5 && name.substr(name.size() - 5) == "_norm")
            se_name = name.substr(0, name.size() - 5) + "_se";
        const int sea = se_name.empty() ? -1 : a.column(se_name);
        const int seb = se_name.empty() ? -1 : b.column(se_name);

        CompareReport::Column col;
        col.name = name;
        col.max_se_rel_dev = sea >= 0 || seb >= 0 ? 0.0 : -1.0;
        for (Eigen::Index i = 0; i < a.data.rows(); ++i) {
            const double dev = std::abs(a.data(i, static_cast<Eigen::Index>(j)) -
                                        b.data(i, static_cast<Eigen::Index>(jb)));
            col.max_abs_dev = std::max(col.max_abs_dev, dev);
            double se2 = 0.0;
            if (sea >= 0) se2 += a.data(i, sea) * a.data(i, sea);
            if (seb >= 0) se2 += b.data(i, seb) * b.data(i, seb);
            const double se = std::sqrt(se2);
            if (se > 0.0) col.max_se_rel_dev = std::max(col.max_se_rel_dev, dev / se);
            const double allowed = std::max(abs_tol, se_tol * se);
            if (dev > allowed) col.pass = false;
        }
        report.pass = report.pass && col.pass;
        report.columns.push_back(col);
    }
    return report;
}

}  // namespace nmsse
