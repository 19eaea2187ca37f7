#include "herding/econometrics.hpp"

#include "herding/errors.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

namespace herding {

DataTable::DataTable(std::vector<std::string> names, std::vector<std::vector<double>> columns)
    : names_(std::move(names)), columns_(std::move(columns))
{
    if (names_.size() != columns_.size()) {
        throw ValidationError("data table needs one name per column");
    }
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (!seen.insert(n).second) {
            throw ValidationError("duplicate column name '" + n + "'");
        }
    }
    for (const auto& c : columns_) {
        if (c.size() != rows()) {
            throw ValidationError("data table columns must have equal length");
        }
        for (double x : c) {
            if (!std::isfinite(x)) {
                throw ValidationError("data table entries must be finite");
            }
        }
    }
}

std::size_t DataTable::index_of(const std::string& name) const
{
    const auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) {
        throw ValidationError("unknown column '" + name + "'");
    }
    return static_cast<std::size_t>(it - names_.begin());
}

bool DataTable::has(const std::string& name) const
{
    return std::find(names_.begin(), names_.end(), name) != names_.end();
}

const std::vector<double>& DataTable::column(const std::string& name) const
{
    return columns_[index_of(name)];
}

void DataTable::replace(const std::string& name, std::vector<double> values)
{
    const auto idx = index_of(name);
    if (values.size() > rows()) {
        throw ValidationError("replacement column '" + name + "' is longer than the table");
    }
    const std::size_t lead = rows() - values.size();
    columns_[idx] = std::move(values);
    if (lead > 0) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i != idx) {
                columns_[i].erase(columns_[i].begin(), columns_[i].begin() + static_cast<std::ptrdiff_t>(lead));
            }
        }
    }
}

void DataTable::drop_leading_rows(std::size_t count)
{
    count = std::min(count, rows());
    for (auto& c : columns_) {
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(count));
    }
}

namespace {

std::string trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\"");
    return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        cells.push_back(trim(cell));
    }
    if (!line.empty() && line.back() == ',') {
        cells.emplace_back();
    }
    return cells;
}

bool parse_number(const std::string& cell, double& out)
{
    if (cell.empty()) return false;
    const char* begin = cell.data();
    const char* end = begin + cell.size();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc{} && ptr == end && std::isfinite(out);
}

} // namespace

DataTable DataTable::read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("CSV input is empty");
    }
    if (line.rfind("\xEF\xBB\xBF", 0) == 0) {
        line.erase(0, 3);
    }
    auto names = split(line);
    std::vector<std::vector<double>> columns(names.size());
    std::size_t dropped = 0;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        const auto cells = split(line);
        if (cells.size() != names.size()) {
            throw ValidationError("CSV line " + std::to_string(line_no) + " has " + std::to_string(cells.size())
                                  + " fields, header has " + std::to_string(names.size()));
        }
        std::vector<double> row(cells.size());
        bool complete = true;
        for (std::size_t i = 0; i < cells.size() && complete; ++i) {
            complete = parse_number(cells[i], row[i]);
        }
        if (!complete) {
            ++dropped;
            continue;
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            columns[i].push_back(row[i]);
        }
    }
    DataTable table(std::move(names), std::move(columns));
    table.dropped_ = dropped;
    return table;
}

DataTable DataTable::read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open CSV file " + path.string());
    }
    return read_csv(in);
}

std::vector<double> growth_rate(const std::vector<double>& series)
{
    if (series.size() < 2) {
        throw ValidationError("growth rate needs at least 2 values");
    }
    std::vector<double> out;
    out.reserve(series.size() - 1);
    for (std::size_t i = 1; i < series.size(); ++i) {
        if (series[i - 1] == 0.0) {
            throw ValidationError("growth rate: zero denominator at index " + std::to_string(i - 1));
        }
        out.push_back((series[i] - series[i - 1]) / series[i - 1]);
    }
    return out;
}

std::vector<double> minmax_normalize(const std::vector<double>& series, const std::string& name)
{
    if (series.empty()) {
        throw ValidationError("cannot normalize empty column '" + name + "'");
    }
    const auto [lo, hi] = std::minmax_element(series.begin(), series.end());
    const double min = *lo;
    const double span = *hi - min;
    if (!(span > 0.0)) {
        throw ValidationError("cannot normalize constant column '" + name + "' (max == min)");
    }
    std::vector<double> out(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        out[i] = series[i] == *hi ? 1.0 : (series[i] - min) / span;
    }
    return out;
}

RegressionReport ols_fit(const DataTable& table, const std::string& response,
                         const std::vector<std::string>& regressors, bool intercept)
{
    const auto& y_col = table.column(response);
    std::vector<const std::vector<double>*> x_cols;
    for (const auto& name : regressors) {
        x_cols.push_back(&table.column(name));
    }

    const auto n = static_cast<Eigen::Index>(table.rows());
    const auto p = static_cast<Eigen::Index>(regressors.size() + (intercept ? 1 : 0));
    if (p == 0) {
        throw ValidationError("regression needs at least one coefficient");
    }
    if (n <= p) {
        throw ValidationError("insufficient observations: " + std::to_string(n) + " rows for "
                              + std::to_string(p) + " coefficients");
    }

    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto row = static_cast<std::size_t>(i);
        y(i) = y_col[row];
        Eigen::Index j = 0;
        if (intercept) X(i, j++) = 1.0;
        for (const auto* col : x_cols) X(i, j++) = (*col)[row];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < p) {
        throw ValidationError("design matrix is rank deficient (rank " + std::to_string(qr.rank()) + " < "
                              + std::to_string(p) + ")");
    }
    const Eigen::VectorXd beta = qr.solve(y);
    const Eigen::VectorXd resid = y - X * beta;

    // (X'X)^{-1} = P R^{-1} R^{-T} P'
    const Eigen::MatrixXd R = qr.matrixR().topLeftCorner(p, p).triangularView<Eigen::Upper>();
    const Eigen::MatrixXd R_inv =
        R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd xtx_inv_perm = R_inv * R_inv.transpose();
    const Eigen::MatrixXd xtx_inv = qr.colsPermutation() * xtx_inv_perm * qr.colsPermutation().transpose();

    const double ssr = resid.squaredNorm();
    const double dof = static_cast<double>(n - p);
    const double sigma2 = ssr / dof;
    const double sst = intercept ? (y.array() - y.mean()).square().sum() : y.squaredNorm();

    RegressionReport rep;
    rep.response = response;
    rep.intercept = intercept;
    rep.n_observations = static_cast<std::size_t>(n);
    rep.residuals.assign(resid.data(), resid.data() + n);
    for (Eigen::Index j = 0; j < p; ++j) {
        CoefficientRow row;
        row.name = intercept ? (j == 0 ? "Intercept" : regressors[static_cast<std::size_t>(j - 1)])
                             : regressors[static_cast<std::size_t>(j)];
        row.coefficient = beta(j);
        row.standard_error = std::sqrt(sigma2 * xtx_inv(j, j));
        row.t_statistic = row.coefficient / row.standard_error;
        rep.rows.push_back(row);
    }

    const double k = static_cast<double>(p - (intercept ? 1 : 0));
    rep.r_squared = sst > 0.0 ? std::clamp(1.0 - ssr / sst, 0.0, 1.0) : 0.0;
    const double total_dof = static_cast<double>(n) - (intercept ? 1.0 : 0.0);
    rep.adjusted_r_squared = 1.0 - (1.0 - rep.r_squared) * total_dof / dof;
    if (k > 0.0) {
        rep.f_statistic = (rep.r_squared / k) / ((1.0 - rep.r_squared) / dof);
    }
    return rep;
}

namespace {

std::string fixed3(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    std::string s = buf;
    if (s == "-0.000") s = "0.000";
    return s;
}

} // namespace

std::string render_report(const RegressionReport& report)
{
    std::size_t name_width = std::string("Adjusted R-squared").size();
    for (const auto& row : report.rows) {
        name_width = std::max(name_width, row.name.size());
    }
    const int w = static_cast<int>(name_width);
    char buf[512];
    std::ostringstream out;

    std::snprintf(buf, sizeof buf, "%-*s  %12s  %14s  %12s\n", w, "Variable", "Coefficient", "Standard Error",
                  "t-Statistic");
    out << buf;
    const std::string rule(static_cast<std::size_t>(w) + 2 + 12 + 2 + 14 + 2 + 12, '-');
    out << rule << '\n';
    for (const auto& row : report.rows) {
        std::snprintf(buf, sizeof buf, "%-*s  %12s  %14s  %12s\n", w, row.name.c_str(),
                      fixed3(row.coefficient).c_str(), fixed3(row.standard_error).c_str(),
                      fixed3(row.t_statistic).c_str());
        out << buf;
    }
    out << rule << '\n' << "Model Statistics\n";
    std::snprintf(buf, sizeof buf, "%-*s  %12s  %-14s  %12s\n", w, "R-squared", fixed3(report.r_squared).c_str(),
                  "F-Statistic", fixed3(report.f_statistic).c_str());
    out << buf;
    std::snprintf(buf, sizeof buf, "%-*s  %12s  %-14s  %12zu\n", w, "Adjusted R-squared",
                  fixed3(report.adjusted_r_squared).c_str(), "Observations", report.n_observations);
    out << buf;
    return out.str();
}

std::string report_to_json(const RegressionReport& report)
{
    nlohmann::ordered_json doc;
    doc["response"] = report.response;
    doc["intercept"] = report.intercept;
    auto& rows = doc["coefficients"] = nlohmann::ordered_json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"name", r.name},
                        {"coefficient", r.coefficient},
                        {"standard_error", r.standard_error},
                        {"t_statistic", r.t_statistic}});
    }
    doc["r_squared"] = report.r_squared;
    doc["adjusted_r_squared"] = report.adjusted_r_squared;
    doc["f_statistic"] = report.f_statistic;
    doc["n_observations"] = report.n_observations;
    return doc.dump(2) + "\n";
}

} // namespace herding
