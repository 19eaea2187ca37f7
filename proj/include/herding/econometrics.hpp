#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace herding {

/// Named numeric columns of equal length. Rows with a missing or
/// non-numeric cell are dropped on ingestion and counted.
class DataTable {
public:
    DataTable() = default;
    DataTable(std::vector<std::string> names, std::vector<std::vector<double>> columns);

    std::size_t rows() const noexcept { return columns_.empty() ? 0 : columns_.front().size(); }
    std::size_t dropped_rows() const noexcept { return dropped_; }
    const std::vector<std::string>& names() const noexcept { return names_; }

    bool has(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;

    /// Replaces a column. A shorter replacement drops the leading rows of
    /// every other column so the table stays aligned (a growth-rate series is
    /// one row short).
    void replace(const std::string& name, std::vector<double> values);
    void drop_leading_rows(std::size_t count);

    static DataTable read_csv(std::istream& in);
    static DataTable read_csv(const std::filesystem::path& path);

private:
    std::size_t index_of(const std::string& name) const;

    std::vector<std::string> names_;
    std::vector<std::vector<double>> columns_;
    std::size_t dropped_ = 0;
};

/// g_i = (x_i - x_{i-1}) / x_{i-1}; length n - 1.
std::vector<double> growth_rate(const std::vector<double>& series);

/// Affine map of [min, max] onto [0, 1].
std::vector<double> minmax_normalize(const std::vector<double>& series, const std::string& name = "series");

struct CoefficientRow {
    std::string name;
    double coefficient = 0.0;
    double standard_error = 0.0;
    double t_statistic = 0.0;
};

struct RegressionReport {
    std::string response;
    std::vector<CoefficientRow> rows;  ///< intercept first when present
    double r_squared = 0.0;
    double adjusted_r_squared = 0.0;
    double f_statistic = 0.0;          ///< classical overall F with (k, n - k - 1) dof
    std::size_t n_observations = 0;
    bool intercept = true;
    std::vector<double> residuals;
};

/// Least squares by Householder QR. Standard errors use the unbiased residual
/// variance SSR / (n - p). Throws ValidationError on unknown columns, too few
/// observations or a rank-deficient design.
RegressionReport ols_fit(const DataTable& table, const std::string& response,
                         const std::vector<std::string>& regressors, bool intercept = true);

/// Fixed-width table: Coefficient / Standard Error / t-Statistic per row and a
/// Model Statistics block, all to three decimals.
std::string render_report(const RegressionReport& report);

/// Machine-readable JSON form of the report.
std::string report_to_json(const RegressionReport& report);

} // namespace herding
