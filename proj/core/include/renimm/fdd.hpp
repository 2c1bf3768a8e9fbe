#ifndef RENIMM_FDD_HPP
#define RENIMM_FDD_HPP

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace renimm {

/// Replication-by-grid-point matrix of (normalized) process values.
struct FddSample {
    std::vector<double> values; // row-major, reps x u_grid.size()
    std::vector<double> u_grid;
    double t = 0.0;
    std::string case_label;
    std::string normalization; // centering and scale actually applied

    std::size_t reps() const { return u_grid.empty() ? 0 : values.size() / u_grid.size(); }
    double at(std::size_t rep, std::size_t j) const { return values[rep * u_grid.size() + j]; }
    double& at(std::size_t rep, std::size_t j) { return values[rep * u_grid.size() + j]; }

    /// Column copy for one grid point.
    std::vector<double> column(std::size_t j) const;

    double col_mean(std::size_t j) const;
    double col_variance(std::size_t j) const;
    double cov(std::size_t i, std::size_t j) const;

    /// CSV with header rep,u,value,t,case.
    void write_csv(std::ostream& os) const;

    void validate() const; // finite entries, consistent shape
};

} // namespace renimm

#endif
