#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace evac {

/// A results table as written by the batch runner.
struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    long column(const std::string& name) const; // -1 when absent
};

/// Parses a comma-separated table with a header row. Throws on ragged rows
/// or a missing header.
CsvTable read_csv(std::istream& in);

/// Spearman rank correlation with average ranks on ties. NaN when either
/// sequence is constant or shorter than 2.
double spearman(std::span<const double> x, std::span<const double> y);

struct SummaryRow {
    std::vector<std::string> keys; // group values, in group-by order
    long n = 0;
    double ticks_mean = 0, ticks_sd = 0, ticks_min = 0, ticks_max = 0;
    double uec_mean = 0, uec_sd = 0, uec_min = 0, uec_max = 0;
};

struct SpearmanLine {
    std::string context; // fixed values of the non-pct_bne keys, or "(all)"
    double value = 0;
};

struct SummaryResult {
    std::vector<std::string> group_by;
    std::vector<SummaryRow> rows;
    /// pct_bne vs group-mean evac_ticks, one line per combination of the
    /// remaining keys; only filled when pct_bne is a group axis.
    std::vector<SpearmanLine> spearman_ticks;
};

/// Groups the results table by the given key columns and reports count, mean,
/// sample standard deviation, min and max of evac_ticks and mean_uec per
/// group. Groups are ordered by key (numerically where both values parse as
/// numbers). Throws on an empty table or unknown key column.
SummaryResult summarize(const CsvTable& table,
                        const std::vector<std::string>& group_by);

/// Renders the summary as aligned columns ("table") or CSV.
void print_summary(std::ostream& out, const SummaryResult& summary,
                   const std::string& format);

} // namespace evac
