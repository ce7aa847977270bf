#include "evac/summary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace evac {

namespace {

std::vector<std::string> split_row(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) out.push_back(field);
    if (!line.empty() && line.back() == ',') out.push_back("");
    return out;
}

bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    std::size_t used = 0;
    try {
        out = std::stod(s, &used);
    } catch (const std::exception&) {
        return false;
    }
    return used == s.size();
}

// Numeric-aware ordering so pct_bne groups come out as 0, 2, 10 rather than
// lexicographic.
bool key_less(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        double na = 0, nb = 0;
        if (parse_number(a[i], na) && parse_number(b[i], nb)) {
            if (na != nb) return na < nb;
        } else if (a[i] != b[i]) {
            return a[i] < b[i];
        }
    }
    return a.size() < b.size();
}

std::vector<double> ranks(std::span<const double> v) {
    const std::size_t n = v.size();
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<double> r(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && v[idx[j + 1]] == v[idx[i]]) ++j;
        const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) r[idx[k]] = avg;
        i = j + 1;
    }
    return r;
}

struct Moments {
    long n = 0;
    double sum = 0, sumsq = 0;
    double mn = std::numeric_limits<double>::infinity();
    double mx = -std::numeric_limits<double>::infinity();
    void add(double v) {
        ++n;
        sum += v;
        sumsq += v * v;
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    double mean() const { return sum / static_cast<double>(n); }
    double sd() const {
        if (n < 2) return 0.0;
        const double m = mean();
        double var = (sumsq - static_cast<double>(n) * m * m) / static_cast<double>(n - 1);
        return var > 0.0 ? std::sqrt(var) : 0.0;
    }
};

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

long CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<long>(i);
    return -1;
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("CSV input is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    table.columns = split_row(line);
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> row = split_row(line);
        if (row.size() != table.columns.size())
            throw std::invalid_argument("CSV row has " + std::to_string(row.size()) +
                                        " fields, header has " +
                                        std::to_string(table.columns.size()));
        table.rows.push_back(std::move(row));
    }
    return table;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n != y.size() || n < 2)
        return std::numeric_limits<double>::quiet_NaN();
    const std::vector<double> rx = ranks(x);
    const std::vector<double> ry = ranks(y);
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += rx[i];
        my += ry[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double cov = 0, vx = 0, vy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        cov += (rx[i] - mx) * (ry[i] - my);
        vx += (rx[i] - mx) * (rx[i] - mx);
        vy += (ry[i] - my) * (ry[i] - my);
    }
    if (vx == 0.0 || vy == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return cov / std::sqrt(vx * vy);
}

SummaryResult summarize(const CsvTable& table,
                        const std::vector<std::string>& group_by) {
    if (table.rows.empty())
        throw std::invalid_argument("results table has no data rows");
    if (group_by.empty())
        throw std::invalid_argument("at least one group-by column is required");

    std::vector<long> key_cols;
    for (const std::string& name : group_by) {
        const long c = table.column(name);
        if (c < 0)
            throw std::invalid_argument("unknown group-by column '" + name + "'");
        key_cols.push_back(c);
    }
    const long ticks_col = table.column("evac_ticks");
    const long uec_col = table.column("mean_uec");
    if (ticks_col < 0 || uec_col < 0)
        throw std::invalid_argument("table lacks evac_ticks/mean_uec columns");

    struct Group {
        Moments ticks, uec;
    };
    std::map<std::vector<std::string>, Group,
             bool (*)(const std::vector<std::string>&, const std::vector<std::string>&)>
        groups(&key_less);

    for (const auto& row : table.rows) {
        std::vector<std::string> key;
        key.reserve(key_cols.size());
        for (const long c : key_cols) key.push_back(row[static_cast<std::size_t>(c)]);
        double t = 0, u = 0;
        if (!parse_number(row[static_cast<std::size_t>(ticks_col)], t) ||
            !parse_number(row[static_cast<std::size_t>(uec_col)], u))
            throw std::invalid_argument("non-numeric evac_ticks/mean_uec value");
        Group& g = groups[key];
        g.ticks.add(t);
        g.uec.add(u);
    }

    SummaryResult result;
    result.group_by = group_by;
    for (const auto& [key, g] : groups) {
        SummaryRow row;
        row.keys = key;
        row.n = g.ticks.n;
        row.ticks_mean = g.ticks.mean();
        row.ticks_sd = g.ticks.sd();
        row.ticks_min = g.ticks.mn;
        row.ticks_max = g.ticks.mx;
        row.uec_mean = g.uec.mean();
        row.uec_sd = g.uec.sd();
        row.uec_min = g.uec.mn;
        row.uec_max = g.uec.mx;
        result.rows.push_back(std::move(row));
    }

    // Correlation of pct_bne against group-mean exit time, per combination of
    // the other keys.
    const auto pct_it = std::find(group_by.begin(), group_by.end(), "pct_bne");
    if (pct_it != group_by.end()) {
        const std::size_t pct_idx =
            static_cast<std::size_t>(pct_it - group_by.begin());
        std::map<std::vector<std::string>, std::vector<std::pair<double, double>>,
                 decltype(&key_less)>
            series(&key_less);
        for (const SummaryRow& row : result.rows) {
            double pct = 0;
            if (!parse_number(row.keys[pct_idx], pct)) continue;
            std::vector<std::string> rest;
            for (std::size_t i = 0; i < row.keys.size(); ++i)
                if (i != pct_idx) rest.push_back(row.keys[i]);
            series[rest].push_back({pct, row.ticks_mean});
        }
        for (const auto& [rest, points] : series) {
            std::vector<double> xs, ys;
            for (const auto& [x, y] : points) {
                xs.push_back(x);
                ys.push_back(y);
            }
            std::string context;
            for (std::size_t i = 0, j = 0; i < group_by.size(); ++i) {
                if (i == pct_idx) continue;
                if (!context.empty()) context += ",";
                context += group_by[i] + "=" + rest[j++];
            }
            if (context.empty()) context = "(all)";
            result.spearman_ticks.push_back({context, spearman(xs, ys)});
        }
    }
    return result;
}

void print_summary(std::ostream& out, const SummaryResult& summary,
                   const std::string& format) {
    std::vector<std::string> header = summary.group_by;
    for (const char* name : {"n", "ticks_mean", "ticks_sd", "ticks_min",
                             "ticks_max", "uec_mean", "uec_sd", "uec_min", "uec_max"})
        header.push_back(name);

    std::vector<std::vector<std::string>> rows;
    for (const SummaryRow& r : summary.rows) {
        std::vector<std::string> row = r.keys;
        row.push_back(std::to_string(r.n));
        for (const double v : {r.ticks_mean, r.ticks_sd, r.ticks_min, r.ticks_max,
                               r.uec_mean, r.uec_sd, r.uec_min, r.uec_max})
            row.push_back(fmt(v));
        rows.push_back(std::move(row));
    }

    if (format == "csv") {
        for (std::size_t i = 0; i < header.size(); ++i)
            out << (i ? "," : "") << header[i];
        out << '\n';
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << row[i];
            out << '\n';
        }
    } else {
        std::vector<std::size_t> width(header.size());
        for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
        for (const auto& row : rows)
            for (std::size_t i = 0; i < row.size(); ++i)
                width[i] = std::max(width[i], row[i].size());
        auto print_row = [&](const std::vector<std::string>& row) {
            for (std::size_t i = 0; i < row.size(); ++i) {
                if (i) out << "  ";
                out << row[i];
                for (std::size_t pad = row[i].size(); pad < width[i]; ++pad) out << ' ';
            }
            out << '\n';
        };
        print_row(header);
        for (const auto& row : rows) print_row(row);
    }

    for (const SpearmanLine& line : summary.spearman_ticks)
        out << "spearman pct_bne~evac_ticks [" << line.context
            << "] = " << fmt(line.value) << '\n';
}

} // namespace evac
