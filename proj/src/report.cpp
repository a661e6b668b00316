#include "iree/report.hpp"

#include "iree/errors.hpp"

#include <cstdio>
#include <fstream>

namespace iree {

namespace {

void append_metric_cells(std::string& out, const SweepRow& r) {
    const double cells[] = {r.numeric.ee, r.numeric.aee,   r.numeric.iee,  r.numeric.iree,
                            r.closed.iree, r.numeric.se,    r.numeric.de,   r.numeric.xi,
                            r.closed.xi,   r.numeric.c_tot, r.numeric.d_tot, r.numeric.p_tot};
    for (double v : cells) {
        out += ',';
        out += format_number(v);
    }
}

struct BestOf {
    const char* name;
    double (*pick)(const SweepRow&);
};

constexpr BestOf kBestColumns[] = {
    {"ee", [](const SweepRow& r) { return r.numeric.ee; }},
    {"aee", [](const SweepRow& r) { return r.numeric.aee; }},
    {"iee", [](const SweepRow& r) { return r.numeric.iee; }},
    {"iree_numeric", [](const SweepRow& r) { return r.numeric.iree; }},
    {"iree_closed", [](const SweepRow& r) { return r.closed.iree; }},
    {"se", [](const SweepRow& r) { return r.numeric.se; }},
    {"de", [](const SweepRow& r) { return r.numeric.de; }},
};

} // namespace

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

std::string format_csv(const std::vector<SweepRow>& rows) {
    std::string out = kCsvHeader;
    out += '\n';
    for (const SweepRow& r : rows) {
        out += format_number(r.axis);
        if (r.ok) {
            append_metric_cells(out, r);
            out += (r.numeric.xi_clamped || r.closed.xi_clamped) ? ",true" : ",false";
        } else {
            for (int i = 0; i < 12; ++i) {
                out += ",nan";
            }
            out += ",failed";
        }
        out += '\n';
    }
    return out;
}

std::string format_human(const std::vector<SweepRow>& rows) {
    std::size_t failed = 0;
    for (const SweepRow& r : rows) {
        failed += r.ok ? 0 : 1;
    }
    std::string out = "points: " + std::to_string(rows.size()) + " (" + std::to_string(failed) +
                      " failed)\n";
    if (failed < rows.size()) {
        for (const BestOf& col : kBestColumns) {
            const SweepRow* best = nullptr;
            for (const SweepRow& r : rows) {
                if (r.ok && (!best || col.pick(r) > col.pick(*best))) {
                    best = &r;
                }
            }
            out += "best ";
            out += col.name;
            out.append(13 - std::string(col.name).size(), ' ');
            out += ": " + format_number(col.pick(*best)) + " at axis " + format_number(best->axis) +
                   "\n";
        }
    }
    for (const SweepRow& r : rows) {
        if (!r.ok) {
            out += "failed at axis " + format_number(r.axis) + ": " + r.error + "\n";
        }
    }
    return out;
}

std::string format_report(const MetricsReport& r) {
    const auto line = [](const char* name, const std::string& value) {
        std::string s = name;
        s.append(11 - s.size(), ' ');
        return s + ": " + value + "\n";
    };
    std::string out;
    out += line("mode", r.mode == XiMode::Numeric ? "numeric" : "closed-form");
    out += line("c_tot_bits", format_number(r.c_tot));
    out += line("d_tot_bits", format_number(r.d_tot));
    out += line("p_tot_j", format_number(r.p_tot));
    out += line("ee", format_number(r.ee));
    out += line("aee", format_number(r.aee));
    out += line("iee", format_number(r.iee));
    out += line("iree", format_number(r.iree));
    out += line("se", format_number(r.se));
    out += line("de", format_number(r.de));
    out += line("xi", format_number(r.xi));
    out += line("xi_clamped", r.xi_clamped ? "true" : "false");
    return out;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot open for writing: " + path);
    }
    out << text;
    out.flush();
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

} // namespace iree
