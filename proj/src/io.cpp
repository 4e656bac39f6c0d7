#include "swingfreq/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "swingfreq/errors.hpp"

namespace swingfreq {

namespace {

std::string trim(const std::string& s) {
    const std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double parse_field(const std::string& field, long line_no) {
    std::string f = trim(field);
    if (!f.empty() && f.front() == '+') f.erase(0, 1);
    double v = 0.0;
    const auto res = std::from_chars(f.data(), f.data() + f.size(), v);
    if (res.ec != std::errc() || res.ptr != f.data() + f.size())
        throw ParseError("not a number: '" + trim(field) + "'", line_no);
    return v;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    return lines;
}

bool is_blank_or_comment(const std::string& line) {
    const std::string t = trim(line);
    return t.empty() || t.front() == '#';
}

std::string fmt(const char* format, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, v);
    return buf;
}

}  // namespace

// ==== formatting ==========================================================

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string format_sig6(double v) { return fmt("%#.6g", v); }

// ==== atomic write ========================================================

void atomic_write_text(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    const fs::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + tmp.string());
        out << content;
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failed: " + tmp.string());
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        std::error_code ec2;
        fs::remove(tmp, ec2);
        throw IoError("rename failed: " + path.string() + ": " + ec.message());
    }
}

// ==== trajectory CSV ======================================================

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t";
    for (const auto& name : traj.names) {
        out += ',';
        out += name;
    }
    out += '\n';
    const std::size_t n = traj.n_samples();
    for (std::size_t i = 0; i < n; ++i) {
        out += format_double(traj.time(i));
        for (const auto& col : traj.columns) {
            out += ',';
            out += format_double(col[i]);
        }
        out += '\n';
    }
    return out;
}

Trajectory read_trajectory_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    std::size_t idx = 0;
    while (idx < lines.size() && is_blank_or_comment(lines[idx])) ++idx;
    if (idx == lines.size()) throw ParseError("empty file: " + path.string());

    auto header = split_csv(lines[idx]);
    for (auto& h : header) h = trim(h);
    if (header.size() < 2 || header[0] != "t")
        throw ParseError("trajectory header must start with 't'", static_cast<long>(idx) + 1);

    Trajectory traj;
    traj.names.assign(header.begin() + 1, header.end());
    traj.columns.assign(traj.names.size(), {});
    std::vector<double> t;
    std::vector<long> row_line;
    for (std::size_t li = idx + 1; li < lines.size(); ++li) {
        if (is_blank_or_comment(lines[li])) continue;
        const long line_no = static_cast<long>(li) + 1;
        const auto fields = split_csv(lines[li]);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        t.push_back(parse_field(fields[0], line_no));
        row_line.push_back(line_no);
        for (std::size_t c = 0; c < traj.columns.size(); ++c)
            traj.columns[c].push_back(parse_field(fields[c + 1], line_no));
    }
    if (t.size() < 2) throw ParseError("trajectory needs at least 2 samples: " + path.string());

    traj.t0 = t[0];
    traj.dt = t[1] - t[0];
    if (!(traj.dt > 0.0)) throw ParseError("time must be strictly increasing", row_line[1]);
    for (std::size_t i = 1; i < t.size(); ++i) {
        const double step = t[i] - t[i - 1];
        const double tol = 1e-9 * std::max(1.0, std::fabs(t[i])) + 1e-12;
        if (std::fabs(step - traj.dt) > tol)
            throw ParseError("non-uniform time step", row_line[i]);
    }
    return traj;
}

// ==== measured series CSV =================================================

MeasuredSeries read_measured_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    std::size_t idx = 0;
    while (idx < lines.size() && is_blank_or_comment(lines[idx])) ++idx;
    if (idx == lines.size()) throw ParseError("empty file: " + path.string());

    auto header = split_csv(lines[idx]);
    for (auto& h : header) h = trim(h);
    std::size_t t_col = header.size();
    std::size_t d_col = header.size();
    for (std::size_t c = 0; c < header.size(); ++c) {
        if (header[c] == "t") t_col = c;
        if (header[c] == "delta") d_col = c;
    }
    if (t_col == header.size() || d_col == header.size())
        throw ParseError("need 't' and 'delta' columns", static_cast<long>(idx) + 1);

    MeasuredSeries series;
    for (std::size_t li = idx + 1; li < lines.size(); ++li) {
        if (is_blank_or_comment(lines[li])) continue;
        const long line_no = static_cast<long>(li) + 1;
        const auto fields = split_csv(lines[li]);
        if (fields.size() != header.size())
            throw ParseError("expected " + std::to_string(header.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             line_no);
        const double t = parse_field(fields[t_col], line_no);
        if (!series.t.empty() && !(t > series.t.back()))
            throw ParseError("time must be strictly increasing", line_no);
        series.t.push_back(t);
        series.angle.push_back(parse_field(fields[d_col], line_no));
    }
    if (series.t.size() < 8)
        throw ParseError("need at least 8 samples: " + path.string());
    return series;
}

// ==== F-A curve CSV =======================================================

std::string fa_csv(const FaCurve& curve, const FaMethod& method) {
    std::string out = "oa_rad,f_hz\n";
    for (const auto& pt : curve.points) {
        out += format_double(pt.oa);
        out += ',';
        out += format_double(pt.f);
        out += '\n';
    }
    out += "# oa_limit_rad=" + format_double(curve.oa_limit) + " method=" + method.name() + "\n";
    return out;
}

FaCurve read_fa_csv(const std::filesystem::path& path) {
    const auto lines = read_lines(path);
    FaCurve curve;
    bool header_seen = false;
    for (std::size_t li = 0; li < lines.size(); ++li) {
        const std::string line = trim(lines[li]);
        const long line_no = static_cast<long>(li) + 1;
        if (line.empty()) continue;
        if (line.front() == '#') {
            const std::string key = "oa_limit_rad=";
            const std::size_t pos = line.find(key);
            if (pos != std::string::npos) {
                const std::size_t start = pos + key.size();
                const std::size_t end = line.find_first_of(" \t", start);
                const std::string tok =
                    line.substr(start, end == std::string::npos ? end : end - start);
                curve.oa_limit = parse_field(tok, line_no);
            }
            continue;
        }
        if (!header_seen) {
            auto h = split_csv(line);
            for (auto& f : h) f = trim(f);
            if (h.size() != 2 || h[0] != "oa_rad" || h[1] != "f_hz")
                throw ParseError("expected header 'oa_rad,f_hz'", line_no);
            header_seen = true;
            continue;
        }
        const auto fields = split_csv(line);
        if (fields.size() != 2) throw ParseError("expected 2 fields", line_no);
        const FaPoint pt{parse_field(fields[0], line_no), parse_field(fields[1], line_no)};
        if (!curve.points.empty() && !(pt.oa > curve.points.back().oa))
            throw ParseError("oa must be strictly increasing", line_no);
        curve.points.push_back(pt);
    }
    if (!header_seen) throw ParseError("empty file: " + path.string());
    return curve;
}

// ==== cycle and comparison CSV ============================================

std::string cycles_csv(const std::vector<CyclePoint>& points) {
    std::string out = "t_mid,oa_rad,of_hz\n";
    for (const auto& cp : points) {
        out += format_double(cp.t_mid);
        out += ',';
        out += format_double(cp.oa);
        out += ',';
        out += format_double(cp.of);
        out += '\n';
    }
    return out;
}

std::string comparison_csv(const FaComparison& cmp) {
    std::string out = "t_mid,oa_rad,of_hz,predicted_f_hz,rel_err\n";
    for (const auto& e : cmp.entries) {
        out += format_double(e.point.t_mid);
        out += ',';
        out += format_double(e.point.oa);
        out += ',';
        out += format_double(e.point.of);
        out += ',';
        out += format_double(e.predicted_f);
        out += ',';
        out += format_double(e.rel_err);
        out += '\n';
    }
    return out;
}

std::string equivalent_csv(const std::vector<double>& t, const std::vector<double>& delta_eq) {
    std::string out = "t,delta_eq\n";
    const std::size_t n = std::min(t.size(), delta_eq.size());
    for (std::size_t i = 0; i < n; ++i) {
        out += format_double(t[i]);
        out += ',';
        out += format_double(delta_eq[i]);
        out += '\n';
    }
    return out;
}

// ==== SVG chart ===========================================================

std::string fa_svg(const FaCurve& curve) {
    const double width = 640.0;
    const double height = 480.0;
    const double left = 70.0;
    const double right = 20.0;
    const double top = 20.0;
    const double bottom = 50.0;
    const double plot_w = width - left - right;
    const double plot_h = height - top - bottom;

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    if (!curve.points.empty()) {
        xmin = xmax = curve.points.front().oa;
        ymin = ymax = curve.points.front().f;
        for (const auto& pt : curve.points) {
            xmin = std::min(xmin, pt.oa);
            xmax = std::max(xmax, pt.oa);
            ymin = std::min(ymin, pt.f);
            ymax = std::max(ymax, pt.f);
        }
    }
    if (!(xmax > xmin)) {
        xmin -= 0.5;
        xmax += 0.5;
    }
    if (!(ymax > ymin)) {
        ymin -= 0.5;
        ymax += 0.5;
    }
    const auto px = [&](double x) { return left + (x - xmin) / (xmax - xmin) * plot_w; };
    const auto py = [&](double y) { return top + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"480\" "
           "viewBox=\"0 0 640 480\" font-family=\"sans-serif\" font-size=\"12\">\n";
    svg += "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
    svg += "<line x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", top + plot_h) +
           "\" x2=\"" + fmt("%.2f", left + plot_w) + "\" y2=\"" + fmt("%.2f", top + plot_h) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + fmt("%.2f", left) + "\" y1=\"" + fmt("%.2f", top) + "\" x2=\"" +
           fmt("%.2f", left) + "\" y2=\"" + fmt("%.2f", top + plot_h) + "\" stroke=\"black\"/>\n";

    for (int i = 0; i < 5; ++i) {
        const double frac = static_cast<double>(i) / 4.0;
        const double xv = xmin + frac * (xmax - xmin);
        const double yv = ymin + frac * (ymax - ymin);
        const double xp = px(xv);
        const double yp = py(yv);
        svg += "<line x1=\"" + fmt("%.2f", xp) + "\" y1=\"" + fmt("%.2f", top + plot_h) +
               "\" x2=\"" + fmt("%.2f", xp) + "\" y2=\"" + fmt("%.2f", top + plot_h + 5.0) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", xp) + "\" y=\"" + fmt("%.2f", top + plot_h + 18.0) +
               "\" text-anchor=\"middle\">" + fmt("%.4g", xv) + "</text>\n";
        svg += "<line x1=\"" + fmt("%.2f", left - 5.0) + "\" y1=\"" + fmt("%.2f", yp) +
               "\" x2=\"" + fmt("%.2f", left) + "\" y2=\"" + fmt("%.2f", yp) +
               "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + fmt("%.2f", left - 8.0) + "\" y=\"" + fmt("%.2f", yp + 4.0) +
               "\" text-anchor=\"end\">" + fmt("%.4g", yv) + "</text>\n";
    }

    if (!curve.points.empty()) {
        svg += "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < curve.points.size(); ++i) {
            if (i > 0) svg += ' ';
            svg += fmt("%.2f", px(curve.points[i].oa)) + "," + fmt("%.2f", py(curve.points[i].f));
        }
        svg += "\"/>\n";
    }

    svg += "<text x=\"" + fmt("%.2f", left + plot_w / 2.0) + "\" y=\"" +
           fmt("%.2f", height - 12.0) + "\" text-anchor=\"middle\">OA (rad)</text>\n";
    svg += "<text transform=\"translate(16," + fmt("%.2f", top + plot_h / 2.0) +
           ") rotate(-90)\" text-anchor=\"middle\">OF (Hz)</text>\n";
    svg += "</svg>\n";
    return svg;
}

}  // namespace swingfreq
