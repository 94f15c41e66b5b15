#include "cmm/emit.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "json.hpp"

#include "cmm/gaussian.hpp"
#include "cmm/lyapunov.hpp"

namespace cmm {

namespace {

using json = nlohmann::ordered_json;

std::vector<std::string> legend() {
  return {
      "E_ab: logarithmic negativity of modes a and b",
      "R_abc: minimal residual contangle of a, b, c (clamped to 0 inside (-1e-9, 0))",
      "R_abc_raw: smallest unclamped pivot contangle; below -1e-9 is a monogamy violation",
      "V_a: smallest quadrature variance of mode a (vacuum = 0.5)",
      "X_*: |pos - neg| / (pos + neg); X = 0 when both directions are 0",
      "_pos / _neg: evaluated at +|delta_B| / -|delta_B|",
      "stable: 1 if every drift eigenvalue has negative real part (marginal counts as 0)",
      "NA: not available (unstable, marginal, unphysical or failed point)",
  };
}

std::vector<std::string> header_lines(const SweepResult& r) {
  const SweepSpec& s = r.spec;
  std::vector<std::string> out;
  out.push_back("sweep: " + s.name + " (base: " + s.base + ")");
  out.push_back("axis: " + s.axis.parameter + " from " + format_number(s.axis.start) + " to " +
                format_number(s.axis.stop) + ", " + std::to_string(s.axis.count) + " points");
  if (s.outer) {
    out.push_back("outer axis: " + s.outer->parameter + ", " +
                  std::to_string(s.outer->values.size()) + " values");
  }
  if (s.barnett_pair) out.push_back("delta_B pair mode: each point at +|delta_B| and -|delta_B|");
  out.push_back("base parameters (rad/s, temperature in K):");
  for (const auto& l : describe_params(s.params)) out.push_back("  " + l);
  for (const auto& l : s.provenance.banner()) out.push_back(l);
  for (const auto& l : legend()) out.push_back("legend: " + l);
  return out;
}

std::string cell(const std::optional<double>& v) { return v ? format_number(*v) : "NA"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string fixed(double v, int digits = 2) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                         "#17becf", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22"};

// Maps t in [0, 1] onto a dark-blue to yellow ramp.
std::string ramp(double t) {
  t = std::clamp(t, 0.0, 1.0);
  const int r = static_cast<int>(std::lround(255 * std::min(1.0, 2.0 * t)));
  const int g = static_cast<int>(std::lround(40 + 200 * t));
  const int b = static_cast<int>(std::lround(120 * (1.0 - t)));
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
  return buf;
}

struct Frame {
  double width = 720, height = 440;
  double left = 70, right = 170, top = 30, bottom = 50;
  double x0, x1, y0, y1;

  double px(double x) const { return left + (x - x0) / (x1 - x0) * (width - left - right); }
  double py(double y) const { return height - bottom - (y - y0) / (y1 - y0) * (height - top - bottom); }
};

void svg_axes(std::ostringstream& o, const Frame& f, const std::string& xlabel,
              const std::string& title) {
  const double xb = f.height - f.bottom;
  const double xr = f.width - f.right;
  o << "<rect x=\"" << fixed(f.left) << "\" y=\"" << fixed(f.top) << "\" width=\""
    << fixed(xr - f.left) << "\" height=\"" << fixed(xb - f.top)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double xv = f.x0 + (f.x1 - f.x0) * k / 4;
    const double yv = f.y0 + (f.y1 - f.y0) * k / 4;
    o << "<text x=\"" << fixed(f.px(xv)) << "\" y=\"" << fixed(xb + 16)
      << "\" font-size=\"11\" text-anchor=\"middle\">" << format_number(std::round(xv * 1e4) / 1e4)
      << "</text>\n";
    o << "<text x=\"" << fixed(f.left - 6) << "\" y=\"" << fixed(f.py(yv) + 4)
      << "\" font-size=\"11\" text-anchor=\"end\">" << format_number(std::round(yv * 1e4) / 1e4)
      << "</text>\n";
  }
  o << "<text x=\"" << fixed((f.left + xr) / 2) << "\" y=\"" << fixed(f.height - 12)
    << "\" font-size=\"12\" text-anchor=\"middle\">" << xlabel << "</text>\n";
  o << "<text x=\"" << fixed((f.left + xr) / 2) << "\" y=\"18\" font-size=\"13\" "
       "text-anchor=\"middle\">"
    << title << "</text>\n";
}

std::string svg_open(const Frame& f) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed(f.width, 0) +
         "\" height=\"" + fixed(f.height, 0) + "\" viewBox=\"0 0 " + fixed(f.width, 0) + " " +
         fixed(f.height, 0) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

bool plotted(const std::string& column) {
  return column.rfind("E_", 0) == 0 || column.rfind("R_", 0) == 0 ||
         column.rfind("V_", 0) == 0 || column.rfind("X_", 0) == 0;
}

std::string line_chart(const SweepResult& r, const Table& t) {
  const std::size_t xcol = 0;
  std::vector<std::size_t> cols;
  for (std::size_t c = 1; c < t.columns.size(); ++c) {
    if (plotted(t.columns[c]) && t.columns[c].find("_raw") == std::string::npos) cols.push_back(c);
  }
  Frame f;
  f.x0 = r.spec.axis.start;
  f.x1 = r.spec.axis.stop;
  if (f.x0 == f.x1) f.x1 = f.x0 + 1;
  f.y0 = 0.0;
  f.y1 = 0.0;
  for (const auto& row : t.numeric) {
    for (std::size_t c : cols) {
      if (row[c]) {
        f.y0 = std::min(f.y0, *row[c]);
        f.y1 = std::max(f.y1, *row[c]);
      }
    }
  }
  if (f.y1 <= f.y0) f.y1 = f.y0 + 1.0;
  f.y1 += 0.05 * (f.y1 - f.y0);

  std::ostringstream o;
  o << svg_open(f);
  svg_axes(o, f, r.spec.axis.parameter, r.spec.name);
  for (std::size_t k = 0; k < cols.size(); ++k) {
    const char* color = palette[k % std::size(palette)];
    std::string path;
    bool pen_down = false;
    for (const auto& row : t.numeric) {
      const auto& v = row[cols[k]];
      if (!v) {
        pen_down = false;  // gap at NA points
        continue;
      }
      path += (pen_down ? " L" : " M") + fixed(f.px(*row[xcol])) + " " + fixed(f.py(*v));
      pen_down = true;
    }
    if (!path.empty()) {
      o << "<path d=\"" << path.substr(1) << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\"/>\n";
    }
    const double ly = f.top + 14 + 16 * k;
    o << "<line x1=\"" << fixed(f.width - f.right + 10) << "\" y1=\"" << fixed(ly - 4) << "\" x2=\""
      << fixed(f.width - f.right + 30) << "\" y2=\"" << fixed(ly - 4) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n<text x=\"" << fixed(f.width - f.right + 35) << "\" y=\""
      << fixed(ly) << "\" font-size=\"11\">" << t.columns[cols[k]] << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string heatmap(const SweepResult& r, const Table& t) {
  std::size_t col = 0;
  for (std::size_t c = 2; c < t.columns.size(); ++c) {
    if (plotted(t.columns[c])) {
      col = c;
      break;
    }
  }
  const auto& outer = *r.spec.outer;
  const int nx = r.spec.axis.count;
  const int ny = static_cast<int>(outer.values.size());
  Frame f;
  f.x0 = r.spec.axis.start;
  f.x1 = r.spec.axis.stop;
  f.y0 = *std::min_element(outer.values.begin(), outer.values.end());
  f.y1 = *std::max_element(outer.values.begin(), outer.values.end());
  if (f.y1 <= f.y0) f.y1 = f.y0 + 1;
  double vmax = 0.0;
  for (const auto& row : t.numeric) {
    if (col && row[col]) vmax = std::max(vmax, *row[col]);
  }
  std::ostringstream o;
  o << svg_open(f);
  const double cw = (f.px(f.x1) - f.px(f.x0)) / std::max(1, nx - 1);
  const double ch = (f.py(f.y0) - f.py(f.y1)) / std::max(1, ny - 1);
  for (std::size_t i = 0; i < t.numeric.size(); ++i) {
    const auto& row = t.numeric[i];
    const auto& v = col ? row[col] : std::nullopt;
    const std::string fill = v ? ramp(vmax > 0 ? *v / vmax : 0.0) : "#ffffff";
    o << "<rect x=\"" << fixed(f.px(*row[1]) - cw / 2) << "\" y=\"" << fixed(f.py(*row[0]) - ch / 2)
      << "\" width=\"" << fixed(cw + 0.2) << "\" height=\"" << fixed(ch + 0.2) << "\" fill=\""
      << fill << "\"/>\n";
  }
  svg_axes(o, f, r.spec.axis.parameter + " (vertical: " + outer.parameter + ")",
           r.spec.name + ": " + (col ? t.columns[col] : std::string("none")) + ", max " +
               format_number(vmax));
  o << "</svg>\n";
  return o.str();
}

}  // namespace

Format parse_format(std::string_view s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "svg-plot" || s == "svg") return Format::svg;
  throw ConfigError("format", 0, "expected csv, json or svg-plot");
}

std::string_view extension(Format f) {
  switch (f) {
    case Format::csv: return ".csv";
    case Format::json: return ".json";
    case Format::svg: return ".svg";
  }
  return "";
}

std::string format_number(double v) {
  if (v == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::vector<std::string> describe_params(const PhysicalParams& p) {
  std::vector<std::string> out;
  auto add = [&](const char* n, double v) { out.push_back(std::string(n) + " = " + format_number(v)); };
  add("omega_c", p.omega_c);
  add("omega_m1", p.omega_m1);
  add("omega_m2", p.omega_m2);
  add("omega_b", p.omega_b);
  add("omega_drive", p.omega_drive);
  add("delta_B", p.delta_B);
  add("kappa_c", p.kappa_c);
  add("kappa_m1", p.kappa_m1);
  add("kappa_m2", p.kappa_m2);
  add("gamma_b", p.gamma_b);
  add("g1", p.g1);
  add("g2", p.g2);
  add("J", p.J);
  add("G0", p.G0);
  if (p.drive_amplitude) add("drive_amplitude", *p.drive_amplitude);
  if (p.G_direct) add("G_direct", *p.G_direct);
  add("temperature", p.temperature);
  return out;
}

std::string sweep_csv(const SweepResult& r) {
  const Table t = to_table(r);
  std::string out;
  for (const auto& l : header_lines(r)) out += "# " + l + "\n";
  for (const auto& c : t.columns) out += c + ",";
  out += "note\n";
  for (std::size_t i = 0; i < t.numeric.size(); ++i) {
    for (const auto& v : t.numeric[i]) out += cell(v) + ",";
    out += csv_field(t.notes[i]) + "\n";
  }
  return out;
}

std::string sweep_json(const SweepResult& r) {
  const Table t = to_table(r);
  json j;
  j["sweep"] = r.spec.name;
  j["header"] = header_lines(r);
  j["provenance"] = {{"published", r.spec.provenance.published},
                     {"assumed", r.spec.provenance.assumed},
                     {"notes", r.spec.provenance.notes}};
  std::vector<std::string> columns = t.columns;
  columns.push_back("note");
  j["columns"] = columns;
  json rows = json::array();
  for (std::size_t i = 0; i < t.numeric.size(); ++i) {
    json row = json::array();
    for (const auto& v : t.numeric[i]) row.push_back(v ? json(*v) : json(nullptr));
    row.push_back(t.notes[i]);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  return j.dump(1) + "\n";
}

std::string sweep_svg(const SweepResult& r) {
  const Table t = to_table(r);
  return r.spec.outer ? heatmap(r, t) : line_chart(r, t);
}

std::string emit_sweep(const SweepResult& r, Format f) {
  switch (f) {
    case Format::csv: return sweep_csv(r);
    case Format::json: return sweep_json(r);
    case Format::svg: return sweep_svg(r);
  }
  return {};
}

WignerReport make_wigner_report(const std::string& name, Mode mode, const PhysicalParams& p,
                                const WignerSettings& settings, const Provenance& prov) {
  const LinearizedSystem sys = linearize(p);
  if (!sys.stability.stable || sys.stability.marginal) {
    throw StabilityError(name + ": configuration is not stable", sys.stability.spectral_abscissa);
  }
  const CovarianceMatrix C = solve_lyapunov(sys.drift, sys.diffusion);
  if (!physicality_check(C)) throw DomainError(name + ": covariance matrix is unphysical");
  const CovarianceMatrix C2 = reduce(C, ModeSelection{mode});

  WignerReport r;
  r.name = name;
  r.params = p;
  r.provenance = prov;
  r.grid = wigner_grid(C2, settings.half_range_sigmas, settings.resolution);
  r.grid.mode = mode;
  r.integral = grid_integral(r.grid);
  r.squeezing = quadrature_squeezing(C2);
  return r;
}

std::string wigner_csv(const WignerReport& r) {
  std::string out;
  out += "# wigner: " + r.name + ", mode " + std::string(mode_name(r.grid.mode)) + "\n";
  out += "# contour (W = peak / e): a = " + format_number(r.grid.contour.a) +
         ", b = " + format_number(r.grid.contour.b) +
         ", theta = " + format_number(r.grid.contour.theta) + "\n";
  out += "# peak = " + format_number(r.grid.peak) + ", integral = " + format_number(r.integral) + "\n";
  out += "# parameters (rad/s, temperature in K):\n";
  for (const auto& l : describe_params(r.params)) out += "#   " + l + "\n";
  for (const auto& l : r.provenance.banner()) out += "# " + l + "\n";
  out += "x,p,W\n";
  for (std::size_t i = 0; i < r.grid.p.size(); ++i) {
    for (std::size_t j = 0; j < r.grid.x.size(); ++j) {
      out += format_number(r.grid.x[j]) + "," + format_number(r.grid.p[i]) + "," +
             format_number(r.grid.W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))) + "\n";
    }
  }
  return out;
}

std::string wigner_json(const WignerReport& r) {
  json j;
  j["name"] = r.name;
  j["mode"] = std::string(mode_name(r.grid.mode));
  j["contour"] = {{"a", r.grid.contour.a},
                  {"b", r.grid.contour.b},
                  {"theta", r.grid.contour.theta},
                  {"area", r.grid.contour.area()}};
  j["peak"] = r.grid.peak;
  j["integral"] = r.integral;
  j["min_variance"] = r.squeezing.min_variance;
  j["is_squeezed"] = r.squeezing.is_squeezed;
  j["grid"] = {{"x_min", r.grid.x.front()},
               {"x_max", r.grid.x.back()},
               {"resolution", r.grid.x.size()}};
  j["parameters"] = describe_params(r.params);
  j["provenance"] = {{"published", r.provenance.published},
                     {"assumed", r.provenance.assumed},
                     {"notes", r.provenance.notes}};
  return j.dump(1) + "\n";
}

std::string wigner_svg(const WignerReport& r) {
  const auto& g = r.grid;
  Frame f;
  f.width = 560;
  f.height = 500;
  f.right = 40;
  f.x0 = g.x.front();
  f.x1 = g.x.back();
  f.y0 = g.p.front();
  f.y1 = g.p.back();
  const std::size_t n = g.x.size();
  const std::size_t stride = std::max<std::size_t>(1, (n + 100) / 101);
  std::ostringstream o;
  o << svg_open(f);
  const double cw = (f.px(f.x1) - f.px(f.x0)) / (n - 1) * stride;
  const double ch = (f.py(f.y0) - f.py(f.y1)) / (g.p.size() - 1) * stride;
  for (std::size_t i = 0; i < g.p.size(); i += stride) {
    for (std::size_t j = 0; j < n; j += stride) {
      const double w = g.W(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      o << "<rect x=\"" << fixed(f.px(g.x[j]) - cw / 2) << "\" y=\"" << fixed(f.py(g.p[i]) - ch / 2)
        << "\" width=\"" << fixed(cw + 0.2) << "\" height=\"" << fixed(ch + 0.2) << "\" fill=\""
        << ramp(w / g.peak) << "\"/>\n";
    }
  }
  const double sx = (f.px(f.x1) - f.px(f.x0)) / (f.x1 - f.x0);
  const double sy = (f.py(f.y0) - f.py(f.y1)) / (f.y1 - f.y0);
  o << "<ellipse cx=\"0\" cy=\"0\" rx=\"" << fixed(g.contour.a, 4) << "\" ry=\"" << fixed(g.contour.b, 4)
    << "\" transform=\"translate(" << fixed(f.px(0)) << " " << fixed(f.py(0)) << ") scale("
    << fixed(sx, 4) << " " << fixed(-sy, 4) << ") rotate(" << fixed(g.contour.theta * 180 / std::numbers::pi, 3)
    << ")\" fill=\"none\" stroke=\"white\" stroke-width=\"" << fixed(1.5 / sx, 5) << "\"/>\n";
  svg_axes(o, f, "x (vertical: p)", r.name);
  o << "</svg>\n";
  return o.str();
}

void write_text(const std::filesystem::path& path, std::string_view content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw Error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace cmm
