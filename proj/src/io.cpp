#include "oblab/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oblab/errors.hpp"

namespace oblab {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

double parse_double(const std::string& s, const std::string& where) {
  try {
    size_t pos = 0;
    const double x = std::stod(s, &pos);
    while (pos < s.size() && (s[pos] == ' ' || s[pos] == '\r')) ++pos;
    if (pos != s.size()) fail(status::io_error, where + ": trailing characters in \"" + s + "\"");
    if (!std::isfinite(x)) fail(status::io_error, where + ": non-finite value");
    return x;
  } catch (const error&) {
    throw;
  } catch (const std::exception&) {
    fail(status::io_error, where + ": cannot parse number \"" + s + "\"");
  }
}

std::string fmt_px(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string fmt_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

}  // namespace

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(status::io_error, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(status::io_error, "cannot write file: " + path);
  out << body;
  if (!out) fail(status::io_error, "write failed: " + path);
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) fail(status::io_error, "cannot create directory " + path + ": " + ec.message());
}

void write_field_csv(const std::string& path, const ScalarField& u) {
  std::ostringstream out;
  out << u.grid.m << ',' << format_double(u.grid.L) << '\n';
  for (int j = 0; j < u.grid.m; ++j) {
    for (int i = 0; i < u.grid.m; ++i) {
      if (i) out << ',';
      out << format_double(u.at(i, j));
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

ScalarField read_field_csv(const std::string& path) {
  const std::string body = read_text_file(path);
  std::istringstream in(body);
  std::string line;
  if (!std::getline(in, line)) fail(status::io_error, path + ": empty field file");
  auto head = split(line, ',');
  if (head.size() != 2) fail(status::io_error, path + ": first line must hold m and L");
  int m = 0;
  try {
    m = std::stoi(head[0]);
  } catch (const std::exception&) {
    fail(status::io_error, path + ": cannot parse m from \"" + head[0] + "\"");
  }
  const double L = parse_double(head[1], path + " line 1");
  GridSpec g;
  try {
    g = make_grid(m, L);
  } catch (const error& e) {
    fail(status::io_error, path + ": " + e.what());
  }
  ScalarField u = make_field(g);
  for (int j = 0; j < m; ++j) {
    if (!std::getline(in, line))
      fail(status::io_error, path + ": expected " + std::to_string(m) + " data rows");
    auto cells = split(line, ',');
    if (!cells.empty() && cells.back().empty() && static_cast<int>(cells.size()) == m + 1)
      cells.pop_back();
    if (static_cast<int>(cells.size()) != m)
      fail(status::io_error,
           path + " line " + std::to_string(j + 2) + ": expected " + std::to_string(m) +
               " values, got " + std::to_string(cells.size()));
    for (int i = 0; i < m; ++i)
      u.at(i, j) = parse_double(cells[i], path + " line " + std::to_string(j + 2));
  }
  return u;
}

void write_mask_csv(const std::string& path, const GridSpec& g,
                    const std::vector<uint8_t>& mask) {
  if (mask.size() != static_cast<size_t>(g.m) * g.m)
    fail(status::internal_error, "mask size does not match grid");
  std::ostringstream out;
  out << g.m << ',' << format_double(g.L) << '\n';
  for (int j = 0; j < g.m; ++j) {
    for (int i = 0; i < g.m; ++i) {
      if (i) out << ',';
      out << (mask[static_cast<size_t>(j) * g.m + i] ? '1' : '0');
    }
    out << '\n';
  }
  write_text_file(path, out.str());
}

void write_profile_csv(const std::string& path, const MonotoneProfile& p) {
  std::ostringstream out;
  out << "R,energy_term,boundary_term,A,drift\n";
  for (const ProfileRow& r : p.rows)
    out << format_double(r.R) << ',' << format_double(r.energy_term) << ','
        << format_double(r.boundary_term) << ',' << format_double(r.A) << ','
        << format_double(r.drift) << '\n';
  write_text_file(path, out.str());
}

void write_blowup_csv(const std::string& path, const BlowupReport& rep) {
  std::ostringstream out;
  out << "R,deviation,sup_norm\n";
  for (const BlowupStep& s : rep.steps)
    out << format_double(s.R) << ',' << format_double(s.deviation) << ','
        << format_double(s.sup_norm) << '\n';
  write_text_file(path, out.str());
}

std::string render_profile_svg(const MonotoneProfile& p) {
  const double W = 860, H = 520;
  const double ml = 90, mr = 90, mt = 40, mb = 60;
  const double pw = W - ml - mr, ph = H - mt - mb;

  double xmin = 0, xmax = 1;
  double amin = 0, amax = 1;
  double dmin = 0, dmax = 1;
  if (!p.rows.empty()) {
    xmin = std::log10(p.rows.front().R);
    xmax = std::log10(p.rows.back().R);
    amin = amax = p.rows.front().A;
    dmin = dmax = p.rows.front().drift;
    for (const auto& r : p.rows) {
      amin = std::min(amin, r.A);
      amax = std::max(amax, r.A);
      dmin = std::min(dmin, r.drift);
      dmax = std::max(dmax, r.drift);
    }
  }
  auto pad = [](double& lo, double& hi) {
    if (hi - lo < 1e-12) {
      lo -= 1.0;
      hi += 1.0;
    } else {
      const double d = 0.06 * (hi - lo);
      lo -= d;
      hi += d;
    }
  };
  pad(xmin, xmax);
  pad(amin, amax);
  pad(dmin, dmax);

  auto px = [&](double lx) { return ml + (lx - xmin) / (xmax - xmin) * pw; };
  auto pa = [&](double a) { return mt + (amax - a) / (amax - amin) * ph; };
  auto pd = [&](double d) { return mt + (dmax - d) / (dmax - dmin) * ph; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
    << "\" viewBox=\"0 0 " << W << " " << H << "\">\n";
  s << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n";
  s << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"#444\"/>\n";

  for (int k = 0; k <= 4; ++k) {
    const double fx = xmin + (xmax - xmin) * k / 4.0;
    const double fa = amin + (amax - amin) * k / 4.0;
    const double fd = dmin + (dmax - dmin) * k / 4.0;
    s << "<line x1=\"" << fmt_px(px(fx)) << "\" y1=\"" << fmt_px(mt + ph) << "\" x2=\""
      << fmt_px(px(fx)) << "\" y2=\"" << fmt_px(mt + ph + 6) << "\" stroke=\"#444\"/>\n";
    s << "<text x=\"" << fmt_px(px(fx)) << "\" y=\"" << fmt_px(mt + ph + 22)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#222\">" << fmt_label(fx)
      << "</text>\n";
    s << "<text x=\"" << fmt_px(ml - 8) << "\" y=\"" << fmt_px(pa(fa) + 4)
      << "\" font-size=\"12\" text-anchor=\"end\" fill=\"#1f5fbf\">" << fmt_label(fa)
      << "</text>\n";
    s << "<text x=\"" << fmt_px(ml + pw + 8) << "\" y=\"" << fmt_px(pd(fd) + 4)
      << "\" font-size=\"12\" text-anchor=\"start\" fill=\"#b23f3f\">" << fmt_label(fd)
      << "</text>\n";
  }
  s << "<text x=\"" << fmt_px(ml + pw / 2) << "\" y=\"" << fmt_px(H - 18)
    << "\" font-size=\"13\" text-anchor=\"middle\" fill=\"#222\">log10 R</text>\n";
  s << "<text x=\"" << fmt_px(ml) << "\" y=\"" << fmt_px(mt - 14)
    << "\" font-size=\"13\" fill=\"#1f5fbf\">A(R)</text>\n";
  s << "<text x=\"" << fmt_px(ml + pw - 50) << "\" y=\"" << fmt_px(mt - 14)
    << "\" font-size=\"13\" fill=\"#b23f3f\">drift(R)</text>\n";

  auto polyline = [&](const char* color, auto ycoord) {
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.6\" points=\"";
    for (size_t k = 0; k < p.rows.size(); ++k) {
      if (k) s << ' ';
      s << fmt_px(px(std::log10(p.rows[k].R))) << ',' << fmt_px(ycoord(p.rows[k]));
    }
    s << "\"/>\n";
    for (const auto& r : p.rows)
      s << "<circle cx=\"" << fmt_px(px(std::log10(r.R))) << "\" cy=\"" << fmt_px(ycoord(r))
        << "\" r=\"2.5\" fill=\"" << color << "\"/>\n";
  };
  if (!p.rows.empty()) {
    polyline("#1f5fbf", [&](const ProfileRow& r) { return pa(r.A); });
    polyline("#b23f3f", [&](const ProfileRow& r) { return pd(r.drift); });
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace oblab
