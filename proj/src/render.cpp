#include "ccembed/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <vector>

#include "ccembed/ccmds.hpp"
#include "ccembed/errors.hpp"

namespace ccembed {

namespace {

std::string hsl_to_hex(double hue, double sat, double light) {
  const double c = (1.0 - std::fabs(2.0 * light - 1.0)) * sat;
  const double hp = hue / 60.0;
  const double x = c * (1.0 - std::fabs(std::fmod(hp, 2.0) - 1.0));
  double r = 0, g = 0, b = 0;
  if (hp < 1)      { r = c; g = x; }
  else if (hp < 2) { r = x; g = c; }
  else if (hp < 3) { g = c; b = x; }
  else if (hp < 4) { g = x; b = c; }
  else if (hp < 5) { r = x; b = c; }
  else             { r = c; b = x; }
  const double m = light - c / 2.0;
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x",
                static_cast<int>(std::lround((r + m) * 255.0)),
                static_cast<int>(std::lround((g + m) * 255.0)),
                static_cast<int>(std::lround((b + m) * 255.0)));
  return buf;
}

// quantile 0 (lowest centrality) -> red, quantile 1 (highest) -> violet
std::string ramp_color(double quantile) {
  return hsl_to_hex(270.0 * quantile, 0.85, 0.5);
}

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

}  // namespace

std::string render_svg(const Embedding& emb, const Graph& g,
                       const CentralityVector& c, const SvgLayout& opts) {
  if (emb.p() != 2)
    throw data_error("SVG rendering needs a 2-D embedding (got p=" +
                     std::to_string(emb.p()) + "); use the CSV output");
  const int n = emb.n();
  if (n != g.node_count() || c.values.size() != n)
    throw config_error("embedding, graph, and centrality sizes disagree");

  double lo_x = emb.coords.col(0).minCoeff(), hi_x = emb.coords.col(0).maxCoeff();
  double lo_y = emb.coords.col(1).minCoeff(), hi_y = emb.coords.col(1).maxCoeff();
  const double span = std::max({hi_x - lo_x, hi_y - lo_y, 1e-12});
  const double canvas = static_cast<double>(opts.canvas);
  const double usable = canvas * (1.0 - 2.0 * opts.margin_frac);
  const double scale = usable / span;
  const double cx = 0.5 * (lo_x + hi_x);
  const double cy = 0.5 * (lo_y + hi_y);

  auto map_x = [&](double x) { return canvas / 2.0 + (x - cx) * scale; };
  auto map_y = [&](double y) { return canvas / 2.0 - (y - cy) * scale; };

  // strict-rank quantiles: ties share a value, extremes hit 0 and 1
  std::vector<double> quantile(n, 1.0);
  if (n > 1) {
    for (int i = 0; i < n; ++i) {
      int below = 0;
      for (int j = 0; j < n; ++j)
        if (c.values[j] < c.values[i]) ++below;
      quantile[i] = static_cast<double>(below) / (n - 1);
    }
  }

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
      << opts.canvas << "\" height=\"" << opts.canvas << "\" viewBox=\"0 0 "
      << opts.canvas << ' ' << opts.canvas << "\">\n"
      << "<rect width=\"" << opts.canvas << "\" height=\"" << opts.canvas
      << "\" fill=\"#ffffff\"/>\n";

  if (opts.draw_edges) {
    for (const auto& [u, v] : g.edges()) {
      out << "<line x1=\"" << fixed2(map_x(emb.coords(u, 0))) << "\" y1=\""
          << fixed2(map_y(emb.coords(u, 1))) << "\" x2=\""
          << fixed2(map_x(emb.coords(v, 0))) << "\" y2=\""
          << fixed2(map_y(emb.coords(v, 1)))
          << "\" stroke=\"#b0b0b0\" stroke-width=\"0.5\"/>\n";
    }
  }
  for (int i = 0; i < n; ++i) {
    out << "<circle cx=\"" << fixed2(map_x(emb.coords(i, 0))) << "\" cy=\""
        << fixed2(map_y(emb.coords(i, 1))) << "\" r=\"" << opts.node_radius
        << "\" fill=\"" << ramp_color(std::min(1.0, std::max(0.0, quantile[i])))
        << "\"><title>" << xml_escape(g.label(i)) << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

EdgeLengthReport edge_length_report(const Embedding& emb, const Graph& g) {
  EdgeLengthReport report;
  if (g.edge_count() == 0) return report;
  double total = 0.0;
  for (const auto& [u, v] : g.edges()) {
    const double len = (emb.coords.row(u) - emb.coords.row(v)).norm();
    total += len;
    report.max_length = std::max(report.max_length, len);
  }
  report.mean_length = total / static_cast<double>(g.edge_count());
  report.smoothness = smoothness_term(emb.coords, g);
  return report;
}

}  // namespace ccembed
