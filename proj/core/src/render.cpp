#include <algorithm>
#include <cstdio>
#include <sstream>

#include "webtabulate/error.hpp"
#include "webtabulate/inspect.hpp"

namespace webtabulate {
namespace {

std::string xml_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
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

std::string dot_escape(std::string_view text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  return out;
}

std::string num(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.2f", v);
  return buffer;
}

std::string render_svg(const TreeLayout& layout, const RenderOptions& o) {
  double max_x = 0.0;
  double max_y = 0.0;
  for (const auto& n : layout.nodes) {
    max_x = std::max(max_x, n.x);
    max_y = std::max(max_y, n.y);
  }
  auto px = [&](double x) { return o.margin + x * o.unit; };
  auto py = [&](double y) { return o.margin + y * o.unit; };

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(px(max_x) + o.margin)
      << "\" height=\"" << num(py(max_y) + o.margin) << "\">\n"
      << "  <g stroke=\"#888888\" stroke-width=\"1\">\n";
  for (const auto& e : layout.edges) {
    const auto& a = layout.nodes[e.parent];
    const auto& b = layout.nodes[e.child];
    out << "    <line x1=\"" << num(px(a.x)) << "\" y1=\"" << num(py(a.y)) << "\" x2=\""
        << num(px(b.x)) << "\" y2=\"" << num(py(b.y)) << "\"/>\n";
  }
  out << "  </g>\n"
      << "  <g font-family=\"sans-serif\" font-size=\"12\" text-anchor=\"middle\">\n";
  for (const auto& n : layout.nodes) {
    out << "    <text x=\"" << num(px(n.x)) << "\" y=\"" << num(py(n.y)) << "\">"
        << xml_escape(n.label) << "</text>\n";
  }
  out << "  </g>\n</svg>\n";
  return out.str();
}

std::string render_dot(const TreeLayout& layout, const RenderOptions& o) {
  std::ostringstream out;
  out << "digraph tree {\n"
      << "  node [shape=plaintext];\n";
  for (const auto& n : layout.nodes) {
    out << "  n" << n.id << " [label=\"" << dot_escape(n.label) << "\", pos=\"" << num(n.x * o.unit)
        << "," << num(-n.y * o.unit) << "!\"];\n";
  }
  for (const auto& e : layout.edges) out << "  n" << e.parent << " -> n" << e.child << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace

RenderFormat parse_render_format(std::string_view name) {
  if (name == "svg") return RenderFormat::Svg;
  if (name == "dot") return RenderFormat::Dot;
  throw Error(Errc::UnsupportedFormat, "unknown render format '" + std::string(name) + "'");
}

std::string render_tree(const TreeLayout& layout, RenderFormat format, const RenderOptions& options) {
  switch (format) {
    case RenderFormat::Svg: return render_svg(layout, options);
    case RenderFormat::Dot: return render_dot(layout, options);
  }
  throw Error(Errc::UnsupportedFormat, "unknown render format");
}

}  // namespace webtabulate
