#include "multising/export.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "multising/csv.hpp"
#include "multising/io.hpp"

namespace multising {

namespace {

std::string node_name(std::size_t r, const std::vector<std::string>& names) {
  return r < names.size() ? names[r] : "v" + std::to_string(r);
}

std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string xml_escape(const std::string& s) {
  std::string out;
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

std::size_t common_p(const std::vector<EdgeIndicators>& graphs) {
  if (graphs.empty()) return 0;
  for (const auto& g : graphs)
    if (g.p != graphs.front().p) throw DimensionError("export: graphs differ in size");
  return graphs.front().p;
}

std::string label_of(std::size_t x, const std::vector<std::string>& labels) {
  return x < labels.size() ? labels[x] : "g" + std::to_string(x);
}

void dot_nodes(std::ostringstream& o, std::size_t p, const std::vector<std::string>& names) {
  for (std::size_t r = 0; r < p; ++r)
    o << "  " << r << " [label=" << dot_quote(node_name(r, names)) << "];\n";
}

void graphml_header(std::ostringstream& o, const std::string& name, std::size_t p,
                    const std::vector<std::string>& names, bool combined) {
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n"
    << "  <key id=\"label\" for=\"node\" attr.name=\"label\" attr.type=\"string\"/>\n";
  if (combined)
    o << "  <key id=\"shared\" for=\"edge\" attr.name=\"shared\" attr.type=\"boolean\"/>\n"
      << "  <key id=\"groups\" for=\"edge\" attr.name=\"groups\" attr.type=\"string\"/>\n";
  o << "  <graph id=\"" << xml_escape(name) << "\" edgedefault=\"undirected\">\n";
  for (std::size_t r = 0; r < p; ++r)
    o << "    <node id=\"n" << r << "\"><data key=\"label\">" << xml_escape(node_name(r, names))
      << "</data></node>\n";
}

}  // namespace

ExportFormat export_format_from_string(const std::string& name) {
  if (name == "edge-list" || name == "edgelist" || name == "csv") return ExportFormat::edge_list;
  if (name == "dot" || name == "DOT") return ExportFormat::dot;
  if (name == "graphml" || name == "GraphML") return ExportFormat::graphml;
  throw ConfigError("unknown export format '" + name + "' (expected edge-list, dot or graphml)");
}

std::string file_extension(ExportFormat f) {
  switch (f) {
    case ExportFormat::edge_list: return "csv";
    case ExportFormat::dot: return "dot";
    case ExportFormat::graphml: return "graphml";
  }
  return "txt";
}

std::string to_dot(const EdgeIndicators& graph, const std::string& name,
                   const std::vector<std::string>& names) {
  std::ostringstream o;
  o << "graph " << dot_quote(name) << " {\n";
  dot_nodes(o, graph.p, names);
  for (std::size_t e = 0; e < graph.size(); ++e)
    if (graph.bits[e]) {
      const auto pr = pair_at(e);
      o << "  " << pr.r << " -- " << pr.j << ";\n";
    }
  o << "}\n";
  return o.str();
}

std::string combined_dot(const std::vector<EdgeIndicators>& graphs,
                         const std::vector<std::string>& labels,
                         const std::vector<std::string>& names) {
  const std::size_t p = common_p(graphs);
  std::ostringstream o;
  o << "graph \"combined\" {\n";
  dot_nodes(o, p, names);
  for (std::size_t e = 0; e < num_pairs(p); ++e) {
    std::string in;
    std::size_t count = 0;
    for (std::size_t x = 0; x < graphs.size(); ++x)
      if (graphs[x].bits[e]) {
        if (count++) in += ",";
        in += label_of(x, labels);
      }
    if (count == 0) continue;
    const auto pr = pair_at(e);
    const bool shared = count == graphs.size();
    o << "  " << pr.r << " -- " << pr.j << " [shared=" << (shared ? "true" : "false")
      << ", groups=" << dot_quote(in);
    if (shared) o << ", color=red, style=solid";
    else o << ", color=black, style=dashed";
    o << "];\n";
  }
  o << "}\n";
  return o.str();
}

std::string to_graphml(const EdgeIndicators& graph, const std::string& name,
                       const std::vector<std::string>& names) {
  std::ostringstream o;
  graphml_header(o, name, graph.p, names, false);
  for (std::size_t e = 0; e < graph.size(); ++e)
    if (graph.bits[e]) {
      const auto pr = pair_at(e);
      o << "    <edge source=\"n" << pr.r << "\" target=\"n" << pr.j << "\"/>\n";
    }
  o << "  </graph>\n</graphml>\n";
  return o.str();
}

std::string combined_graphml(const std::vector<EdgeIndicators>& graphs,
                             const std::vector<std::string>& labels,
                             const std::vector<std::string>& names) {
  const std::size_t p = common_p(graphs);
  std::ostringstream o;
  graphml_header(o, "combined", p, names, true);
  for (std::size_t e = 0; e < num_pairs(p); ++e) {
    std::string in;
    std::size_t count = 0;
    for (std::size_t x = 0; x < graphs.size(); ++x)
      if (graphs[x].bits[e]) {
        if (count++) in += ",";
        in += label_of(x, labels);
      }
    if (count == 0) continue;
    const auto pr = pair_at(e);
    o << "    <edge source=\"n" << pr.r << "\" target=\"n" << pr.j << "\">"
      << "<data key=\"shared\">" << (count == graphs.size() ? "true" : "false") << "</data>"
      << "<data key=\"groups\">" << xml_escape(in) << "</data></edge>\n";
  }
  o << "  </graph>\n</graphml>\n";
  return o.str();
}

std::vector<std::string> export_graphs(const std::vector<EdgeIndicators>& graphs,
                                       ExportFormat format, const std::string& dir,
                                       const std::string& prefix,
                                       const std::vector<std::string>& labels,
                                       const std::vector<std::string>& names) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw DataError("cannot create directory '" + dir + "': " + ec.message());
  const std::string ext = file_extension(format);
  std::vector<std::string> written;
  auto put = [&](const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << text;
    written.push_back(path);
  };
  for (std::size_t x = 0; x < graphs.size(); ++x) {
    const std::string label = label_of(x, labels);
    const std::string path = (fs::path(dir) / (prefix + "_" + label + "." + ext)).string();
    switch (format) {
      case ExportFormat::edge_list:
        write_edge_list(path, graphs[x], names);
        written.push_back(path);
        break;
      case ExportFormat::dot: put(path, to_dot(graphs[x], label, names)); break;
      case ExportFormat::graphml: put(path, to_graphml(graphs[x], label, names)); break;
    }
  }
  const std::string path = (fs::path(dir) / (prefix + "_combined." + ext)).string();
  switch (format) {
    case ExportFormat::edge_list: {
      std::ofstream out(path);
      if (!out) throw DataError("cannot write '" + path + "'");
      write_csv_row(out, {"r", "j", "shared", "groups"});
      const std::size_t p = common_p(graphs);
      for (std::size_t e = 0; e < num_pairs(p); ++e) {
        std::string in;
        std::size_t count = 0;
        for (std::size_t x = 0; x < graphs.size(); ++x)
          if (graphs[x].bits[e]) {
            if (count++) in += ";";
            in += label_of(x, labels);
          }
        if (count == 0) continue;
        const auto pr = pair_at(e);
        write_csv_row(out, {std::to_string(pr.r), std::to_string(pr.j),
                            count == graphs.size() ? "1" : "0", in});
      }
      written.push_back(path);
      break;
    }
    case ExportFormat::dot: put(path, combined_dot(graphs, labels, names)); break;
    case ExportFormat::graphml: put(path, combined_graphml(graphs, labels, names)); break;
  }
  return written;
}

}  // namespace multising
