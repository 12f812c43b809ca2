#include "pairdepth/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace pairdepth {

namespace {

std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

[[noreturn]] void csv_error(std::string_view source, std::size_t line, const std::string& what) {
  throw Error(std::string(source) + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_commas(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

void dump(const nlohmann::json& v, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * (depth + 1)), ' ');
  const std::string close_pad(static_cast<std::size_t>(2 * depth), ' ');
  switch (v.type()) {
    case nlohmann::json::value_t::object: {
      if (v.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [key, item] : v.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + nlohmann::json(key).dump() + ": ";
        dump(item, out, depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case nlohmann::json::value_t::array: {
      if (v.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& item : v) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        dump(item, out, depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case nlohmann::json::value_t::number_float:
      out += format_double(v.get<double>());
      return;
    default:
      out += v.dump();
      return;
  }
}

}  // namespace

// CSV ------------------------------------------------------------------------------

PointSet read_csv(std::istream& in, std::string_view source) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line)) csv_error(source, line_no, "missing header line");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const auto header = split_commas(line);
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != "x" + std::to_string(i + 1)) {
      csv_error(source, line_no, "header must read x1,...,xn (column " + std::to_string(i + 1) + " is '" +
                                     std::string(header[i]) + "')");
    }
  }
  const std::size_t dim = header.size();
  PointSet out(dim);
  std::vector<double> p(dim);
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_commas(line);
    if (fields.size() != dim) {
      csv_error(source, line_no, "expected " + std::to_string(dim) + " values, found " + std::to_string(fields.size()));
    }
    for (std::size_t i = 0; i < dim; ++i) {
      const auto f = fields[i];
      const auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), p[i]);
      if (ec != std::errc() || ptr != f.data() + f.size() || f.empty() || !std::isfinite(p[i])) {
        csv_error(source, line_no, "malformed number '" + std::string(f) + "' in column " + std::to_string(i + 1));
      }
    }
    out.push_back(p);
  }
  return out;
}

PointSet read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "' for reading");
  return read_csv(in, path);
}

void write_csv(std::ostream& out, const PointSet& x) { out << to_csv(x); }

std::string to_csv(const PointSet& x) {
  std::string s;
  for (std::size_t i = 0; i < x.dim(); ++i) {
    if (i) s += ',';
    s += "x" + std::to_string(i + 1);
  }
  s += '\n';
  for (std::size_t k = 0; k < x.size(); ++k) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
      if (i) s += ',';
      s += format_double(x[k][i]);
    }
    s += '\n';
  }
  return s;
}

// JSON ------------------------------------------------------------------------------

std::string dump_json(const nlohmann::json& value) {
  std::string out;
  dump(value, out, 0);
  out += '\n';
  return out;
}

nlohmann::json to_json(Coords p) { return nlohmann::json(std::vector<double>(p.begin(), p.end())); }

nlohmann::json to_json(const DepthReport& r) {
  return {{"witness", to_json(r.witness)},
          {"ordered_pair_count", r.ordered_pair_count},
          {"unordered_pair_count", r.unordered_pair_count},
          {"pair_universe", r.pair_universe},
          {"fraction", r.fraction},
          {"bound", r.bound},
          {"bound_basis", std::string(to_string(r.basis))},
          {"bound_met", r.bound_met},
          {"certified", r.certified}};
}

nlohmann::json to_json(const CenterpointCertificate& c) {
  return {{"z", to_json(c.z)},
          {"claimed_depth", c.claimed_depth},
          {"target", c.target},
          {"method", std::string(to_string(c.method))},
          {"directions_checked", c.directions_checked},
          {"certified", c.certified}};
}

nlohmann::json to_json(const DiameterSelection& s) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& [y, x] : s.pairs) pairs.push_back({y, x});
  return {{"Y", s.y},
          {"a_values", s.a_values},
          {"d", s.d},
          {"pair_count", s.pair_count},
          {"qualifying_pairs", pairs},
          {"bound_met", s.bound_met}};
}

nlohmann::json to_json(const BoxSplit& s) {
  return {{"z", s.z},
          {"eps", s.eps},
          {"z_low", s.z_low},
          {"z_high", s.z_high},
          {"count_R1", s.count_r1},
          {"count_R2", s.count_r2},
          {"bound_met", s.bound_met}};
}

nlohmann::json to_json(const TEstimate& e) {
  nlohmann::json table = nlohmann::json::array();
  for (const auto& row : e.per_radius) table.push_back({{"r", row.radius}, {"fraction", row.fraction}});
  return {{"shape", e.shape.spec()},
          {"n", e.dim},
          {"t_hat", e.t_hat},
          {"ci_halfwidth", e.ci_halfwidth},
          {"argmin_radius", e.argmin_radius},
          {"samples_per_radius", e.samples_per_radius},
          {"per_radius", table}};
}

nlohmann::json to_json(const NetResult& r) {
  nlohmann::json net = nlohmann::json::array();
  for (const auto& p : r.net) net.push_back(to_json(p));
  nlohmann::json history = nlohmann::json::array();
  for (const auto& h : r.history) {
    history.push_back({{"clique_size", h.clique_size},
                       {"deep_point_count", h.deep_point_count},
                       {"newly_covered", h.newly_covered},
                       {"deep_point_retries", h.deep_point_retries}});
  }
  nlohmann::json out = {{"T", net},
                        {"epsilon", r.epsilon},
                        {"shape", r.shape.spec()},
                        {"subset_size", r.subset_size},
                        {"certified", r.certified},
                        {"iterations", r.iterations},
                        {"iteration_cap", r.iteration_cap},
                        {"lambda_used", r.lambda_used},
                        {"lambda_emp", r.lambda_emp},
                        {"empirical_cap", r.empirical_cap},
                        {"deep_point_shortfall", r.deep_point_shortfall},
                        {"history", history}};
  out["witness_clique"] = r.witness_clique ? nlohmann::json(*r.witness_clique) : nlohmann::json(nullptr);
  return out;
}

nlohmann::json to_json(const BoxLowerBound& b) {
  return {{"max_fraction", b.max_fraction},
          {"witness", to_json(b.witness)},
          {"best_count", b.best_count},
          {"candidates_evaluated", b.candidates_evaluated},
          {"theoretical", b.theoretical}};
}

nlohmann::json to_json(const SegmentArrangementDepth& s) {
  return {{"max_depth", s.max_segments},
          {"max_ordered_depth", s.max_ordered},
          {"crossings", s.crossings},
          {"witness", s.crossings ? to_json(s.witness) : nlohmann::json(nullptr)}};
}

nlohmann::json bound_block(std::string_view formula, double bound_value, double achieved_value, bool met) {
  return {{"formula_name", std::string(formula)},
          {"bound_value", bound_value},
          {"achieved_value", achieved_value},
          {"met", met}};
}

}  // namespace pairdepth
