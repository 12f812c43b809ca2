#include "pairdepth/cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>

#include "pairdepth/depth.hpp"
#include "pairdepth/io.hpp"
#include "pairdepth/nets.hpp"
#include "pairdepth/selection.hpp"
#include "pairdepth/shapes.hpp"

namespace pairdepth {

namespace {

using nlohmann::json;

struct DataOptions {
  std::string in;
  std::string dist = "uniform-cube";
  std::size_t n = 2;
  std::size_t count = 0;
  std::uint64_t seed = 1;

  void attach(CLI::App* cmd) {
    cmd->add_option("--in", in, "Point-set CSV (header x1,...,xn)");
    cmd->add_option("--dist", dist, "Generator when --in is absent: uniform-cube, gaussian, circle, grid");
    cmd->add_option("--n", n, "Dimension for generated data")->check(CLI::PositiveNumber);
    cmd->add_option("--count", count, "Number of generated points");
    cmd->add_option("--seed", seed, "Seed for generated data and randomized steps");
  }

  PointSet load() const { return load_count(count); }

  PointSet load_count(std::size_t big_n) const {
    if (!in.empty()) return read_csv_file(in);
    if (big_n == 0) throw CLI::ValidationError("either --in or a positive --count is required");
    return generate(parse_distribution(dist), n, big_n, seed);
  }
};

struct Outcome {
  json result;
  std::optional<json> bound;
  int exit_code = kExitOk;
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path == "-") {
    out << text;
    out.flush();
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text) || !f.flush()) throw Error("cannot write '" + path + "'");
}

std::vector<std::size_t> parse_sweep(const std::string& spec) {
  std::vector<std::size_t> out;
  std::size_t start = 0;
  while (start <= spec.size()) {
    const auto comma = spec.find(',', start);
    const std::string item = spec.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(item, &used);
      if (used != item.size() || v == 0) throw std::invalid_argument(item);
      out.push_back(static_cast<std::size_t>(v));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--sweep expects a comma-separated list of positive counts, got '" + spec + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

double resolve_t(std::optional<double> t, const PairShape& shape, std::size_t n, std::uint64_t seed,
                 std::size_t samples, json& result) {
  if (t) {
    result["t"] = *t;
    result["t_source"] = "flag";
    return *t;
  }
  const auto est = estimate_t(shape, n, samples, kDefaultTRadii, seed);
  result["t"] = est.t_hat;
  result["t_source"] = "estimate_t";
  result["t_ci_halfwidth"] = est.ci_halfwidth;
  if (!(est.t_hat > 0.0)) throw Error("estimated t is zero; pass --t explicitly");
  return est.t_hat;
}

// depth -------------------------------------------------------------------------------

struct DepthOptions {
  DataOptions data;
  std::string shape;
  std::vector<std::string> colorful;
  bool centerpoint = false;
  bool lower_bound = false;
  std::optional<double> t;
  std::size_t t_samples = 20000;
  std::size_t mc_samples = kDefaultMcSamples;
  std::size_t effort = kDefaultEffort;
  std::size_t candidates = 100000;
  double slack = 0.05;
  std::string sweep;
};

// One bound check on one point set: (result payload, bound block).
struct Check {
  json result;
  double bound = 0.0;
  double achieved = 0.0;
  bool met = false;
  std::string formula;
};

Check depth_check(const DepthOptions& o, const PairShape& shape, const PointSet& x) {
  Check c;
  if (shape.kind() == ShapeKind::Box) {
    if (o.lower_bound) {
      const auto lb = box_lowerbound_check(x, o.candidates, o.data.seed);
      c.result = {{"mode", "box-lower-bound"}, {"lower_bound", to_json(lb)}};
      c.formula = "1/2^n + slack";
      c.bound = lb.theoretical + o.slack;
      c.achieved = lb.max_fraction;
      c.met = lb.max_fraction <= c.bound;
      return c;
    }
    const auto deep = box_deep_point(x);
    c.result = {{"mode", "box-deep-point"},
                {"report", to_json(deep.report)},
                {"split", to_json(deep.split)},
                {"x1_size", deep.x1_size},
                {"x2_size", deep.x2_size},
                {"containment_verified", deep.containment_verified}};
    c.formula = "(N/2^n)(N/2^n - 1)";
    c.bound = deep.report.bound;
    c.achieved = static_cast<double>(deep.report.unordered_pair_count);
    c.met = deep.report.bound_met && deep.containment_verified;
    return c;
  }
  if (shape.kind() == ShapeKind::Ball && o.centerpoint) {
    const auto r = colorful_ball_depth(x, x, o.effort, o.data.seed);
    c.result = {{"mode", "centerpoint"}, {"report", to_json(r)}};
    c.formula = "N^2/(n+1) - N";
    c.bound = r.bound;
    c.achieved = static_cast<double>(r.ordered_pair_count);
    c.met = r.bound_met;
    return c;
  }
  json meta = json::object();
  const double t = resolve_t(o.t, shape, x.dim(), o.data.seed, o.t_samples, meta);
  const auto deep = tshape_deep_point(x, shape, t, o.mc_samples, o.data.seed);
  c.result = {{"mode", "t-shape"},
              {"report", to_json(deep.report)},
              {"candidates", deep.candidates},
              {"mc_accepted", deep.mc_accepted},
              {"selection_pair_count", deep.selection.pair_count},
              {"selection_d", deep.selection.d}};
  c.result.update(meta);
  c.formula = "t N^2 / (2^n 4^(n+3))";
  c.bound = deep.report.bound;
  c.achieved = static_cast<double>(deep.report.ordered_pair_count);
  c.met = deep.report.bound_met;
  return c;
}

Outcome run_depth(const DepthOptions& o) {
  const PairShape shape = PairShape::parse(o.shape);
  Outcome out;

  if (!o.colorful.empty()) {
    if (shape.kind() != ShapeKind::Ball) throw CLI::ValidationError("--colorful requires --shape ball");
    if (!o.sweep.empty()) throw CLI::ValidationError("--sweep works with generated data only");
    const PointSet a = read_csv_file(o.colorful.at(0));
    const PointSet b = read_csv_file(o.colorful.at(1));
    const auto r = colorful_ball_depth(a, b, o.effort, o.data.seed);
    out.result = {{"mode", "colorful"}, {"report", to_json(r)}};
    out.bound = bound_block("NM/(n+1)", r.bound, static_cast<double>(r.ordered_pair_count), r.bound_met);
    out.exit_code = r.bound_met ? kExitOk : kExitBoundViolated;
    return out;
  }

  if (shape.kind() == ShapeKind::Segment) {
    if (!o.sweep.empty()) throw CLI::ValidationError("--sweep is not available for segments");
    const auto s = segment_arrangement_depth(o.data.load());
    out.result = {{"mode", "segment-control"}, {"segment", to_json(s)}};
    return out;
  }

  if (!o.sweep.empty()) {
    if (!o.data.in.empty()) throw CLI::ValidationError("--sweep works with generated data only");
    json rows = json::array();
    bool all_met = true;
    Check last;
    for (std::size_t big_n : parse_sweep(o.sweep)) {
      last = depth_check(o, shape, o.data.load_count(big_n));
      all_met = all_met && last.met;
      rows.push_back({{"N", big_n}, {"bound", last.bound}, {"achieved", last.achieved}, {"met", last.met}});
    }
    out.result = {{"mode", last.result.at("mode")}, {"sweep", rows}};
    out.bound = bound_block(last.formula, last.bound, last.achieved, all_met);
    out.exit_code = all_met ? kExitOk : kExitBoundViolated;
    return out;
  }

  auto c = depth_check(o, shape, o.data.load());
  out.result = std::move(c.result);
  out.bound = bound_block(c.formula, c.bound, c.achieved, c.met);
  out.exit_code = c.met ? kExitOk : kExitBoundViolated;
  return out;
}

// net ------------------------------------------------------------------------------------

struct NetOptions {
  DataOptions data;
  std::string shape;
  double epsilon = 0.0;
  std::optional<double> t;
  std::size_t t_samples = 20000;
  std::string net_out;
};

Outcome run_net(const NetOptions& o) {
  const PairShape shape = PairShape::parse(o.shape);
  if (shape.kind() == ShapeKind::Segment) {
    throw CLI::ValidationError("segments admit no positive-fraction guarantee; no weak net is built for them");
  }
  const PointSet x = o.data.load();
  Outcome out;
  json meta = json::object();
  const double t = resolve_t(o.t, shape, x.dim(), o.data.seed, o.t_samples, meta);
  const auto r = weak_net(x, o.epsilon, shape, t, o.data.seed);
  out.result = to_json(r);
  out.result.update(meta);
  const bool met = r.certified && r.iterations <= r.iteration_cap;
  out.bound = bound_block("|T| <= 4 ceil((lambda eps^2)^-1)", static_cast<double>(r.iteration_cap),
                          static_cast<double>(r.iterations), met);
  out.exit_code = met ? kExitOk : kExitBoundViolated;
  if (!o.net_out.empty()) {
    PointSet net(x.dim());
    for (const auto& p : r.net) net.push_back(p);
    write_output(o.net_out, to_csv(net), std::cout);
  }
  return out;
}

// select ----------------------------------------------------------------------------------

struct SelectOptions {
  DataOptions data;
  std::string which;
  std::size_t j = 0;
};

Outcome run_select(const SelectOptions& o) {
  const PointSet x = o.data.load();
  Outcome out;
  const double big_n = static_cast<double>(x.size());
  if (o.which == "diameter") {
    const auto s = diameter_selection(distance_matrix(x));
    out.result = {{"mode", "diameter"}, {"selection", to_json(s)}};
    out.bound = bound_block("N^2/64", big_n * big_n / 64.0, static_cast<double>(s.pair_count), s.bound_met);
    out.exit_code = s.bound_met ? kExitOk : kExitBoundViolated;
    return out;
  }
  const std::size_t j = o.j == 0 ? x.dim() : o.j;
  const auto s = box_split(x, j);
  out.result = {{"mode", "boxsplit"}, {"j", j}, {"split", to_json(s)}};
  out.bound = bound_block("N/2^j", big_n / std::ldexp(1.0, static_cast<int>(j)),
                          static_cast<double>(std::min(s.count_r1, s.count_r2)), s.bound_met);
  out.exit_code = s.bound_met ? kExitOk : kExitBoundViolated;
  return out;
}

json args_echo(const std::vector<std::string>& args) { return json(args); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive-fraction pair-hull depth experiments", "pairdepth"};
  app.require_subcommand(1);
  std::string out_path = "-";

  // gen
  DataOptions gen_data;
  auto* gen = app.add_subcommand("gen", "Generate a point set and write it as CSV");
  gen->add_option("--dist", gen_data.dist, "uniform-cube, gaussian, circle or grid")->required();
  gen->add_option("--n", gen_data.n, "Dimension")->check(CLI::PositiveNumber);
  gen->add_option("--count", gen_data.count, "Number of points")->required();
  gen->add_option("--seed", gen_data.seed, "Seed");
  gen->add_option("--out", out_path, "Output CSV path, - for stdout");

  // depth
  DepthOptions depth;
  auto* depth_cmd = app.add_subcommand("depth", "Find a deep point for a pair shape and check its bound");
  depth.data.attach(depth_cmd);
  depth_cmd->add_option("--shape", depth.shape, "ball, lens:<a>, ellipsoid:<a>, box or segment")->required();
  depth_cmd->add_option("--colorful", depth.colorful, "Two CSV files A and B (ball only)")->expected(2);
  depth_cmd->add_flag("--centerpoint", depth.centerpoint, "Ball depth of a centerpoint of X over X x X");
  depth_cmd->add_flag("--lower-bound", depth.lower_bound, "Box only: maximum fraction over many candidates");
  depth_cmd->add_option("--t", depth.t, "t-shape constant; estimated when absent");
  depth_cmd->add_option("--t-samples", depth.t_samples, "Samples per radius when estimating t");
  depth_cmd->add_option("--mc-samples", depth.mc_samples, "Monte-Carlo candidates for t-shapes");
  depth_cmd->add_option("--effort", depth.effort, "Radon rounds for the centerpoint search");
  depth_cmd->add_option("--candidates", depth.candidates, "Candidate count for --lower-bound");
  depth_cmd->add_option("--slack", depth.slack, "Statistical slack for --lower-bound");
  depth_cmd->add_option("--sweep", depth.sweep, "Comma-separated point counts for a depth-vs-N table");
  depth_cmd->add_option("--out", out_path, "Report path, - for stdout");

  // net
  NetOptions net;
  auto* net_cmd = app.add_subcommand("net", "Build and certify a greedy weak epsilon-net");
  net.data.attach(net_cmd);
  net_cmd->add_option("--shape", net.shape, "ball, lens:<a> or ellipsoid:<a>")->required();
  net_cmd->add_option("--epsilon", net.epsilon, "Subset fraction in (0, 1]")->required();
  net_cmd->add_option("--t", net.t, "t-shape constant; estimated when absent");
  net_cmd->add_option("--t-samples", net.t_samples, "Samples per radius when estimating t");
  net_cmd->add_option("--net-out", net.net_out, "CSV path for the net points");
  net_cmd->add_option("--out", out_path, "Report path, - for stdout");

  // select
  SelectOptions select;
  auto* select_cmd = app.add_subcommand("select", "Run a selection procedure (diameter or boxsplit)");
  select.data.attach(select_cmd);
  select_cmd->add_option("procedure", select.which, "diameter or boxsplit")
      ->required()
      ->check(CLI::IsMember({"diameter", "boxsplit"}));
  select_cmd->add_option("--j", select.j, "Split depth for boxsplit (default n)");
  select_cmd->add_option("--out", out_path, "Report path, - for stdout");

  // estimate-t
  std::string t_shape;
  std::size_t t_dim = 2, t_samples = kDefaultTSamples, t_radii = kDefaultTRadii;
  std::uint64_t t_seed = 1;
  auto* est = app.add_subcommand("estimate-t", "Monte-Carlo estimate of the t-shape constant");
  est->add_option("--shape", t_shape, "ball, lens:<a> or ellipsoid:<a>")->required();
  est->add_option("--n", t_dim, "Dimension")->check(CLI::PositiveNumber);
  est->add_option("--samples", t_samples, "Samples per radius")->check(CLI::PositiveNumber);
  est->add_option("--radii", t_radii, "Number of radii")->check(CLI::PositiveNumber);
  est->add_option("--seed", t_seed, "Seed");
  est->add_option("--out", out_path, "Report path, - for stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  const auto started = std::chrono::steady_clock::now();
  try {
    if (gen->parsed()) {
      const auto x = generate(parse_distribution(gen_data.dist), gen_data.n, gen_data.count, gen_data.seed);
      write_output(out_path, to_csv(x), out);
      return kExitOk;
    }

    Outcome outcome;
    std::string command;
    if (depth_cmd->parsed()) {
      command = "depth";
      outcome = run_depth(depth);
    } else if (net_cmd->parsed()) {
      command = "net";
      outcome = run_net(net);
    } else if (select_cmd->parsed()) {
      command = "select";
      outcome = run_select(select);
    } else {
      command = "estimate-t";
      const auto e = estimate_t(PairShape::parse(t_shape), t_dim, t_samples, t_radii, t_seed);
      outcome.result = to_json(e);
    }

    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started);
    json report = {{"schema_version", kSchemaVersion},
                   {"command", command},
                   {"args", args_echo(args)},
                   {"timing_ms", elapsed.count()},
                   {"result", outcome.result}};
    if (outcome.bound) report["bound"] = *outcome.bound;
    write_output(out_path, dump_json(report), out);
    return outcome.exit_code;
  } catch (const CLI::Error& e) {
    err << "pairdepth: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "pairdepth: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace pairdepth
