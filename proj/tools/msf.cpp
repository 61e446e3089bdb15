// Command-line front end: sampling, exact queries, verification and limit-law tables.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "msf/determinantal.hpp"
#include "msf/exact.hpp"
#include "msf/forest_oracle.hpp"
#include "msf/graph.hpp"
#include "msf/limit_laws.hpp"
#include "msf/parallel.hpp"
#include "msf/rng.hpp"
#include "msf/sampler.hpp"
#include "msf/stats.hpp"
#include "msf/tree_shape.hpp"
#include "msf/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::optional<int> n;
  std::string graph_path;
  std::string lambda_text;
  std::optional<double> alpha;
  std::optional<double> beta;
  int h = 1;
  std::uint64_t count = 1000;
  std::uint64_t seed = msf::kDefaultSeed;
  int threads = 1;
  std::string output;
  std::string format;
  bool aggregate = false;
  std::vector<std::string> include_edges;
  std::vector<std::string> exclude_edges;
  std::string query = "event";
  std::string tree = "T_alpha";
  std::string law;
  std::string shape = "()";
  std::string regime;
  std::vector<double> n_grid;
  std::vector<std::string> shapes;
  int max_size = 4;
  bool compare = false;
  bool inverse_progeny = false;
  int max_complete_n = 6;
  int random_graphs = 50;
};

/// Writes to --output when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& out() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

msf::Graph load_graph(const Options& o) {
  if (o.n.has_value() == !o.graph_path.empty()) throw ConfigError("give exactly one of --n or --graph");
  if (o.n) {
    if (*o.n < 1) throw ConfigError("--n must be >= 1");
    return msf::complete_graph(*o.n);
  }
  try {
    return msf::read_edge_list_file(o.graph_path);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("cannot read graph: ") + e.what());
  }
}

msf::Rational lambda_rational(const Options& o) {
  if (o.lambda_text.empty()) throw ConfigError("--lambda is required");
  try {
    msf::Rational q = msf::parse_rational(o.lambda_text);
    if (q < 0) throw ConfigError("--lambda must be >= 0");
    return q;
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError("--lambda '" + o.lambda_text + "': " + e.what());
  }
}

double require_alpha(const Options& o) {
  if (!o.alpha) throw ConfigError("--alpha is required");
  if (!(*o.alpha > 0.0)) throw ConfigError("--alpha must be > 0");
  return *o.alpha;
}

msf::RootedShape parse_shape(const std::string& code) {
  try {
    return msf::RootedShape::from_code(code);
  } catch (const std::exception& e) {
    throw ConfigError("shape '" + code + "': " + e.what());
  }
}

msf::EdgeIndex resolve_edge(const msf::Graph& g, const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw ConfigError("edge '" + text + "' must be written a,b");
  int a = 0;
  int b = 0;
  try {
    a = std::stoi(text.substr(0, comma));
    b = std::stoi(text.substr(comma + 1));
  } catch (const std::exception&) {
    throw ConfigError("edge '" + text + "' must be two vertex ids");
  }
  for (std::size_t i = 0; i < g.edge_count(); ++i) {
    const msf::Edge& e = g.edges()[i];
    if ((e.tail == a && e.head == b) || (e.tail == b && e.head == a)) return static_cast<msf::EdgeIndex>(i);
  }
  throw ConfigError("graph has no edge " + text);
}

json base_config(const std::string& command, const Options& o) {
  json c{{"command", command}, {"seed", o.seed}};
  if (o.n) c["n"] = *o.n;
  if (!o.graph_path.empty()) c["graph"] = o.graph_path;
  if (!o.lambda_text.empty()) c["lambda"] = o.lambda_text;
  if (o.alpha) c["alpha"] = *o.alpha;
  if (o.beta) c["beta"] = *o.beta;
  return c;
}

int run_sample(const Options& o) {
  const msf::Graph g = load_graph(o);
  const double lambda = msf::to_double(lambda_rational(o));
  if (lambda == 0.0 && !g.is_connected()) throw ConfigError("lambda = 0 needs a connected graph");
  json config = base_config("sample", o);
  config["count"] = o.count;
  config["threads"] = o.threads;
  config["aggregate"] = o.aggregate;
  const bool kn = o.n.has_value();
  auto draw = [&](msf::Rng& rng, msf::RootedForestSample& s) {
    if (kn) {
      msf::sample_lsf_kn(*o.n, lambda, rng, s);
    } else {
      msf::sample_lsf_general(g, lambda, rng, s);
    }
  };
  Sink sink(o.output);
  if (o.aggregate) {
    config["h"] = o.h;
    struct Acc {
      msf::ShapeHistogram hist;
      std::uint64_t components = 0;
    };
    Acc acc = msf::parallel_accumulate(
        o.count, o.threads, [] { return Acc{}; },
        [&](Acc& a, std::uint64_t i) {
          msf::Rng rng(msf::RngSeed{o.seed, i});
          msf::RootedForestSample s;
          draw(rng, s);
          a.hist.add(msf::root_component_shape(s, o.h).code());
          a.components += static_cast<std::uint64_t>(s.component_count());
        },
        [](Acc& into, const Acc& from) {
          into.hist.merge(from.hist);
          into.components += from.components;
        });
    json out{{"config", config}, {"histogram", msf::to_json(acc.hist)}};
    if (o.count > 0) {
      out["mean_components"] = static_cast<double>(acc.components) / static_cast<double>(o.count);
    }
    sink.out() << out.dump(2) << '\n';
    return kExitOk;
  }
  // per-sample lines; generated in parallel, written in index order
  std::vector<msf::RootedForestSample> samples(o.count);
  msf::parallel_accumulate(
      o.count, o.threads, [] { return 0; },
      [&](int&, std::uint64_t i) {
        msf::Rng rng(msf::RngSeed{o.seed, i});
        draw(rng, samples[i]);
      },
      [](int&, int) {});
  sink.out() << json{{"config", config}}.dump() << '\n';
  for (const auto& s : samples) {
    sink.out() << json{{"parents", s.parent}, {"roots", s.roots()}}.dump() << '\n';
  }
  return kExitOk;
}

int run_sample_limit(const Options& o) {
  json config = base_config("sample-limit", o);
  config["tree"] = o.tree;
  config["h"] = o.h;
  config["count"] = o.count;
  config["threads"] = o.threads;
  Sink sink(o.output);
  if (o.inverse_progeny) {
    if (o.tree != "T_alpha") throw ConfigError("--inverse-progeny applies to --tree T_alpha");
    const auto est = msf::inverse_progeny_mean(require_alpha(o), o.count, o.seed, o.threads);
    json out{{"config", config},
             {"mean", est.mean},
             {"standard_error", est.standard_error},
             {"samples", est.samples},
             {"overflowed", est.overflowed},
             {"flagged", est.flagged}};
    sink.out() << out.dump(2) << '\n';
    return kExitOk;
  }
  std::function<msf::RootedShape(msf::Rng&)> draw;
  std::function<double(const msf::RootedShape&)> law;
  if (o.tree == "T_alpha") {
    const double alpha = require_alpha(o);
    draw = [=, h = o.h](msf::Rng& rng) { return msf::sample_T_alpha_truncated(alpha, h, rng); };
    law = [=, h = o.h](const msf::RootedShape& t) { return msf::shape_law_T_alpha(t, h, alpha); };
  } else if (o.tree == "T0") {
    draw = [h = o.h](msf::Rng& rng) { return msf::sample_T0_truncated(h, rng); };
    law = [h = o.h](const msf::RootedShape& t) { return msf::shape_law_T0(t, h); };
  } else if (o.tree == "bgwp") {
    if (!o.beta || !(*o.beta > 0.0 && *o.beta <= 1.0)) throw ConfigError("--tree bgwp needs --beta in (0,1]");
    const double beta = *o.beta;
    draw = [=, h = o.h](msf::Rng& rng) { return msf::sample_bgwp_truncated(beta, h, rng); };
    law = [=, h = o.h](const msf::RootedShape& t) { return msf::bgwp_pmf_truncated(beta, t, h); };
  } else {
    throw ConfigError("--tree must be one of T_alpha, T0, bgwp");
  }
  msf::ShapeHistogram hist = msf::parallel_accumulate(
      o.count, o.threads, [] { return msf::ShapeHistogram{}; },
      [&](msf::ShapeHistogram& acc, std::uint64_t i) {
        msf::Rng rng(msf::RngSeed{o.seed, i});
        acc.add(draw(rng).code());
      },
      [](msf::ShapeHistogram& into, const msf::ShapeHistogram& from) { into.merge(from); });
  json out{{"config", config}, {"histogram", msf::to_json(hist)}};
  if (o.compare) {
    config["max_size"] = o.max_size;
    out["config"] = config;
    out["comparison"] = msf::to_json(msf::compare(hist, msf::tabulate(o.h, o.max_size, law)));
  }
  sink.out() << out.dump(2) << '\n';
  return kExitOk;
}

json record(const std::string& query, const Options& o, const msf::Graph& g, double value,
            const std::string& method) {
  return {{"query", query}, {"n", g.vertex_count()}, {"lambda", o.lambda_text}, {"value", value}, {"method", method}};
}

json exact_record(const std::string& query, const Options& o, const msf::Graph& g, const msf::Rational& value) {
  json r = record(query, o, g, msf::to_double(value), "oracle");
  r["exact"] = msf::to_string(value);
  return r;
}

int run_exact(const Options& o) {
  const msf::Graph g = load_graph(o);
  const msf::Rational lambda = lambda_rational(o);
  const double lambda_d = msf::to_double(lambda);
  const bool oracle_ok = g.edge_count() <= msf::kEnumerationEdgeBudget;
  json config = base_config("exact", o);
  config["query"] = o.query;
  json records = json::array();

  if (o.query == "event") {
    msf::EdgeEvent ev;
    for (const auto& e : o.include_edges) ev.include.push_back(resolve_edge(g, e));
    for (const auto& e : o.exclude_edges) ev.exclude.push_back(resolve_edge(g, e));
    config["include"] = o.include_edges;
    config["exclude"] = o.exclude_edges;
    try {
      ev.validate(g);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
    if (lambda > 0) records.push_back(record("event", o, g, msf::edge_event_prob(g, lambda_d, ev), "determinantal"));
    if (oracle_ok) records.push_back(exact_record("event", o, g, msf::exact_event_prob(msf::exact_distribution(g, lambda), ev)));
  } else if (o.query == "partition") {
    const msf::CharPoly p = msf::char_poly(g);
    json r = record("partition", o, g, msf::to_double(p.evaluate(lambda)), "char_poly");
    r["exact"] = msf::to_string(p.evaluate(lambda));
    json coeffs = json::array();
    for (const auto& c : p.coefficients) coeffs.push_back(msf::to_string(c));
    r["coefficients"] = coeffs;
    records.push_back(r);
  } else if (o.query == "mean-components") {
    if (lambda > 0) records.push_back(record("mean-components", o, g, msf::mean_component_count(g, lambda_d), "resolvent"));
    if (oracle_ok) records.push_back(exact_record("mean-components", o, g, msf::exact_distribution(g, lambda).mean_components()));
  } else if (o.query == "shape-law") {
    config["h"] = o.h;
    const int n = g.vertex_count();
    std::optional<msf::ExactShapeLaw> oracle;
    if (oracle_ok) oracle = msf::exact_root_component_shape_law(g, lambda, o.h);
    for (const msf::RootedShape& t : msf::all_shapes(n, o.h)) {
      if (o.n && lambda + n > 0) {
        json r = exact_record("shape-law", o, g, msf::shape_law_finite(t, o.h, n, lambda));
        r["method"] = "closed_form";
        r["shape"] = t.code();
        records.push_back(r);
      }
      if (oracle) {
        auto it = oracle->find(t.code());
        json r = exact_record("shape-law", o, g, it == oracle->end() ? msf::Rational(0) : it->second);
        r["shape"] = t.code();
        records.push_back(r);
      }
    }
  } else {
    throw ConfigError("--query must be one of event, partition, mean-components, shape-law");
  }
  if (records.empty()) throw ConfigError("no method applies: lambda = 0 and more than 25 edges");
  Sink sink(o.output);
  sink.out() << json{{"config", config}, {"records", records}}.dump(2) << '\n';
  return kExitOk;
}

int run_verify(const Options& o) {
  msf::VerifyOptions vo;
  vo.max_complete_n = o.max_complete_n;
  vo.random_graphs = o.random_graphs;
  vo.seed = o.seed;
  const msf::VerifyReport report = msf::run_verification(vo);
  json config{{"command", "verify"}, {"seed", o.seed}, {"max_complete_n", vo.max_complete_n},
              {"random_graphs", vo.random_graphs}, {"tolerance", vo.tolerance}};
  json out = msf::to_json(report);
  out["config"] = config;
  Sink sink(o.output);
  sink.out() << out.dump(2) << '\n';
  if (!report.passed) {
    for (const auto& s : report.suites) {
      if (!s.passed) {
        std::cerr << "verification failed in " << s.name << ": " << s.first_counterexample << '\n';
        break;
      }
    }
    return kExitVerifyFailed;
  }
  return kExitOk;
}

msf::LimitRegime parse_regime(const Options& o) {
  if (o.regime.empty() || o.regime == "linear") return msf::LimitRegime::linear(require_alpha(o));
  if (o.regime == "sublinear") return msf::LimitRegime::sublinear();
  if (o.regime == "superlinear") return msf::LimitRegime::superlinear();
  throw ConfigError("--regime must be one of sublinear, linear, superlinear");
}

int run_limit(const Options& o) {
  const msf::RootedShape t = parse_shape(o.shape);
  if (t.height() > o.h) throw ConfigError("shape height exceeds --h");
  json config = base_config("limit", o);
  config["law"] = o.law;
  config["shape"] = t.code();
  config["h"] = o.h;
  json out{{"config", config}};
  if (o.law == "finite") {
    if (!o.n) throw ConfigError("--law finite needs --n");
    const msf::Rational lambda = lambda_rational(o);
    const msf::Rational value = msf::shape_law_finite(t, o.h, *o.n, lambda);
    out["value"] = msf::to_double(value);
    out["exact"] = msf::to_string(value);
  } else if (o.law == "limit") {
    const msf::LimitRegime regime = parse_regime(o);
    config["regime"] = regime.name();
    out["config"] = config;
    out["value"] = msf::shape_law_limit(t, o.h, regime);
  } else if (o.law == "T_alpha") {
    out["value"] = msf::shape_law_T_alpha(t, o.h, require_alpha(o));
  } else if (o.law == "T0") {
    out["value"] = msf::shape_law_T0(t, o.h);
  } else if (o.law == "bgwp") {
    if (!o.beta || !(*o.beta > 0.0 && *o.beta <= 1.0)) throw ConfigError("--law bgwp needs --beta in (0,1]");
    out["value"] = msf::bgwp_pmf_truncated(*o.beta, t, o.h);
  } else {
    throw ConfigError("--law must be one of finite, limit, T_alpha, T0, bgwp");
  }
  Sink sink(o.output);
  sink.out() << out.dump(2) << '\n';
  return kExitOk;
}

std::vector<msf::ConvergenceRow> convergence_rows(const Options& o, json& config) {
  const msf::LimitRegime regime = parse_regime(o);
  if (o.n_grid.empty()) throw ConfigError("--n needs a comma-separated grid, e.g. 100,1000,10000");
  for (double n : o.n_grid) {
    if (!(n >= 1.0)) throw ConfigError("grid values must be >= 1");
  }
  std::vector<msf::RootedShape> shapes;
  for (const auto& code : o.shapes) shapes.push_back(parse_shape(code));
  if (shapes.empty()) shapes = msf::all_shapes(o.max_size, o.h);
  for (const auto& s : shapes) {
    if (s.height() > o.h) throw ConfigError("shape " + s.code() + " is taller than --h");
  }
  config["regime"] = regime.name();
  config["h"] = o.h;
  config["n_grid"] = o.n_grid;
  json codes = json::array();
  for (const auto& s : shapes) codes.push_back(s.code());
  config["shapes"] = codes;
  return msf::convergence_table(shapes, o.h, regime, o.n_grid);
}

int run_convergence_table(const Options& o) {
  json config{{"command", "convergence-table"}};
  const auto rows = convergence_rows(o, config);
  Sink sink(o.output);
  if (o.format == "json") {
    json table = json::array();
    for (const auto& r : rows) {
      table.push_back({{"shape", r.code}, {"n", r.n}, {"lambda", r.lambda}, {"finite", r.finite},
                       {"limit", r.limit}, {"gap", r.gap}});
    }
    sink.out() << json{{"config", config}, {"rows", table}}.dump(2) << '\n';
  } else if (o.format.empty() || o.format == "csv") {
    sink.out() << "# config: " << config.dump() << '\n' << msf::convergence_csv(rows);
  } else {
    throw ConfigError("--format must be csv or json");
  }
  return kExitOk;
}

int run_plot_data(const Options& o) {
  json config{{"command", "plot-data"}};
  const auto rows = convergence_rows(o, config);
  Sink sink(o.output);
  sink.out() << json{{"config", config}, {"series", msf::plot_data(rows)}}.dump(2) << '\n';
  return kExitOk;
}

void add_graph_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--n", o.n, "complete graph K_n");
  cmd->add_option("--graph", o.graph_path, "edge-list file: first line n, then 'tail head' per line");
  cmd->add_option("--lambda", o.lambda_text, "mass, as p/q or decimal");
}

void add_run_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--count", o.count, "number of samples");
  cmd->add_option("--seed", o.seed, "base seed; sample i uses stream i");
  cmd->add_option("--threads", o.threads, "worker threads (output does not depend on this)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lambda-massive spanning forests: sampling, exact queries and limit laws"};
  app.set_help_flag("--help", "print this help and exit");  // -h would clash with --h
  app.require_subcommand(1);
  Options o;
  std::vector<std::string> grid_text;

  auto* sample = app.add_subcommand("sample", "Wilson sampler with killing");
  add_graph_flags(sample, o);
  add_run_flags(sample, o);
  sample->add_flag("--aggregate", o.aggregate, "emit a histogram of root-component shapes");
  sample->add_option("--h", o.h, "truncation height for --aggregate")->check(CLI::NonNegativeNumber);

  auto* sample_limit = app.add_subcommand("sample-limit", "sample truncated limit trees");
  add_run_flags(sample_limit, o);
  sample_limit->add_option("--tree", o.tree, "T_alpha, T0 or bgwp");
  sample_limit->add_option("--alpha", o.alpha);
  sample_limit->add_option("--beta", o.beta);
  sample_limit->add_option("--h", o.h)->check(CLI::NonNegativeNumber);
  sample_limit->add_flag("--compare", o.compare, "compare against the closed-form law");
  sample_limit->add_option("--max-size", o.max_size, "largest shape listed in the law table");
  sample_limit->add_flag("--inverse-progeny", o.inverse_progeny, "estimate E[1/|T_alpha|]");

  auto* exact = app.add_subcommand("exact", "determinantal and oracle queries");
  add_graph_flags(exact, o);
  exact->add_option("--query", o.query, "event, partition, mean-components or shape-law");
  exact->add_option("--include-edge", o.include_edges, "edge a,b that must be present");
  exact->add_option("--exclude-edge", o.exclude_edges, "edge a,b that must be absent");
  exact->add_option("--h", o.h)->check(CLI::NonNegativeNumber);

  auto* verify = app.add_subcommand("verify", "oracle-versus-formula suites");
  verify->add_option("--seed", o.seed);
  verify->add_option("--max-n", o.max_complete_n, "largest complete graph in exact suites")
      ->check(CLI::Range(1, 6));
  verify->add_option("--random-graphs", o.random_graphs)->check(CLI::NonNegativeNumber);

  auto* limit = app.add_subcommand("limit", "evaluate a shape law");
  limit->add_option("--law", o.law, "finite, limit, T_alpha, T0 or bgwp")->required();
  limit->add_option("--shape", o.shape, "canonical bracket code");
  limit->add_option("--h", o.h)->check(CLI::NonNegativeNumber);
  limit->add_option("--n", o.n);
  limit->add_option("--lambda", o.lambda_text);
  limit->add_option("--alpha", o.alpha);
  limit->add_option("--beta", o.beta);
  limit->add_option("--regime", o.regime, "sublinear, linear or superlinear");

  CLI::App* tables[] = {app.add_subcommand("convergence-table", "finite-n law against its limit"),
                        app.add_subcommand("plot-data", "(n, value) series per shape")};
  for (CLI::App* cmd : tables) {
    cmd->add_option("--n", grid_text, "n grid")->delimiter(',')->required();
    cmd->add_option("--h", o.h)->check(CLI::NonNegativeNumber);
    cmd->add_option("--alpha", o.alpha, "linear regime lambda_n = alpha n");
    cmd->add_option("--regime", o.regime, "sublinear, linear or superlinear");
    cmd->add_option("--shape", o.shapes, "shapes to tabulate (default: all up to --max-size)");
    cmd->add_option("--max-size", o.max_size);
  }
  tables[0]->add_option("--format", o.format, "csv or json");

  for (CLI::App* cmd : app.get_subcommands({})) {
    cmd->add_option("--output", o.output, "output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    for (const auto& g : grid_text) {
      try {
        o.n_grid.push_back(std::stod(g));
      } catch (const std::exception&) {
        throw ConfigError("grid value '" + g + "' is not a number");
      }
    }
    if (*sample) return run_sample(o);
    if (*sample_limit) return run_sample_limit(o);
    if (*exact) return run_exact(o);
    if (*verify) return run_verify(o);
    if (*limit) return run_limit(o);
    if (*tables[0]) return run_convergence_table(o);
    if (*tables[1]) return run_plot_data(o);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
  return kExitConfig;
}
