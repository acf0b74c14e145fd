// markoff: command-line front end for the Markoff mod-p experiments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "markoff/markoff.hpp"

namespace {

using markoff::ConfigLayer;
using markoff::RunConfig;
using markoff::u64;

constexpr int kExitFailedCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitError = 3;

// Opens --out if given, otherwise hands back the fallback stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw markoff::InvalidArgument("cannot open output file " + path);
      stream_ = file_.get();
    }
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_;
};

int run_density(const RunConfig& cfg) {
  Output out(cfg.out, std::cout);
  std::ostream& summary_stream = cfg.out.empty() ? std::cerr : std::cout;

  markoff::DensityAccumulator acc(cfg.bound);
  if (cfg.format == markoff::OutputFormat::Csv) markoff::write_csv_header(out.get());
  markoff::SweepOptions opt;
  opt.workers = cfg.workers;
  opt.force = cfg.force;
  markoff::sweep_density(cfg.bound, opt, [&](const markoff::SweepRecord& r) {
    acc.add(r);
    if (cfg.format == markoff::OutputFormat::Csv)
      markoff::write_csv_row(r, out.get());
    else
      markoff::write_jsonl_row(r, out.get());
  });

  const markoff::DensitySummary s = acc.summary();
  if (!cfg.svg.empty() && s.primes > 0) {
    std::ofstream svg(cfg.svg);
    if (!svg) throw markoff::InvalidArgument("cannot open svg file " + cfg.svg);
    markoff::write_svg(acc.series(), svg);
  }
  nlohmann::json j = {{"command", "density"},
                      {"bound", cfg.bound},
                      {"primes", s.primes},
                      {"in_cage", s.in_cage},
                      {"density", s.density()},
                      {"max_running_density_bound_ge_100", s.max_running_density},
                      {"invariant_violations", s.invariant_violations},
                      {"note", "denominator counts primes 5 < p <= bound"},
                      {"ok", s.ok()}};
  summary_stream << j.dump() << '\n';
  return s.ok() ? 0 : kExitFailedCheck;
}

int run_mersenne(const RunConfig& cfg) {
  const markoff::MersenneReport r = markoff::mersenne_report(cfg.max_exp, cfg.force);
  Output out(cfg.out, std::cout);
  out.get() << markoff::to_json(r).dump(2) << '\n';
  return r.ok() ? 0 : kExitFailedCheck;
}

int run_verify(const RunConfig& cfg) {
  const markoff::VerifyReport r = markoff::verify_report(cfg.pmax, cfg.force);
  Output out(cfg.out, std::cout);
  out.get() << markoff::to_json(r).dump(2) << '\n';
  return r.ok() ? 0 : kExitFailedCheck;
}

int run_point(const RunConfig& cfg) {
  u64 v[3];
  std::stringstream ss(cfg.triple);
  std::string cell;
  int n = 0;
  while (std::getline(ss, cell, ',')) {
    if (n == 3) throw markoff::InvalidArgument("--triple needs exactly three values");
    std::size_t used = 0;
    try {
      v[n++] = std::stoull(cell, &used);
    } catch (const std::logic_error&) {
      used = std::string::npos;
    }
    if (used != cell.size() || cell.find('-') != std::string::npos)
      throw markoff::InvalidArgument("bad triple entry '" + cell + "'");
  }
  if (n != 3) throw markoff::InvalidArgument("--triple needs exactly three values");

  markoff::PointOptions opt;
  opt.force = cfg.force;
  opt.word_cap = cfg.word_cap;
  const nlohmann::json j = markoff::point_report(cfg.p, v[0], v[1], v[2], opt);
  Output out(cfg.out, std::cout);
  out.get() << j.dump(2) << '\n';
  return 0;
}

int run_graph(const RunConfig& cfg) {
  const markoff::MarkoffGraph g(cfg.p, markoff::Enumeration::Auto, cfg.force);
  const markoff::CageReport cage = markoff::cage_subgraph(g);
  if (!cfg.export_path.empty()) {
    std::ofstream edges(cfg.export_path);
    if (!edges) throw markoff::InvalidArgument("cannot open export file " + cfg.export_path);
    markoff::write_edge_csv(g, edges);
  }
  Output out(cfg.out, std::cout);
  markoff::write_component_jsonl(g, cage, out.get());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markoff mod-p graphs, rotation orders and cage membership"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, format, out, svg;
  unsigned workers = 1;
  bool force = false;
  auto* o_config = app.add_option("--config", config_path, "JSON config file (flags override it)");
  auto* o_format = app.add_option("--format", format, "record format: csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* o_out = app.add_option("--out", out, "output path (default: stdout)");
  auto* o_svg = app.add_option("--svg", svg, "write the running-density plot here (density only)");
  auto* o_workers = app.add_option("--workers", workers, "worker threads (default: $MARKOFF_WORKERS or 1)")
                        ->check(CLI::PositiveNumber);
  auto* o_force = app.add_flag("--force", force, "override size guards (may be very slow)");

  u64 bound = 0, pmax = 0, p = 0, word_cap = 0;
  int max_exp = 0;
  std::string triple, export_path;

  auto* density = app.add_subcommand("density", "fraction of primes with (1,1,1) in the cage");
  auto* o_bound = density->add_option("--bound", bound, "largest prime to test")->check(CLI::PositiveNumber);

  auto* mersenne = app.add_subcommand("mersenne", "check (1,1,1) at Mersenne primes = +-2 mod 5");
  auto* o_maxexp = mersenne->add_option("--max-exp", max_exp, "largest exponent n in 2^n - 1")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "exhaustive checks over all primes 5 < p <= pmax");
  auto* o_pmax = verify->add_option("--pmax", pmax, "largest prime")->check(CLI::PositiveNumber);

  auto* point = app.add_subcommand("point", "inspect one point of X*(p)");
  auto* o_p_point = point->add_option("--p", p, "prime");
  auto* o_triple = point->add_option("--triple", triple, "coordinates a,b,c");
  auto* o_wordcap = point->add_option("--word-cap", word_cap, "maximum moves replayed for a lift")->check(CLI::PositiveNumber);

  auto* graph = app.add_subcommand("graph", "build G_p; print component summary, optionally export edges");
  auto* o_p_graph = graph->add_option("--p", p, "prime");
  auto* o_export = graph->add_option("--export", export_path, "edge list CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    ConfigLayer cli;
    if (*o_format) cli.format = markoff::parse_format(format);
    if (*o_out) cli.out = out;
    if (*o_svg) cli.svg = svg;
    if (*o_workers) cli.workers = workers;
    if (*o_force) cli.force = force;
    if (*o_bound) cli.bound = bound;
    if (*o_maxexp) cli.max_exp = max_exp;
    if (*o_pmax) cli.pmax = pmax;
    if (*o_p_point || *o_p_graph) cli.p = p;
    if (*o_triple) cli.triple = triple;
    if (*o_wordcap) cli.word_cap = word_cap;
    if (*o_export) cli.export_path = export_path;

    const ConfigLayer file = *o_config ? markoff::load_config_file(config_path) : ConfigLayer{};
    const std::string command = app.get_subcommands().front()->get_name();
    const RunConfig cfg =
        markoff::resolve_config(command, markoff::workers_from_env(std::getenv("MARKOFF_WORKERS")), file, cli);

    if (command == "density") return run_density(cfg);
    if (command == "mersenne") return run_mersenne(cfg);
    if (command == "verify") return run_verify(cfg);
    if (command == "point") return run_point(cfg);
    return run_graph(cfg);
  } catch (const markoff::InvalidArgument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const markoff::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
}
