// Command-line entry point: dataset statistics, query generation, fixture
// generation, evaluation runs, decay sweeps and report conversion.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cohesion/cohesion.hpp"

namespace fs = std::filesystem;
using namespace cohesion;

namespace {

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("cohesion");
  logger->set_pattern("[%l] %v");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("COHESION_LOG")) {
    auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to off; keep the default for those.
    if (level != spdlog::level::off || std::string(env) == "off") spdlog::set_level(level);
  }
}

TemporalMultigraph load_dataset(const fs::path& path, bool largest_component) {
  auto g = load_graph(path);
  spdlog::info("loaded {}: {} users, {} events", path.string(), g.n_users(), g.n_events());
  if (largest_component) g = largest_weak_component(g);
  return g;
}

std::vector<double> parse_rates(const std::string& csv) {
  std::vector<double> rates;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      rates.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("invalid decay rate '" + item + "'");
    }
  }
  if (rates.empty()) throw Error("no decay rates given");
  return rates;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();

  CLI::App app{"Cohesiveness measures and community-search evaluation over temporal sentiment multigraphs"};
  app.require_subcommand(1);

  // stats
  auto* stats_cmd = app.add_subcommand("stats", "Print dataset statistics");
  fs::path stats_file;
  bool stats_all_components = false;
  int stats_loop_degree = 1;
  stats_cmd->add_option("file", stats_file, "Edge list (CSV or JSON-lines)")->required();
  stats_cmd->add_flag("--all-components", stats_all_components, "Do not restrict to the largest component");
  stats_cmd->add_option("--self-loop-degree", stats_loop_degree, "Incidences per self-loop")
      ->check(CLI::IsMember({1, 2}));

  // gen-queries
  auto* queries_cmd = app.add_subcommand("gen-queries", "Sample query users from the top-degree half");
  fs::path queries_file;
  std::size_t queries_n = 100;
  std::uint64_t queries_seed = 42;
  bool queries_all_components = false;
  queries_cmd->add_option("file", queries_file, "Edge list")->required();
  queries_cmd->add_option("-n,--n", queries_n, "Number of queries")->check(CLI::PositiveNumber);
  queries_cmd->add_option("--seed", queries_seed, "Random seed");
  queries_cmd->add_flag("--all-components", queries_all_components, "Do not restrict to the largest component");

  // gen-fixture
  auto* fixture_cmd = app.add_subcommand("gen-fixture", "Generate a planted-community dataset");
  fs::path fixture_spec_path, fixture_out;
  std::string fixture_format = "csv";
  fixture_cmd->add_option("--spec", fixture_spec_path, "Fixture spec (JSON)")->required();
  fixture_cmd->add_option("--out", fixture_out, "Output edge file")->required();
  fixture_cmd->add_option("--format", fixture_format, "csv or jsonl")->check(CLI::IsMember({"csv", "jsonl"}));

  // run
  auto* run_cmd = app.add_subcommand("run", "Run one evaluation plan");
  fs::path run_plan, run_out = "cohesion-out";
  run_cmd->add_option("--plan", run_plan, "Plan file (JSON)")->required();
  run_cmd->add_option("--out-dir", run_out, "Directory for report.json and report.csv");

  // sweep-decay
  auto* sweep_cmd = app.add_subcommand("sweep-decay", "Re-measure one plan's communities across decay rates");
  fs::path sweep_plan, sweep_out = "cohesion-out";
  std::string sweep_rates = "0.0001,0.0005,0.001,0.005,0.01";
  std::string sweep_kind;
  sweep_cmd->add_option("--plan", sweep_plan, "Plan file (JSON)")->required();
  sweep_cmd->add_option("--rates", sweep_rates, "Comma-separated decay rates");
  sweep_cmd->add_option("--kind", sweep_kind, "Decay kind override")
      ->check(CLI::IsMember({"exponential", "polynomial"}));
  sweep_cmd->add_option("--out-dir", sweep_out, "Directory for sweep outputs");

  // report
  auto* report_cmd = app.add_subcommand("report", "Convert a JSON report");
  fs::path report_in, report_out;
  std::string report_format = "csv";
  report_cmd->add_option("--in", report_in, "report.json from run or sweep-decay")->required();
  report_cmd->add_option("--format", report_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  report_cmd->add_option("--out", report_out, "Output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*stats_cmd) {
      auto g = load_dataset(stats_file, !stats_all_components);
      auto s = stats(g, static_cast<SelfLoopDegree>(stats_loop_degree));
      std::cout << "n_users " << s.n_users << '\n'
                << "n_events " << s.n_events << '\n'
                << "n_timestamps " << s.n_timestamps << '\n'
                << "density " << format_number(s.density) << '\n'
                << "deg_avg " << format_number(s.deg_avg) << '\n';
    } else if (*queries_cmd) {
      auto g = load_dataset(queries_file, !queries_all_components);
      auto sample = generate_queries(g, queries_n, queries_seed);
      if (sample.with_replacement)
        spdlog::warn("query pool has {} users; sampled {} with replacement", sample.pool_size, queries_n);
      for (UserId q : sample.queries) std::cout << g.external_id(q) << '\n';
    } else if (*fixture_cmd) {
      auto spec = load_fixture_spec(fixture_spec_path);
      auto fixture = generate_fixture(spec);
      export_graph(fixture.graph, fixture_out, fixture_format == "csv" ? EdgeFormat::Csv : EdgeFormat::JsonLines);
      std::ostringstream membership;
      membership << "user,community\n";
      for (std::size_t i = 0; i < fixture.planted.size(); ++i)
        membership << fixture_user_id(i) << ',' << fixture.planted[i] << '\n';
      write_text(fs::path(fixture_out).concat(".membership.csv"), membership.str());
      spdlog::info("wrote {} events to {}", fixture.graph.n_events(), fixture_out.string());
    } else if (*run_cmd) {
      auto plan = load_plan(run_plan);
      auto report = run(plan);
      fs::create_directories(run_out);
      emit_report(report, ReportFormat::Json, run_out / "report.json");
      emit_report(report, ReportFormat::Csv, run_out / "report.csv");
      std::cout << "q_hit " << (report.timed_out ? std::string("INF") : format_number(report.q_hit)) << '\n'
                << "report " << (run_out / "report.json").string() << '\n';
    } else if (*sweep_cmd) {
      auto plan = load_plan(sweep_plan);
      if (!sweep_kind.empty()) plan.excitation.decay.kind = parse_decay_kind(sweep_kind);
      auto rates = parse_rates(sweep_rates);
      auto reports = sweep_decay(plan, rates);
      fs::create_directories(sweep_out);
      std::ofstream csv(sweep_out / "sweep.csv", std::ios::binary | std::ios::trunc);
      if (!csv) throw Error("cannot write " + (sweep_out / "sweep.csv").string());
      for (std::size_t i = 0; i < reports.size(); ++i) {
        write_report_csv(csv, table_of(reports[i]), i == 0);
        emit_report(reports[i], ReportFormat::Json, sweep_out / ("sweep-" + std::to_string(i) + ".json"));
        std::cout << "rate " << format_number(rates[i]) << " ei "
                  << (reports[i].aggregate ? format_number(reports[i].aggregate->ei) : std::string("-")) << '\n';
      }
    } else if (*report_cmd) {
      std::ostringstream text;
      if (report_format == "json") {
        std::ifstream in(report_in);
        if (!in) throw Error("file not found: " + report_in.string());
        table_from_json(nlohmann::ordered_json::parse(in));  // validates
        in.clear();
        in.seekg(0);
        text << nlohmann::ordered_json::parse(in).dump(2) << '\n';
      } else {
        write_report_csv(text, load_report_table(report_in));
      }
      if (report_out.empty()) {
        std::cout << text.str();
      } else {
        write_text(report_out, text.str());
      }
    }
  } catch (const std::exception& e) {
    spdlog::error("{}", e.what());
    return 1;
  }
  return 0;
}
