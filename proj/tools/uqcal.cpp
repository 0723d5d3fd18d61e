#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "uqcal/evaluate.hpp"
#include "uqcal/report.hpp"
#include "uqcal/synth.hpp"

namespace {

// Stable exit codes, documented in the README.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitProvider = 4;

void emit_error(const std::string& kind, const std::string& message) {
  nlohmann::json err = {{"error", kind}, {"message", message}};
  std::cerr << err.dump() << "\n";
}

std::unique_ptr<uqcal::EquivalenceOracle> make_oracle(const std::string& spec,
                                                      unsigned timeout_ms) {
  if (spec == "exact") return uqcal::exact_match_oracle();
  if (spec.rfind("overlap:", 0) == 0)
    return uqcal::overlap_oracle(std::stod(spec.substr(8)));
  if (spec.rfind("remote:", 0) == 0)
    return uqcal::remote_nli_oracle(spec.substr(7),
                                    std::chrono::milliseconds(timeout_ms));
  throw CLI::ValidationError("--oracle",
                             "expected exact, overlap:<t>, or remote:<url>");
}

std::unique_ptr<uqcal::GroundingProvider> make_provider(const std::string& spec,
                                                        unsigned timeout_ms) {
  if (spec == "none") return nullptr;
  if (spec == "offline") return uqcal::offline_provider();
  if (spec.rfind("remote:", 0) == 0) {
    std::string rest = spec.substr(7);
    auto sep = rest.rfind(':');
    if (sep == std::string::npos)
      throw CLI::ValidationError("--grounding",
                                 "expected remote:<url>:<verdict|score>");
    std::string url = rest.substr(0, sep);
    std::string mode = rest.substr(sep + 1);
    if (mode != "verdict" && mode != "score")
      throw CLI::ValidationError("--grounding",
                                 "mode must be verdict or score, got " + mode);
    return uqcal::remote_provider(url,
                                  mode == "verdict"
                                      ? uqcal::GroundingMode::Verdict
                                      : uqcal::GroundingMode::Score,
                                  std::chrono::milliseconds(timeout_ms));
  }
  throw CLI::ValidationError(
      "--grounding", "expected offline, none, or remote:<url>:<mode>");
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write output file: " + path);
  f << content;
}

struct EvaluateOptions {
  std::string input;
  std::string baseline = "lexsim";
  std::string oracle = "exact";
  std::string grounding = "offline";
  unsigned runs = 5;
  double split = 0.2;
  std::uint64_t seed = 0;
  unsigned bins = 10;
  std::string grid_t;
  std::string grid_c;
  std::string out = "out";
  unsigned jobs = 1;
  unsigned timeout_ms = 5000;
};

nlohmann::json config_json(const EvaluateOptions& opt) {
  return {{"input", opt.input},       {"baseline", opt.baseline},
          {"oracle", opt.oracle},     {"grounding", opt.grounding},
          {"runs", opt.runs},         {"split", opt.split},
          {"seed", opt.seed},         {"bins", opt.bins},
          {"grid_t", opt.grid_t.empty() ? "0.1:9.9:0.2" : opt.grid_t},
          // jobs deliberately omitted: summaries must be byte-identical
          // regardless of worker count
          {"grid_c", opt.grid_c.empty() ? "0.0:0.5:0.1" : opt.grid_c}};
}

int run_evaluate(const EvaluateOptions& opt) {
  std::vector<uqcal::Ensemble> dataset;
  try {
    dataset = uqcal::parse_dataset_file(opt.input);
    if (dataset.empty()) throw uqcal::ParseError("no ensembles in " + opt.input);
  } catch (const uqcal::ParseError& ex) {
    emit_error("data", ex.what());
    return kExitData;
  }

  uqcal::EvalConfig cfg;
  cfg.split = {opt.split, opt.seed, opt.runs};
  if (!opt.grid_t.empty()) cfg.grid.t_values = uqcal::Grid::parse_range(opt.grid_t);
  if (!opt.grid_c.empty()) cfg.grid.c_values = uqcal::Grid::parse_range(opt.grid_c);
  cfg.bins = opt.bins;
  cfg.jobs = opt.jobs;

  auto oracle = make_oracle(opt.oracle, opt.timeout_ms);
  auto provider = make_provider(opt.grounding, opt.timeout_ms);

  std::vector<uqcal::BaselineKind> kinds;
  if (opt.baseline == "all")
    kinds = {uqcal::BaselineKind::LexSim, uqcal::BaselineKind::PredEnt,
             uqcal::BaselineKind::SemEnt, uqcal::BaselineKind::NumSets};
  else
    kinds = {uqcal::baseline_kind_from_string(opt.baseline)};

  std::ostringstream log;
  for (auto kind : kinds) {
    uqcal::EvalResult result;
    try {
      result = uqcal::evaluate(dataset, kind, oracle.get(), provider.get(), cfg);
    } catch (const uqcal::ProviderError& ex) {
      emit_error("provider", ex.what());
      return kExitProvider;
    } catch (const std::exception& ex) {
      // per-ensemble provider failures surface wrapped; classify by message
      std::string what = ex.what();
      if (what.find("grounding") != std::string::npos ||
          what.find("nli") != std::string::npos) {
        emit_error("provider", what);
        return kExitProvider;
      }
      emit_error("data", what);
      return kExitData;
    }

    std::string prefix =
        kinds.size() == 1 ? opt.out
                          : opt.out + "." + uqcal::to_string(kind);

    uqcal::SummaryTable table = uqcal::summary_table(
        result.aggregate, {"baseline", "scaled", "fused"});
    nlohmann::json summary = nlohmann::json::parse(table.json);
    summary["config"] = config_json(opt);
    summary["config"]["baseline"] = uqcal::to_string(kind);
    nlohmann::json run_details = nlohmann::json::array();
    for (const auto& run : result.runs) {
      nlohmann::json rj = {{"run_index", run.run_index}, {"seed", run.seed}};
      for (const auto& [name, mr] : run.methods) {
        nlohmann::json mj = {{"ece", mr.ece}};
        mj["t"] = mr.t ? nlohmann::json(*mr.t) : nullptr;
        mj["c"] = mr.c ? nlohmann::json(*mr.c) : nullptr;
        rj["methods"][name] = std::move(mj);
      }
      run_details.push_back(std::move(rj));
    }
    summary["run_details"] = std::move(run_details);
    write_file(prefix + ".summary.json", summary.dump(2) + "\n");
    write_file(prefix + ".summary.csv", table.csv);

    uqcal::DiagramSpec diagram;
    diagram.title = std::string("Reliability (") + uqcal::to_string(kind) + ")";
    for (const auto& [label, report] : result.run0_reports)
      diagram.series.push_back({label, report, ""});
    write_file(prefix + ".reliability.svg", uqcal::reliability_svg(diagram));

    log << uqcal::to_string(kind) << ": wrote " << prefix << ".summary.{json,csv} and "
        << prefix << ".reliability.svg\n";
  }

  // timestamps live only in the sidecar log, never in the summaries
  auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::ofstream logf(opt.out + ".log");
  logf << "completed at " << std::ctime(&now) << log.str();
  return kExitOk;
}

int run_synth(const uqcal::SynthConfig& cfg, const std::string& out) {
  auto dataset = uqcal::generate(cfg);
  write_file(out, uqcal::serialize_dataset(dataset));
  return kExitOk;
}

int run_validate(const std::string& input) {
  std::ifstream f(input);
  if (!f) {
    emit_error("data", "cannot open input file: " + input);
    return kExitData;
  }
  std::string line;
  std::size_t line_no = 0, n_ok = 0, n_bad = 0;
  std::set<std::string> ids;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream one(line);
    try {
      auto parsed = uqcal::parse_dataset(one);
      const auto& e = parsed.at(0);
      if (!ids.insert(e.id).second)
        throw uqcal::ParseError("duplicate id \"" + e.id + "\"");
      ++n_ok;
    } catch (const uqcal::ParseError& ex) {
      // rewrites the single-line parser's "line 1" context
      std::string msg = ex.what();
      if (msg.rfind("line 1: ", 0) == 0) msg = msg.substr(8);
      std::cout << "line " << line_no << ": " << msg << "\n";
      ++n_bad;
    }
  }
  if (n_ok + n_bad == 0) {
    emit_error("data", "no ensembles in " + input);
    return kExitData;
  }
  std::cout << n_ok << " valid, " << n_bad << " invalid\n";
  return n_bad == 0 ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-consistency confidence calibration toolkit"};
  app.require_subcommand(1);

  EvaluateOptions eopt;
  auto* eval = app.add_subcommand("evaluate",
                                  "Run the calibration pipeline and write "
                                  "summary tables and reliability diagrams");
  eval->add_option("--input", eopt.input, "Line-delimited record file")
      ->required();
  eval->add_option("--baseline", eopt.baseline,
                   "Baseline: lexsim|predent|sement|numsets|all")
      ->default_val("lexsim");
  eval->add_option("--oracle", eopt.oracle,
                   "Equivalence oracle: exact|overlap:<t>|remote:<url>")
      ->default_val("exact");
  eval->add_option("--grounding", eopt.grounding,
                   "Grounding provider: offline|remote:<url>:<mode>|none")
      ->default_val("offline");
  eval->add_option("--runs", eopt.runs, "Number of random-split runs")
      ->default_val(5);
  eval->add_option("--split", eopt.split, "Validation fraction in (0,1)")
      ->default_val(0.2);
  eval->add_option("--seed", eopt.seed, "Split seed")->default_val(0);
  eval->add_option("--bins", eopt.bins, "ECE bin count")->default_val(10);
  eval->add_option("--grid-t", eopt.grid_t,
                   "Temperature grid start:stop:step (default 0.1:9.9:0.2)");
  eval->add_option("--grid-c", eopt.grid_c,
                   "Offset grid start:stop:step (default 0.0:0.5:0.1)");
  eval->add_option("--out", eopt.out, "Output file prefix")->default_val("out");
  eval->add_option("--jobs", eopt.jobs, "Worker threads for per-ensemble scoring")
      ->default_val(1);
  eval->add_option("--timeout", eopt.timeout_ms, "Remote call timeout (ms)")
      ->default_val(5000);

  uqcal::SynthConfig scfg;
  std::string synth_out = "synth.jsonl";
  auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
  synth->add_option("--n", scfg.n_ensembles, "Number of ensembles")
      ->default_val(75);
  synth->add_option("--samples", scfg.n_samples, "Responses per ensemble")
      ->default_val(20);
  synth->add_option("--frac-wrong", scfg.frac_consistent_wrong,
                    "Fraction of consistently wrong ensembles")
      ->default_val(1.0 / 3.0);
  synth->add_option("--fidelity", scfg.grounding_fidelity,
                    "Grounding fidelity in [0,1]")
      ->default_val(0.9);
  synth->add_option("--vocab", scfg.vocab_size, "Vocabulary size")
      ->default_val(50);
  synth->add_option("--seed", scfg.seed, "Generator seed")->default_val(0);
  synth->add_option("--out", synth_out, "Output file")->default_val("synth.jsonl");

  std::string validate_input;
  auto* validate = app.add_subcommand("validate", "Schema-check a record file");
  validate->add_option("--input", validate_input, "Line-delimited record file")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (eval->parsed()) return run_evaluate(eopt);
    if (synth->parsed()) return run_synth(scfg, synth_out);
    if (validate->parsed()) return run_validate(validate_input);
  } catch (const uqcal::ProviderError& ex) {
    emit_error("provider", ex.what());
    return kExitProvider;
  } catch (const uqcal::ParseError& ex) {
    emit_error("data", ex.what());
    return kExitData;
  } catch (const CLI::Error& ex) {
    emit_error("usage", ex.what());
    return kExitUsage;
  } catch (const std::invalid_argument& ex) {
    emit_error("usage", ex.what());
    return kExitUsage;
  } catch (const std::exception& ex) {
    emit_error("data", ex.what());
    return kExitData;
  }
  return kExitUsage;
}
