// Scenario runner: evolve | probe | scan | classify | track, each driven by
// one JSON config and writing CSV/JSON artifacts into --out. Exit codes:
// 0 success, 2 config or schema error, 3 numerical or validation error.
#include <algorithm>
#include <array>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "qdiss/entanglement.hpp"
#include "qdiss/errors.hpp"
#include "qdiss/jsonio.hpp"

namespace {

using namespace qdiss;

// All floats go out with 12 significant digits; JSON values are rounded to
// the same precision so the two artifact kinds agree byte for byte across
// runs.
std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

double rounded(double v) { return std::strtod(fmt(v).c_str(), nullptr); }

struct OutputFile {
  std::string name;
  std::string content;
};

// Outputs are buffered and written only after the whole command succeeded,
// so a failing run leaves no files behind.
void write_outputs(const std::filesystem::path& dir,
                   const std::vector<OutputFile>& files) {
  std::filesystem::create_directories(dir);
  for (const OutputFile& f : files) {
    const std::filesystem::path path = dir / f.name;
    std::ofstream os(path, std::ios::binary);
    os << f.content;
    if (!os) {
      throw ValidationError("failed to write " + path.string());
    }
  }
}

std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

double number_field(const Json& j, const std::string& key,
                    const std::string& context) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw PreconditionError(context + ": '" + key + "' must be a number");
  }
  return j.at(key).get<double>();
}

int int_field(const Json& j, const std::string& key,
              const std::string& context) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw PreconditionError(context + ": '" + key + "' must be an integer");
  }
  return j.at(key).get<int>();
}

// Time or mixing-weight grid: either an explicit array or
// {"start", "stop", "step"} expanded inclusively.
std::vector<double> grid_field(const Json& j, const std::string& context) {
  std::vector<double> grid;
  if (j.is_array()) {
    for (const Json& v : j) {
      if (!v.is_number()) {
        throw PreconditionError(context + ": entries must be numbers");
      }
      grid.push_back(v.get<double>());
    }
  } else if (j.is_object()) {
    require_known_keys(j, {"start", "stop", "step"}, context);
    const double start = number_field(j, "start", context);
    const double stop = number_field(j, "stop", context);
    const double step = number_field(j, "step", context);
    if (step <= 0.0 || stop < start) {
      throw PreconditionError(context +
                              ": needs step > 0 and stop >= start");
    }
    for (long i = 0;; ++i) {
      const double t = start + static_cast<double>(i) * step;
      if (t > stop + 0.5 * step) break;
      grid.push_back(t);
    }
  } else {
    throw PreconditionError(context +
                            ": expected an array or {start, stop, step}");
  }
  if (grid.empty()) {
    throw PreconditionError(context + ": grid is empty");
  }
  return grid;
}

std::vector<int> parties_field(const Json& j, const std::string& context) {
  if (!j.is_array() || j.empty()) {
    throw PreconditionError(context + ": expected a nonempty integer array");
  }
  std::vector<int> parties;
  for (const Json& v : j) {
    if (!v.is_number_integer()) {
      throw PreconditionError(context + ": entries must be integers");
    }
    parties.push_back(v.get<int>());
  }
  return parties;
}

std::vector<double> q_grid_field(const Json& config) {
  if (!config.contains("q_grid")) return default_q_grid();
  const Json& j = config.at("q_grid");
  if (!j.is_array() || j.empty()) {
    throw PreconditionError("q_grid: expected a nonempty number array");
  }
  std::vector<double> grid;
  for (const Json& v : j) {
    if (!v.is_number()) {
      throw PreconditionError("q_grid: entries must be numbers");
    }
    grid.push_back(v.get<double>());
  }
  return grid;
}

EvolveOptions evolve_options(const Json& config) {
  EvolveOptions opt;
  if (config.contains("method")) {
    const Json& m = config.at("method");
    if (m == "rk4") {
      opt.method = Method::rk4;
    } else if (m == "exact") {
      opt.method = Method::exact;
    } else {
      throw PreconditionError("method: must be \"rk4\" or \"exact\"");
    }
  }
  if (config.contains("max_step")) {
    if (!config.at("max_step").is_number()) {
      throw PreconditionError("max_step: must be a number");
    }
    opt.max_step = config.at("max_step").get<double>();
    if (opt.max_step <= 0.0) {
      throw PreconditionError("max_step: must be positive");
    }
  }
  return opt;
}

// Initial state: an inline density, a catalog label, or a mixture-family
// point; its factor layout must match the model's.
DensityMatrix initial_from_json(const Json& j,
                                const std::vector<int>& model_dims) {
  require_known_keys(j, {"density", "label", "werner"}, "initial");
  const int given = static_cast<int>(j.contains("density")) +
                    static_cast<int>(j.contains("label")) +
                    static_cast<int>(j.contains("werner"));
  if (given != 1) {
    throw PreconditionError(
        "initial: need exactly one of 'density', 'label', 'werner'");
  }
  DensityMatrix rho = [&] {
    if (j.contains("density")) {
      return density_from_json(j.at("density"));
    }
    if (j.contains("label")) {
      if (!j.at("label").is_string()) {
        throw PreconditionError("initial.label: must be a string");
      }
      return three_qubit(j.at("label").get<std::string>()).density();
    }
    const Json& w = j.at("werner");
    require_known_keys(w, {"x", "levels", "parties"}, "initial.werner");
    return werner({number_field(w, "x", "initial.werner"),
                   int_field(w, "levels", "initial.werner"),
                   int_field(w, "parties", "initial.werner")});
  }();
  if (rho.dims() != model_dims) {
    throw PreconditionError(
        "initial: state dims do not match the model dims");
  }
  return rho;
}

struct Observable {
  std::string name;
  ComplexMatrix op;
};

std::vector<Observable> observables_from_json(const Json& config,
                                              Eigen::Index size) {
  std::vector<Observable> out;
  if (!config.contains("observables")) return out;
  const Json& arr = config.at("observables");
  if (!arr.is_array()) {
    throw PreconditionError("observables: expected an array");
  }
  for (const Json& entry : arr) {
    require_known_keys(entry, {"name", "op"}, "observables[]");
    if (!entry.contains("name") || !entry.at("name").is_string() ||
        !entry.contains("op")) {
      throw PreconditionError("observables[]: needs 'name' and 'op'");
    }
    Observable obs;
    obs.name = entry.at("name").get<std::string>();
    if (obs.name.empty() ||
        obs.name.find_first_of(",\n\r") != std::string::npos) {
      throw PreconditionError("observables[]: name must be a CSV-safe token");
    }
    for (const Observable& prev : out) {
      if (prev.name == obs.name) {
        throw PreconditionError("observables[]: duplicate name '" + obs.name +
                                "'");
      }
    }
    obs.op = matrix_from_json(entry.at("op"), "observables[].op");
    if (obs.op.rows() != size || obs.op.cols() != size) {
      throw PreconditionError("observables[].op: shape does not match model");
    }
    out.push_back(std::move(obs));
  }
  return out;
}

unsigned thread_cap() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("QDISS_THREADS");
  if (env == nullptr) return hw;
  char* end = nullptr;
  const unsigned long v = std::strtoul(env, &end, 10);
  if (end == env || *end != '\0' || v == 0) return hw;
  return static_cast<unsigned>(std::min<unsigned long>(v, 256));
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

std::string csv_optional(const std::optional<double>& v) {
  return v.has_value() ? fmt(*v) : std::string();
}

void append_verdict_columns(std::ostringstream& csv,
                            const EntanglementVerdict& v) {
  csv << fmt(v.min_conditional_value) << ',' << csv_optional(v.witness_q)
      << ',' << to_string(v.infinity_sign) << ','
      << csv_optional(v.ppt_min_eigenvalue) << ','
      << csv_bool(v.detected_by_q_criterion);
}

int run_evolve(const Json& config, const std::filesystem::path& out) {
  require_known_keys(
      config, {"model", "initial", "times", "method", "max_step", "observables"},
      "config");
  if (!config.contains("model") || !config.contains("initial") ||
      !config.contains("times")) {
    throw PreconditionError("config: needs 'model', 'initial', 'times'");
  }
  const ParsedModel pm = model_from_json(config.at("model"));
  const DensityMatrix rho0 = initial_from_json(config.at("initial"), pm.dims);
  const std::vector<double> times = grid_field(config.at("times"), "times");
  const EvolveOptions opt = evolve_options(config);
  const std::vector<Observable> observables =
      observables_from_json(config, pm.model.size());

  const Trajectory traj = evolve(pm.model, rho0, times, opt);

  std::ostringstream csv;
  csv << "t,trace_re,purity,min_eig";
  for (const Observable& obs : observables) csv << ',' << obs.name;
  csv << '\n';
  double max_trace_dev = 0.0;
  double min_eig = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k < traj.states.size(); ++k) {
    const DensityMatrix& state = traj.states[k];
    const ValidationReport report = validate_density(state.matrix());
    max_trace_dev = std::max(max_trace_dev, report.trace_deviation);
    min_eig = std::min(min_eig, report.min_eigenvalue);
    csv << fmt(traj.times[k]) << ',' << fmt(state.matrix().trace().real())
        << ',' << fmt(state.purity()) << ',' << fmt(report.min_eigenvalue);
    for (const Observable& obs : observables) {
      csv << ',' << fmt((obs.op * state.matrix()).trace().real());
    }
    csv << '\n';
  }

  const Json summary{
      {"points", traj.times.size()},
      {"final_purity", rounded(traj.states.back().purity())},
      {"max_trace_deviation", rounded(max_trace_dev)},
      {"min_eigenvalue", rounded(min_eig)},
  };
  write_outputs(out, {{"trajectory.csv", csv.str()},
                      {"summary.json", json_text(summary)}});
  return 0;
}

int run_probe(const Json& config, const std::filesystem::path& out) {
  require_known_keys(config, {"model", "psi0", "psi1", "dt"}, "config");
  if (!config.contains("model") || !config.contains("psi0") ||
      !config.contains("psi1")) {
    throw PreconditionError("config: needs 'model', 'psi0', 'psi1', 'dt'");
  }
  const ParsedModel pm = model_from_json(config.at("model"));
  const ComplexVector psi0 = vector_from_json(config.at("psi0"), "psi0");
  const ComplexVector psi1 = vector_from_json(config.at("psi1"), "psi1");
  const double dt = number_field(config, "dt", "config");

  const double probe = positivity_probe(pm.model, psi0, psi1, dt);

  const Json report{
      {"probe", rounded(probe)},
      {"dt", rounded(dt)},
      {"completely_positive", pm.model.completely_positive()},
  };
  write_outputs(out, {{"probe.json", json_text(report)}});
  return 0;
}

int run_scan(const Json& config, const std::filesystem::path& out) {
  require_known_keys(config,
                     {"family", "condition_on", "q_grid", "tol", "x_grid"},
                     "config");
  if (!config.contains("family")) {
    throw PreconditionError("config: needs 'family'");
  }
  const Json& fam = config.at("family");
  require_known_keys(fam, {"levels", "parties"}, "family");
  const int levels = int_field(fam, "levels", "family");
  const int parties = int_field(fam, "parties", "family");

  std::vector<int> condition_on;
  if (config.contains("condition_on")) {
    condition_on = parties_field(config.at("condition_on"), "condition_on");
  } else {
    for (int p = 0; p + 1 < parties; ++p) condition_on.push_back(p);
  }
  const std::vector<double> q_grid = q_grid_field(config);
  double tol = 1e-4;
  if (config.contains("tol")) tol = number_field(config, "tol", "config");
  std::vector<double> xs{};
  if (config.contains("x_grid")) {
    xs = grid_field(config.at("x_grid"), "x_grid");
  } else {
    xs = grid_field(Json{{"start", 0.0}, {"stop", 1.0}, {"step", 0.02}},
                    "x_grid");
  }
  // Grid arithmetic may overshoot the unit interval by an ulp; snap those
  // points back so they stay valid mixing weights.
  for (double& x : xs) {
    if (x > 1.0 && x < 1.0 + 1e-12) x = 1.0;
    if (x < 0.0 && x > -1e-12) x = 0.0;
  }

  const double threshold =
      threshold_scan({0.0, levels, parties}, condition_on, q_grid, tol);

  // The per-x table is embarrassingly parallel; slots are preassigned so
  // the output order never depends on scheduling.
  std::vector<EntanglementVerdict> verdicts(xs.size());
  const unsigned workers = std::max(
      1u, std::min(thread_cap(), static_cast<unsigned>(xs.size())));
  auto fill = [&](unsigned w) {
    for (size_t i = w; i < xs.size(); i += workers) {
      verdicts[i] =
          detect(werner({xs[i], levels, parties}), condition_on, q_grid);
    }
  };
  if (workers == 1) {
    fill(0);
  } else {
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          fill(w);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (std::thread& t : pool) t.join();
    for (const std::exception_ptr& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  std::ostringstream csv;
  csv << "x,min_conditional_value,witness_q,infinity_sign,ppt_min_eig,"
         "detected\n";
  for (size_t i = 0; i < xs.size(); ++i) {
    csv << fmt(xs[i]) << ',';
    append_verdict_columns(csv, verdicts[i]);
    csv << '\n';
  }

  const Json report{
      {"threshold", rounded(threshold)},
      {"closed_form", rounded(werner_threshold(levels, parties))},
      {"levels", levels},
      {"parties", parties},
      {"condition_on", condition_on},
      {"tol", rounded(tol)},
  };
  write_outputs(out, {{"threshold.json", json_text(report)},
                      {"scan.csv", csv.str()}});
  return 0;
}

const char* party_letters(const std::pair<int, int>& pair) {
  static const std::array<const char*, 3> names{"AB", "AC", "BC"};
  if (pair == std::pair{0, 1}) return names[0];
  if (pair == std::pair{0, 2}) return names[1];
  return names[2];
}

std::string letter_set(const std::vector<int>& parties) {
  std::string s;
  for (int p : parties) s += static_cast<char>('A' + p);
  return s;
}

struct GoldenRow {
  std::array<Symmetry, 3> pair_symmetry;
  std::array<char, 3> robustness;
  Symmetry full_label;
  std::string full_parties;
};

// Reference classification of the catalog, keyed by label stem. Alias
// stems map to the same row as their construction names.
std::optional<GoldenRow> golden_row(const std::string& label) {
  const std::string stem =
      label.empty() ? label : label.substr(0, label.size() - 1);
  const GoldenRow ghz{{Symmetry::S, Symmetry::S, Symmetry::S},
                      {'F', 'F', 'F'},
                      Symmetry::S,
                      "ABC"};
  const GoldenRow gfr{{Symmetry::NS, Symmetry::NS, Symmetry::AS},
                      {'F', 'F', 'R'},
                      Symmetry::AS,
                      "BC"};
  const GoldenRow wrr_low{{Symmetry::NS, Symmetry::NS, Symmetry::S},
                          {'R', 'R', 'r'},
                          Symmetry::S,
                          "BC"};
  const GoldenRow wrr{{Symmetry::S, Symmetry::S, Symmetry::S},
                      {'R', 'R', 'R'},
                      Symmetry::S,
                      "ABC"};
  if (stem == "GHZ" || stem == "GFF") return ghz;
  if (stem == "GFR" || stem == "D2") return gfr;
  if (stem == "WRr" || stem == "D1") return wrr_low;
  if (stem == "WRR" || stem == "Q2") return wrr;
  return std::nullopt;
}

int run_classify(const Json& config, const std::filesystem::path& out) {
  require_known_keys(config, {"labels"}, "config");
  std::vector<std::string> labels;
  if (config.contains("labels")) {
    const Json& arr = config.at("labels");
    if (!arr.is_array() || arr.empty()) {
      throw PreconditionError("labels: expected a nonempty string array");
    }
    for (const Json& v : arr) {
      if (!v.is_string()) {
        throw PreconditionError("labels: entries must be strings");
      }
      labels.push_back(v.get<std::string>());
    }
  } else {
    labels = three_qubit_labels();
  }

  std::vector<ClassificationRow> rows;
  rows.reserve(labels.size());
  for (const std::string& label : labels) {
    rows.push_back(classify_three_qubit(label));
  }

  bool all_match = true;
  Json json_rows = Json::array();
  std::ostringstream text;
  text << "state   AB       AC       BC       ABC\n";
  for (const ClassificationRow& row : rows) {
    const std::optional<GoldenRow> golden = golden_row(row.label);
    bool match = golden.has_value();
    Json marginals = Json::array();
    char line[128];
    std::string cells;
    for (size_t i = 0; i < row.marginals.size(); ++i) {
      const MarginalClassification& mc = row.marginals[i];
      if (golden.has_value()) {
        match = match && mc.symmetry == golden->pair_symmetry[i] &&
                mc.robustness == golden->robustness[i];
      }
      marginals.push_back(Json{
          {"pair", party_letters(mc.pair)},
          {"symmetry", to_string(mc.symmetry)},
          {"robustness", std::string(1, mc.robustness)},
          {"ppt_min_eigenvalue", rounded(mc.ppt_min_eigenvalue)},
          {"q_criterion_detected", mc.q_criterion_detected},
          {"min_conditional_value", rounded(mc.min_conditional_value)},
      });
      cells += to_string(mc.symmetry) + "/" + mc.robustness;
      cells.resize(9 * (i + 1), ' ');
    }
    if (golden.has_value()) {
      match = match && row.full.label == golden->full_label &&
              letter_set(row.full.parties) == golden->full_parties;
    }
    all_match = all_match && match;

    const std::string full_cell =
        to_string(row.full.label) +
        (row.full.parties.empty() ? ""
                                  : "(" + letter_set(row.full.parties) + ")");
    std::snprintf(line, sizeof(line), "%-8s%s%s\n", row.label.c_str(),
                  cells.c_str(), full_cell.c_str());
    text << line;

    json_rows.push_back(Json{
        {"label", row.label},
        {"marginals", marginals},
        {"full",
         Json{{"symmetry", to_string(row.full.label)},
              {"parties", letter_set(row.full.parties)}}},
        {"reference_match", match},
    });
  }

  const Json report{{"rows", json_rows}, {"reference_match", all_match}};
  write_outputs(out, {{"classification.json", json_text(report)},
                      {"classification.txt", text.str()}});
  if (!all_match) {
    std::cerr << "classification diverges from the reference table\n";
    return 3;
  }
  return 0;
}

int run_track(const Json& config, const std::filesystem::path& out) {
  require_known_keys(config,
                     {"model", "initial", "times", "condition_on", "q_grid",
                      "method", "max_step"},
                     "config");
  if (!config.contains("model") || !config.contains("initial") ||
      !config.contains("times") || !config.contains("condition_on")) {
    throw PreconditionError(
        "config: needs 'model', 'initial', 'times', 'condition_on'");
  }
  const ParsedModel pm = model_from_json(config.at("model"));
  const DensityMatrix rho0 = initial_from_json(config.at("initial"), pm.dims);
  const std::vector<double> times = grid_field(config.at("times"), "times");
  const std::vector<int> condition_on =
      parties_field(config.at("condition_on"), "condition_on");
  const std::vector<double> q_grid = q_grid_field(config);
  const EvolveOptions opt = evolve_options(config);

  const EntanglementTimeline timeline =
      track(pm.model, rho0, times, condition_on, q_grid, opt);

  std::ostringstream csv;
  csv << "t,min_conditional_value,witness_q,infinity_sign,ppt_min_eig,"
         "detected\n";
  for (size_t i = 0; i < timeline.times.size(); ++i) {
    csv << fmt(timeline.times[i]) << ',';
    append_verdict_columns(csv, timeline.verdicts[i]);
    csv << '\n';
  }

  Json transitions = Json::array();
  for (const DetectionTransition& tr : timeline.transitions) {
    transitions.push_back(Json{{"t_before", rounded(tr.t_before)},
                               {"t_after", rounded(tr.t_after)},
                               {"to_detected", tr.to_detected}});
  }
  const Json report{
      {"transitions", transitions},
      {"condition_on", condition_on},
      {"detected_first", timeline.verdicts.front().detected_by_q_criterion},
      {"detected_last", timeline.verdicts.back().detected_by_q_criterion},
  };
  write_outputs(out, {{"timeline.csv", csv.str()},
                      {"transitions.json", json_text(report)}});
  return 0;
}

Json load_config(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) {
    throw PreconditionError("cannot read config file " + path);
  }
  return Json::parse(is);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dissipative quantum dynamics and entanglement detection"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"evolve", "integrate a master-equation trajectory"},
      {"probe", "short-time positivity probe for one state pair"},
      {"scan", "mixture-family detection threshold scan"},
      {"classify", "robustness table of the three-qubit catalog"},
      {"track", "entanglement detection along a trajectory"},
  };
  for (const auto& [name, description] : commands) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->add_option("--config", config_path, "JSON scenario config")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", out_dir, "output directory")->required();
    sub->add_option("--seed", seed,
                    "reserved; every command is deterministic");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  try {
    const Json config = load_config(config_path);
    if (command == "evolve") return run_evolve(config, out_dir);
    if (command == "probe") return run_probe(config, out_dir);
    if (command == "scan") return run_scan(config, out_dir);
    if (command == "classify") return run_classify(config, out_dir);
    return run_track(config, out_dir);
  } catch (const PreconditionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const ValidationError& e) {
    std::cerr << "validation error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
}
