// Copyright 2026 The floqsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "floqsim/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "floqsim/errors.hpp"

namespace floqsim {

namespace pt = boost::property_tree;

std::string to_string(Resonance r) {
  switch (r) {
    case Resonance::integer: return "integer";
    case Resonance::fractional: return "fractional";
    case Resonance::custom: return "custom";
  }
  return "unknown";
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, sep)) out.push_back(trim(item));
  return out;
}

// Typed access to one INI section. Keys never read are unknown fields.
class Section {
 public:
  Section(const pt::ptree* tree, std::string name) : tree_(tree), name_(std::move(name)) {}

  bool has(const std::string& key) const { return tree_ && tree_->find(key) != tree_->not_found(); }

  std::optional<std::string> raw(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    return trim(tree_->get<std::string>(pt::ptree::path_type(key, '\0')));
  }

  template <typename T>
  std::optional<T> get(const std::string& key) {
    const auto text = raw(key);
    if (!text) return std::nullopt;
    return convert<T>(*text, key);
  }

  template <typename T>
  std::vector<T> list(const std::string& key) {
    std::vector<T> out;
    const auto text = raw(key);
    if (!text || text->empty()) return out;
    for (const auto& item : split(*text, ',')) out.push_back(convert<T>(item, key));
    return out;
  }

  std::string field(const std::string& key) const { return name_ + "." + key; }

  void reject_unknown() const {
    if (!tree_) return;
    for (const auto& [key, value] : *tree_) {
      if (!used_.count(key)) throw ConfigError(field(key), "unknown key");
    }
  }

  const pt::ptree* tree() const { return tree_; }

 private:
  template <typename T>
  T convert(const std::string& text, const std::string& key) const {
    if constexpr (std::is_same_v<T, std::string>) {
      return text;
    } else if constexpr (std::is_same_v<T, bool>) {
      if (text == "true" || text == "1") return true;
      if (text == "false" || text == "0") return false;
      throw ConfigError(field(key), "expected true or false, got '" + text + "'");
    } else {
      std::istringstream in(text);
      T value{};
      in >> value;
      if (in.fail() || !(in >> std::ws).eof()) {
        throw ConfigError(field(key), "expected a number, got '" + text + "'");
      }
      return value;
    }
  }

  const pt::ptree* tree_;
  std::string name_;
  std::set<std::string> used_;
};

const std::set<std::string>& known_observables() {
  static const std::set<std::string> names{"populations", "pr", "config_count", "entropy", "echo", "autocorrelation",
                                           "heating"};
  return names;
}

ModelKind parse_model(const std::string& text, const std::string& field) {
  for (const auto kind : {ModelKind::bose_hubbard, ModelKind::spin1_xxz, ModelKind::jch, ModelKind::spin_ladder}) {
    if (text == to_string(kind)) return kind;
  }
  throw ConfigError(field, "unknown model '" + text + "'");
}

Resonance parse_resonance(const std::string& text, const std::string& field) {
  for (const auto r : {Resonance::integer, Resonance::fractional, Resonance::custom}) {
    if (text == to_string(r)) return r;
  }
  throw ConfigError(field, "unknown resonance '" + text + "'");
}

void require(bool ok, const std::string& field, const std::string& message) {
  if (!ok) throw ConfigError(field, message);
}

Configuration default_initial(const ExperimentConfig& c) {
  switch (c.model) {
    case ModelKind::bose_hubbard:
    case ModelKind::jch:
      // unit filling; label 1 is |1,-> in the polariton frame
      return Configuration(static_cast<std::size_t>(c.sites), 1);
    case ModelKind::spin1_xxz: return Configuration(static_cast<std::size_t>(c.sites), 0);
    case ModelKind::spin_ladder: break;
  }
  throw ConfigError("evolution.initial", "the spin ladder needs an explicit initial configuration");
}

}  // namespace

std::vector<Configuration> parse_superposition(const std::string& text, const std::string& field) {
  std::vector<Configuration> out;
  for (const auto& term : split(text, '+')) {
    Configuration c;
    for (const auto& item : split(term, ',')) {
      std::istringstream in(item);
      int label = 0;
      in >> label;
      if (item.empty() || in.fail() || !(in >> std::ws).eof()) {
        throw ConfigError(field, "malformed configuration '" + term + "'");
      }
      c.push_back(label);
    }
    out.push_back(std::move(c));
  }
  if (out.empty()) throw ConfigError(field, "empty superposition");
  return out;
}

ExperimentConfig parse_config(std::istream& in) {
  pt::ptree root;
  try {
    pt::read_ini(in, root);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("file", e.message() + " at line " + std::to_string(e.line()));
  }
  const auto section_tree = [&root](const std::string& name) -> const pt::ptree* {
    const auto it = root.find(name);
    return it == root.not_found() ? nullptr : &it->second;
  };
  static const std::set<std::string> sections{"experiment", "model", "drive", "evolution", "observables",
                                              "targets", "sweep", "stability", "output"};
  for (const auto& [name, tree] : root) {
    if (!sections.count(name)) throw ConfigError(name, "unknown section");
  }

  ExperimentConfig c;
  Section experiment(section_tree("experiment"), "experiment");
  c.name = experiment.get<std::string>("name").value_or(c.name);
  c.task = experiment.get<std::string>("task").value_or(c.task);
  require(c.task == "run" || c.task == "stability", experiment.field("task"), "must be run or stability");
  experiment.reject_unknown();

  Section model(section_tree("model"), "model");
  c.model = parse_model(model.get<std::string>("kind").value_or("bose_hubbard"), model.field("kind"));
  c.sites = model.get<int>("L").value_or(c.sites);
  require(c.sites >= 2, model.field("L"), "lattice needs at least two sites");
  c.charge = model.get<int>("N").value_or(c.model == ModelKind::spin1_xxz ? 0 : c.sites);
  require(c.charge >= 0, model.field("N"), "charge must be non-negative");
  require(c.model != ModelKind::spin1_xxz || c.charge == 0, model.field("N"), "spin-1 runs in the S_z = 0 sector");
  c.n_max = model.get<int>("n_max").value_or(0);
  require(c.n_max >= 0, model.field("n_max"), "must be non-negative");
  c.n_max_photons = model.get<int>("n_max_photons").value_or(0);
  require(c.n_max_photons >= 0, model.field("n_max_photons"), "must be non-negative");
  c.U = model.get<double>("U").value_or(0.0);
  require(c.U >= 0.0, model.field("U"), "must be positive");
  c.omega_local = model.get<double>("omega").value_or(c.omega_local);
  c.g = model.get<double>("g").value_or(0.0);
  require(c.g >= 0.0, model.field("g"), "must be positive");
  c.omega0 = model.get<double>("omega0").value_or(c.omega_local);
  c.rung_coupling = model.get<double>("rung_coupling");
  c.up_a = model.get<int>("up_a");
  c.up_b = model.get<int>("up_b");
  c.parity = model.get<int>("parity").value_or(0);
  require(c.parity >= -1 && c.parity <= 1, model.field("parity"), "must be -1, 0 or 1");
  const std::string frame = model.get<std::string>("frame").value_or("polariton");
  require(frame == "polariton" || frame == "bare", model.field("frame"), "must be polariton or bare");
  c.polariton_frame = frame == "polariton";
  model.reject_unknown();

  Section drive(section_tree("drive"), "drive");
  c.j0 = drive.get<double>("J0").value_or(c.j0);
  require(c.j0 > 0.0, drive.field("J0"), "must be positive");
  if (drive.has("resonance")) {
    c.drives.clear();
    for (const auto& r : drive.list<std::string>("resonance")) c.drives.push_back(parse_resonance(r, drive.field("resonance")));
  }
  require(!c.drives.empty(), drive.field("resonance"), "at least one drive is required");
  c.custom_omega = drive.get<double>("Omega").value_or(0.0);
  for (const auto r : c.drives) {
    if (r == Resonance::custom) require(c.custom_omega > 0.0, drive.field("Omega"), "custom drive needs Omega > 0");
  }
  c.delta_omega_rel = drive.get<double>("delta_omega_rel").value_or(0.0);
  require(std::abs(c.delta_omega_rel) < 1.0, drive.field("delta_omega_rel"), "must lie in (-1, 1)");
  drive.reject_unknown();

  Section evolution(section_tree("evolution"), "evolution");
  c.periods = evolution.get<int>("periods").value_or(c.periods);
  require(c.periods >= 0, evolution.field("periods"), "must be non-negative");
  c.steps_per_period = evolution.get<int>("steps_per_period").value_or(c.steps_per_period);
  require(c.steps_per_period >= 2, evolution.field("steps_per_period"), "must be at least 2");
  c.samples_per_period = evolution.get<int>("samples_per_period").value_or(0);
  require(c.samples_per_period >= 0, evolution.field("samples_per_period"), "must be non-negative");
  const std::string method = evolution.get<std::string>("method").value_or("dense");
  require(method == "dense" || method == "sparse", evolution.field("method"), "must be dense or sparse");
  c.method = method == "dense" ? Method::dense : Method::sparse;
  if (const auto init = evolution.raw("initial")) {
    c.initial = parse_superposition(*init, evolution.field("initial"));
  } else {
    c.initial = {default_initial(c)};
  }
  for (const auto& cfg : c.initial) {
    require(static_cast<int>(cfg.size()) == c.sites, evolution.field("initial"), "configuration length differs from L");
  }
  evolution.reject_unknown();

  Section observables(section_tree("observables"), "observables");
  c.observables = observables.list<std::string>("list");
  for (const auto& o : c.observables) {
    require(known_observables().count(o) > 0, observables.field("list"), "unknown observable '" + o + "'");
  }
  c.cut = observables.get<int>("cut").value_or(1);
  require(c.cut >= 1 && c.cut < c.sites, observables.field("cut"), "must satisfy 1 <= cut < L");
  c.count_threshold = observables.get<double>("count_threshold").value_or(c.count_threshold);
  require(c.count_threshold > 0.0 && c.count_threshold < 1.0, observables.field("count_threshold"), "must lie in (0, 1)");
  observables.reject_unknown();

  Section targets(section_tree("targets"), "targets");
  if (targets.tree()) {
    for (const auto& [key, value] : *targets.tree()) {
      TargetState t{key, parse_superposition(*targets.raw(key), targets.field(key))};
      for (const auto& cfg : t.configs) {
        require(static_cast<int>(cfg.size()) == c.sites, targets.field(key), "configuration length differs from L");
      }
      c.targets.push_back(std::move(t));
    }
  }
  const bool wants_populations =
      std::find(c.observables.begin(), c.observables.end(), "populations") != c.observables.end();
  require(!wants_populations || !c.targets.empty(), "targets", "populations need at least one target state");

  Section sweep(section_tree("sweep"), "sweep");
  c.m_j = sweep.get<int>("m_j").value_or(c.m_j);
  c.m_k = sweep.get<int>("m_k").value_or(c.m_k);
  c.m_l = sweep.get<int>("m_l").value_or(c.m_l);
  c.sweep_branch = sweep.get<int>("branch").value_or(1);
  require(c.sweep_branch == 1 || c.sweep_branch == -1, sweep.field("branch"), "must be 1 or -1");
  sweep.reject_unknown();

  Section stability(section_tree("stability"), "stability");
  c.probe_periods = stability.get<double>("probe_periods").value_or(c.probe_periods);
  require(c.probe_periods > 0.0, stability.field("probe_periods"), "must be positive");
  c.deltas = stability.list<double>("deltas");
  for (const double d : c.deltas) require(std::abs(d) < 1.0, stability.field("deltas"), "each entry must lie in (-1, 1)");
  require(c.task != "stability" || !c.deltas.empty(), stability.field("deltas"), "stability task needs detunings");
  stability.reject_unknown();

  Section output(section_tree("output"), "output");
  if (const auto dir = output.get<std::string>("dir")) c.output_dir = *dir;
  output.reject_unknown();
  return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("file", "cannot open " + path.string());
  return parse_config(in);
}

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : preset_table()) out.push_back(name);
  return out;
}

ExperimentConfig load_preset(const std::string& name) {
  for (const auto& [key, text] : preset_table()) {
    if (key == name) {
      std::istringstream in(text);
      return parse_config(in);
    }
  }
  throw ConfigError("preset", "unknown preset '" + name + "'");
}

double resolve_omega(const ExperimentConfig& config, Resonance resonance) {
  if (resonance == Resonance::custom) return config.custom_omega;
  double integer = 0.0;
  switch (config.model) {
    case ModelKind::bose_hubbard:
    case ModelKind::spin1_xxz: integer = config.interaction(); break;
    case ModelKind::jch: integer = jch_integer_resonance(config.coupling(), config.omega0 - config.omega_local); break;
    case ModelKind::spin_ladder:
      // rung energies differ by 0 or +-4 kappa under a single leg hop
      integer = 4.0 * config.rung_coupling.value_or(0.5 * config.interaction());
      break;
  }
  return resonance == Resonance::integer ? integer : 0.5 * integer;
}

DrivenModel build_model(const ExperimentConfig& config, Resonance resonance, double delta_omega_rel) {
  DriveSpec drive;
  drive.j0 = config.j0;
  drive.omega = resolve_omega(config, resonance);
  drive.delta_omega_rel = delta_omega_rel;
  if (!(drive.omega > 0.0)) throw ConfigError("drive.resonance", "resolved drive frequency is not positive");

  DrivenModel model = [&] {
    switch (config.model) {
      case ModelKind::bose_hubbard: {
        const int n_max = config.n_max > 0 ? config.n_max : default_n_max(config.sites, config.charge);
        return build_bose_hubbard(config.sites, config.charge, n_max, config.interaction(), config.omega_local, drive);
      }
      case ModelKind::spin1_xxz: return build_spin1_xxz(config.sites, config.interaction(), drive);
      case ModelKind::jch: {
        const int nph = config.n_max_photons > 0 ? config.n_max_photons : std::max(1, config.charge);
        DrivenModel bare = build_jch(config.sites, config.charge, nph, config.coupling(), config.omega_local,
                                     config.omega0, drive);
        return config.polariton_frame ? to_polariton_frame(bare) : bare;
      }
      case ModelKind::spin_ladder:
        return build_spin_ladder(config.sites, config.interaction(), drive, config.rung_coupling, config.up_a,
                                 config.up_b);
    }
    throw ConfigError("model.kind", "unsupported model");
  }();
  if (config.parity != 0) model = restrict_to_parity(model, config.parity);
  return model;
}

}  // namespace floqsim
