#include "qcm/config.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "qcm/spectral.hpp"

namespace qcm {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> kKeys{
    {"model", {"gamma", "U", "mu", "half_filling", "qubit_order"}},
    {"cluster", {"sites", "e1", "e2"}},
    {"simulation",
     {"shots", "noise", "seed", "mode", "exact_ground_state", "backend", "lower_to_native", "jobs"}},
    {"vqe", {"phi_samples", "dzne_scales", "dzne_order", "u_sweep", "mitigation_seeds"}},
    {"green", {"n_tau", "trotter_order", "quadrature_nodes", "t_max", "eta", "assembly"}},
    {"spectra", {"omega_min", "omega_max", "omega_points", "points_per_segment"}},
    {"output", {"dir"}},
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    const auto a = item.find_first_not_of(" \t"), b = item.find_last_not_of(" \t");
    if (a != std::string::npos) out.push_back(item.substr(a, b - a + 1));
  }
  return out;
}

template <class T>
T number(const std::string& key, const std::string& text) {
  std::istringstream is(text);
  T v;
  if (!(is >> v) || !(is >> std::ws).eof()) throw ConfigError("config: " + key + " = '" + text + "' is not a number");
  return v;
}

bool boolean(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("config: " + key + " must be true or false");
}

Site site(const std::string& key, const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw ConfigError("config: " + key + " entries must be 'x,y'");
  return {number<int>(key, parts[0]), number<int>(key, parts[1])};
}

std::string site_text(const Site& s) { return std::to_string(s.x) + "," + std::to_string(s.y); }

template <class T>
std::string join(const std::vector<T>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t k = 0; k < v.size(); ++k) os << (k ? "," : "") << v[k];
  return os.str();
}

}  // namespace

void RunConfig::validate() {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw ConfigError("config: " + what);
  };
  require(std::isfinite(gamma), "model.gamma must be finite");
  require(std::isfinite(U) && U >= 0.0, "model.U must be finite and >= 0");
  require(std::isfinite(mu), "model.mu must be finite");
  if (half_filling) mu = U / 2.0;
  require(!sites.empty() && sites.size() <= 6, "cluster.sites must list 1 to 6 sites");
  require(shots >= 1, "simulation.shots must be >= 1");
  require(noise >= 0.0 && noise <= 1.0, "simulation.noise must lie in [0, 1]");
  require(jobs >= 0, "simulation.jobs must be >= 0");
  require(phi_samples >= 3, "vqe.phi_samples must be >= 3");
  require(dzne_scales.size() >= 2, "vqe.dzne_scales needs at least two scales");
  require(std::set<int>(dzne_scales.begin(), dzne_scales.end()).size() == dzne_scales.size(),
          "vqe.dzne_scales must be distinct");
  for (int s : dzne_scales) require(s >= 1 && s % 2 == 1, "vqe.dzne_scales must be odd and >= 1");
  require(std::find(dzne_scales.begin(), dzne_scales.end(), 1) != dzne_scales.end(), "vqe.dzne_scales must contain 1");
  require(dzne_order >= 1 && dzne_order < static_cast<int>(dzne_scales.size()),
          "vqe.dzne_order must lie in [1, number of scales - 1]");
  require(!u_sweep.empty(), "vqe.u_sweep must not be empty");
  for (double u : u_sweep) require(std::isfinite(u) && u >= 0.0, "vqe.u_sweep values must be finite and >= 0");
  require(mitigation_seeds >= 1, "vqe.mitigation_seeds must be >= 1");
  require(n_tau >= 1, "green.n_tau must be >= 1");
  require(quadrature_nodes >= 1, "green.quadrature_nodes must be >= 1");
  require(std::isfinite(t_max) && t_max > 0.0, "green.t_max must be positive");
  require(std::isfinite(eta) && eta > 0.0, "green.eta must be positive");
  require(std::isfinite(omega_min) && std::isfinite(omega_max) && omega_max > omega_min,
          "spectra.omega_max must exceed spectra.omega_min");
  require(omega_points >= 3, "spectra.omega_points must be >= 3");
  require(points_per_segment >= 1, "spectra.points_per_segment must be >= 1");
  require(!out_dir.empty(), "output.dir must not be empty");
  try {
    hubbard(U).validate();
    tiling(U).validate();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

HubbardSpec RunConfig::hubbard(double u) const {
  HubbardSpec s;
  s.gamma = gamma;
  s.U = u;
  s.mu = resolved_mu(u);
  s.sites = sites;
  s.bonds = nearest_neighbor_bonds(sites);
  return s;
}

cpt::TilingSpec RunConfig::tiling(double u) const {
  cpt::TilingSpec t;
  t.sites = sites;
  t.e1 = e1;
  t.e2 = e2;
  t.gamma = gamma;
  t.mu = resolved_mu(u);
  return t;
}

std::vector<double> RunConfig::omega_grid() const { return spectral::uniform_grid(omega_min, omega_max, omega_points); }

vqe::SamplingConfig RunConfig::sampling() const {
  vqe::SamplingConfig s;
  s.shots = shots;
  s.noise = {noise, seed};
  s.options = {backend, lower_to_native};
  return s;
}

green::GreenConfig RunConfig::green_config() const {
  green::GreenConfig g;
  g.plan.n_tau = n_tau;
  g.plan.ordering = trotter_order;
  g.mode = mode;
  g.sampling = sampling();
  g.assembly = assembly;
  return g;
}

RunConfig parse_config(const std::string& ini_text) {
  pt::ptree tree;
  try {
    std::istringstream is(ini_text);
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  for (const auto& [section, body] : tree) {
    const auto it = kKeys.find(section);
    if (it == kKeys.end()) throw ConfigError("config: unknown section [" + section + "]");
    for (const auto& [key, value] : body)
      if (!it->second.count(key)) throw ConfigError("config: unknown key " + section + "." + key);
  }
  RunConfig c;
  auto get = [&](const std::string& path) { return tree.get_optional<std::string>(pt::ptree::path_type(path, '.')); };
  if (auto v = get("model.gamma")) c.gamma = number<double>("model.gamma", *v);
  if (auto v = get("model.U")) c.U = number<double>("model.U", *v);
  if (auto v = get("model.mu")) {
    c.mu = number<double>("model.mu", *v);
    if (!get("model.half_filling")) c.half_filling = false;
  }
  if (auto v = get("model.half_filling")) c.half_filling = boolean("model.half_filling", *v);
  if (auto v = get("model.qubit_order")) {
    if (*v == "spin_major") c.qubit_order = QubitOrder::SpinMajor;
    else if (*v == "interleaved") c.qubit_order = QubitOrder::Interleaved;
    else throw ConfigError("config: model.qubit_order must be spin_major or interleaved");
  }
  if (auto v = get("cluster.sites")) {
    c.sites.clear();
    for (const auto& s : split(*v, ';')) c.sites.push_back(site("cluster.sites", s));
  }
  if (auto v = get("cluster.e1")) c.e1 = site("cluster.e1", *v);
  if (auto v = get("cluster.e2")) c.e2 = site("cluster.e2", *v);
  if (auto v = get("simulation.shots")) c.shots = number<std::int64_t>("simulation.shots", *v);
  if (auto v = get("simulation.noise")) c.noise = number<double>("simulation.noise", *v);
  if (auto v = get("simulation.seed")) c.seed = number<std::uint64_t>("simulation.seed", *v);
  if (auto v = get("simulation.mode")) {
    if (*v == "exact") c.mode = vqe::EvalMode::Exact;
    else if (*v == "sampled") c.mode = vqe::EvalMode::Sampled;
    else throw ConfigError("config: simulation.mode must be exact or sampled");
  }
  if (auto v = get("simulation.exact_ground_state")) c.exact_ground_state = boolean("simulation.exact_ground_state", *v);
  if (auto v = get("simulation.backend")) {
    if (*v == "trajectory") c.backend = NoiseBackend::Trajectory;
    else if (*v == "density") c.backend = NoiseBackend::Density;
    else throw ConfigError("config: simulation.backend must be trajectory or density");
  }
  if (auto v = get("simulation.lower_to_native")) c.lower_to_native = boolean("simulation.lower_to_native", *v);
  if (auto v = get("simulation.jobs")) c.jobs = number<int>("simulation.jobs", *v);
  if (auto v = get("vqe.phi_samples")) c.phi_samples = number<int>("vqe.phi_samples", *v);
  if (auto v = get("vqe.dzne_scales")) {
    c.dzne_scales.clear();
    for (const auto& s : split(*v, ',')) c.dzne_scales.push_back(number<int>("vqe.dzne_scales", s));
  }
  if (auto v = get("vqe.dzne_order")) c.dzne_order = number<int>("vqe.dzne_order", *v);
  if (auto v = get("vqe.u_sweep")) {
    c.u_sweep.clear();
    for (const auto& s : split(*v, ',')) c.u_sweep.push_back(number<double>("vqe.u_sweep", s));
  }
  if (auto v = get("vqe.mitigation_seeds")) c.mitigation_seeds = number<int>("vqe.mitigation_seeds", *v);
  if (auto v = get("green.n_tau")) c.n_tau = number<int>("green.n_tau", *v);
  if (auto v = get("green.trotter_order")) {
    if (*v == "interleaved") c.trotter_order = green::TermOrdering::Interleaved;
    else if (*v == "stored") c.trotter_order = green::TermOrdering::Stored;
    else throw ConfigError("config: green.trotter_order must be interleaved or stored");
  }
  if (auto v = get("green.quadrature_nodes")) c.quadrature_nodes = number<int>("green.quadrature_nodes", *v);
  if (auto v = get("green.t_max")) c.t_max = number<double>("green.t_max", *v);
  if (auto v = get("green.eta")) c.eta = number<double>("green.eta", *v);
  if (auto v = get("green.assembly")) {
    if (*v == "four_term") c.assembly = green::Assembly::FourTerm;
    else if (*v == "two_term") c.assembly = green::Assembly::TwoTerm;
    else throw ConfigError("config: green.assembly must be four_term or two_term");
  }
  if (auto v = get("spectra.omega_min")) c.omega_min = number<double>("spectra.omega_min", *v);
  if (auto v = get("spectra.omega_max")) c.omega_max = number<double>("spectra.omega_max", *v);
  if (auto v = get("spectra.omega_points")) c.omega_points = number<int>("spectra.omega_points", *v);
  if (auto v = get("spectra.points_per_segment")) c.points_per_segment = number<int>("spectra.points_per_segment", *v);
  if (auto v = get("output.dir")) c.out_dir = *v;
  c.validate();
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string to_ini(const RunConfig& c) {
  std::ostringstream os;
  os.precision(17);
  std::string sites;
  for (std::size_t k = 0; k < c.sites.size(); ++k) sites += (k ? ";" : "") + site_text(c.sites[k]);
  os << "[model]\ngamma = " << c.gamma << "\nU = " << c.U << "\nmu = " << c.mu
     << "\nhalf_filling = " << (c.half_filling ? "true" : "false")
     << "\nqubit_order = " << (c.qubit_order == QubitOrder::SpinMajor ? "spin_major" : "interleaved") << "\n\n";
  os << "[cluster]\nsites = " << sites << "\ne1 = " << site_text(c.e1) << "\ne2 = " << site_text(c.e2) << "\n\n";
  os << "[simulation]\nshots = " << c.shots << "\nnoise = " << c.noise << "\nseed = " << c.seed
     << "\nmode = " << (c.mode == vqe::EvalMode::Exact ? "exact" : "sampled")
     << "\nexact_ground_state = " << (c.exact_ground_state ? "true" : "false")
     << "\nbackend = " << (c.backend == NoiseBackend::Trajectory ? "trajectory" : "density")
     << "\nlower_to_native = " << (c.lower_to_native ? "true" : "false") << "\njobs = " << c.jobs << "\n\n";
  os << "[vqe]\nphi_samples = " << c.phi_samples << "\ndzne_scales = " << join(c.dzne_scales)
     << "\ndzne_order = " << c.dzne_order << "\nu_sweep = " << join(c.u_sweep)
     << "\nmitigation_seeds = " << c.mitigation_seeds << "\n\n";
  os << "[green]\nn_tau = " << c.n_tau
     << "\ntrotter_order = " << (c.trotter_order == green::TermOrdering::Interleaved ? "interleaved" : "stored")
     << "\nquadrature_nodes = " << c.quadrature_nodes << "\nt_max = " << c.t_max << "\neta = " << c.eta
     << "\nassembly = " << (c.assembly == green::Assembly::FourTerm ? "four_term" : "two_term") << "\n\n";
  os << "[spectra]\nomega_min = " << c.omega_min << "\nomega_max = " << c.omega_max
     << "\nomega_points = " << c.omega_points << "\npoints_per_segment = " << c.points_per_segment << "\n\n";
  os << "[output]\ndir = " << c.out_dir << "\n";
  return os.str();
}

nlohmann::json to_json(const RunConfig& c) {
  pt::ptree tree;
  std::istringstream is(to_ini(c));
  pt::read_ini(is, tree);
  nlohmann::json j;
  for (const auto& [section, body] : tree)
    for (const auto& [key, value] : body) j[section][key] = value.data();
  return j;
}

}  // namespace qcm
