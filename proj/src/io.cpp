#include "qcm/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace qcm::io {

void write_file(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << text;
  if (!out) throw Error("write failed for " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_cluster_green(std::ostream& os, const cpt::ClusterGreenMatrix& g) {
  os << "spin,omega,eta,i,j,re,im\n" << std::setprecision(17);
  for (int s = 0; s < 2; ++s)
    for (std::size_t w = 0; w < g.omega.size(); ++w) {
      const auto& m = g.g[s][w];
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
          os << s << ',' << g.omega[w] << ',' << g.eta << ',' << i << ',' << j << ',' << m(i, j).real() << ','
             << m(i, j).imag() << '\n';
    }
}

cpt::ClusterGreenMatrix read_cluster_green(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "spin,omega,eta,i,j,re,im") throw Error("cluster green: bad header");
  struct Row {
    int s;
    double w, eta;
    int i, j;
    double re, im;
  };
  std::vector<Row> rows;
  int L = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    Row r;
    if (!(ls >> r.s >> r.w >> r.eta >> r.i >> r.j >> r.re >> r.im) || r.s < 0 || r.s > 1 || r.i < 0 || r.j < 0)
      throw Error("cluster green: malformed row '" + line + "'");
    L = std::max({L, r.i + 1, r.j + 1});
    rows.push_back(r);
  }
  if (rows.empty()) throw Error("cluster green: no data");
  cpt::ClusterGreenMatrix g;
  g.eta = rows.front().eta;
  std::map<double, std::size_t> index;
  for (const auto& r : rows)
    if (r.s == 0 && !index.count(r.w)) index.emplace(r.w, 0);
  for (auto& [w, k] : index) {
    k = g.omega.size();
    g.omega.push_back(w);
  }
  for (int s = 0; s < 2; ++s) g.g[s].assign(g.omega.size(), Eigen::MatrixXcd::Constant(L, L, cplx(NAN, NAN)));
  for (const auto& r : rows) {
    const auto it = index.find(r.w);
    if (it == index.end()) throw Error("cluster green: spin tables use different frequency grids");
    g.g[r.s][it->second](r.i, r.j) = cplx(r.re, r.im);
  }
  for (int s = 0; s < 2; ++s)
    for (const auto& m : g.g[s])
      if (!m.allFinite()) throw Error("cluster green: incomplete table");
  return g;
}

std::string plot_script(const std::string& dense_file, const cpt::SpectralGrid& grid, const std::string& title) {
  std::ostringstream os;
  os << std::setprecision(17);
  os << "#!/usr/bin/env python3\n"
        "import sys\n"
        "import numpy as np\n"
        "import matplotlib\n"
        "matplotlib.use('Agg')\n"
        "import matplotlib.pyplot as plt\n\n";
  os << "data = np.loadtxt('" << dense_file << "')\n";
  os << "omega = np.linspace(" << grid.omega.front() << ", " << grid.omega.back() << ", " << grid.omega.size()
     << ")\n";
  os << "ticks = [";
  bool first = true;
  for (std::size_t k = 0; k < grid.path.label.size(); ++k)
    if (!grid.path.label[k].empty()) {
      os << (first ? "" : ", ") << "(" << k << ", '" << (grid.path.label[k] == "G" ? "$\\\\Gamma$" : grid.path.label[k])
         << "')";
      first = false;
    }
  os << "]\n\n";
  os << "fig, ax = plt.subplots(figsize=(6, 4.5))\n"
        "im = ax.imshow(data.T, origin='lower', aspect='auto', cmap='magma',\n"
        "               extent=[0, data.shape[0] - 1, omega[0], omega[-1]])\n"
        "ax.set_xticks([t[0] for t in ticks])\n"
        "ax.set_xticklabels([t[1] for t in ticks])\n"
        "ax.set_ylabel(r'$\\omega$')\n";
  os << "ax.set_title('" << title << "')\n";
  os << "fig.colorbar(im, ax=ax, label=r'$\\rho(k, \\omega)$')\n"
        "out = sys.argv[1] if len(sys.argv) > 1 else '"
     << std::filesystem::path(dense_file).stem().string()
     << ".png'\n"
        "fig.savefig(out, dpi=150, bbox_inches='tight')\n";
  return os.str();
}

}  // namespace qcm::io
