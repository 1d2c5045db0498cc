#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "qcm/cpt.hpp"

namespace qcm::io {

/// Writes `text` to `path`, creating parent directories.
void write_file(const std::filesystem::path& path, const std::string& text);
std::string read_file(const std::filesystem::path& path);

/// Long table spin,omega,eta,i,j,re,im at full precision.
void write_cluster_green(std::ostream& os, const cpt::ClusterGreenMatrix& g);
cpt::ClusterGreenMatrix read_cluster_green(std::istream& is);

/// Matplotlib script rendering the dense spectra file as a heat map.
std::string plot_script(const std::string& dense_file, const cpt::SpectralGrid& grid, const std::string& title);

}  // namespace qcm::io
