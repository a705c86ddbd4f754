#pragma once
// Plain-text exports: CSV matrices and columns with JSON sidecars.

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "wmlab/fock.hpp"
#include "wmlab/madelung.hpp"
#include "wmlab/phasespace.hpp"
#include "wmlab/spin.hpp"
#include "wmlab/wavefunction.hpp"
#include "wmlab/wigner.hpp"

namespace wmlab::io {

namespace fs = std::filesystem;

/// Shortest decimal text that reads back to the same double.
std::string format_double(double x);

nlohmann::json grid_json(const PhaseGrid& g, double time);
PhaseGrid grid_from_json(const nlohmann::json& j);

/// <base>.csv (rows = q ascending, columns = p ascending) and <base>.json.
void write_phase_density(const PhaseDensity& f, const fs::path& base);
PhaseDensity read_phase_density(const fs::path& base);

/// <base>_re.csv, <base>_im.csv and <base>.json.
void write_density_slice(const DensitySlice& rho, const fs::path& base);
DensitySlice read_density_slice(const fs::path& base, double hbar);

/// <base>.csv with header "q,re,im" and <base>.json {"q_min","q_max","n","time"}.
void write_wavefunction(const WaveFunction& phi, const fs::path& base);
WaveFunction read_wavefunction(const fs::path& base);

/// <base>.csv with header "q,residual" (evaluated nodes only) and <base>.json
/// naming the equation and convention.
void write_residual(const ResidualField& r, const fs::path& base);

/// Header "index,energy,trusted".
void write_spectrum_csv(const std::vector<SpectrumEntry>& spectrum, const fs::path& path);
/// Header "N,two_s,m_over_hbar,s_squared_over_hbar2,complete"; incomplete rows are skipped.
void write_spin_csv(const std::vector<SpinRow>& rows, const PhysParams& par, const fs::path& path);

nlohmann::json bargmann_to_json(const BargmannPoly& p);
BargmannPoly bargmann_from_json(const nlohmann::json& j);

void write_text(const fs::path& path, const std::string& text);
std::string read_text(const fs::path& path);

}  // namespace wmlab::io
