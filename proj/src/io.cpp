#include "wmlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "wmlab/errors.hpp"

namespace wmlab::io {
namespace {

fs::path with_suffix(const fs::path& base, const std::string& suffix) {
  fs::path p = base;
  p += suffix;
  return p;
}

std::vector<std::vector<double>> read_csv_matrix(const fs::path& path, bool skip_header) {
  std::istringstream in(read_text(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first && skip_header) {
      first = false;
      continue;
    }
    first = false;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (pos <= line.size()) {
      const std::size_t comma = std::min(line.find(',', pos), line.size());
      double v = 0.0;
      const char* b = line.data() + pos;
      const char* e = line.data() + comma;
      const auto res = std::from_chars(b, e, v);
      if (res.ec != std::errc{} || res.ptr != e) throw IoError("bad number in " + path.string());
      row.push_back(v);
      pos = comma + 1;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_matrix(const fs::path& path, std::size_t rows, std::size_t cols, auto&& value) {
  std::string out;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      if (j) out += ',';
      out += format_double(value(i, j));
    }
    out += '\n';
  }
  write_text(path, out);
}

nlohmann::json read_json(const fs::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

}  // namespace

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

nlohmann::json grid_json(const PhaseGrid& g, double time) {
  return {{"q_min", g.q_min}, {"q_max", g.q_max}, {"p_min", g.p_min}, {"p_max", g.p_max},
          {"n_q", g.n_q},     {"n_p", g.n_p},     {"time", time}};
}

PhaseGrid grid_from_json(const nlohmann::json& j) {
  try {
    PhaseGrid g{j.at("q_min").get<double>(), j.at("q_max").get<double>(), j.at("p_min").get<double>(),
                j.at("p_max").get<double>(), j.at("n_q").get<std::size_t>(), j.at("n_p").get<std::size_t>()};
    g.validate();
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("grid sidecar: ") + e.what());
  }
}

void write_phase_density(const PhaseDensity& f, const fs::path& base) {
  write_matrix(with_suffix(base, ".csv"), f.grid.n_q, f.grid.n_p, [&](std::size_t i, std::size_t j) { return f.at(i, j); });
  write_text(with_suffix(base, ".json"), grid_json(f.grid, f.time).dump(2) + "\n");
}

PhaseDensity read_phase_density(const fs::path& base) {
  const auto meta = read_json(with_suffix(base, ".json"));
  PhaseDensity f = PhaseDensity::zeros(grid_from_json(meta), meta.value("time", 0.0));
  const auto rows = read_csv_matrix(with_suffix(base, ".csv"), false);
  if (rows.size() != f.grid.n_q) throw IoError("row count does not match the sidecar");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != f.grid.n_p) throw IoError("column count does not match the sidecar");
    for (std::size_t j = 0; j < rows[i].size(); ++j) f.at(i, j) = rows[i][j];
  }
  return f;
}

void write_density_slice(const DensitySlice& rho, const fs::path& base) {
  const auto& g = rho.grid;
  write_matrix(with_suffix(base, "_re.csv"), g.n_q, g.n_p, [&](std::size_t i, std::size_t j) { return rho.at(i, j).real(); });
  write_matrix(with_suffix(base, "_im.csv"), g.n_q, g.n_p, [&](std::size_t i, std::size_t j) { return rho.at(i, j).imag(); });
  nlohmann::json meta = grid_json(g, rho.time);
  meta["delta_min"] = rho.delta(0);
  meta["delta_step"] = rho.delta_step();
  write_text(with_suffix(base, ".json"), meta.dump(2) + "\n");
}

DensitySlice read_density_slice(const fs::path& base, double hbar) {
  const auto meta = read_json(with_suffix(base, ".json"));
  const PhaseGrid g = grid_from_json(meta);
  DensitySlice rho{g, hbar, std::vector<cplx>(g.size()), meta.value("time", 0.0)};
  const auto re = read_csv_matrix(with_suffix(base, "_re.csv"), false);
  const auto im = read_csv_matrix(with_suffix(base, "_im.csv"), false);
  if (re.size() != g.n_q || im.size() != g.n_q) throw IoError("row count does not match the sidecar");
  for (std::size_t i = 0; i < g.n_q; ++i) {
    if (re[i].size() != g.n_p || im[i].size() != g.n_p) throw IoError("column count does not match the sidecar");
    for (std::size_t j = 0; j < g.n_p; ++j) rho.at(i, j) = {re[i][j], im[i][j]};
  }
  return rho;
}

void write_wavefunction(const WaveFunction& phi, const fs::path& base) {
  std::string out = "q,re,im\n";
  for (std::size_t i = 0; i < phi.values.size(); ++i)
    out += format_double(phi.grid.at(i)) + ',' + format_double(phi.values[i].real()) + ',' +
           format_double(phi.values[i].imag()) + '\n';
  write_text(with_suffix(base, ".csv"), out);
  const nlohmann::json meta = {{"q_min", phi.grid.min}, {"q_max", phi.grid.max}, {"n", phi.grid.n}, {"time", phi.time}};
  write_text(with_suffix(base, ".json"), meta.dump(2) + "\n");
}

WaveFunction read_wavefunction(const fs::path& base) {
  const auto meta = read_json(with_suffix(base, ".json"));
  Axis ax;
  try {
    ax = {meta.at("q_min").get<double>(), meta.at("q_max").get<double>(), meta.at("n").get<std::size_t>()};
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("wavefunction sidecar: ") + e.what());
  }
  WaveFunction phi = WaveFunction::zeros(ax, meta.value("time", 0.0));
  const auto rows = read_csv_matrix(with_suffix(base, ".csv"), true);
  if (rows.size() != ax.n) throw IoError("row count does not match the sidecar");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != 3) throw IoError("wavefunction rows need three columns");
    phi.values[i] = {rows[i][1], rows[i][2]};
  }
  return phi;
}

void write_residual(const ResidualField& r, const fs::path& base) {
  std::string out = "q,residual\n";
  std::size_t count = 0;
  for (std::size_t i = 0; i < r.values.size(); ++i) {
    if (!r.mask[i]) continue;
    out += format_double(r.grid.at(i)) + ',' + format_double(r.values[i]) + '\n';
    ++count;
  }
  write_text(with_suffix(base, ".csv"), out);
  const nlohmann::json meta = {{"equation", r.equation}, {"convention", r.convention}, {"q_min", r.grid.min},
                               {"q_max", r.grid.max},    {"n", r.grid.n},               {"evaluated", count}};
  write_text(with_suffix(base, ".json"), meta.dump(2) + "\n");
}

void write_spectrum_csv(const std::vector<SpectrumEntry>& spectrum, const fs::path& path) {
  std::string out = "index,energy,trusted\n";
  for (const auto& e : spectrum)
    out += std::to_string(e.index) + ',' + format_double(e.energy) + ',' + (e.trusted ? "1" : "0") + '\n';
  write_text(path, out);
}

void write_spin_csv(const std::vector<SpinRow>& rows, const PhysParams& par, const fs::path& path) {
  std::string out = "N,two_s,m_over_hbar,s_squared_over_hbar2,complete\n";
  for (const auto& r : rows) {
    if (!r.complete) continue;
    // snapped onto the quarter-integer lattice when within 1e-9; raw otherwise
    auto snap = [](double x) {
      const double s = std::round(4.0 * x) / 4.0;
      return std::abs(s - x) <= 1e-9 ? s : x;
    };
    const double m = snap(r.m / par.hbar);
    const double s2 = snap(r.s_squared / (par.hbar * par.hbar));
    out += std::to_string(r.N) + ',' + std::to_string(r.N) + ',' + format_double(m) + ',' + format_double(s2) + ",1\n";
  }
  write_text(path, out);
}

nlohmann::json bargmann_to_json(const BargmannPoly& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs) coeffs.push_back({c.real(), c.imag()});
  return {{"coeffs", coeffs}};
}

BargmannPoly bargmann_from_json(const nlohmann::json& j) {
  BargmannPoly p;
  try {
    for (const auto& c : j.at("coeffs")) p.coeffs.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("Bargmann polynomial: ") + e.what());
  }
  p.canonicalize();
  return p;
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("failed writing " + path.string());
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace wmlab::io
