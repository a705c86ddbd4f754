#include <doctest.h>

#include <cmath>
#include <fstream>

#include "support.hpp"
#include "wmlab/errors.hpp"
#include "wmlab/io.hpp"
#include "wmlab/schrodinger.hpp"

using namespace wmlab;
using test_support::TempDir;

namespace {

std::vector<std::string> lines_of(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("shortest round-trip formatting") {
    CHECK(io::format_double(0.0) == "0");
    CHECK(io::format_double(-0.0) == "0");
    CHECK(io::format_double(0.5) == "0.5");
    CHECK(io::format_double(1e-300) == "1e-300");
    const double x = 0.1 + 0.2;
    CHECK(std::stod(io::format_double(x)) == x);
  }

  TEST_CASE("phase density round trip") {
    TempDir dir("io_density");
    const PhaseGrid g = PhaseGrid::square(6.0, 32);
    PhaseDensity f = coherent_density(g, {1.0, -0.5}, {});
    f.time = 0.25;
    io::write_phase_density(f, dir.path() / "f");
    CHECK(std::filesystem::exists(dir.path() / "f.csv"));
    const PhaseDensity back = io::read_phase_density(dir.path() / "f");
    CHECK(back.grid == g);
    CHECK(back.time == 0.25);
    CHECK(back.values == f.values);
  }

  TEST_CASE("density slice round trip") {
    TempDir dir("io_slice");
    const PhaseGrid g = PhaseGrid::square(8.0, 32);
    const DensitySlice rho = wavefunction_to_slice(coherent_state({0.5, 1.0}, 0.0, g.q_axis(), {}), g, {});
    io::write_density_slice(rho, dir.path() / "rho");
    const DensitySlice back = io::read_density_slice(dir.path() / "rho", 1.0);
    CHECK(back.grid == g);
    CHECK(back.values == rho.values);
  }

  TEST_CASE("wavefunction round trip") {
    TempDir dir("io_wave");
    WaveFunction phi = coherent_state({1.0, 1.0}, 0.3, default_position_axis(), {});
    phi.time = 0.3;
    io::write_wavefunction(phi, dir.path() / "phi");
    CHECK(lines_of(dir.path() / "phi.csv").front() == "q,re,im");
    const WaveFunction back = io::read_wavefunction(dir.path() / "phi");
    CHECK(back.grid == phi.grid);
    CHECK(back.time == 0.3);
    CHECK(back.values == phi.values);
  }

  TEST_CASE("spectrum and spin tables") {
    TempDir dir("io_tables");
    io::write_spectrum_csv(ho_spectrum(3, {}), dir.path() / "s.csv");
    const auto s = lines_of(dir.path() / "s.csv");
    REQUIRE(s.size() == 4);
    CHECK(s[0] == "index,energy,trusted");
    CHECK(s[1] == "0,0.5,1");
    CHECK(s[2] == "1,1.5,1");
    CHECK(s[3].substr(0, 2) == "2,");
    CHECK(s[3].back() == '0');

    const PhysParams par{1.0, 1.0, 0.7};
    io::write_spin_csv(spin_spectrum(3, par), par, dir.path() / "spin.csv");
    const auto r = lines_of(dir.path() / "spin.csv");
    CHECK(r[0] == "N,two_s,m_over_hbar,s_squared_over_hbar2,complete");
    CHECK(r.size() == 1 + 1 + 2 + 3);
    CHECK(r[1] == "0,0,0,0,1");
    CHECK(r[2] == "1,1,-0.5,0.75,1");
    CHECK(r[3] == "1,1,0.5,0.75,1");
    CHECK(r[5] == "2,2,0,2,1");
  }

  TEST_CASE("Bargmann JSON") {
    const BargmannPoly p{{1.0, cplx(0.0, -2.0), 0.0}};
    const BargmannPoly back = io::bargmann_from_json(io::bargmann_to_json(p));
    CHECK(back.coeffs.size() == 2);
    CHECK(back.coeffs[1] == cplx(0.0, -2.0));
    CHECK_THROWS_AS(io::bargmann_from_json(nlohmann::json::object()), IoError);
  }

  TEST_CASE("missing and malformed files") {
    TempDir dir("io_bad");
    CHECK_THROWS_AS(io::read_text(dir.path() / "absent.txt"), IoError);
    CHECK_THROWS_AS(io::read_phase_density(dir.path() / "absent"), IoError);
    io::write_text(dir.path() / "bad.json", "{not json");
    io::write_text(dir.path() / "bad.csv", "1,2\n");
    CHECK_THROWS_AS(io::read_phase_density(dir.path() / "bad"), IoError);
    const PhaseGrid g = PhaseGrid::square(6.0, 16);
    io::write_phase_density(PhaseDensity::zeros(g), dir.path() / "short");
    io::write_text(dir.path() / "short.csv", "0,0\n");
    CHECK_THROWS_AS(io::read_phase_density(dir.path() / "short"), IoError);
    io::write_text(dir.path() / "text.csv", "a,b\n");
    io::write_text(dir.path() / "text.json", io::grid_json(g, 0.0).dump());
    CHECK_THROWS_AS(io::read_phase_density(dir.path() / "text"), IoError);
  }
}
