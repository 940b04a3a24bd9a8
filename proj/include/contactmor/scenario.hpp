#pragma once

#include <string>

#include "contactmor/contact_system.hpp"
#include "contactmor/time_integration.hpp"

namespace contactmor {

/// One complete experiment description (mesh, material, load, integrator,
/// sensors, reduction choice). Parsed from an INI-style text file with
/// explicit keys; see scenarios/template.cfg for the documented format.
struct Scenario {
  std::string name;

  MeshSpec mesh;
  Material material;
  LoadSpec load;
  SimParams sim;

  struct Sensor {
    std::array<double, 2> point{};
    char side = 'l';
  };
  std::vector<Sensor> sensors;

  enum class Reduction { None, Krylov, Modal, CraigBampton };
  Reduction reduction = Reduction::None;
  double shift_omega2 = 0.0;  // Krylov expansion frequency (squared), 0 = none
  int n_r = 0;  // Krylov / Modal
  int n_k = 0;  // CraigBampton

  /// 64-bit FNV-1a hash of (mesh, material, load, sim) — everything the FOM
  /// baseline depends on. Reduction settings and sensors do not enter.
  std::string baseline_hash() const;
};

Scenario parse_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text, const std::string& origin = "<string>");

const char* to_string(Scenario::Reduction r);

}  // namespace contactmor
