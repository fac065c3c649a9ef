#pragma once

#include <iosfwd>
#include <string>

#include "kronsync/dynamics.hpp"
#include "kronsync/kron.hpp"
#include "kronsync/spectral.hpp"
#include "kronsync/witness.hpp"

// Forward declaration keeps nlohmann out of most translation units.
#include <json.hpp>

namespace kronsync {

/// Network file: {"nodes": <count or label array>, "boundary": [labels],
/// "dampers": [{"i","j","w"}], "springs": [...]}. Labels may be strings or
/// integers; integers are treated as their decimal spelling.
RawNetwork parse_network(const nlohmann::json& j);
CouplingNetwork load_network_file(const std::string& path);

/// Oscillator file: {"M": [[...]], "K": [[...]], "B": [...]}, row-major.
OscillatorModel parse_oscillator(const nlohmann::json& j);
OscillatorModel load_oscillator_file(const std::string& path);

/// Initial-state file: {"x": [...], "v": [...], "g": [... optional hint]}.
struct RawInitialState {
  Vector x, v, g_hint;
};
RawInitialState parse_initial_state(const nlohmann::json& j);
RawInitialState load_initial_state_file(const std::string& path);

/// Complex values serialize as {"re": ..., "im": ...} everywhere.
nlohmann::json complex_to_json(const Complex& z);
nlohmann::json matrix_to_json(const Matrix& m);
nlohmann::json matrix_to_json(const ComplexMatrix& m);
nlohmann::json vector_to_json(const Vector& v);
nlohmann::json vector_to_json(const ComplexVector& v);

nlohmann::json to_json(const CouplingNetwork& net);
nlohmann::json to_json(const ReducedCoupling& rc,
                       const CouplingCertificate& cert);
nlohmann::json to_json(const SpectralVerdict& verdict);
nlohmann::json to_json(const WitnessSolution& ws);

/// CSV columns: t, x_1_1..x_q_n, v_1_1..v_q_n, g_1..g_{p-q}, W, sync_dist,
/// residual. One row per recorded state snapshot.
void write_trajectory_csv(std::ostream& out, const DescriptorSystem& sys,
                          const Trajectory& traj);

nlohmann::json load_json_file(const std::string& path);

}  // namespace kronsync
