#include "kronsync/io.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <ostream>

namespace kronsync {

namespace {

using nlohmann::json;

std::string label_from_json(const json& j, const char* where) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<int64_t>());
  fail(ErrorCode::BadInput,
       std::string(where) + " labels must be strings or integers");
}

double number_from_json(const json& j, const char* where) {
  if (!j.is_number())
    fail(ErrorCode::BadInput, std::string(where) + " must be a number");
  return j.get<double>();
}

std::vector<RawNetwork::RawEdge> edges_from_json(const json& j,
                                                 const char* kind) {
  std::vector<RawNetwork::RawEdge> edges;
  if (j.is_null()) return edges;
  if (!j.is_array())
    fail(ErrorCode::BadInput, std::string(kind) + " must be an array");
  for (const auto& e : j) {
    if (!e.is_object() || !e.contains("i") || !e.contains("j") ||
        !e.contains("w"))
      fail(ErrorCode::BadInput,
           std::string(kind) + " entries need keys i, j, w");
    edges.push_back({label_from_json(e["i"], kind), label_from_json(e["j"], kind),
                     number_from_json(e["w"], kind)});
  }
  return edges;
}

Matrix matrix_from_json(const json& j, const char* name) {
  if (!j.is_array() || j.empty())
    fail(ErrorCode::BadInput, std::string(name) + " must be a nonempty array of rows");
  const Index rows = static_cast<Index>(j.size());
  if (!j[0].is_array())
    fail(ErrorCode::BadInput, std::string(name) + " rows must be arrays");
  const Index cols = static_cast<Index>(j[0].size());
  Matrix m(rows, cols);
  for (Index r = 0; r < rows; ++r) {
    if (!j[r].is_array() || static_cast<Index>(j[r].size()) != cols)
      fail(ErrorCode::BadInput, std::string(name) + " rows have unequal sizes");
    for (Index c = 0; c < cols; ++c)
      m(r, c) = number_from_json(j[r][c], name);
  }
  return m;
}

Vector vector_from_json(const json& j, const char* name) {
  if (!j.is_array())
    fail(ErrorCode::BadInput, std::string(name) + " must be an array");
  Vector v(static_cast<Index>(j.size()));
  for (Index i = 0; i < v.size(); ++i)
    v(i) = number_from_json(j[i], name);
  return v;
}

// Shortest round-trip decimal, locale-independent.
void print_double(std::ostream& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  out << buf;
}

}  // namespace

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::BadInput, "cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    fail(ErrorCode::BadInput, "invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

RawNetwork parse_network(const json& j) {
  if (!j.is_object()) fail(ErrorCode::BadInput, "network must be an object");
  if (!j.contains("nodes"))
    fail(ErrorCode::BadInput, "network needs a 'nodes' entry");
  if (!j.contains("boundary"))
    fail(ErrorCode::BadInput, "network needs a 'boundary' entry");
  RawNetwork raw;
  const auto& nodes = j["nodes"];
  if (nodes.is_number_integer()) {
    raw.node_count = nodes.get<Index>();
  } else if (nodes.is_array()) {
    for (const auto& l : nodes)
      raw.labels.push_back(label_from_json(l, "node"));
  } else {
    fail(ErrorCode::BadInput, "'nodes' must be a count or a label array");
  }
  if (!j["boundary"].is_array())
    fail(ErrorCode::BadInput, "'boundary' must be an array of labels");
  for (const auto& l : j["boundary"])
    raw.boundary.push_back(label_from_json(l, "boundary"));
  raw.dampers = edges_from_json(j.value("dampers", json()), "dampers");
  raw.springs = edges_from_json(j.value("springs", json()), "springs");
  return raw;
}

CouplingNetwork load_network_file(const std::string& path) {
  return validate_network(parse_network(load_json_file(path)));
}

OscillatorModel parse_oscillator(const json& j) {
  if (!j.is_object() || !j.contains("M") || !j.contains("K") ||
      !j.contains("B"))
    fail(ErrorCode::BadInput, "oscillator needs keys M, K, B");
  return validate_oscillator(matrix_from_json(j["M"], "M"),
                             matrix_from_json(j["K"], "K"),
                             vector_from_json(j["B"], "B"));
}

OscillatorModel load_oscillator_file(const std::string& path) {
  return parse_oscillator(load_json_file(path));
}

RawInitialState parse_initial_state(const json& j) {
  if (!j.is_object() || !j.contains("x") || !j.contains("v"))
    fail(ErrorCode::BadInput, "initial state needs keys x and v");
  RawInitialState s;
  s.x = vector_from_json(j["x"], "x");
  s.v = vector_from_json(j["v"], "v");
  if (j.contains("g")) s.g_hint = vector_from_json(j["g"], "g");
  return s;
}

RawInitialState load_initial_state_file(const std::string& path) {
  return parse_initial_state(load_json_file(path));
}

json complex_to_json(const Complex& z) {
  return json{{"re", z.real()}, {"im", z.imag()}};
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_to_json(const Vector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

json vector_to_json(const ComplexVector& v) {
  json arr = json::array();
  for (Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v(i)));
  return arr;
}

json to_json(const CouplingNetwork& net) {
  json j;
  j["p"] = net.p;
  j["q"] = net.q;
  j["labels"] = net.labels;
  auto edges = [](const std::vector<WeightedEdge>& es) {
    json arr = json::array();
    for (const auto& e : es)
      arr.push_back(json{{"i", e.i + 1}, {"j", e.j + 1}, {"w", e.w}});
    return arr;
  };
  j["dampers"] = edges(net.dampers);
  j["springs"] = edges(net.springs);
  return j;
}

json to_json(const ReducedCoupling& rc, const CouplingCertificate& cert) {
  json j;
  j["gamma"] = matrix_to_json(rc.Gamma);
  j["lambda"] = matrix_to_json(rc.Lambda);
  j["E_complex"] = matrix_to_json(rc.E_complex);
  j["E_real"] = matrix_to_json(rc.E_real);
  j["residual_gamma"] = rc.residual_gamma;
  j["residual_lambda"] = rc.residual_lambda;
  j["certificate"] = json{{"symmetric", cert.symmetric},
                          {"zero_row_sums", cert.zero_row_sums},
                          {"spectrum_right_half", cert.spectrum_right_half},
                          {"spectrum_upper_half", cert.spectrum_upper_half},
                          {"pass", cert.pass()}};
  return j;
}

json to_json(const SpectralVerdict& verdict) {
  json eigs = json::array();
  for (const auto& ev : verdict.eigenvalues) eigs.push_back(complex_to_json(ev));
  return json{{"eigenvalues", eigs},
              {"margin", verdict.margin},
              {"synchronizes", verdict.synchronizes},
              {"zero_tol", verdict.zero_tol},
              {"multiplicity_at_origin", verdict.multiplicity_at_origin}};
}

json to_json(const WitnessSolution& ws) {
  json j;
  j["mu"] = ws.mu;
  j["omega"] = ws.omega;
  j["ybar"] = vector_to_json(ws.ybar);
  j["gbar"] = vector_to_json(ws.gbar);
  j["ubar"] = vector_to_json(ws.ubar);
  j["eta"] = vector_to_json(ws.eta);
  j["xbar"] = vector_to_json(ws.xbar);
  j["initial_state"] = json{{"x", vector_to_json(ws.x0)},
                            {"v", vector_to_json(ws.v0)},
                            {"g", vector_to_json(ws.g0)}};
  return j;
}

void write_trajectory_csv(std::ostream& out, const DescriptorSystem& sys,
                          const Trajectory& traj) {
  out << "t";
  for (Index i = 1; i <= sys.q; ++i)
    for (Index k = 1; k <= sys.n; ++k) out << ", x_" << i << "_" << k;
  for (Index i = 1; i <= sys.q; ++i)
    for (Index k = 1; k <= sys.n; ++k) out << ", v_" << i << "_" << k;
  for (Index i = 1; i <= sys.p - sys.q; ++i) out << ", g_" << i;
  out << ", W, sync_dist, residual\n";
  for (size_t s = 0; s < traj.state_steps.size(); ++s) {
    const Index step = traj.state_steps[s];
    const Index col = static_cast<Index>(s);
    print_double(out, traj.times(step));
    auto emit = [&](double v) {
      out << ", ";
      print_double(out, v);
    };
    for (Index r = 0; r < traj.x.rows(); ++r) emit(traj.x(r, col));
    for (Index r = 0; r < traj.v.rows(); ++r) emit(traj.v(r, col));
    for (Index r = 0; r < traj.g.rows(); ++r) emit(traj.g(r, col));
    emit(traj.energy(step));
    emit(traj.sync_dist(step));
    emit(traj.constraint_residual(step));
    out << "\n";
  }
}

}  // namespace kronsync
