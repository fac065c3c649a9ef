#include "kronsync/network.hpp"

#include <map>
#include <set>
#include <utility>

namespace kronsync {

namespace {

std::vector<WeightedEdge> canonicalize_edges(
    const std::vector<RawNetwork::RawEdge>& raw,
    const std::map<std::string, Index>& index_of, const char* kind) {
  std::vector<WeightedEdge> out;
  out.reserve(raw.size());
  std::set<std::pair<Index, Index>> seen;
  for (const auto& e : raw) {
    auto it_i = index_of.find(e.i);
    auto it_j = index_of.find(e.j);
    if (it_i == index_of.end())
      fail(ErrorCode::BadIndex, std::string(kind) + " endpoint '" + e.i +
                                    "' is not a declared node");
    if (it_j == index_of.end())
      fail(ErrorCode::BadIndex, std::string(kind) + " endpoint '" + e.j +
                                    "' is not a declared node");
    if (e.w < 0.0)
      fail(ErrorCode::NegativeWeight, std::string(kind) + " (" + e.i + ", " +
                                          e.j + ") has negative weight");
    Index a = it_i->second;
    Index b = it_j->second;
    if (a == b)
      fail(ErrorCode::SelfLoop,
           std::string(kind) + " connects node '" + e.i + "' to itself");
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second)
      fail(ErrorCode::DuplicateEdge, std::string(kind) + " (" + e.i + ", " +
                                         e.j + ") appears more than once");
    out.push_back({a, b, e.w});
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    return std::tie(l.i, l.j) < std::tie(r.i, r.j);
  });
  return out;
}

}  // namespace

CouplingNetwork validate_network(const RawNetwork& raw) {
  std::vector<std::string> declared = raw.labels;
  if (declared.empty()) {
    if (raw.node_count <= 0)
      fail(ErrorCode::BadInput, "network declares no nodes");
    declared.reserve(static_cast<size_t>(raw.node_count));
    for (Index k = 1; k <= raw.node_count; ++k)
      declared.push_back(std::to_string(k));
  }
  {
    std::set<std::string> uniq(declared.begin(), declared.end());
    if (uniq.size() != declared.size())
      fail(ErrorCode::BadIndex, "duplicate node label in node list");
  }
  if (raw.boundary.empty())
    fail(ErrorCode::EmptyBoundary, "boundary node list is empty");

  // Canonical order: boundary as listed, then remaining nodes as declared.
  std::set<std::string> declared_set(declared.begin(), declared.end());
  std::set<std::string> boundary_set;
  CouplingNetwork net;
  for (const auto& label : raw.boundary) {
    if (declared_set.count(label) == 0)
      fail(ErrorCode::BadIndex,
           "boundary label '" + label + "' is not a declared node");
    if (!boundary_set.insert(label).second)
      fail(ErrorCode::BadIndex,
           "boundary label '" + label + "' listed more than once");
    net.labels.push_back(label);
  }
  for (const auto& label : declared) {
    if (boundary_set.count(label) == 0) net.labels.push_back(label);
  }
  net.p = static_cast<Index>(net.labels.size());
  net.q = static_cast<Index>(raw.boundary.size());

  std::map<std::string, Index> index_of;
  for (Index k = 0; k < net.p; ++k) index_of[net.labels[k]] = k;
  net.dampers = canonicalize_edges(raw.dampers, index_of, "damper");
  net.springs = canonicalize_edges(raw.springs, index_of, "spring");
  return net;
}

Matrix build_laplacian(const std::vector<WeightedEdge>& edges, Index p) {
  Matrix lap = Matrix::Zero(p, p);
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= p || e.j >= p)
      fail(ErrorCode::BadIndex, "edge endpoint outside node range");
    lap(e.i, e.i) += e.w;
    lap(e.j, e.j) += e.w;
    lap(e.i, e.j) -= e.w;
    lap(e.j, e.i) -= e.w;
  }
  return lap;
}

Matrix build_laplacian(const Matrix& weights) {
  if (weights.rows() != weights.cols())
    fail(ErrorCode::DimensionMismatch, "weight matrix must be square");
  const Index p = weights.rows();
  for (Index i = 0; i < p; ++i) {
    if (weights(i, i) != 0.0)
      fail(ErrorCode::SelfLoop, "weight matrix has a nonzero diagonal entry");
    for (Index j = 0; j < p; ++j) {
      if (weights(i, j) < 0.0)
        fail(ErrorCode::NegativeWeight, "weight matrix has a negative entry");
      if (weights(i, j) != weights(j, i))
        fail(ErrorCode::BadInput, "weight matrix must be symmetric");
    }
  }
  return Matrix(weights.rowwise().sum().asDiagonal()) - weights;
}

Matrix CouplingNetwork::damper_laplacian() const {
  return build_laplacian(dampers, p);
}

Matrix CouplingNetwork::spring_laplacian() const {
  return build_laplacian(springs, p);
}

BlockPartition partition_blocks(const Matrix& D, const Matrix& R, Index q) {
  if (D.rows() != D.cols() || R.rows() != R.cols() || D.rows() != R.rows())
    fail(ErrorCode::DimensionMismatch,
         "damper and spring Laplacians must be square and equally sized");
  const Index p = D.rows();
  if (q < 1 || q > p)
    fail(ErrorCode::DimensionMismatch,
         "boundary size q must satisfy 1 <= q <= p");
  BlockPartition b;
  b.p = p;
  b.q = q;
  b.D = D;
  b.R = R;
  b.U1 = D.topLeftCorner(q, q);
  b.U2 = R.topLeftCorner(q, q);
  b.V1 = D.topRightCorner(q, p - q);
  b.V2 = R.topRightCorner(q, p - q);
  b.W1 = D.bottomRightCorner(p - q, p - q);
  b.W2 = R.bottomRightCorner(p - q, p - q);
  return b;
}

BlockPartition partition_network(const CouplingNetwork& net) {
  return partition_blocks(net.damper_laplacian(), net.spring_laplacian(),
                          net.q);
}

std::pair<Matrix, Matrix> reassemble_blocks(const BlockPartition& b) {
  const Index p = b.p, q = b.q;
  Matrix D(p, p), R(p, p);
  D.topLeftCorner(q, q) = b.U1;
  D.topRightCorner(q, p - q) = b.V1;
  D.bottomLeftCorner(p - q, q) = b.V1.transpose();
  D.bottomRightCorner(p - q, p - q) = b.W1;
  R.topLeftCorner(q, q) = b.U2;
  R.topRightCorner(q, p - q) = b.V2;
  R.bottomLeftCorner(p - q, q) = b.V2.transpose();
  R.bottomRightCorner(p - q, p - q) = b.W2;
  return {D, R};
}

}  // namespace kronsync
