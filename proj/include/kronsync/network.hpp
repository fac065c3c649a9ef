#pragma once

#include <string>
#include <vector>

#include "kronsync/linalg.hpp"

namespace kronsync {

/// Undirected weighted edge in canonical 0-based indices, i < j.
struct WeightedEdge {
  Index i = 0;
  Index j = 0;
  double w = 0.0;
};

/// Coupling network as provided by the user, before canonicalization.
/// Node labels are free-form strings; integer node counts expand to "1".."p".
struct RawNetwork {
  Index node_count = 0;             // used when labels is empty
  std::vector<std::string> labels;  // explicit node labels, in order
  std::vector<std::string> boundary;
  struct RawEdge {
    std::string i, j;
    double w = 0.0;
  };
  std::vector<RawEdge> dampers;
  std::vector<RawEdge> springs;
};

/// Validated network in canonical order: boundary nodes occupy indices
/// 0..q-1 (in the order the boundary was listed), interior nodes follow in
/// declaration order. Edge lists are deduplicated and sorted.
struct CouplingNetwork {
  Index p = 0;
  Index q = 0;
  std::vector<std::string> labels;  // canonical order, size p
  std::vector<WeightedEdge> dampers;
  std::vector<WeightedEdge> springs;

  [[nodiscard]] Matrix damper_laplacian() const;
  [[nodiscard]] Matrix spring_laplacian() const;
};

/// Canonicalizes and validates a raw description.
/// Throws: NegativeWeight, DuplicateEdge, SelfLoop, BadIndex, EmptyBoundary.
CouplingNetwork validate_network(const RawNetwork& raw);

/// Graph Laplacian of an undirected weighted edge list on p nodes:
/// L_ij = -w_ij off the diagonal, L_ii = sum_j w_ij.
Matrix build_laplacian(const std::vector<WeightedEdge>& edges, Index p);

/// Same, from a symmetric nonnegative weight matrix with zero diagonal.
Matrix build_laplacian(const Matrix& weights);

/// The two Laplacians split at q: U is the boundary block, W the interior
/// block, V the boundary-interior coupling.
struct BlockPartition {
  Index p = 0;
  Index q = 0;
  Matrix D, R;                  // p x p
  Matrix U1, U2;                // q x q
  Matrix V1, V2;                // q x (p-q)
  Matrix W1, W2;                // (p-q) x (p-q)
};

/// Throws DimensionMismatch unless D, R are square of equal size and
/// 1 <= q <= p.
BlockPartition partition_blocks(const Matrix& D, const Matrix& R, Index q);

BlockPartition partition_network(const CouplingNetwork& net);

/// Reassembles the original (D, R) pair; identity used by tests.
std::pair<Matrix, Matrix> reassemble_blocks(const BlockPartition& blocks);

}  // namespace kronsync
