#pragma once

#include <vector>

#include <Eigen/Dense>

#include "wigner/basis/filter.hpp"

namespace wigner {

/// Node (level, band) of a wavelet-packet tree. Level 0 is the root; band b of
/// level l has children 2b (low-pass) and 2b + 1 (high-pass) at level l + 1.
struct PacketNode {
  int level = 0;
  int band = 0;
  bool operator==(const PacketNode&) const = default;
};

/// Full periodic packet decomposition of a signal of length divisible by 2^depth.
class PacketTree {
 public:
  PacketTree(int depth, std::vector<std::vector<Eigen::VectorXd>> nodes);

  int depth() const { return depth_; }
  const Eigen::VectorXd& coeffs(const PacketNode& n) const;
  /// Σ c² at the root; every admissible cut carries the same energy.
  double energy() const { return energy_; }

 private:
  int depth_;
  std::vector<std::vector<Eigen::VectorXd>> nodes_;  // nodes_[level][band]
  double energy_;
};

/// ContractError if depth < 1 or the length is not divisible by 2^depth.
PacketTree packet_decompose(const FilterCoefficients& filter, const Eigen::VectorXd& signal, int depth);

/// Additive Shannon cost -Σ p log p of one node, p = c² / tree energy.
double packet_entropy(const PacketTree& tree, const PacketNode& node);

struct PacketCut {
  std::vector<PacketNode> nodes;  // disjoint cover of the root, in band order
  double entropy = 0.0;
};

/// Entropy of an arbitrary cut (sum of node costs).
double cut_entropy(const PacketTree& tree, const std::vector<PacketNode>& nodes);

/// Minimum-entropy admissible cut by bottom-up comparison of every node with
/// its best subtree. A parent wins ties (relative 1e-12), so among equal cuts
/// the shallower one is returned. DegenerateInputError for an all-zero tree.
PacketCut best_basis_packet(const PacketTree& tree);

}  // namespace wigner
