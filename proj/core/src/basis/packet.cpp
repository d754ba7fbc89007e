#include "wigner/basis/packet.hpp"

#include <cmath>

#include "wigner/error.hpp"

namespace wigner {

namespace {

void split(const FilterCoefficients& f, const Eigen::VectorXd& x, Eigen::VectorXd& lo, Eigen::VectorXd& hi) {
  const long n = x.size();
  const long half = n / 2;
  lo = Eigen::VectorXd::Zero(half);
  hi = Eigen::VectorXd::Zero(half);
  for (long k = 0; k < half; ++k) {
    for (int t = 0; t < f.order; ++t) {
      const double v = x((2 * k + t) % n);
      lo(k) += f.taps[static_cast<std::size_t>(t)] * v;
      hi(k) += f.highpass(t) * v;
    }
  }
}

double node_cost(const Eigen::VectorXd& c, double energy) {
  double s = 0.0;
  for (long i = 0; i < c.size(); ++i) {
    const double p = c(i) * c(i) / energy;
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

struct Best {
  double cost;
  std::vector<PacketNode> nodes;
};

Best best_below(const PacketTree& tree, const PacketNode& node) {
  const double own = packet_entropy(tree, node);
  if (node.level == tree.depth()) return {own, {node}};
  Best a = best_below(tree, {node.level + 1, 2 * node.band});
  Best b = best_below(tree, {node.level + 1, 2 * node.band + 1});
  const double children = a.cost + b.cost;
  if (own <= children + 1e-12 * std::max(1.0, std::abs(children))) return {own, {node}};
  a.nodes.insert(a.nodes.end(), b.nodes.begin(), b.nodes.end());
  return {children, std::move(a.nodes)};
}

}  // namespace

PacketTree::PacketTree(int depth, std::vector<std::vector<Eigen::VectorXd>> nodes)
    : depth_(depth), nodes_(std::move(nodes)), energy_(nodes_.at(0).at(0).squaredNorm()) {}

const Eigen::VectorXd& PacketTree::coeffs(const PacketNode& n) const {
  if (n.level < 0 || n.level > depth_ || n.band < 0 || n.band >= (1 << n.level)) {
    throw ContractError("PacketTree: node (" + std::to_string(n.level) + ", " + std::to_string(n.band) +
                        ") outside a depth " + std::to_string(depth_) + " tree");
  }
  return nodes_[static_cast<std::size_t>(n.level)][static_cast<std::size_t>(n.band)];
}

PacketTree packet_decompose(const FilterCoefficients& filter, const Eigen::VectorXd& signal, int depth) {
  if (depth < 1) throw ContractError("packet_decompose: depth must be at least 1");
  if (depth > 30 || signal.size() % (1L << depth) != 0 || signal.size() == 0) {
    throw ContractError("packet_decompose: length " + std::to_string(signal.size()) +
                        " is not divisible by 2^" + std::to_string(depth));
  }
  std::vector<std::vector<Eigen::VectorXd>> nodes(static_cast<std::size_t>(depth) + 1);
  nodes[0].push_back(signal);
  for (int l = 0; l < depth; ++l) {
    auto& next = nodes[static_cast<std::size_t>(l) + 1];
    for (const auto& parent : nodes[static_cast<std::size_t>(l)]) {
      Eigen::VectorXd lo, hi;
      split(filter, parent, lo, hi);
      next.push_back(std::move(lo));
      next.push_back(std::move(hi));
    }
  }
  return PacketTree(depth, std::move(nodes));
}

double packet_entropy(const PacketTree& tree, const PacketNode& node) {
  if (!(tree.energy() > 0.0)) throw DegenerateInputError("packet entropy of an all-zero tree is undefined");
  return node_cost(tree.coeffs(node), tree.energy());
}

double cut_entropy(const PacketTree& tree, const std::vector<PacketNode>& nodes) {
  double s = 0.0;
  for (const auto& n : nodes) s += packet_entropy(tree, n);
  return s;
}

PacketCut best_basis_packet(const PacketTree& tree) {
  if (!(tree.energy() > 0.0)) throw DegenerateInputError("best_basis_packet: all coefficients are zero");
  Best b = best_below(tree, {0, 0});
  return {std::move(b.nodes), b.cost};
}

}  // namespace wigner
