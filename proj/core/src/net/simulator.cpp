#include "dloc/net/simulator.hpp"

namespace dloc::net {

const OpStats& SimCore::op_stats(OpId op) const {
  static const OpStats kEmpty{};
  auto it = ops_.find(op);
  return it == ops_.end() ? kEmpty : it->second;
}

std::uint64_t SimCore::link_usage(LinkId link) const {
  return link.value < link_usage_.size() ? link_usage_[link.value] : 0;
}

void SimCore::count_event() {
  if (++events_ > config_.event_budget) {
    throw EventBudgetExceeded("event budget of " + std::to_string(config_.event_budget) +
                              " events exceeded");
  }
}

bool SimCore::path_valid(NodeId dst, std::span<const LinkId> path) const {
  if (!topology_->contains(dst)) return false;
  for (LinkId l : path) {
    if (!topology_->link_alive(l)) return false;
  }
  return true;
}

void SimCore::account_delivery(NodeId src, NodeId dst, OpId op, std::span<const LinkId> path) {
  if (link_usage_.size() < topology_->link_capacity()) link_usage_.resize(topology_->link_capacity(), 0);
  if (received_.size() < topology_->node_capacity()) received_.resize(topology_->node_capacity(), 0);
  for (LinkId l : path) ++link_usage_[l.value];
  total_links_ += path.size();
  ++delivered_;
  ++received_[dst.value];
  OpStats& stats = ops_[op];
  ++stats.messages;
  stats.links += path.size();
  trace_.append(now_, src, dst, op, path);
}

void SimCore::account_drop(OpId op) {
  ++dropped_;
  ++ops_[op].dropped;
}

}  // namespace dloc::net
