#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <variant>
#include <vector>

#include "dloc/net/ids.hpp"
#include "dloc/net/topology.hpp"
#include "dloc/net/trace_log.hpp"

namespace dloc::net {

struct SimConfig {
  std::uint64_t event_budget = 10'000'000;
  bool record_trace = false;
};

/// Livelock guard tripped: the scenario executed more events than allowed.
class EventBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct OpStats {
  std::uint64_t messages = 0;
  std::uint64_t links = 0;
  std::uint64_t dropped = 0;
};

/// Payload-independent part of the simulator: clock, accounting and trace.
class SimCore {
 public:
  SimCore(Topology& topology, SimConfig config)
      : topology_(&topology), config_(config), trace_(config.record_trace) {}

  Topology& topology() { return *topology_; }
  const Topology& topology() const { return *topology_; }
  const SimConfig& config() const { return config_; }

  std::uint64_t now() const { return now_; }
  OpId begin_op() { return ++last_op_; }
  const OpStats& op_stats(OpId op) const;

  std::uint64_t events_executed() const { return events_; }
  std::uint64_t link_usage(LinkId link) const;
  std::uint64_t total_link_usage() const { return total_links_; }
  std::uint64_t messages_delivered() const { return delivered_; }
  std::uint64_t messages_dropped() const { return dropped_; }
  /// Messages delivered to each node slot (all operations).
  std::span<const std::uint64_t> received_per_node() const { return received_; }
  const TraceLog& trace() const { return trace_; }

 protected:
  void count_event();
  bool path_valid(NodeId dst, std::span<const LinkId> path) const;
  void account_delivery(NodeId src, NodeId dst, OpId op, std::span<const LinkId> path);
  void account_drop(OpId op);

  std::uint64_t now_ = 0;
  std::uint64_t seq_ = 0;

 private:
  Topology* topology_;
  SimConfig config_;
  TraceLog trace_;
  OpId last_op_ = 0;
  std::uint64_t events_ = 0;
  std::uint64_t total_links_ = 0;
  std::uint64_t delivered_ = 0;
  std::uint64_t dropped_ = 0;
  std::vector<std::uint64_t> link_usage_;
  std::vector<std::uint64_t> received_;
  std::unordered_map<OpId, OpStats> ops_;
};

template <class Payload>
struct Message {
  NodeId src;
  NodeId dst;
  OpId op = 0;
  std::vector<LinkId> hop_path;
  Payload payload{};
  std::uint64_t sent_at = 0;
};

/// Deterministic discrete-event simulator with unit link latency. Events run
/// in (time, insertion order); a message routed over k links is delivered k
/// ticks after it is sent.
template <class Payload>
class Simulator : public SimCore {
 public:
  using MessageHandler = std::function<void(Simulator&, Message<Payload>&)>;
  using Action = std::function<void(Simulator&)>;
  using ChangeHandler = std::function<void(Simulator&, const ChangeNotice&)>;

  explicit Simulator(Topology& topology, SimConfig config = {}) : SimCore(topology, config) {}

  void set_handler(MessageHandler handler) { handler_ = std::move(handler); }

  /// Sends along the current shortest path. The path is fixed at send time and
  /// revalidated on delivery; a message whose path broke meanwhile is dropped.
  void send(NodeId src, NodeId dst, OpId op, Payload payload) {
    Message<Payload> m{src, dst, op, topology().shortest_path(src, dst), std::move(payload), now_};
    const std::uint64_t at = now_ + m.hop_path.size();
    push(at, std::move(m));
  }

  /// Sends over one specific link to the neighbor at its other end.
  void send_over(NodeId src, LinkId link, OpId op, Payload payload) {
    const Link& l = topology().link(link);
    const NodeId dst = l.a == src ? l.b : l.a;
    Message<Payload> m{src, dst, op, {link}, std::move(payload), now_};
    push(now_ + 1, std::move(m));
  }

  void schedule(std::uint64_t delay, Action action) { push(now_ + delay, std::move(action)); }

  void schedule_change(std::uint64_t delay, TopologyChange change, ChangeHandler on_applied) {
    schedule(delay, [change = std::move(change), on_applied = std::move(on_applied)](Simulator& sim) {
      const ChangeNotice notice = apply_change(sim.topology(), change);
      if (on_applied) on_applied(sim, notice);
    });
  }

  bool idle() const { return queue_.empty(); }

  /// Executes events until the queue is empty. Returns the number executed.
  std::uint64_t run() {
    std::uint64_t executed = 0;
    while (!queue_.empty()) {
      std::pop_heap(queue_.begin(), queue_.end(), Later{});
      Event ev = std::move(queue_.back());
      queue_.pop_back();
      count_event();
      ++executed;
      now_ = ev.time;
      if (auto* msg = std::get_if<Message<Payload>>(&ev.body)) {
        if (!path_valid(msg->dst, msg->hop_path)) {
          account_drop(msg->op);
          continue;
        }
        account_delivery(msg->src, msg->dst, msg->op, msg->hop_path);
        if (handler_) handler_(*this, *msg);
      } else {
        std::get<Action>(ev.body)(*this);
      }
    }
    return executed;
  }

 private:
  struct Event {
    std::uint64_t time;
    std::uint64_t seq;
    std::variant<Message<Payload>, Action> body;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  template <class Body>
  void push(std::uint64_t at, Body body) {
    queue_.push_back(Event{at, seq_++, std::move(body)});
    std::push_heap(queue_.begin(), queue_.end(), Later{});
  }

  MessageHandler handler_;
  std::vector<Event> queue_;
};

}  // namespace dloc::net
