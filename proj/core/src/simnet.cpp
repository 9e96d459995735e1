// Copyright 2026 The twofold Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "twofold/simnet.hpp"

#include "twofold/codec.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace twofold {
namespace {

constexpr std::uint64_t kNetworkStream   = 0;
constexpr std::uint64_t kParentStream    = 1ULL << 32;
constexpr std::uint64_t kAdversaryStream = 2ULL << 32;

Topology random_topology(ScenarioConfig const &cfg, Rng &rng)
{
  auto const          n = cfg.nodes;
  std::vector<NodeId> ids(2 * std::size_t{n});
  for (std::uint32_t i = 0; i < 2 * n; ++i)
  {
    ids[i] = NodeId{i};
  }
  rng.shuffle(std::span<NodeId>{ids});

  Topology topo;
  topo.parents.assign(ids.begin(), ids.begin() + n);
  topo.children.assign(ids.begin() + n, ids.end());

  std::vector<std::uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0U);
  rng.shuffle(std::span<std::uint32_t>{order});
  topo.byzantine.assign(n, false);
  for (std::uint32_t i = 0; i < cfg.byzantine; ++i)
  {
    topo.byzantine[order[i]] = true;
  }
  return topo;
}

void check_topology(ScenarioConfig const &cfg, Topology const &topo)
{
  auto const n = std::size_t{cfg.nodes};
  if (topo.parents.size() != n || topo.children.size() != n || topo.byzantine.size() != n)
  {
    throw ConfigError("topology: expected N parents, N children and N Byzantine flags");
  }
  std::vector<bool> seen(2 * n, false);
  for (auto const *list : {&topo.parents, &topo.children})
  {
    for (auto id : *list)
    {
      if (id.value() >= 2 * n || seen[id.value()])
      {
        throw ConfigError("topology: node ids must be a permutation of [0, 2N)");
      }
      seen[id.value()] = true;
    }
  }
  auto const t = static_cast<std::size_t>(std::count(topo.byzantine.begin(), topo.byzantine.end(), true));
  if (t != cfg.byzantine)
  {
    throw ConfigError("topology: Byzantine flag count differs from t");
  }
}

}  // namespace

std::size_t Network::KeyHash::operator()(std::pair<NodeId, DedupeKey> const &k) const noexcept
{
  return std::hash<DedupeKey>{}(k.second) ^ static_cast<std::size_t>(mix64(k.first.value() + 1));
}

Network::Network(ScenarioConfig cfg, std::optional<Topology> topology)
  : cfg_{std::move(cfg)}
  , rng_{Rng::derive(cfg_.seed, kNetworkStream)}
{
  validate(cfg_);
  if (topology)
  {
    check_topology(cfg_, *topology);
    topology_ = std::move(*topology);
  }
  else
  {
    topology_ = random_topology(cfg_, rng_);
  }

  auto dir = std::make_shared<Directory>();
  dir->parents = topology_.parents;
  std::sort(dir->parents.begin(), dir->parents.end());
  dir->nodes = topology_.parents;
  dir->nodes.insert(dir->nodes.end(), topology_.children.begin(), topology_.children.end());
  std::sort(dir->nodes.begin(), dir->nodes.end());
  directory_ = dir;

  roles_.resize(2 * std::size_t{cfg_.nodes});
  for (std::size_t i = 0; i < topology_.parents.size(); ++i)
  {
    auto const p = topology_.parents[i];
    auto const c = topology_.children[i];
    if (topology_.byzantine[i])
    {
      roles_[p.value()] = Role{RoleKind::ByzantineParent, adversaries_.size()};
      roles_[c.value()] = Role{RoleKind::ByzantineChild, adversaries_.size()};
      adversaries_.push_back(Adversary{p, c, 0, Rng::derive(cfg_.seed, kAdversaryStream + p.value())});
    }
    else
    {
      roles_[p.value()] = Role{RoleKind::HonestParent, parents_.size()};
      roles_[c.value()] = Role{RoleKind::HonestChild, children_.size()};
      parents_.emplace_back(p, c, directory_, cfg_.alphabet,
                            Rng::derive(cfg_.seed, kParentStream + p.value()));
      children_.push_back(ChildState{c, p, directory_, {}, 0, 0});
    }
  }

  buckets_.resize(std::size_t{cfg_.delay_max} + 1);
}

Network::Role const &Network::role(NodeId id) const
{
  if (id.value() >= roles_.size())
  {
    throw std::out_of_range("unknown node id");
  }
  return roles_[id.value()];
}

std::vector<NodeId> Network::byzantine_parents() const
{
  std::vector<NodeId> out;
  for (auto const &a : adversaries_)
  {
    out.push_back(a.self);
  }
  return out;
}

std::vector<NodeId> Network::honest_parents() const
{
  std::vector<NodeId> out;
  for (auto const &p : parents_)
  {
    out.push_back(p.self_id);
  }
  return out;
}

NodeId Network::child_of(NodeId parent) const
{
  auto const &r = role(parent);
  switch (r.kind)
  {
  case RoleKind::HonestParent:
    return parents_[r.index].child_id;
  case RoleKind::ByzantineParent:
    return adversaries_[r.index].partner;
  default:
    throw std::invalid_argument("child_of: not a parent");
  }
}

bool Network::is_byzantine(NodeId id) const
{
  auto const k = role(id).kind;
  return k == RoleKind::ByzantineParent || k == RoleKind::ByzantineChild;
}

ParentState const &Network::parent_state(NodeId parent) const
{
  auto const &r = role(parent);
  if (r.kind != RoleKind::HonestParent)
  {
    throw std::invalid_argument("parent_state: not an honest parent");
  }
  return parents_[r.index];
}

ChildState const &Network::child_state(NodeId child) const
{
  auto const &r = role(child);
  if (r.kind != RoleKind::HonestChild)
  {
    throw std::invalid_argument("child_state: not an honest child");
  }
  return children_[r.index];
}

std::vector<NodeId> Network::caught() const
{
  std::vector<NodeId> out;
  for (auto const &a : adversaries_)
  {
    auto const on_all = std::all_of(parents_.begin(), parents_.end(),
                                    [&a](auto const &p) { return p.blacklist.contains(a.self); });
    if (on_all)
    {
      out.push_back(a.self);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

double Network::detection_fraction() const
{
  if (adversaries_.empty())
  {
    return 1.0;
  }
  return static_cast<double>(caught().size()) / static_cast<double>(adversaries_.size());
}

void Network::enqueue(Message m, std::uint64_t delay, bool pair, bool checked)
{
  auto &seq = max_seq_[m.sender];
  seq       = std::max(seq, m.seq);
  buckets_[(tick_ + delay) % buckets_.size()].push_back(Event{std::move(m), pair, checked});
  ++pending_;
  if (!pair)
  {
    ++current_.messages_sent;
  }
}

void Network::enqueue(Broadcast const &b)
{
  for (auto to : b.recipients)
  {
    enqueue(Message{b.type, b.seq, b.content, b.sender, to}, rng_.between(1, cfg_.delay_max), false);
  }
}

void Network::broadcast(NodeId from, SeqNo seq, MessageType type, Emission const &per_recipient)
{
  for (auto const &[to, content] : per_recipient)
  {
    enqueue(Message{type, seq, content, from, to}, rng_.between(1, cfg_.delay_max), false, true);
  }
}

void Network::apply(NodeId parent, ParentStep const &step)
{
  for (auto const &b : step.broadcasts)
  {
    enqueue(b);
  }
  if (step.detected)
  {
    current_.detections.push_back(Detection{parent, *step.detected});
  }
  for (auto tx : step.committed)
  {
    ++current_.commit_events;
    if (committed_txs_.insert(tx).second)
    {
      current_.commits.push_back(tx);
    }
  }
}

void Network::deliver(Event &ev)
{
  auto const &m = ev.message;

  if (ev.pair)
  {
    // Relay from an honest child to its own parent.
    ++current_.pair_messages;
    auto const &r    = role(m.receiver);
    auto const  self = children_[r.index].parent_id;
    auto const  step = parent_handle(parents_[roles_[self.value()].index], m, Origin::Child);
    apply(self, step);
    return;
  }

  if (auto it = sealed_.find(m.sender); it != sealed_.end() && m.seq <= it->second)
  {
    ++current_.duplicates_suppressed;
    return;
  }
  if (ev.checked && !delivered_.insert({m.receiver, dedupe_key(m)}).second)
  {
    ++current_.duplicates_suppressed;
    return;
  }
  ++current_.messages_delivered;

  if (trace_ != nullptr)
  {
    auto const bytes = encode_message(m);
    *trace_ << iteration_ << ' ' << tick_ << ' ' << to_hex(bytes) << '\n';
  }

  auto const &r = role(m.receiver);
  switch (r.kind)
  {
  case RoleKind::HonestParent:
  {
    auto const step = parent_handle(parents_[r.index], m, Origin::Direct);
    if (!step.dropped)
    {
      ++current_.messages_processed;
    }
    apply(m.receiver, step);
    break;
  }
  case RoleKind::HonestChild:
  {
    auto step = child_handle(children_[r.index], m);
    if (!step.dropped)
    {
      ++current_.messages_processed;
    }
    for (auto &action : step.actions)
    {
      if (auto *relay = std::get_if<Message>(&action))
      {
        enqueue(std::move(*relay), 0, true);
      }
    }
    break;
  }
  case RoleKind::ByzantineParent:
  case RoleKind::ByzantineChild:
    break;
  }
}

void Network::drain()
{
  while (pending_ > 0)
  {
    auto &bucket = buckets_[tick_ % buckets_.size()];
    // Same-tick relays may append to this bucket while it is being walked.
    for (std::size_t i = 0; i < bucket.size(); ++i)
    {
      Event ev = std::move(bucket[i]);
      --pending_;
      deliver(ev);
    }
    bucket.clear();
    if (pending_ > 0)
    {
      ++tick_;
    }
  }
}

IterationReport Network::run_iteration()
{
  ++iteration_;
  // current_ may already count copies enqueued through broadcast() since the
  // previous iteration ended.
  current_.iteration = iteration_;
  committed_txs_.clear();

  for (std::size_t i = 0; i < parents_.size(); ++i)
  {
    auto &parent = parents_[i];
    begin_iteration(parent);
    auto const msg   = prepare_message(parent);
    auto const instr = pair_sync(parent, msg);
    enqueue(msg);

    ++current_.pair_messages;
    auto const &child_role = roles_[parent.child_id.value()];
    auto        step       = child_handle(children_[child_role.index], instr);
    for (auto const &action : step.actions)
    {
      if (auto const *b = std::get_if<Broadcast>(&action))
      {
        enqueue(*b);
      }
    }
  }

  for (auto &adv : adversaries_)
  {
    std::vector<NodeId> recipients;
    recipients.reserve(directory_->nodes.size());
    for (auto id : directory_->nodes)
    {
      if (id != adv.self && id != adv.partner)
      {
        recipients.push_back(id);
      }
    }
    auto const  seq = adv.next_seq++;
    EmitContext ctx{adv.self, make_tx_id(adv.self, seq), recipients, iteration_, cfg_.alphabet};
    broadcast(adv.self, seq, MessageType::Transaction, emit(cfg_.strategy, ctx, adv.rng));
  }

  drain();

  for (auto &parent : parents_)
  {
    apply(parent.self_id, flush_votes(parent));
  }
  drain();

  for (auto &parent : parents_)
  {
    close_iteration(parent);
  }

  current_.caught             = caught();
  current_.detection_fraction = adversaries_.empty()
                                    ? 1.0
                                    : static_cast<double>(current_.caught.size()) /
                                          static_cast<double>(adversaries_.size());
  if (keep_blacklists_)
  {
    for (auto const &parent : parents_)
    {
      current_.blacklists.emplace(parent.self_id, parent.blacklist);
    }
  }

  for (auto &parent : parents_)
  {
    current_.reset = reset_blacklist(parent, cfg_.reset_interval) || current_.reset;
  }

  delivered_.clear();
  for (auto const &[sender, seq] : max_seq_)
  {
    sealed_[sender] = seq;
  }
  auto report = std::move(current_);
  current_    = IterationReport{};
  return report;
}

Network build_network(ScenarioConfig const &cfg)
{
  return Network{cfg};
}

IterationReport run_iteration(Network &net)
{
  return net.run_iteration();
}

std::uint64_t replicate_seed(std::uint64_t base, std::uint32_t index)
{
  if (index == 0)
  {
    return base;
  }
  return mix64(base + 0x9e3779b97f4a7c15ULL * index);
}

RunMetrics run_scenario(ScenarioConfig const &cfg, RunOptions const &options)
{
  Network net{cfg};
  net.keep_blacklists(options.keep_blacklists);
  net.set_trace(options.trace);

  RunMetrics metrics;
  metrics.seed      = cfg.seed;
  metrics.byzantine = net.byzantine_parents();
  std::sort(metrics.byzantine.begin(), metrics.byzantine.end());
  for (auto id : metrics.byzantine)
  {
    metrics.detection_latency.emplace(id, std::nullopt);
  }

  for (std::uint32_t i = 0; i < cfg.iterations; ++i)
  {
    auto report = net.run_iteration();
    metrics.total_messages += report.messages_sent;
    for (auto id : report.caught)
    {
      auto &first = metrics.detection_latency[id];
      if (!first)
      {
        first = report.iteration;
      }
    }
    metrics.reports.push_back(std::move(report));

    if (cfg.early_stop && cfg.reset_interval == 0 && cfg.byzantine > 0 &&
        metrics.reports.back().detection_fraction == 1.0)
    {
      break;
    }
  }

  metrics.final_detection_fraction =
      metrics.reports.empty() ? 1.0 : metrics.reports.back().detection_fraction;

  // Without any reset the last snapshot stands in.
  double      sum    = 0;
  std::size_t resets = 0;
  for (auto const &r : metrics.reports)
  {
    if (r.reset)
    {
      sum += r.detection_fraction;
      ++resets;
    }
  }
  metrics.pre_reset_detection_fraction =
      resets == 0 ? metrics.final_detection_fraction : sum / static_cast<double>(resets);
  return metrics;
}

}  // namespace twofold
