#include "mucont/selection.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "mucont/error.hpp"

namespace mucont {

std::uint32_t CantorNet::meet(std::uint32_t a, std::uint32_t b) const {
  std::vector<bool> on_chain(members.size(), false);
  for (std::optional<std::uint32_t> v = a; v; v = predecessor[*v]) on_chain[*v] = true;
  for (std::optional<std::uint32_t> v = b; v; v = predecessor[*v]) {
    if (on_chain[*v]) return *v;
  }
  throw InternalError("net nodes without a common ancestor");
}

CantorNet build_net(const CantorDomain& d) {
  const auto precision = d.precision();
  const auto count = d.size();
  CantorNet net;
  net.members.assign(d.members().begin(), d.members().end());
  net.predecessor.assign(count, std::nullopt);
  net.entry_level.assign(count, 0);
  net.ancestry_depth.assign(count, 0);
  net.levels.assign(precision + 1, {});

  // class_start[n] is the first member of the current length-n prefix class.
  std::vector<std::uint32_t> class_start(precision + 1, 0);
  for (std::uint32_t i = 1; i < count; ++i) {
    const auto shared = net.members[i - 1].common_prefix_length(net.members[i]);
    const auto pred = class_start[shared];
    net.entry_level[i] = shared + 1;
    net.predecessor[i] = pred;
    net.ancestry_depth[i] = net.ancestry_depth[pred] + 1;
    for (auto n = shared + 1; n <= precision; ++n) class_start[n] = i;
  }
  for (std::uint32_t i = 0; i < count; ++i) {
    for (auto n = net.entry_level[i]; n <= precision; ++n) net.levels[n].push_back(i);
  }
  return net;
}

SkolemTable extract_skolem(const Multifunction& f, const Modulus& mu, const RelationSet& fix,
                           const CantorNet& net, std::span<const PointIndex> node_points) {
  if (node_points.size() != net.members.size()) {
    throw PreconditionError("node_points does not match the net");
  }
  const ClosenessIndex index(f, mu);
  SkolemTable table;
  table.choice.assign(net.members.size(), 0);

  std::vector<std::uint32_t> order(net.members.size());
  for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](auto a, auto b) { return net.entry_level[a] < net.entry_level[b]; });

  for (auto node : order) {
    const auto x = node_points[node];
    std::optional<PointIndex> chosen;
    for (auto y : f.values(x)) {
      if (!fix.contains(x, y)) continue;
      if (const auto parent = net.predecessor[node]) {
        const auto px = node_points[*parent];
        if (!index.close(px, table.choice[*parent], x, y)) continue;
      }
      chosen = y;
      break;
    }
    if (!chosen) {
      throw InternalError("no admissible value at net node " + net.members[node].to_string());
    }
    table.choice[node] = *chosen;
  }
  return table;
}

SelectionCheck verify_selection_modulus(const Multifunction& selection, const Modulus& bound,
                                        const Multifunction& f) {
  if (!same_space(selection.domain(), f.domain()) || !same_space(selection.codomain(), f.codomain())) {
    throw PreconditionError("selection and multifunction live on different carriers");
  }
  SelectionCheck check;
  check.ok = true;
  const auto dom = f.dom();
  std::vector<PointIndex> value(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) {
    const auto chosen = selection.values(dom[i]);
    if (chosen.size() != 1 || !f.contains(dom[i], chosen[0])) {
      check.ok = false;
      check.outside = dom[i];
      return check;
    }
    value[i] = chosen[0];
  }
  if (dom.size() < 2) return check;

  // The worst pair is found per domain rank: it is the pair with the largest
  // codomain rank among those at that domain distance.
  struct Worst {
    std::uint32_t rank;
    std::size_t i, j;
  };
  const auto& domain = *f.domain();
  const auto& codomain = *f.codomain();
  std::map<std::uint32_t, Worst> worst;
  for (std::size_t i = 0; i < dom.size(); ++i) {
    for (std::size_t j = i + 1; j < dom.size(); ++j) {
      const auto dr = domain.rank(dom[i], dom[j]);
      const auto cr = codomain.rank(value[i], value[j]);
      auto [it, inserted] = worst.try_emplace(dr, Worst{cr, i, j});
      if (!inserted && cr > it->second.rank) it->second = Worst{cr, i, j};
    }
  }
  bool first = true;
  for (const auto& [dr, w] : worst) {
    const auto slack = bound.eval(domain.distance_of_rank(dr)) - codomain.distance_of_rank(w.rank);
    if (first || slack < check.slack) {
      first = false;
      check.slack = slack;
      check.tightest = std::make_pair(dom[w.i], dom[w.j]);
    }
  }
  check.ok = check.slack.sign() >= 0;
  return check;
}

SelectionCheck verify_selection_modulus(const SelectionTrace& trace, const Multifunction& f) {
  return verify_selection_modulus(trace.selection, trace.certified_modulus, f);
}

SelectionTrace select(const Multifunction& f, const Modulus& mu, const std::optional<Dyadic>& constant) {
  const auto* cantor = f.domain()->cantor_domain();
  if (!cantor) throw PreconditionError("selection needs a Cantor-word domain");
  const auto dom = f.dom();
  if (dom.empty()) throw PreconditionError("multifunction has an empty domain");

  const bool ultrametric = f.codomain()->ultrametric();
  Modulus certified = mu;
  if (!ultrametric) {
    if (!constant) throw PreconditionError("constant: required for a non-ultrametric codomain");
    if (mu.depth() < cantor->precision()) {
      throw PreconditionError("modulus: depth " + std::to_string(mu.depth()) +
                              " is below the domain precision " + std::to_string(cantor->precision()));
    }
    const auto cert = check_geometric(mu, *constant);
    if (!cert.certified()) {
      throw PreconditionError("constant: modulus is not " + constant->to_string() + "-geometric (scale " +
                              std::to_string(*cert.witness_scale) + ")");
    }
    certified = modulus_scale(mu, Dyadic(2) * *constant);
  }

  auto decision = decide_continuity(f, mu);
  if (!decision.continuous) {
    const auto at = f.domain()->label(*decision.witness);
    throw ContinuityError("multifunction is not mu-continuous at " + at, at);
  }

  std::vector<Word> words;
  words.reserve(dom.size());
  for (auto x : dom) words.push_back((*cantor)[x]);
  auto net = build_net(CantorDomain(std::move(words)));
  // dom is ascending and the carrier is sorted, so node i is dom[i].
  std::vector<PointIndex> node_points = dom;
  auto skolem = extract_skolem(f, mu, decision.fixpoint.relation, net, node_points);

  std::vector<std::pair<PointIndex, PointIndex>> pairs;
  pairs.reserve(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i) pairs.emplace_back(dom[i], skolem.choice[i]);
  auto selection = Multifunction::from_pairs(f.domain(), f.codomain(), pairs);

  SelectionTrace trace{std::move(net),
                       std::move(node_points),
                       std::move(skolem),
                       std::move(selection),
                       std::move(certified),
                       ultrametric ? BoundKind::mu : BoundKind::two_C_mu,
                       ultrametric ? std::nullopt : constant,
                       decision.fixpoint.iterations,
                       {}};
  trace.check = verify_selection_modulus(trace, f);
  if (!trace.check.ok) throw InternalError("selection failed its own modulus check");
  return trace;
}

}  // namespace mucont
