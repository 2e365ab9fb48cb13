#include "motzkinlab/flow.hpp"

#include <limits>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/push_relabel_max_flow.hpp>

#include "motzkinlab/errors.hpp"

namespace motzkin {

namespace {

using Traits = boost::adjacency_list_traits<boost::vecS, boost::vecS, boost::directedS>;
using Graph = boost::adjacency_list<
    boost::vecS, boost::vecS, boost::directedS, boost::no_property,
    boost::property<boost::edge_capacity_t, long,
                    boost::property<boost::edge_residual_capacity_t, long,
                                    boost::property<boost::edge_reverse_t, Traits::edge_descriptor>>>>;
using Edge = Traits::edge_descriptor;

struct Network {
  explicit Network(std::size_t n) : g(n) {}

  Edge add(std::size_t u, std::size_t v, long cap) {
    const Edge e = boost::add_edge(u, v, g).first;
    const Edge r = boost::add_edge(v, u, g).first;
    boost::put(boost::edge_capacity, g, e, cap);
    boost::put(boost::edge_capacity, g, r, 0L);
    boost::put(boost::edge_reverse, g, e, r);
    boost::put(boost::edge_reverse, g, r, e);
    return e;
  }

  long used(Edge e) const {
    return boost::get(boost::edge_capacity, g, e) - boost::get(boost::edge_residual_capacity, g, e);
  }

  Graph g;
};

}  // namespace

std::size_t BoundedFlow::add_arc(std::size_t from, std::size_t to, long lower, long upper) {
  if (from >= nodes_ || to >= nodes_) throw InputError("BoundedFlow: node out of range");
  if (lower < 0 || upper < lower) throw InputError("BoundedFlow: bounds must satisfy 0 <= lower <= upper");
  arcs_.push_back({from, to, lower, upper});
  return arcs_.size() - 1;
}

bool BoundedFlow::solve(std::size_t source, std::size_t sink) {
  const std::size_t super_source = nodes_;
  const std::size_t super_sink = nodes_ + 1;
  Network net(nodes_ + 2);
  std::vector<long> excess(nodes_, 0);
  std::vector<Edge> handles;
  handles.reserve(arcs_.size());
  for (const auto& a : arcs_) {
    handles.push_back(net.add(a.from, a.to, a.upper - a.lower));
    excess[a.to] += a.lower;
    excess[a.from] -= a.lower;
  }
  net.add(sink, source, std::numeric_limits<long>::max() / 4);
  long demand = 0;
  for (std::size_t v = 0; v < nodes_; ++v) {
    if (excess[v] > 0) {
      net.add(super_source, v, excess[v]);
      demand += excess[v];
    } else if (excess[v] < 0) {
      net.add(v, super_sink, -excess[v]);
    }
  }
  const long value = boost::push_relabel_max_flow(net.g, super_source, super_sink);
  if (value != demand) {
    flows_.clear();
    return false;
  }
  flows_.resize(arcs_.size());
  for (std::size_t i = 0; i < arcs_.size(); ++i) flows_[i] = arcs_[i].lower + net.used(handles[i]);
  return true;
}

}  // namespace motzkin
