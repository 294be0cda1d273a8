#include "orbikink/groupoid.hpp"

#include "orbikink/errors.hpp"

namespace orbikink {

namespace {

void require_basepoints(const LeafyDualGraph& g, const Walk& f) {
  if (!g.is_basepoint(f.start) || !g.is_basepoint(f.finish)) {
    throw InputError("walk endpoints must be boundary-segment vertices");
  }
}

}  // namespace

Walk loop_generator(const LeafyDualGraph& g, VertexId u, std::string_view v, const Walk& c) {
  const SelfFoldedCluster& k = g.cluster(v);
  if (!g.is_basepoint(u)) throw InputError("generator base must be a boundary-segment vertex");
  if (c.start != u || c.finish != k.v) throw InputError("c must run from the base to the self-folded triangle");
  const Walk core = standard_form(g.graph, k.v, std::vector<EdgeId>{k.eta1, k.eta2});
  return compose(compose(c, core), invert(c));
}

bool orbifold_equal(const LeafyDualGraph& g, const Walk& f, const Walk& h) {
  require_basepoints(g, f);
  require_basepoints(g, h);
  if (f.start != h.start || f.finish != h.finish) throw InputError("walks do not share endpoints");
  return normalize(g, compose(invert(h), f)).is_identity();
}

bool is_order_two(const LeafyDualGraph& g, const Walk& f) {
  require_basepoints(g, f);
  if (!f.is_loop()) throw InputError("order-two test needs a loop");
  const Walk nf = normalize(g, f);
  if (nf.is_identity()) return false;
  return normalize(g, compose(nf, nf)).is_identity();
}

Walk iota(const LeafyDualGraph& g, const Walk& f) {
  require_basepoints(g, f);
  const Walk nf = normalize(g, f);
  if (nf.is_loop() && !nf.is_identity() && normalize(g, compose(nf, nf)).is_identity()) throw OrderTwoClass();
  return nf;
}

std::array<Walk, 2> order_two_representatives(const LeafyDualGraph& g, const Walk& f) {
  if (!is_order_two(g, f)) throw InputError("walk does not have order two");
  const Walk nf = normalize(g, f);
  return {nf, invert(nf)};
}

ClosedWalkClass iota_free(const LeafyDualGraph& g, const ClosedWalkClass& f) {
  return unoriented(g.graph, normalize(g, f));
}

OrbifoldClass::OrbifoldClass(std::shared_ptr<const LeafyDualGraph> g, Walk representative)
    : state_(std::make_shared<State>()) {
  require_basepoints(*g, representative);
  state_->graph = std::move(g);
  state_->rep = std::move(representative);
}

const Walk& OrbifoldClass::normal_form() const {
  std::call_once(state_->once, [this] { state_->nf = normalize(*state_->graph, state_->rep); });
  return state_->nf;
}

bool operator==(const OrbifoldClass& a, const OrbifoldClass& b) {
  const Walk& x = a.representative();
  const Walk& y = b.representative();
  if (x.start != y.start || x.finish != y.finish) return false;
  if (a.normal_form() == b.normal_form()) return true;
  // Order-two classes have two kink-free representatives.
  return normalize(*a.state_->graph, compose(invert(b.normal_form()), a.normal_form())).is_identity();
}

}  // namespace orbikink
