#include <doctest.h>

#include "tropbn/plfunc.hpp"

using namespace tropbn;

namespace {

using BPs = std::vector<Breakpoint>;

std::shared_ptr<const ChainOfLoops> chain1() {
  static auto c = std::make_shared<const ChainOfLoops>(make_chain(1, Rational(2), Rational(1)));
  return c;
}

// Edge assignment helper: unmentioned edges become constant `fill`.
struct Builder {
  std::shared_ptr<const ChainOfLoops> c;
  std::vector<std::vector<Breakpoint>> edges;
  explicit Builder(std::shared_ptr<const ChainOfLoops> chain, const Rational& fill = 0)
      : c(std::move(chain)), edges(c->edge_count()) {
    for (int i = 0; i < c->edge_count(); ++i)
      edges[i] = {{Rational(0), fill}, {c->edge_length(c->edge_at(i)), fill}};
  }
  Builder& set(EdgeKind k, int idx, BPs b) {
    edges[c->edge_index({k, idx})] = std::move(b);
    return *this;
  }
  PLFunction done() { return PLFunction(c, std::move(edges)); }
};

// Climbs the first loop from v_1 (value 0) to w_1 (value m_1) at slope 1 on
// the bottom; the top edge stays flat then climbs at slope 1.
PLFunction loop_climber() {
  auto c = chain1();
  return Builder(c)
      .set(EdgeKind::loop_bottom, 1, {{Rational(0), Rational(0)}, {Rational(1, 4), Rational(1, 4)}})
      .set(EdgeKind::loop_top, 1,
           {{Rational(0), Rational(0)}, {Rational(1, 4), Rational(0)}, {Rational(1, 2), Rational(1, 4)}})
      .set(EdgeKind::bridge, 2, {{Rational(0), Rational(1, 4)}, {Rational(1), Rational(1, 4)}})
      .done();
}

}  // namespace

TEST_CASE("constant functions have empty principal divisors") {
  auto c = chain1();
  PLFunction f = PLFunction::constant(c, Rational(5, 3));
  CHECK(f.eval(vertex_w(0, *c)) == Rational(5, 3));
  CHECK(f.eval({{EdgeKind::loop_top, 1}, Rational(1, 3)}) == Rational(5, 3));
  CHECK(principal_divisor(f).points().empty());
}

TEST_CASE("construction validates shape, slopes and continuity") {
  auto c = chain1();
  CHECK_THROWS_AS(Builder(c).set(EdgeKind::bridge, 1, {{Rational(0), Rational(0)}}).done(),
                  std::invalid_argument);
  // Missing the right endpoint.
  CHECK_THROWS_AS(
      Builder(c).set(EdgeKind::bridge, 1, {{Rational(0), Rational(0)}, {Rational(1), Rational(0)}}).done(),
      std::invalid_argument);
  // Slope 1/2 is not an integer.
  CHECK_THROWS_AS(
      Builder(c).set(EdgeKind::bridge, 1, {{Rational(0), Rational(0)}, {Rational(2), Rational(1)}}).done(),
      std::invalid_argument);
  // Value jump at v_1.
  CHECK_THROWS_AS(
      Builder(c).set(EdgeKind::bridge, 1, {{Rational(0), Rational(0)}, {Rational(2), Rational(2)}}).done(),
      std::invalid_argument);
}

TEST_CASE("redundant breakpoints are canonicalized away") {
  auto c = chain1();
  PLFunction f = Builder(c)
                     .set(EdgeKind::bridge, 1,
                          {{Rational(0), Rational(0)},
                           {Rational(1), Rational(0)},
                           {Rational(2), Rational(0)}})
                     .done();
  CHECK(f.edge_breakpoints({EdgeKind::bridge, 1}).size() == 2);
  CHECK(f == PLFunction::constant(c, Rational(0)));
}

TEST_CASE("evaluation interpolates exactly") {
  PLFunction u = loop_climber();
  CHECK(u.eval({{EdgeKind::loop_bottom, 1}, Rational(1, 8)}) == Rational(1, 8));
  CHECK(u.eval({{EdgeKind::loop_top, 1}, Rational(3, 8)}) == Rational(1, 8));
  CHECK(u.eval({{EdgeKind::loop_top, 1}, Rational(1, 8)}) == Rational(0));
  // Vertex aliases agree by continuity.
  auto c = chain1();
  CHECK(u.eval(vertex_w(1, *c)) == Rational(1, 4));
  CHECK(u.eval({{EdgeKind::loop_top, 1}, Rational(1, 2)}) == Rational(1, 4));
  CHECK(u.eval({{EdgeKind::bridge, 2}, Rational(0)}) == Rational(1, 4));
}

TEST_CASE("slopes along tangent directions") {
  PLFunction u = loop_climber();
  auto c = chain1();
  GraphPoint v1 = vertex_v(1, *c);
  for (const auto& t : outgoing_tangents(v1, *c)) {
    long s = u.slope_along(t);
    if (t.edge.kind == EdgeKind::loop_bottom)
      CHECK(s == 1);
    else
      CHECK(s == 0);
  }
  GraphPoint w1 = vertex_w(1, *c);
  for (const auto& t : outgoing_tangents(w1, *c)) {
    long s = u.slope_along(t);
    if (t.edge.kind == EdgeKind::bridge)
      CHECK(s == 0);
    else
      CHECK(s == -1);
  }
}

TEST_CASE("orders sum incoming slopes") {
  auto c = chain1();
  // Slope 3 then -5 on the first bridge; constant elsewhere.
  PLFunction f = Builder(c, Rational(-2))
                     .set(EdgeKind::bridge, 1,
                          {{Rational(0), Rational(0)},
                           {Rational(1), Rational(3)},
                           {Rational(2), Rational(-2)}})
                     .done();
  CHECK(f.ord_at({{EdgeKind::bridge, 1}, Rational(1)}) == 8);
  CHECK(f.ord_at(vertex_w(0, *c)) == -3);
  CHECK(f.ord_at(vertex_v(1, *c)) == -5);
  CHECK(f.ord_at({{EdgeKind::bridge, 1}, Rational(1, 2)}) == 0);
  Divisor div = principal_divisor(f);
  CHECK(div.degree() == 0);
  CHECK(div.multiplicity({{EdgeKind::bridge, 1}, Rational(1)}) == 8);
}

TEST_CASE("loop climber has the expected principal divisor") {
  PLFunction u = loop_climber();
  auto c = chain1();
  Divisor div = principal_divisor(u);
  CHECK(div.degree() == 0);
  CHECK(div.multiplicity(vertex_v(1, *c)) == -1);
  CHECK(div.multiplicity(vertex_w(1, *c)) == 2);
  CHECK(div.multiplicity({{EdgeKind::loop_top, 1}, Rational(1, 4)}) == -1);
}

TEST_CASE("principal divisors ignore constants") {
  PLFunction u = loop_climber();
  CHECK(principal_divisor(u + Rational(7, 3)) == principal_divisor(u));
}

TEST_CASE("sections of a divisor") {
  PLFunction u = loop_climber();
  auto c = chain1();
  Divisor D(c);
  D.add(vertex_v(1, *c), 1);
  D.add({{EdgeKind::loop_top, 1}, Rational(1, 4)}, 1);
  CHECK(is_section(u, D));
  Divisor small(c);
  small.add(vertex_v(1, *c), 1);
  CHECK_FALSE(is_section(u, small));
  CHECK(is_section(PLFunction::constant(c, Rational(0)), D));
}

TEST_CASE("pointwise sums and differences") {
  PLFunction u = loop_climber();
  auto c = chain1();
  PLFunction two_u = u + u;
  CHECK(two_u.eval(vertex_w(1, *c)) == Rational(1, 2));
  PLFunction zero = u - u;
  CHECK(zero == PLFunction::constant(c, Rational(0)));
  CHECK((u + Rational(1)).eval(vertex_v(1, *c)) == Rational(1));
}

TEST_CASE("tropical combinations take exact minima") {
  auto c = chain1();
  PLFunction u = loop_climber();
  PLFunction h = PLFunction::constant(c, Rational(1, 8));
  PLFunction mn = tropical_combination_value({u, h}, {Rational(0), Rational(0)});
  CHECK(mn.eval(vertex_v(1, *c)) == Rational(0));
  CHECK(mn.eval(vertex_w(1, *c)) == Rational(1, 8));
  CHECK(mn.eval({{EdgeKind::loop_bottom, 1}, Rational(1, 16)}) == Rational(1, 16));
  // Commutative, idempotent, associative.
  CHECK(tropical_combination_value({h, u}, {Rational(0), Rational(0)}) == mn);
  CHECK(tropical_combination_value({u, u}, {Rational(0), Rational(0)}) == u);
  PLFunction v = PLFunction::constant(c, Rational(1, 16));
  PLFunction left = tropical_combination_value({mn, v}, {Rational(0), Rational(0)});
  PLFunction flat = tropical_combination_value({u, h, v}, {Rational(0), Rational(0), Rational(0)});
  CHECK(left == flat);
  // Coefficients shift before the min.
  PLFunction shifted = tropical_combination_value({u, h}, {Rational(1), Rational(0)});
  CHECK(shifted.eval(vertex_v(1, *c)) == Rational(1, 8));
  CHECK_THROWS_AS(tropical_combination_value(std::vector<PLFunction>{}, {}), std::invalid_argument);
}

TEST_CASE("sections are closed under minima and constants") {
  auto c = chain1();
  PLFunction u = loop_climber();
  Divisor D(c);
  D.add(vertex_v(1, *c), 1);
  D.add({{EdgeKind::loop_top, 1}, Rational(1, 4)}, 1);
  PLFunction z = PLFunction::constant(c, Rational(0));
  REQUIRE(is_section(u, D));
  REQUIRE(is_section(z, D));
  CHECK(is_section(tropical_combination_value({u, z}, {Rational(0), Rational(0)}), D));
  CHECK(is_section(tropical_combination_value({u, z}, {Rational(-1, 3), Rational(2)}), D));
  CHECK(is_section(u + Rational(9, 7), D));
}

TEST_CASE("edge envelopes report coincidence sets") {
  auto c = chain1();
  PLFunction u = loop_climber();
  PLFunction h = PLFunction::constant(c, Rational(1, 8));
  std::vector<const PLFunction*> fs{&u, &u, &h};
  std::vector<Rational> cs{Rational(0), Rational(0), Rational(0)};
  auto pieces = edge_envelope({EdgeKind::loop_bottom, 1}, fs, cs);
  REQUIRE(pieces.size() == 2);
  CHECK(pieces[0].a == Rational(0));
  CHECK(pieces[0].b == Rational(1, 8));
  CHECK(pieces[0].ids == std::vector<int>{0, 1});
  CHECK(pieces[1].b == Rational(1, 4));
  CHECK(pieces[1].ids == std::vector<int>{2});
  CHECK(pieces[0].vb == pieces[1].va);
}

TEST_CASE("function json round trip") {
  PLFunction u = loop_climber();
  json j = u.to_json();
  CHECK(j["edges"].contains("bridge-1"));
  PLFunction back = PLFunction::from_json(j, u.chain());
  CHECK(back == u);
}

TEST_CASE("divisor json round trip and arithmetic") {
  auto c = chain1();
  Divisor D(c);
  D.add(vertex_v(1, *c), 2);
  D.add({{EdgeKind::loop_bottom, 1}, Rational(1, 8)}, 1);
  D.add(vertex_v(1, *c), -1);
  CHECK(D.degree() == 2);
  CHECK(D.multiplicity(vertex_v(1, *c)) == 1);
  // Alias of v_1 on the loop top.
  CHECK(D.multiplicity({{EdgeKind::loop_top, 1}, Rational(0)}) == 1);
  Divisor back = Divisor::from_json(D.to_json(), c);
  CHECK(back == D);
  Divisor sum = D;
  sum += D.scaled(-1);
  CHECK(sum.points().empty());
  CHECK(D.scaled(3).degree() == 6);
  CHECK(D.is_effective());
  CHECK_FALSE(D.scaled(-1).is_effective());
}

TEST_CASE("break divisor coordinates") {
  auto c = std::make_shared<const ChainOfLoops>(make_chain(2, Rational(2), Rational(1)));
  Divisor D(c);
  D.add(vertex_w(0, *c), 2);
  D.add({{EdgeKind::loop_bottom, 1}, Rational(1, 8)}, 1);
  D.add({{EdgeKind::loop_top, 2}, Rational(1, 16)}, 1);
  auto xs = break_divisor_coordinates(D, 4);
  REQUIRE(xs.size() == 2);
  CHECK(xs[0] == Rational(1, 8));
  // Top-edge offsets count clockwise from v_2: x = circumference - offset.
  CHECK(xs[1] == Rational(1, 8));

  // Vertices attribute to their loop.
  Divisor E(c);
  E.add(vertex_w(0, *c), 2);
  E.add(vertex_v(1, *c), 1);
  E.add(vertex_w(2, *c), 1);
  auto ys = break_divisor_coordinates(E, 4);
  CHECK(ys[0] == Rational(0));
  CHECK(ys[1] == c->m[1]);

  SUBCASE("degree mismatch") { CHECK_THROWS_AS(break_divisor_coordinates(D, 5), std::invalid_argument); }
  SUBCASE("bridge interior point") {
    Divisor B = D;
    B.add({{EdgeKind::bridge, 2}, Rational(1)}, 1);
    CHECK_THROWS_AS(break_divisor_coordinates(B, 5), std::invalid_argument);
  }
  SUBCASE("doubled loop point") {
    Divisor B = D;
    B.add({{EdgeKind::loop_bottom, 1}, Rational(1, 16)}, 1);
    CHECK_THROWS_AS(break_divisor_coordinates(B, 5), std::invalid_argument);
  }
  SUBCASE("wrong end multiplicity") {
    Divisor B(c);
    B.add(vertex_w(0, *c), 3);
    B.add({{EdgeKind::loop_bottom, 1}, Rational(1, 8)}, 1);
    CHECK_THROWS_AS(break_divisor_coordinates(B, 4), std::invalid_argument);
  }
  SUBCASE("point at the far endpoint") {
    Divisor B(c);
    B.add(vertex_w(0, *c), 2);
    B.add({{EdgeKind::loop_bottom, 1}, Rational(1, 8)}, 1);
    B.add(vertex_v(3, *c), 1);
    CHECK_THROWS_AS(break_divisor_coordinates(B, 4), std::invalid_argument);
  }
}

TEST_CASE("degree equal to genus needs no endpoint mass") {
  auto c = std::make_shared<const ChainOfLoops>(make_chain(2, Rational(2), Rational(1)));
  Divisor D(c);
  D.add({{EdgeKind::loop_bottom, 1}, Rational(1, 8)}, 1);
  D.add(vertex_v(2, *c), 1);
  auto xs = break_divisor_coordinates(D, 2);
  CHECK(xs[0] == Rational(1, 8));
  CHECK(xs[1] == Rational(0));
}
