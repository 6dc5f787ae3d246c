#include <doctest.h>

#include "tropbn/graph.hpp"

using namespace tropbn;

TEST_CASE("make_chain produces the documented geometric lengths") {
  ChainOfLoops c = make_chain(2, Rational(2), Rational(1));
  CHECK(c.g == 2);
  CHECK(c.n == std::vector<Rational>{Rational(4), Rational(2), Rational(1)});
  CHECK(c.l == std::vector<Rational>{Rational(1, 2), Rational(1, 8)});
  CHECK(c.m == std::vector<Rational>{Rational(1, 4), Rational(1, 16)});
  CHECK(is_admissible(c));
  CHECK(is_admissible(c, Rational(2)));
  CHECK_FALSE(is_admissible(c, Rational(3)));
}

TEST_CASE("make_chain degenerate genus one") {
  ChainOfLoops c = make_chain(1, Rational(2), Rational(1));
  CHECK(c.n == std::vector<Rational>{Rational(2), Rational(1)});
  CHECK(c.l == std::vector<Rational>{Rational(1, 2)});
  CHECK(c.m == std::vector<Rational>{Rational(1, 4)});
  CHECK(is_admissible(c));
  CHECK(c.edge_count() == 4);
}

TEST_CASE("make_chain validates arguments") {
  CHECK_THROWS_AS(make_chain(0, Rational(2), Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(make_chain(2, Rational(1), Rational(1)), std::invalid_argument);
  CHECK_THROWS_AS(make_chain(2, Rational(2), Rational(0)), std::invalid_argument);
}

TEST_CASE("edge ids round trip through strings") {
  EdgeId b{EdgeKind::bridge, 3};
  EdgeId t{EdgeKind::loop_top, 1};
  EdgeId m{EdgeKind::loop_bottom, 22};
  CHECK(edge_id_from_string(edge_id_string(b)) == b);
  CHECK(edge_id_from_string(edge_id_string(t)) == t);
  CHECK(edge_id_from_string(edge_id_string(m)) == m);
  CHECK_THROWS_AS(edge_id_from_string("nonsense"), std::invalid_argument);
}

TEST_CASE("edge indexing is a bijection") {
  ChainOfLoops c = make_chain(3, Rational(2), Rational(1));
  CHECK(c.edge_count() == 10);
  for (int i = 0; i < c.edge_count(); ++i) CHECK(c.edge_index(c.edge_at(i)) == i);
}

TEST_CASE("chain json round trip") {
  ChainOfLoops c = make_chain(2, Rational(2), Rational(1));
  json j = c.to_json();
  CHECK(j["genus"] == 2);
  CHECK(j["F"] == "2");
  ChainOfLoops c2 = ChainOfLoops::from_json(j);
  CHECK(c2.to_json() == j);
}

TEST_CASE("canonicalization maps loop endpoints to bridge vertices") {
  ChainOfLoops c = make_chain(2, Rational(2), Rational(1));
  GraphPoint top_start{{EdgeKind::loop_top, 1}, Rational(0)};
  GraphPoint bottom_end{{EdgeKind::loop_bottom, 1}, c.m[0]};
  CHECK(canonicalize(top_start, c) == vertex_v(1, c));
  CHECK(canonicalize(bottom_end, c) == vertex_w(1, c));
  GraphPoint bridge_end{{EdgeKind::bridge, 1}, c.n[0]};
  CHECK(canonicalize(bridge_end, c) == vertex_v(1, c));
  GraphPoint interior{{EdgeKind::loop_top, 2}, c.l[1] / 2};
  CHECK(canonicalize(interior, c) == interior);
  CHECK(is_canonical(interior, c));
  CHECK_FALSE(is_canonical(top_start, c));
}

TEST_CASE("canonicalization is idempotent") {
  ChainOfLoops c = make_chain(3, Rational(2), Rational(1));
  std::vector<GraphPoint> pts;
  for (int i = 0; i < c.edge_count(); ++i) {
    EdgeId e = c.edge_at(i);
    Rational len = c.edge_length(e);
    pts.push_back({e, Rational(0)});
    pts.push_back({e, len});
    pts.push_back({e, len / 3});
  }
  for (const auto& p : pts) {
    GraphPoint q = canonicalize(p, c);
    CHECK(canonicalize(q, c) == q);
    CHECK(is_canonical(q, c));
  }
}

TEST_CASE("canonicalization rejects out-of-range offsets") {
  ChainOfLoops c = make_chain(2, Rational(2), Rational(1));
  CHECK_THROWS_AS(canonicalize({{EdgeKind::bridge, 1}, Rational(-1)}, c), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize({{EdgeKind::loop_top, 1}, Rational(2)}, c), std::invalid_argument);
}

TEST_CASE("loop points and ccw coordinates") {
  ChainOfLoops c = make_chain(2, Rational(2), Rational(1));
  // Loop 1: bottom length 1/4, top length 1/2, circumference 3/4.
  CHECK(loop_point(1, Rational(0), c) == vertex_v(1, c));
  CHECK(loop_point(1, c.m[0], c) == vertex_w(1, c));
  GraphPoint p = loop_point(1, Rational(1, 8), c);
  CHECK(p.edge.kind == EdgeKind::loop_bottom);
  CHECK(p.offset == Rational(1, 8));
  // Past w_1 the point climbs the top edge toward v_1; offsets measure from v_1.
  GraphPoint q = loop_point(1, Rational(1, 2), c);
  CHECK(q.edge.kind == EdgeKind::loop_top);
  CHECK(q.offset == Rational(1, 4));
  // Coordinates invert loop_point, including the wrap-around.
  CHECK(loop_coordinate(1, p, c) == Rational(1, 8));
  CHECK(loop_coordinate(1, q, c) == Rational(1, 2));
  CHECK(loop_coordinate(1, vertex_v(1, c), c) == Rational(0));
  CHECK(loop_coordinate(1, vertex_w(1, c), c) == c.m[0]);
  CHECK(loop_point(1, Rational(3, 4), c) == vertex_v(1, c));
  CHECK(loop_point(1, Rational(-1, 4), c) == loop_point(1, Rational(1, 2), c));
  CHECK_FALSE(loop_coordinate(1, vertex_w(0, c), c).has_value());
  CHECK_FALSE(loop_coordinate(2, p, c).has_value());
}

TEST_CASE("outgoing tangents at vertices and interior points") {
  ChainOfLoops c = make_chain(2, Rational(2), Rational(1));
  CHECK(outgoing_tangents(vertex_w(0, c), c).size() == 1);
  CHECK(outgoing_tangents(vertex_v(3, c), c).size() == 1);
  CHECK(outgoing_tangents(vertex_v(1, c), c).size() == 3);
  CHECK(outgoing_tangents(vertex_w(1, c), c).size() == 3);
  GraphPoint mid{{EdgeKind::bridge, 2}, Rational(1)};
  CHECK(outgoing_tangents(mid, c).size() == 2);
}
