#include "gbn/dag.hpp"

#include <doctest.h>

using namespace gbn;

TEST_CASE("parse and print") {
    Dag g = parse_dag("n 4\n1 -> 2\n1 -> 3\n2 -> 4\n3 -> 4\n");
    CHECK(g.vertex_count() == 4);
    CHECK(g.edges() == std::vector<Edge>{{1, 2}, {1, 3}, {2, 4}, {3, 4}});
    CHECK(g.print() == "n 4\n1 -> 2\n1 -> 3\n2 -> 4\n3 -> 4\n");
    CHECK(g.parents(4) == std::vector<Vertex>{2, 3});
    CHECK(g.children(1) == std::vector<Vertex>{2, 3});

    CHECK(parse_dag("n 1\n").vertex_count() == 1);
    CHECK(parse_dag("# comment\nn 2\n1 -> 2  # edge\n").edges().size() == 1);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_dag("n 2\n1 -> 2\n2 -> 1\n"), GraphError);
    CHECK_THROWS_AS(parse_dag("n 2\n1 -> 3\n"), GraphError);
    CHECK_THROWS_AS(parse_dag("n 2\n1 -> 2\n1 -> 2\n"), GraphError);
    CHECK_THROWS_AS(parse_dag("1 -> 2\n"), GraphError);
    CHECK_THROWS_AS(parse_dag("n 2\n1 => 2\n"), GraphError);
}

TEST_CASE("normalization relabels only when needed") {
    Dag g = parse_dag("n 3\n3 -> 1\n1 -> 2\n");
    // 3 is the source: depths 3,1,2 -> relabel 3->1, 1->2, 2->3.
    CHECK(g.edges() == std::vector<Edge>{{1, 2}, {2, 3}});
    CHECK(g.label(1) == "3");
    CHECK(g.label(2) == "1");
    CHECK(g.label(3) == "2");

    Dag h = parse_dag("n 3\n1 -> 3\n2 -> 3\n");
    CHECK(h.label(1) == "1");
    CHECK(h.edges() == std::vector<Edge>{{1, 3}, {2, 3}});
}

TEST_CASE("induced subgraph") {
    Dag g = parse_dag("n 4\n1 -> 2\n1 -> 3\n2 -> 4\n3 -> 4\n");
    Dag s = induced_subgraph(g, {1, 2, 4});
    CHECK(s.vertex_count() == 3);
    CHECK(s.edges() == std::vector<Edge>{{1, 2}, {2, 3}});
    CHECK(s.label(3) == "4");

    CHECK(induced_subgraph(g, {}).vertex_count() == 0);

    Dag verma = parse_dag("n 5\n1 -> 3\n1 -> 5\n2 -> 3\n2 -> 4\n3 -> 4\n4 -> 5\n");
    Dag vs = induced_subgraph(verma, {2, 3, 4, 5});
    CHECK(vs.edges() == std::vector<Edge>{{1, 2}, {1, 3}, {2, 3}, {3, 4}});
    CHECK(vs.label(1) == "2");
    CHECK(vs.label(4) == "5");

    CHECK_THROWS_AS(induced_subgraph(g, {5}), GraphError);
}

TEST_CASE("classify") {
    StructureReport chain = classify(parse_dag("n 3\n1 -> 2\n2 -> 3\n"));
    CHECK(chain.is_tree);
    CHECK(chain.is_downward_directed);
    CHECK(chain.is_rooted_directed_tree);
    CHECK(chain.sinks == VertexSet{3});

    StructureReport cyc = classify(parse_dag("n 4\n1 -> 2\n1 -> 3\n2 -> 4\n3 -> 4\n"));
    CHECK_FALSE(cyc.is_tree);
    CHECK_FALSE(cyc.is_forest);

    StructureReport star = classify(parse_dag("n 4\n1 -> 2\n1 -> 3\n1 -> 4\n"));
    CHECK(star.is_rooted_directed_tree);
    CHECK(star.leaves == VertexSet{2, 3, 4});
    CHECK_FALSE(star.is_downward_directed);

    StructureReport forest = classify(parse_dag("n 4\n1 -> 2\n3 -> 4\n"));
    CHECK(forest.is_forest);
    CHECK_FALSE(forest.is_tree);
}

TEST_CASE("components after edge removal") {
    Dag chain = parse_dag("n 4\n1 -> 2\n2 -> 3\n3 -> 4\n");
    auto comps = components_after_edge_removal(chain, {2, 3});
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].vertex_count() == 2);
    CHECK(comps[1].vertex_count() == 2);
    CHECK(comps[0].label(1) == "1");
    CHECK(comps[1].label(1) == "3");
    CHECK_THROWS_AS(components_after_edge_removal(chain, {1, 3}), GraphError);
}

TEST_CASE("descendants") {
    Dag g = parse_dag("n 5\n1 -> 3\n1 -> 5\n2 -> 3\n2 -> 4\n3 -> 4\n4 -> 5\n");
    CHECK(descendants(g, 1) == VertexSet{3, 4, 5});
    CHECK(descendants(g, 4) == VertexSet{5});
    CHECK(descendants(g, 5) == VertexSet{});
}
