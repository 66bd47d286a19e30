#include <doctest.h>

#include <stdexcept>

#include "treepack/packing.hpp"
#include "treepack/verify.hpp"

using namespace treepack;

namespace {

TreeFamily ladder4() {
  return TreeFamily({tree_from_edge_list(2, {{0, 1}}), tree_from_edge_list(3, {{0, 1}, {1, 2}}),
                     tree_from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}})});
}

Graph k4() {
  return Graph::from_edge_list(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

Packing good() {
  Packing p;
  p.k = 4;
  p.colors[4] = {make_edge(0, 1), make_edge(0, 2), make_edge(0, 3)};
  p.colors[3] = {make_edge(1, 2), make_edge(2, 3)};
  p.colors[2] = {make_edge(1, 3)};
  return p;
}

bool has_kind(const VerifyReport& r, ViolationKind k) {
  for (const Violation& v : r.violations)
    if (v.kind == k) return true;
  return false;
}

}  // namespace

TEST_CASE("a correct perfect packing verifies") {
  VerifyReport r = verify_packing(k4(), ladder4(), good());
  CHECK(r.ok);
  CHECK(good().colored_edge_count() == 6);
}

TEST_CASE("edge absent from the host is flagged") {
  Graph c4 = Graph::from_edge_list(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  Packing p;
  p.k = 3;
  p.colors[3] = {make_edge(0, 1), make_edge(0, 2)};  // 0-2 is a chord, not in C_4
  p.colors[2] = {make_edge(2, 3)};
  TreeFamily fam({tree_from_edge_list(2, {{0, 1}}), tree_from_edge_list(3, {{0, 1}, {1, 2}})});
  VerifyReport r = verify_packing(c4, fam, p);
  CHECK_FALSE(r.ok);
  CHECK(has_kind(r, ViolationKind::MISSING_EDGE));
}

TEST_CASE("an edge used by two colors is flagged") {
  Packing p = good();
  p.colors[2] = {make_edge(0, 1)};  // already in color 4
  VerifyReport r = verify_packing(k4(), ladder4(), p);
  CHECK_FALSE(r.ok);
  CHECK(has_kind(r, ViolationKind::DOUBLE_COLOR));
}

TEST_CASE("wrong shape is flagged") {
  Packing p = good();
  // color 4 must be a star; give it a path instead
  p.colors[4] = {make_edge(0, 1), make_edge(1, 2), make_edge(2, 3)};
  p.colors[3] = {make_edge(0, 2), make_edge(0, 3)};
  p.colors[2] = {make_edge(1, 3)};
  VerifyReport r = verify_packing(k4(), ladder4(), p);
  CHECK_FALSE(r.ok);
  CHECK(has_kind(r, ViolationKind::SHAPE_MISMATCH));
}

TEST_CASE("disconnected color class is a shape violation") {
  Packing p = good();
  p.colors[3] = {make_edge(1, 2), make_edge(0, 3)};
  p.colors[4] = {make_edge(0, 1), make_edge(0, 2), make_edge(1, 3)};  // also wrong shape
  VerifyReport r = verify_packing(k4(), ladder4(), p);
  CHECK_FALSE(r.ok);
  CHECK(has_kind(r, ViolationKind::SHAPE_MISMATCH));
}

TEST_CASE("color index outside the family range is flagged") {
  Packing p = good();
  p.colors[7] = {make_edge(1, 2)};
  VerifyReport r = verify_packing(k4(), ladder4(), p);
  CHECK_FALSE(r.ok);
  CHECK(has_kind(r, ViolationKind::BAD_COLOR_INDEX));
}

TEST_CASE("missing color class is a shape violation") {
  Packing p = good();
  p.colors.erase(2);
  VerifyReport r = verify_packing(k4(), ladder4(), p);
  CHECK_FALSE(r.ok);
  CHECK(has_kind(r, ViolationKind::SHAPE_MISMATCH));
}

TEST_CASE("packing json and dot output") {
  Packing p = good();
  Packing back = packing_from_json(packing_to_json(p));
  CHECK(back.k == p.k);
  CHECK(back.colors == p.colors);
  std::string dot = packing_to_dot(k4(), p);
  CHECK(dot.find("graph") != std::string::npos);
  CHECK(dot.find("0 -- 1") != std::string::npos);
  std::string rep = report_to_json(verify_packing(k4(), ladder4(), p));
  CHECK(rep.find("\"ok\":true") != std::string::npos);
}
