#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "covpack/generators.hpp"
#include "covpack/instance.hpp"
#include "covpack/instance_io.hpp"

using namespace covpack;

namespace {

NormalizedInstance make_norm(Index n, Index m, std::vector<Entry> entries) {
  return NormalizedInstance(SparseNonNegMatrix(n, m, std::move(entries)));
}

// A = [[1, 2], [3, 0]] as a running example: column sums 4 and 2, row sums
// 3 and 3.
NormalizedInstance example_2x2() {
  return make_norm(2, 2, {{0, 0, 1.0}, {0, 1, 2.0}, {1, 0, 3.0}});
}

}  // namespace

TEST_CASE("matrix construction validates and indexes") {
  SparseNonNegMatrix a(2, 3, {{1, 2, 5.0}, {0, 0, 1.0}, {0, 2, 2.0}});
  CHECK(a.rows() == 2);
  CHECK(a.cols() == 3);
  CHECK(a.nnz() == 3);
  // sorted (row, col)
  CHECK(a.entries()[0] == Entry{0, 0, 1.0});
  CHECK(a.entries()[2] == Entry{1, 2, 5.0});
  CHECK(a.row(0).size() == 2);
  CHECK(a.row(1).size() == 1);
  CHECK(a.col(1).size() == 0);
  CHECK(a.col(2).size() == 2);
  CHECK(a.col(2)[0].index == 0);
  CHECK(a.col(2)[1].index == 1);

  CHECK_THROWS_AS(SparseNonNegMatrix(1, 1, {{0, 0, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseNonNegMatrix(1, 1, {{0, 0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseNonNegMatrix(1, 1, {{0, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(SparseNonNegMatrix(1, 1, {{0, 0, 1.0}, {0, 0, 2.0}}), std::invalid_argument);
}

TEST_CASE("row and column views carry the same entry multiset") {
  NormalizedInstance inst = gen_random_rs(20, 15, 4, 3.0, 99);
  const SparseNonNegMatrix& a = inst.matrix();
  std::vector<Entry> from_rows, from_cols;
  for (Index i = 0; i < a.rows(); ++i) {
    for (const Incidence& inc : a.row(i)) from_rows.push_back({i, inc.index, inc.value});
  }
  for (Index j = 0; j < a.cols(); ++j) {
    for (const Incidence& inc : a.col(j)) from_cols.push_back({inc.index, j, inc.value});
  }
  auto key = [](const Entry& e) { return std::pair<Index, Index>(e.row, e.col); };
  std::sort(from_rows.begin(), from_rows.end(),
            [&](const Entry& a_, const Entry& b_) { return key(a_) < key(b_); });
  std::sort(from_cols.begin(), from_cols.end(),
            [&](const Entry& a_, const Entry& b_) { return key(a_) < key(b_); });
  CHECK(from_rows == from_cols);
  CHECK(from_rows == a.entries());
}

TEST_CASE("gamma and a_max") {
  NormalizedInstance unit = make_norm(1, 1, {{0, 0, 1.0}});
  CHECK(gamma_p(unit) == 1.0);
  CHECK(gamma_d(unit) == 1.0);
  CHECK(a_max(unit) == 1.0);

  NormalizedInstance two = make_norm(1, 1, {{0, 0, 2.0}});
  CHECK(gamma_p(two) == 2.0);
  CHECK(gamma_d(two) == 2.0);
  CHECK(a_max(two) == 2.0);

  NormalizedInstance ex = example_2x2();
  CHECK(gamma_p(ex) == 4.0);
  CHECK(gamma_d(ex) == 3.0);
  CHECK(a_max(ex) == 3.0);

  // Entry-free instance: zero rows are allowed, a_max defaults to 1.
  NormalizedInstance empty{SparseNonNegMatrix(0, 3, {})};
  CHECK(gamma_p(empty) == 0.0);
  CHECK(gamma_d(empty) == 0.0);
  CHECK(a_max(empty) == 1.0);
}

TEST_CASE("cached stats equal recomputation") {
  for (std::uint64_t seed : {1ull, 2ull, 3ull, 4ull}) {
    NormalizedInstance inst = gen_random_rs(12, 9, 3, 4.0, seed);
    CHECK(inst.stats() == compute_stats(inst.matrix()));
  }
}

TEST_CASE("normalized construction rejects rows without entries") {
  CHECK_THROWS_WITH_AS(make_norm(2, 2, {{0, 0, 1.0}}),
                       doctest::Contains("row 1"), std::invalid_argument);
  CHECK_THROWS_AS(make_norm(1, 1, {{0, 0, 0.5}}), std::invalid_argument);
  // boundary snap: 1 - 1e-13 becomes exactly 1
  NormalizedInstance snapped = make_norm(1, 1, {{0, 0, 1.0 - 1e-13}});
  CHECK(snapped.matrix().entries()[0].value == 1.0);
}

TEST_CASE("parse: normalized example") {
  auto parsed = parse_instance("fcp normalized 1 1\n0 0 2\n");
  REQUIRE(std::holds_alternative<NormalizedInstance>(parsed));
  const auto& inst = std::get<NormalizedInstance>(parsed);
  CHECK(inst.matrix().entries() == std::vector<Entry>{{0, 0, 2.0}});
}

TEST_CASE("parse: general instance with comments") {
  const char* text =
      "# demo\n"
      "fcp general 2 2\n"
      "b 1 0.5\n"
      "c 2 0   # zero cost column\n"
      "0 0 1.5\n"
      "1 1 3\n";
  auto parsed = parse_instance(text);
  REQUIRE(std::holds_alternative<GeneralInstance>(parsed));
  const auto& g = std::get<GeneralInstance>(parsed);
  CHECK(g.b[1] == 0.5);
  CHECK(g.c[0] == 2.0);
  CHECK(g.matrix.nnz() == 2);
}

TEST_CASE("parse errors carry line numbers") {
  const auto line_of = [](const char* text) {
    try {
      parse_instance(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("fcp normalized 1 1\n0 0 -1\n") == 2);
  CHECK(line_of("fcp normalized 1 1\n0 0 1\n0 0 2\n") == 3);
  CHECK(line_of("fcp normalized 1 1\n0 0 0.5\n") == 2);
  CHECK(line_of("fcp normalized 1 1\n0 0 0\n") == 2);
  CHECK(line_of("fcp normalized 1 1\n0 1 1\n") == 2);
  CHECK(line_of("fcp normalized 1 1\n0 0\n") == 2);
  CHECK(line_of("fcp bogus 1 1\n") == 1);
  CHECK(line_of("") == 1);
  CHECK(line_of("fcp general 1 1\nc 1\n") == 2);  // b must come first
}

TEST_CASE("serialize round trips") {
  NormalizedInstance two = make_norm(1, 1, {{0, 0, 2.0}});
  auto back = parse_instance(serialize_instance(two));
  CHECK(std::get<NormalizedInstance>(back) == two);

  // awkward values survive the shortest-round-trip printer
  NormalizedInstance odd = make_norm(2, 2, {{0, 0, 1.0 + 1e-15}, {1, 1, 1e300}, {1, 0, 3.141592653589793}});
  auto odd_back = parse_instance(serialize_instance(odd));
  CHECK(std::get<NormalizedInstance>(odd_back) == odd);

  for (std::uint64_t seed : {7ull, 8ull, 9ull}) {
    NormalizedInstance inst = gen_random_rs(10, 10, 3, 4.0, seed);
    auto rt = parse_instance(serialize_instance(inst));
    CHECK(std::get<NormalizedInstance>(rt) == inst);
  }

  GeneralInstance g(SparseNonNegMatrix(2, 2, {{0, 0, 0.3}, {1, 1, 7.25}}),
                    Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(0.125, 2.0));
  auto g_back = parse_instance(serialize_instance(g));
  CHECK(std::get<GeneralInstance>(g_back) == g);

  NormalizedInstance empty{SparseNonNegMatrix(0, 0, {})};
  CHECK(serialize_instance(empty) == "fcp normalized 0 0\n");
}

TEST_CASE("gen_random_rs: forced shape and determinism") {
  NormalizedInstance forced = gen_random_rs(1, 1, 1, 1.0, 42);
  CHECK(forced.matrix().entries() == std::vector<Entry>{{0, 0, 1.0}});

  CHECK(gen_random_rs(30, 20, 4, 3.5, 5) == gen_random_rs(30, 20, 4, 3.5, 5));
  CHECK_FALSE(gen_random_rs(30, 20, 4, 3.5, 5) == gen_random_rs(30, 20, 4, 3.5, 6));

  CHECK_THROWS_AS(gen_random_rs(0, 1, 1, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_rs(1, 1, 2, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(gen_random_rs(1, 1, 1, 0.5, 0), std::invalid_argument);
}

TEST_CASE("gen_random_rs: sparsity and width invariants") {
  NormalizedInstance inst = gen_random_rs(50, 50, 3, 4.0, 7);
  const SparseNonNegMatrix& a = inst.matrix();
  for (Index i = 0; i < a.rows(); ++i) {
    CHECK(a.row(i).size() >= 1);
    CHECK(a.row(i).size() <= 3);
    for (const Incidence& inc : a.row(i)) {
      CHECK(inc.value >= 1.0);
      CHECK(inc.value <= 4.0);
    }
  }
  CHECK(gamma_p(inst) >= a_max(inst));
  CHECK(gamma_d(inst) >= a_max(inst));
  CHECK(gamma_d(inst) <= 3 * a_max(inst) * (1.0 + 1e-12));
}

TEST_CASE("gen_vertex_cover_lp") {
  NormalizedInstance single = gen_vertex_cover_lp({{0, 1}});
  CHECK(single.matrix().rows() == 1);
  CHECK(single.matrix().cols() == 2);
  CHECK(single.matrix().entries() == std::vector<Entry>{{0, 0, 1.0}, {0, 1, 1.0}});

  NormalizedInstance triangle = gen_vertex_cover_lp({{0, 1}, {0, 2}, {1, 2}});
  CHECK(triangle.matrix().rows() == 3);
  CHECK(triangle.matrix().cols() == 3);
  for (Index i = 0; i < 3; ++i) {
    CHECK(triangle.matrix().row(i).size() == 2);
    for (const Incidence& inc : triangle.matrix().row(i)) CHECK(inc.value == 1.0);
  }

  CHECK_THROWS_AS(gen_vertex_cover_lp({{1, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(gen_vertex_cover_lp({{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("gen_set_cover") {
  NormalizedInstance unit = gen_set_cover(1, {{0}});
  CHECK(unit.matrix().entries() == std::vector<Entry>{{0, 0, 1.0}});

  NormalizedInstance multi = gen_set_cover(2, {{0}, {1}, {0, 1}});
  CHECK(multi.matrix().rows() == 2);
  CHECK(multi.matrix().cols() == 3);
  CHECK(multi.matrix().nnz() == 4);
  for (const Entry& e : multi.matrix().entries()) CHECK(e.value == 1.0);

  CHECK_THROWS_AS(gen_set_cover(2, {{0}}), std::invalid_argument);  // element 1 uncovered
  CHECK_THROWS_AS(gen_set_cover(1, {{0, 5}}), std::invalid_argument);
}
