// Distributed under the MIT License.
// See LICENSE.txt for details.

#include <catch_amalgamated.hpp>

#include <sstream>

#include "lts/time_grid.hpp"

using lts::Error;
using lts::ErrorKind;
using lts::make_rational;
using lts::BigInt;
using lts::Rational;

namespace {
template <typename F>
ErrorKind error_kind(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::InvalidArgument;
}

lts::BasicUnionGrid<Rational> two_to_one_example() {
  std::vector<lts::BasicStepSequence<Rational>> seqs{
      {0, {0, 1, 2, 3, 4}},
      {1, {0, 2, 3, 4, 6}},
  };
  return lts::merge_union(seqs);
}
}  // namespace

TEST_CASE("Tick conversion", "[time_grid]") {
  const auto t = lts::to_ticks(make_rational(-1, 8));
  CHECK(t.ticks == -(std::int64_t{1} << 37));
  CHECK(t.resolution_exponent == -40);
  CHECK(t.to_rational() == make_rational(-1, 8));
  CHECK(t.to_double() == -0.125);
  CHECK(lts::to_ticks(0.375).ticks == 3 * (std::int64_t{1} << 37));
  CHECK(lts::to_ticks(make_rational(3, 2), -1).ticks == 3);

  CHECK(error_kind([] { lts::to_ticks(make_rational(1, 3)); }) ==
        ErrorKind::NonRepresentable);
  CHECK(error_kind([] { lts::to_ticks(0.1); }) == ErrorKind::NonRepresentable);
  CHECK(error_kind([] { lts::to_ticks(make_rational(1, 4), -1); }) ==
        ErrorKind::NonRepresentable);
  CHECK(error_kind([] { lts::to_ticks(Rational(BigInt(1) << 30)); }) ==
        ErrorKind::NonRepresentable);
}

TEST_CASE("Tick comparison across resolutions", "[time_grid]") {
  const lts::TickTime coarse(3, -1);
  const lts::TickTime fine(6, -2);
  CHECK(coarse == fine);
  CHECK(lts::TickTime(7, -2) > coarse);
  CHECK(lts::TickTime(-1, -40) < lts::TickTime(0, -1));
}

TEST_CASE("Union index maps", "[time_grid]") {
  const auto grid = two_to_one_example();
  REQUIRE(grid.size() == 6);
  CHECK(grid.union_times() ==
        std::vector<Rational>{0, 1, 2, 3, 4, 6});
  CHECK(grid.m_map(0) == std::vector<std::size_t>{0, 1, 2, 3, 4, 4});
  CHECK(grid.m_map(1) == std::vector<std::size_t>{0, 0, 1, 2, 3, 4});
  CHECK(grid.n_map(0) == std::vector<std::size_t>{0, 1, 2, 3, 4});
  CHECK(grid.n_map(1) == std::vector<std::size_t>{0, 2, 3, 4, 5});
  CHECK(*grid.n_of(1, 2) == 3);
  CHECK_FALSE(grid.n_of(1, 5).has_value());
  CHECK(grid.evaluates(1, 0));
  CHECK_FALSE(grid.evaluates(1, 1));
  CHECK(grid.evaluates(5, 1));
  CHECK_FALSE(grid.evaluates(5, 0));
  CHECK(grid.set_index(1) == 1);
  CHECK(error_kind([&] { grid.set_index(7); }) == ErrorKind::UnknownSet);

  const auto [m_map, n_map] = lts::index_maps(grid, 0);
  CHECK(m_map == grid.m_map(0));
  CHECK(n_map == grid.n_map(0));
}

TEST_CASE("Index maps of an irregular pattern", "[time_grid]") {
  std::vector<lts::BasicStepSequence<Rational>> seqs{
      {0, {0, 2, 3, 4}},
      {1, {0, 1, 4}},
  };
  const auto grid = lts::merge_union(seqs);
  CHECK(grid.m_map(0) == std::vector<std::size_t>{0, 0, 1, 2, 3});
  CHECK(grid.m_map(1) == std::vector<std::size_t>{0, 1, 1, 1, 2});
  CHECK(*grid.n_of(0, 3) == 4);
  CHECK(*grid.n_of(1, 2) == 4);
}

TEST_CASE("Union validation", "[time_grid]") {
  using Seq = lts::BasicStepSequence<Rational>;
  CHECK(error_kind([] {
          lts::merge_union(std::vector<Seq>{{0, {0, 1}}, {1, {1, 2}}});
        }) == ErrorKind::UnsynchronizedStart);
  CHECK(error_kind([] {
          lts::merge_union(std::vector<Seq>{{0, {0, 2, 1}}});
        }) == ErrorKind::NonMonotonic);
  CHECK(error_kind([] {
          lts::merge_union(std::vector<Seq>{{0, {0, 1, 1}}});
        }) == ErrorKind::NonMonotonic);
  CHECK(error_kind([] {
          lts::merge_union(std::vector<Seq>{{0, {0, 1}}, {0, {0, 2}}});
        }) == ErrorKind::InvalidArgument);
  CHECK(error_kind([] { lts::merge_union(std::vector<Seq>{}); }) ==
        ErrorKind::InvalidArgument);
}

TEST_CASE("Sequence text round trip", "[time_grid]") {
  std::vector<lts::StepSequence> seqs{
      {0, {lts::TickTime(0, -3), lts::TickTime(16, -3)}},
      {1, {lts::TickTime(0, -3), lts::TickTime(8, -3), lts::TickTime(16, -3)}},
  };
  std::ostringstream out;
  lts::write_sequences(out, seqs);
  CHECK(out.str() == "resolution_exponent -3\n0 16\n0 8 16\n");
  std::istringstream in("# comment\n" + out.str());
  const auto back = lts::read_sequences(in);
  REQUIRE(back.size() == 2);
  CHECK(back[1].set_id == 1);
  CHECK(back[1].times == seqs[1].times);

  std::istringstream bad("resolution_exponent -3\n0 x\n");
  CHECK(error_kind([&] { lts::read_sequences(bad); }) ==
        ErrorKind::ParseError);
  std::istringstream headerless("0 1 2\n");
  CHECK(error_kind([&] { lts::read_sequences(headerless); }) ==
        ErrorKind::ParseError);
}
