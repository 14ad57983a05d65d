#include <doctest.h>

#include <cstdio>
#include <fstream>

#include "hkcube/config.hpp"
#include "hkcube/zoo.hpp"
#include "support.hpp"

using namespace hkcube;

namespace {

std::string parse_message(const std::string& text) {
  try {
    parse_config(text);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  FAIL("expected a parse error");
  return {};
}

}  // namespace

TEST_CASE("builtin reference") {
  const auto s = parse_config("# comment\nsystem rotation:4\n");
  CHECK(s->size() == 4);
  CHECK(s->group().order() == 4);
  CHECK(s->act(1, 0) == 1);
}

TEST_CASE("explicit S3 acting regularly") {
  const auto s = parse_config("group perm 3\ngenerators (1 2) (1 2 3)\naction regular\nname my-s3\n");
  CHECK(s->size() == 6);
  CHECK(s->group().order() == 6);
  CHECK(s->name() == "my-s3");
  CHECK(is_minimal(*s));
}

TEST_CASE("table group with labels and coset action") {
  const auto s = parse_config(
      "group table 4\n"
      "0 1 2 3\n1 2 3 0\n2 3 0 1\n3 0 1 2\n"
      "labels e r r2 r3\n"
      "generators r\n"
      "action coset r2\n");
  CHECK(s->group().order() == 4);
  CHECK(s->size() == 2);
  CHECK(s->group().label(2) == "r2");
}

TEST_CASE("permutation action per generator") {
  const auto s = parse_config(
      "group builtin cyclic:4\n"
      "action perm 4\n"
      "(1 2 3 4)\n");
  CHECK(s->size() == 4);
  const auto t = parse_config("group builtin cyclic:2\naction perm 2\n[2 1]\n");
  CHECK(t->act(1, 0) == 1);
}

TEST_CASE("natural action via cycles for a permutation group") {
  const auto s = parse_config("group perm 4\ngenerators (1 2 3 4) (1 3)\naction perm 4\n(1 2 3 4)\n(1 3)\n");
  CHECK(s->group().order() == 8);
  CHECK(s->size() == 4);
}

TEST_CASE("malformed cycle reports its column") {
  const auto msg = parse_message("group perm 3\ngenerators (1 2\naction regular\n");
  CHECK(msg.find("line 2") != std::string::npos);
  CHECK(msg.find("column 12") != std::string::npos);
}

TEST_CASE("parse errors") {
  CHECK(parse_message("frobnicate 3\n").find("unknown directive") != std::string::npos);
  CHECK(parse_message("group perm 3\naction regular\n").find("generators") != std::string::npos);
  CHECK(parse_message("group perm 3\ngenerators (1 4)\naction regular\n").find("out of range") != std::string::npos);
  CHECK(parse_message("group perm 3\ngenerators (1 1)\naction regular\n").find("repeated") != std::string::npos);
  CHECK(parse_message("group table 2\n0 1\n").find("table ends") != std::string::npos);
  CHECK(parse_message("group table 2\n0 1\n1\n").find("line 3") != std::string::npos);
  CHECK(parse_message("group builtin cyclic:2\n").find("missing action") != std::string::npos);
  CHECK(parse_message("system s3\ngroup builtin cyclic:2\n").find("cannot be combined") != std::string::npos);
  CHECK(parse_message("group builtin cyclic:2\naction wobble\n").find("unknown action") != std::string::npos);
  CHECK(parse_message("group builtin cyclic:2\naction perm 2\n(1 2)\n(1 2)\n").find("one line per") != std::string::npos);
}

TEST_CASE("axiom failures surface as invalid systems") {
  // A transposition cannot represent a generator of order 3.
  const auto code = support::error_of([] { parse_config("group builtin cyclic:3\naction perm 3\n(1 2)\n"); });
  CHECK(code == ErrorCode::InvalidSystem);
  // Non-associative table.
  const auto tcode = support::error_of([] { parse_config("group table 2\n0 1\n1 1\naction regular\n"); });
  CHECK(tcode == ErrorCode::InvalidSystem);
}

TEST_CASE("cycles") {
  CHECK(parse_cycles("()", 3) == Perm{0, 1, 2});
  CHECK(parse_cycles("(1 2 3)(4 5)", 5) == Perm{1, 2, 0, 4, 3});
  CHECK(support::error_of([] { parse_cycles("(1 2", 3); }) == ErrorCode::ParseError);
  CHECK(support::error_of([] { parse_cycles("", 3); }) == ErrorCode::ParseError);
}

TEST_CASE("load_system prefers files") {
  const std::string path = "hkcube_test_config.txt";
  {
    std::ofstream f(path);
    f << "system heisenberg:2\n";
  }
  CHECK(load_system(path)->size() == 8);
  std::remove(path.c_str());
  CHECK(load_system("rotation:3")->size() == 3);
}
