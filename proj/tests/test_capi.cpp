#include <doctest.h>

#include <string>

#include "graphbandit/graphbandit.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  gb_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("capi: parse, inspect, serialize") {
  gb_graph* g = nullptr;
  char* err = nullptr;
  REQUIRE(gb_graph_parse("3\n0 1\n1 2\n2 0\n", &g, &err) == GB_OK);
  CHECK(gb_graph_vertex_count(g) == 3);
  CHECK(gb_graph_edge_count(g) == 3);
  char* text = nullptr;
  REQUIRE(gb_graph_serialize(g, &text, &err) == GB_OK);
  CHECK(take(text) == "3\n0 1\n1 2\n2 0\n");
  gb_graph_free(g);
}

TEST_CASE("capi: parse errors carry a message and the bad-input status") {
  gb_graph* g = nullptr;
  char* err = nullptr;
  CHECK(gb_graph_parse("2\n0 9\n", &g, &err) == GB_ERROR_BAD_INPUT);
  const std::string message = take(err);
  CHECK(message.find("out of range") != std::string::npos);
}

TEST_CASE("capi: named graphs and params JSON") {
  gb_graph* g = nullptr;
  char* err = nullptr;
  REQUIRE(gb_graph_named("figure1", &g, &err) == GB_OK);
  char* json = nullptr;
  REQUIRE(gb_params_json(g, &json, &err) == GB_OK);
  const std::string payload = take(json);
  CHECK(payload.find("\"delta\": 2") != std::string::npos);
  CHECK(payload.find("\"observability\": \"weakly_observable\"") != std::string::npos);
  gb_graph_free(g);

  CHECK(gb_graph_named("no_such_graph", &g, &err) == GB_ERROR_BAD_INPUT);
  take(err);
}

TEST_CASE("capi: round JSON") {
  gb_graph* g = nullptr;
  char* err = nullptr;
  REQUIRE(gb_graph_named("directed_cycle:6", &g, &err) == GB_OK);
  char* json = nullptr;
  REQUIRE(gb_round_json(g, &json, &err) == GB_OK);
  CHECK(take(json).find("\"one_packing\"") != std::string::npos);
  gb_graph_free(g);
}

TEST_CASE("capi: run CSV is deterministic and env errors surface") {
  gb_graph* g = nullptr;
  char* err = nullptr;
  REQUIRE(gb_graph_named("dominated_matching:2", &g, &err) == GB_OK);

  char* a = nullptr;
  char* b = nullptr;
  REQUIRE(gb_run_csv(g, "hard:S=1;3,j=3,eps=0.2", 40, 2, 5, &a, &err) == GB_OK);
  REQUIRE(gb_run_csv(g, "hard:S=1;3,j=3,eps=0.2", 40, 2, 5, &b, &err) == GB_OK);
  CHECK(take(a) == take(b));

  char* out = nullptr;
  CHECK(gb_run_csv(g, "mystery:1", 40, 2, 5, &out, &err) == GB_ERROR_BAD_INPUT);
  CHECK(take(err).find("unknown environment kind") != std::string::npos);
  gb_graph_free(g);
}

TEST_CASE("capi: version string") {
  CHECK(std::string(gb_version()).find('.') != std::string::npos);
}
