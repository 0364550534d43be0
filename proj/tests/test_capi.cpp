#include <doctest.h>

#include <cstring>
#include <string>

#include <json.hpp>

#include "glh/glh.h"

namespace {

const std::string kFixtures = GLH_FIXTURE_DIR;

std::string fixture(const char* rel) { return kFixtures + "/" + rel; }

}  // namespace

TEST_CASE("status strings and version") {
  CHECK(std::string(glh_version()) == "0.1.0");
  CHECK(std::string(glh_status_string(GLH_ERR_PARSE)) == "parse error");
  const glh_options o = glh_default_options();
  CHECK(o.tol == 1e-9);
  CHECK(o.seed == 0);
}

TEST_CASE("element round trip through JSON") {
  glh_element* x = nullptr;
  glh_element* y = nullptr;
  glh_element* p = nullptr;
  REQUIRE(glh_element_parse(R"({"terms": [{"mono": [1], "re": 2}]})", 3, &x) == GLH_OK);
  REQUIRE(glh_element_parse(R"({"terms": [{"mono": [2], "re": 1}]})", 3, &y) == GLH_OK);
  REQUIRE(glh_element_mul(x, y, &p) == GLH_OK);
  const auto j = nlohmann::json::parse(glh_element_to_json(p));
  CHECK(j["terms"][0]["mono"] == nlohmann::json::array({1, 2}));
  CHECK(j["terms"][0]["re"] == 2.0);
  CHECK(glh_element_generators(p) == 3);

  glh_element* bad = nullptr;
  CHECK(glh_element_inv(x, &bad) == GLH_ERR_PARITY);
  CHECK(bad == nullptr);
  CHECK(std::strlen(glh_last_error()) > 0);
  glh_element_free(x);
  glh_element_free(y);
  glh_element_free(p);
}

TEST_CASE("parse errors name the field") {
  glh_element* x = nullptr;
  CHECK(glh_element_parse(R"({"terms": [{"mono": [9], "re": 1}]})", 3, &x) == GLH_ERR_PARSE);
  CHECK(std::string(glh_last_error()).find("terms[0]") != std::string::npos);
  CHECK(glh_element_parse("{", 3, &x) == GLH_ERR_PARSE);
}

TEST_CASE("commands through the C interface") {
  const glh_options o = glh_default_options();
  glh_report* r = nullptr;
  REQUIRE(glh_group_selftest(&o, 10, 4, 0, &r) == GLH_OK);
  CHECK(glh_report_passed(r) == 1);
  CHECK(glh_report_check_count(r) > 0);
  const auto j = nlohmann::json::parse(glh_report_json(r));
  CHECK(j["passed"] == true);
  glh_report_free(r);

  REQUIRE(glh_group_selftest(&o, 10, 4, 1, &r) == GLH_OK);
  CHECK(glh_report_passed(r) == 0);
  bool found = false;
  for (size_t i = 0; i < glh_report_check_count(r); ++i) {
    if (std::string(glh_report_check_name(r, i)) == "product_law") {
      found = true;
      CHECK(glh_report_check_passed(r, i) == 0);
      CHECK(glh_report_check_residual(r, i) > 0.0);
    } else {
      CHECK(glh_report_check_passed(r, i) == 1);
    }
  }
  CHECK(found);
  glh_report_free(r);

  const std::string nerve = fixture("cech/nerve_genus1.json");
  const std::string broken = fixture("cech/genus1_cocycle_broken.json");
  REQUIRE(glh_cech_verify(&o, nerve.c_str(), broken.c_str(), nullptr, &r) == GLH_OK);
  CHECK(glh_report_passed(r) == 0);
  CHECK(std::string(glh_report_text(r)).find("FAIL cocycle.h_identity") != std::string::npos);
  glh_report_free(r);

  CHECK(glh_cech_verify(&o, "/nonexistent.json", broken.c_str(), nullptr, &r) == GLH_ERR_PARSE);
  CHECK(r == nullptr);
  CHECK(glh_gaudin_commute(&o, nullptr, 1, &r) == GLH_ERR_DOMAIN);
  CHECK(glh_group_selftest(&o, 1, 4, 0, nullptr) == GLH_ERR_ARGUMENT);
}

TEST_CASE("reports are deterministic for a fixed seed") {
  glh_options o = glh_default_options();
  o.seed = 9;
  glh_report* a = nullptr;
  glh_report* b = nullptr;
  REQUIRE(glh_garnier_check(&o, nullptr, 3, &a) == GLH_OK);
  REQUIRE(glh_garnier_check(&o, nullptr, 3, &b) == GLH_OK);
  CHECK(std::string(glh_report_json(a)) == std::string(glh_report_json(b)));
  glh_report_free(a);
  glh_report_free(b);
}
