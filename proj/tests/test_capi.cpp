// Exercises the shared library through its C header only.
#include <doctest.h>
#include <json.hpp>

#include <cstring>
#include <string>

#include "spinor_forge.h"

namespace {

using nlohmann::json;

// Takes ownership of a returned string.
json take_json(char* s) {
  REQUIRE(s != nullptr);
  json j = json::parse(s);
  sf_string_free(s);
  return j;
}

std::string take(char* s) {
  std::string out = s ? s : "";
  sf_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::strlen(sf_version()) > 0);
  CHECK(std::string(sf_status_name(SF_OK)) == "ok");
  CHECK(std::string(sf_status_name(SF_ERR_SINGULAR_MATRIX)) == "singular_matrix");
  sf_string_free(nullptr);
  sf_spinor_free(nullptr);
  sf_matrix_free(nullptr);
}

TEST_CASE("spinor handles and classification") {
  sf_spinor* psi = nullptr;
  REQUIRE(sf_spinor_from_json(R"({"spinor": [[1,0],[0,0],[1,0],[0,0]]})", SF_MODE_EXACT, &psi) == SF_OK);
  CHECK(sf_spinor_mode(psi) == SF_MODE_EXACT);
  int cls = 0;
  CHECK(sf_classify(psi, 1e-9, &cls) == SF_OK);
  CHECK(cls == 3);
  char* out = nullptr;
  REQUIRE(sf_classify_json(psi, 1e-9, &out) == SF_OK);
  const json c = take_json(out);
  CHECK(c["class"] == 3);
  CHECK(c["singular"] == false);
  REQUIRE(sf_bilinears_json(psi, &out) == SF_OK);
  const json b = take_json(out);
  CHECK(b["sigma"] == "2/1");
  int pass = 0;
  REQUIRE(sf_fpk_json(psi, 0.0, &out, &pass) == SF_OK);
  CHECK(pass == 1);
  CHECK(take_json(out)["max_residual"] == "0/1");
  REQUIRE(sf_spinor_to_json(psi, &out) == SF_OK);
  CHECK(take_json(out)["spinor"][2][0] == "1/1");
  sf_spinor_free(psi);

  sf_spinor* f = nullptr;
  REQUIRE(sf_spinor_from_json("[[1,0],[0,0],[0,0],[1.0,0]]", SF_MODE_FLOAT, &f) == SF_OK);
  CHECK(sf_spinor_mode(f) == SF_MODE_FLOAT);
  CHECK(sf_classify(f, 1e-9, &cls) == SF_OK);
  CHECK(cls == 5);
  sf_spinor_free(f);
}

TEST_CASE("errors are reported through status and last_error") {
  sf_spinor* psi = nullptr;
  CHECK(sf_spinor_from_json("[[1,0],", SF_MODE_EXACT, &psi) == SF_ERR_PARSE);
  CHECK(psi == nullptr);
  CHECK(std::string(sf_last_error()).find("line") != std::string::npos);

  REQUIRE(sf_spinor_from_json("[[0,0],[0,0],[0,0],[0,0]]", SF_MODE_EXACT, &psi) == SF_OK);
  int cls = 0;
  CHECK(sf_classify(psi, 1e-9, &cls) == SF_ERR_ZERO_CURRENT);
  sf_spinor_free(psi);

  CHECK(sf_classify(nullptr, 1e-9, &cls) == SF_ERR_INVALID_ARGUMENT);
  CHECK(sf_sample(0, 1, &psi) == SF_ERR_INVALID_ARGUMENT);
}

TEST_CASE("sampling") {
  for (int cls = 1; cls <= 6; ++cls) {
    sf_spinor* psi = nullptr;
    REQUIRE(sf_sample(cls, 5, &psi) == SF_OK);
    int got = 0;
    CHECK(sf_classify(psi, 1e-9, &got) == SF_OK);
    CHECK(got == cls);
    sf_spinor_free(psi);
  }
  char* out = nullptr;
  REQUIRE(sf_sample_report(2, 1, 4, 1, &out) == SF_OK);
  const std::string csv = take(out);
  CHECK(csv.rfind("index,", 0) == 0);
  REQUIRE(sf_sample_report(2, 1, 4, 0, &out) == SF_OK);
  CHECK(take_json(out)["spinors"].size() == 4);

  sf_spinor* r = nullptr;
  REQUIRE(sf_spinor_random(9, &r) == SF_OK);
  int pass = 0;
  REQUIRE(sf_fpk_json(r, 0.0, &out, &pass) == SF_OK);
  sf_string_free(out);
  CHECK(pass == 1);
  sf_spinor_free(r);
}

TEST_CASE("candidates") {
  sf_matrix* g5 = nullptr;
  REQUIRE(sf_matrix_named("gamma5", SF_MODE_EXACT, &g5) == SF_OK);
  char* out = nullptr;
  REQUIRE(sf_beta_extract_json(g5, 1e-10, &out) == SF_OK);
  const json bm = take_json(out);
  CHECK(bm["strict"] == true);
  CHECK(bm["beta_scalar"] == "-1/1");

  const int classes[] = {1, 6};
  int pass = 0;
  REQUIRE(sf_symmetry_check_json(g5, classes, 2, 20, 1, 1e-10, 1e-9, &out, &pass) == SF_OK);
  const json rep = take_json(out);
  CHECK(pass == 1);
  CHECK(rep["class_checks"].size() == 2);

  sf_matrix* sq = nullptr;
  REQUIRE(sf_compose(g5, g5, &sq) == SF_OK);
  REQUIRE(sf_matrix_to_json(sq, &out) == SF_OK);
  const json m = take_json(out);
  CHECK(m["matrix"][0] == json::array({"1/1", "0/1"}));
  CHECK(m["matrix"][1] == json::array({"0/1", "0/1"}));
  REQUIRE(sf_compose_json(g5, g5, 1e-10, &out, &pass) == SF_OK);
  sf_string_free(out);
  CHECK(pass == 1);

  sf_matrix* proj = nullptr;
  REQUIRE(sf_matrix_from_json(R"([[1,0,0,0],[0,1,0,0],[0,0,0,0],[0,0,0,0]])", SF_MODE_EXACT, &proj) == SF_OK);
  sf_matrix* inv = nullptr;
  CHECK(sf_inverse(proj, &inv) == SF_ERR_SINGULAR_MATRIX);
  CHECK(inv == nullptr);
  CHECK(sf_beta_extract_json(proj, 1e-10, &out) == SF_ERR_NOT_A_SYMMETRY);
  CHECK(sf_inverse_json(proj, 1e-10, &out, &pass) == SF_ERR_SINGULAR_MATRIX);

  REQUIRE(sf_inverse(g5, &inv) == SF_OK);
  REQUIRE(sf_matrix_set_antilinear(inv, 1) == SF_OK);
  REQUIRE(sf_matrix_to_json(inv, &out) == SF_OK);
  CHECK(take_json(out)["antilinear"] == true);

  sf_matrix* neg = nullptr;
  REQUIRE(sf_matrix_named("-identity", SF_MODE_EXACT, &neg) == SF_OK);
  const sf_matrix* gens[] = {g5, neg};
  REQUIRE(sf_group_check_json(gens, 2, 4, 1e-10, &out, &pass) == SF_OK);
  CHECK(take_json(out)["order"] == 4);
  CHECK(pass == 1);

  sf_matrix* fl = nullptr;
  REQUIRE(sf_matrix_named("gamma0", SF_MODE_FLOAT, &fl) == SF_OK);
  CHECK(sf_matrix_mode(fl) == SF_MODE_FLOAT);
  CHECK(sf_compose(g5, fl, &sq) == SF_ERR_INVALID_ARGUMENT);

  for (auto* h : {g5, sq, proj, inv, neg, fl}) sf_matrix_free(h);
}

TEST_CASE("dynamics") {
  char* summary = nullptr;
  char* csv = nullptr;
  char* svg = nullptr;
  int pass = 0;
  REQUIRE(sf_evolve(R"({"t_end": 0.2, "dt": 0.01, "plot": true})", &summary, &csv, &svg, &pass) == SF_OK);
  CHECK(pass == 1);
  CHECK(take_json(summary)["pass"] == true);
  CHECK(take(csv).rfind("t,rho", 0) == 0);
  CHECK(take(svg).rfind("<svg", 0) == 0);

  REQUIRE(sf_exotic_evolve(R"({"kappa": 0.3, "t_end": 0.5})", &summary, &csv, nullptr, &pass) == SF_OK);
  CHECK(pass == 1);
  CHECK(take_json(summary)["normalized_rate_mean"].get<double>() == doctest::Approx(0.3).epsilon(1e-6));
  sf_string_free(csv);

  CHECK(sf_evolve("{\"momentum\": [1, 0, 0, 2]}", &summary, &csv, nullptr, &pass) == SF_ERR_OFF_SHELL);

  const double p[4] = {1, 0, 0, 1};
  double worst = 1.0;
  REQUIRE(sf_liouville_check(p, 0.0, 0, 100, 1e-6, &worst, &pass) == SF_OK);
  CHECK(worst <= 1e-6);
  CHECK(pass == 1);
  REQUIRE(sf_liouville_check(p, 0.0, 3, 100, 1e-6, &worst, &pass) == SF_OK);
  CHECK(pass == 1);
  const double pm[4] = {2, 0, 0, 1};
  CHECK(sf_liouville_check(pm, 1.7320508075688772, 0, 10, 1e-6, &worst, &pass) == SF_ERR_MASSIVE_INPUT);
}
