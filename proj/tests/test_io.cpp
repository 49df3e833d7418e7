#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "core/fan.hpp"
#include "io/commands.hpp"
#include "io/svg.hpp"
#include "tropcycle.h"

using namespace trop;

namespace {

Cycle std_line() {
  // min-plus line of min(x, y, 0)
  QVec o{Rat(0), Rat(0)};
  auto ray = [&](const Rat& a, const Rat& b) {
    return Polyhedron::cone_from_rays(2, {{a, b}});
  };
  return make_cycle(2, 1,
                    {{ray(1, 0), 1}, {ray(0, 1), 1}, {ray(-1, -1), 1}});
}

Fan p2_fan() {
  return make_fan(2, {{1, 0}, {0, 1}, {-1, -1}},
                  {{}, {0}, {1}, {2}, {0, 1}, {1, 2}, {0, 2}});
}

Json run_ok(const std::string& cmd, const Json& req, int expect_code = 0) {
  Json resp;
  int code = run_command(cmd, req, resp);
  CHECK(code == expect_code);
  if (expect_code == 0) CHECK(resp.at("status") == "ok");
  return resp;
}

Json input(const std::string& name, const Json& doc) {
  return Json{{"name", name}, {"doc", doc}};
}

}  // namespace

TEST_CASE("json round trips") {
  SUBCASE("rationals") {
    for (const char* s : {"0", "1", "-7", "2/3", "-22/7"}) {
      Rat r = rat_from_json(Json(s));
      CHECK(rat_to_json(r) == Json(s));
    }
    CHECK(rat_from_json(rat_to_json(parse_rat("4/6"))) == Rat(2, 3));
  }
  SUBCASE("plain numbers are rejected") {
    CHECK_THROWS_AS(rat_from_json(Json(3)), IoError);
    CHECK_THROWS_AS(rat_from_json(Json(1.5)), IoError);
    Json cell = {{"poly", {{"dim", 1}, {"ineqs", {{1, 0}}}}}, {"weight", "1"}};
    Json doc = {{"ambient", 1}, {"dim", 1}, {"cells", {cell}}};
    CHECK_THROWS_AS(cycle_from_json(doc), IoError);
  }
  SUBCASE("cycle") {
    Cycle s = std_line();
    Json j = cycle_to_json(s);
    CHECK(cycle_equal(cycle_from_json(j), s));
    CHECK(cycle_to_json(cycle_from_json(j)) == j);
    CHECK(Json::parse(dump_canonical(j)) == j);
  }
  SUBCASE("fan") {
    Fan d = p2_fan();
    Json j = fan_to_json(d);
    Fan back = fan_from_json(j);
    CHECK(back.rays == d.rays);
    CHECK(back.cones == d.cones);
    CHECK(fan_to_json(back) == j);
  }
  SUBCASE("polynomial") {
    TropicalPolynomial f = make_polynomial(
        2, {{{2, 0}, Rat(1)}, {{1, 1}, Rat(0)}, {{0, 0}, Rat(1, 2)}});
    Json j = polynomial_to_json(f);
    CHECK(polynomial_to_json(polynomial_from_json(j)) == j);
  }
  SUBCASE("minkowski weight") {
    Fan d = p2_fan();
    MinkowskiWeight c = make_minkowski_weight(
        d, 1, {{d.index_of({0}), 1}, {d.index_of({1}), 1}, {d.index_of({2}), 1}});
    Json j = mw_to_json(c);
    MinkowskiWeight back = mw_from_json(j);
    CHECK(back.codim == 1);
    CHECK(mw_to_json(back) == j);
  }
  SUBCASE("stratified cycle") {
    Fan d = p2_fan();
    StratifiedCycle sc;
    sc.components[d.index_of({})] = std_line();
    sc.components[d.index_of({0})] =
        make_cycle(1, 0, {{Polyhedron::point({Rat(2)}), 3}});
    Json j = stratified_to_json(sc, d);
    StratifiedCycle back = stratified_from_json(j, d);
    CHECK(back.components.size() == 2);
    CHECK(stratified_to_json(back, d) == j);
    // component must live in the stratum frame
    Json bad = j;
    bad["components"][0]["tau"] = {0};
    CHECK_THROWS_AS(stratified_from_json(bad, d), IoError);
  }
}

TEST_CASE("validate command") {
  Json line = cycle_to_json(std_line());
  Json resp = run_ok("validate", Json{{"inputs", {input("c", line)}}});
  CHECK(resp["payload"]["all_pass"] == true);

  // unbalanced pair of rays
  Json bad = cycle_to_json(make_cycle(
      2, 1,
      {{Polyhedron::cone_from_rays(2, {{Rat(1), Rat(0)}}), 1},
       {Polyhedron::cone_from_rays(2, {{Rat(0), Rat(1)}}), 1}}));
  resp = run_ok("validate", Json{{"inputs", {input("c", bad)}}});
  CHECK(resp["payload"]["all_pass"] == false);
  bool saw_balance_fail = false;
  for (const auto& chk : resp["payload"]["report"][0]["checks"])
    if (chk["name"] == "balanced" && chk["pass"] == false) saw_balance_fail = true;
  CHECK(saw_balance_fail);

  // fan missing a face
  Json badfan{{"ambient", 2},
              {"rays", Json::array({Json::array({"1", "0"}), Json::array({"0", "1"})})},
              {"cones", {Json::array(), {0, 1}}}};
  resp = run_ok("validate", Json{{"inputs", {input("f", badfan)}}});
  CHECK(resp["payload"]["all_pass"] == false);

  // malformed document is an input error
  Json resp2;
  CHECK(run_command("validate", Json{{"inputs", {input("x", Json{{"cells", "zap"}})}}},
                    resp2) == 2);
}

TEST_CASE("stable-intersect command") {
  Json xaxis = cycle_to_json(
      make_cycle(2, 1, {{Polyhedron(2, {}, {{{Rat(0), Rat(1)}, Rat(0)}}), 1}}));
  Json yaxis = cycle_to_json(
      make_cycle(2, 1, {{Polyhedron(2, {}, {{{Rat(1), Rat(0)}, Rat(0)}}), 1}}));
  Json req{{"inputs", {input("a", xaxis), input("b", yaxis)}},
           {"options", {{"degree", true}}}};
  Json resp = run_ok("stable-intersect", req);
  CHECK(resp["payload"]["degree"] == "1");
  CHECK(resp["payload"]["cycle"]["cells"].size() == 1);

  // only one input is an input error
  Json resp2;
  CHECK(run_command("stable-intersect", Json{{"inputs", {input("a", xaxis)}}}, resp2) == 2);

  // witness off the intersection support
  req["options"]["component"] = {"5", "5"};
  CHECK(run_command("stable-intersect", req, resp2) == 2);
}

TEST_CASE("hypersurface and mw commands") {
  Json line_poly{{"ambient", 2},
                 {"terms",
                  {{{"exp", {"1", "0"}}, {"val", "0"}},
                   {{"exp", {"0", "1"}}, {"val", "0"}},
                   {{"exp", {"0", "0"}}, {"val", "0"}}}}};
  Json resp = run_ok("hypersurface", Json{{"inputs", {input("f", line_poly)}}});
  CHECK(cycle_equal(cycle_from_json(resp["payload"]["cycle"]), std_line()));

  // a single term has empty corner locus: input error
  Json single{{"ambient", 2}, {"terms", {{{"exp", {"1", "0"}}, {"val", "0"}}}}};
  Json resp2;
  CHECK(run_command("hypersurface", Json{{"inputs", {input("f", single)}}}, resp2) == 2);

  // line * line on the projective plane fan
  Json mwline = mw_to_json(make_minkowski_weight(
      p2_fan(), 1,
      {{p2_fan().index_of({0}), 1}, {p2_fan().index_of({1}), 1}, {p2_fan().index_of({2}), 1}}));
  Json req{{"inputs", {input("a", mwline), input("b", mwline)}},
           {"options", {{"op", "product"}}}};
  resp = run_ok("mw", req);
  Json dreq{{"inputs", {input("a", resp["payload"])}}, {"options", {{"op", "degree"}}}};
  resp = run_ok("mw", dreq);
  CHECK(resp["payload"]["degree"] == "1");

  // weights on different fans
  Fan sq = make_fan(2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}},
                    {{}, {0}, {1}, {2}, {3}, {0, 1}, {1, 2}, {2, 3}, {0, 3}});
  Json other = mw_to_json(make_minkowski_weight(
      sq, 1,
      {{sq.index_of({0}), 1}, {sq.index_of({1}), 1}, {sq.index_of({2}), 1},
       {sq.index_of({3}), 1}}));
  Json bad{{"inputs", {input("a", mwline), input("b", other)}},
           {"options", {{"op", "product"}}}};
  CHECK(run_command("mw", bad, resp2) == 2);
}

TEST_CASE("plot command is deterministic") {
  Json line = cycle_to_json(std_line());
  Json req{{"inputs", {input("c", line)}}, {"options", {{"bbox", {"-2", "-2", "2", "2"}}}}};
  Json a = run_ok("plot", req);
  Json b = run_ok("plot", req);
  std::string svg = a["payload"]["svg"].get<std::string>();
  CHECK(svg == b["payload"]["svg"].get<std::string>());
  CHECK(svg.find("<svg") == 0);
  CHECK(svg.find(">1</text>") != std::string::npos);
  CHECK(svg.find("class=\"c0\"") != std::string::npos);

  Json solid = cycle_to_json(make_cycle(2, 2, {{Polyhedron::full_space(2), 1}}));
  Json resp2;
  CHECK(run_command("plot", Json{{"inputs", {input("c", solid)}}}, resp2) == 2);

  Json in3d = cycle_to_json(
      make_cycle(3, 1, {{Polyhedron::cone_from_rays(3, {{Rat(1), Rat(0), Rat(0)}}), 1}}));
  CHECK(run_command("plot", Json{{"inputs", {input("c", in3d)}}}, resp2) == 2);
}

TEST_CASE("examples fixtures reproduce their expected numbers") {
  Json resp2;
  CHECK(run_command("examples",
                    Json{{"options", {{"name", "no-such-fixture"}}}}, resp2) == 2);

  Json ex = run_ok("examples", Json{{"options", {{"name", "selfinter-ex"}}}});
  const Json& files = ex["payload"]["files"];
  Cycle conic = tropical_hypersurface(polynomial_from_json(files.at("conic.json")));
  Cycle line = tropical_hypersurface(polynomial_from_json(files.at("line.json")));
  QVec witness = qvec_from_json(files.at("expected.json").at("component_witness"), 2);
  Cycle comp = restrict_to_component(stable_intersect(conic, line), {conic, line}, witness);
  CHECK(degree(comp).get_str() ==
        files.at("expected.json").at("stable_degree_at_component").get<std::string>());
  MinkowskiWeight c22 = mw_from_json(files.at("class_2_2.json"));
  MinkowskiWeight c11 = mw_from_json(files.at("class_1_1.json"));
  CHECK(mw_degree(mw_product(c22, c11)).get_str() ==
        files.at("expected.json").at("mw_product_degree").get<std::string>());

  Json tp3 = run_ok("examples", Json{{"options", {{"name", "tp3"}}}});
  const Json& tf = tp3["payload"]["files"];
  // the incompatible plane is rejected by the compactified command ...
  Json creq{{"inputs",
             {input("gamma", tf.at("gamma.json")), input("s", tf.at("f_plane.json")),
              input("fan", tf.at("fan.json"))}}};
  CHECK(run_command("compactified", creq, resp2) == 3);
  // ... and its number is the plain stable intersection with the line
  Cycle l3 = cycle_from_json(tf.at("line.json"));
  Cycle fpl = cycle_from_json(tf.at("f_plane.json"));
  CHECK(degree(stable_intersect(l3, fpl)).get_str() ==
        tf.at("expected.json").at("stable_degree_line_f_plane").get<std::string>());
  Json sreq{{"inputs",
             {input("gamma", tf.at("gamma.json")), input("s", tf.at("f_skeleton.json")),
              input("fan", tf.at("fan.json"))}}};
  Json sresp = run_ok("compactified", sreq);
  CHECK(sresp["payload"]["total_degree"] ==
        tf.at("expected.json").at("total_degree_f_skeleton"));

  Json bz = run_ok("examples", Json{{"options", {{"name", "bezout-2-2"}}}});
  const Json& bf = bz["payload"]["files"];
  Cycle c1 = tropical_hypersurface(polynomial_from_json(bf.at("conic1.json")));
  Cycle c2 = tropical_hypersurface(polynomial_from_json(bf.at("conic2.json")));
  CHECK(degree(stable_intersect(c1, c2)).get_str() ==
        bf.at("expected.json").at("stable_degree").get<std::string>());

  Json sn = run_ok("examples", Json{{"options", {{"name", "selfintersection-n"}, {"n", 4}}}});
  Cycle star =
      tropical_hypersurface(polynomial_from_json(sn["payload"]["files"].at("curve.json")));
  CHECK(local_multiplicity(star, star, {Rat(0), Rat(0)}) == 4);
}

TEST_CASE("compactified command per stratum") {
  Json ex = run_ok("examples", Json{{"options", {{"name", "tp3"}}}});
  const Json& tf = ex["payload"]["files"];
  Json req{{"inputs",
            {input("gamma", tf.at("gamma.json")), input("s", tf.at("f_skeleton.json")),
             input("fan", tf.at("fan.json"))}},
           {"options", {{"tau", Json::array()}}}};
  Json resp = run_ok("compactified", req);
  CHECK(resp["payload"]["degree"] == "1");
  CHECK(resp["payload"]["frame"].contains("proj"));
  CHECK(resp["payload"]["frame"].contains("lift"));

  req["options"]["tau"] = {1};
  resp = run_ok("compactified", req);
  CHECK(resp["payload"]["degree"] == "0");
}

TEST_CASE("c interface") {
  trop_ctx* ctx = trop_ctx_new();
  REQUIRE(ctx != nullptr);
  CHECK(std::string(trop_last_error(ctx)).empty());

  Json line_poly{{"ambient", 2},
                 {"terms",
                  {{{"exp", {"1", "0"}}, {"val", "0"}},
                   {{"exp", {"0", "1"}}, {"val", "0"}},
                   {{"exp", {"0", "0"}}, {"val", "0"}}}}};
  Json req{{"inputs", {input("f", line_poly)}}};
  char* resp_text = nullptr;
  int code = trop_run(ctx, "hypersurface", req.dump().c_str(), &resp_text);
  CHECK(code == 0);
  REQUIRE(resp_text != nullptr);
  Json resp = Json::parse(resp_text);
  trop_string_free(resp_text);
  CHECK(resp["status"] == "ok");
  CHECK(cycle_equal(cycle_from_json(resp["payload"]["cycle"]), std_line()));

  // canonical serialization round trip at the boundary
  CHECK(dump_canonical(resp) == dump_canonical(Json::parse(dump_canonical(resp))));

  code = trop_run(ctx, "hypersurface", "{not json", &resp_text);
  CHECK(code == 2);
  CHECK(std::string(trop_last_error(ctx)).find("JSON") != std::string::npos);
  trop_string_free(resp_text);

  code = trop_run(ctx, "no-such-command", "{}", &resp_text);
  CHECK(code == 2);
  trop_string_free(resp_text);

  code = trop_run(ctx, nullptr, "{}", &resp_text);
  CHECK(code == 2);

  trop_ctx_free(ctx);
  trop_ctx_free(nullptr);
}

TEST_CASE("cli binary exit codes and files") {
  const char* cli = std::getenv("TROPCYCLE_CLI");
  if (!cli) return;  // only run when ctest provides the binary path
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "tropcycle_cli_test";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::string q = std::string("\"") + cli + "\"";
  auto run = [&](const std::string& args) {
    int st = std::system((q + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(st);
  };
  CHECK(run("examples --name selfinter-ex --out " + dir.string()) == 0);
  CHECK(fs::exists(dir / "conic.json"));
  CHECK(run("hypersurface --in f=" + (dir / "conic.json").string() + " --out " +
            (dir / "conic_curve.json").string()) == 0);
  CHECK(run("hypersurface --in f=" + (dir / "line.json").string() + " --out " +
            (dir / "line_curve.json").string()) == 0);
  CHECK(run("stable-intersect --in a=" + (dir / "conic_curve.json").string() +
            " --in b=" + (dir / "line_curve.json").string() +
            " --component 1,1 --degree --out " + (dir / "result.json").string()) == 0);
  std::ifstream in(dir / "result.json");
  Json result = Json::parse(in);
  CHECK(result.at("degree") == "2");
  CHECK(run("examples --name bogus --out " + dir.string()) == 2);
  CHECK(run("stable-intersect --in a=" + (dir / "conic_curve.json").string()) == 2);
  CHECK(run("plot --in c=" + (dir / "conic_curve.json").string() + " --out " +
            (dir / "plot.svg").string()) == 0);
  CHECK(fs::exists(dir / "plot.svg"));
  fs::remove_all(dir);
}
