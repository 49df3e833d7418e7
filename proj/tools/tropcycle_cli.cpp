// tropcycle: command line front end. Talks to the library exclusively
// through the C interface; all document plumbing here is plain JSON text.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tropcycle.h"

namespace {

using Json = nlohmann::json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// write via a temp file + rename so readers never see a partial document
void write_file_atomic(const std::string& path, const std::string& data) {
  std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << data;
    if (!out) throw std::runtime_error("write failed: " + path);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot finalize output file: " + path);
}

// "a,b,c" -> ["a","b","c"] of exact number strings
Json csv_to_strings(const std::string& s) {
  Json out = Json::array();
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

Json csv_to_ints(const std::string& s) {
  Json out = Json::array();
  if (s == "-") return out;  // the zero cone
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(std::stoi(item));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tropcycle: exact stable intersection calculus for tropical cycles"};
  app.require_subcommand(1);

  std::vector<std::string> in_specs;
  std::string out_path;
  std::string component, tau, bbox, op, name, seed_arg;
  int n_param = 3;
  bool want_degree = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--in", in_specs, "named input: name=path (repeatable)");
    sub->add_option("--out", out_path, "output path (default: stdout)");
    sub->add_option("--seed", seed_arg, "displacement seed (overrides TROPCYCLE_SEED)");
    return sub;
  };

  auto* c_validate = add_common(app.add_subcommand("validate", "run invariant checks on documents"));
  auto* c_stable = add_common(app.add_subcommand("stable-intersect", "stable intersection of cycles"));
  c_stable->add_option("--component", component, "witness point x1,x2,... selecting a component");
  c_stable->add_flag("--degree", want_degree, "report the degree of the result");
  auto* c_comp = add_common(app.add_subcommand("compactified", "stable intersection in a stratum"));
  c_comp->add_option("--tau", tau, "stratum cone as ray indices i,j,... ('-' for the zero cone)");
  c_comp->add_flag("--degree", want_degree, "report degrees");
  auto* c_hyp = add_common(app.add_subcommand("hypersurface", "tropical hypersurface of a polynomial"));
  auto* c_mw = add_common(app.add_subcommand("mw", "Minkowski weight computations"));
  c_mw->add_option("--op", op, "product | degree | from-cycle")->required();
  auto* c_plot = add_common(app.add_subcommand("plot", "render planar cycles as SVG"));
  c_plot->add_option("--bbox", bbox, "viewport x0,y0,x1,y1 (default -5,-5,5,5)");
  auto* c_ex = add_common(app.add_subcommand("examples", "emit a named worked example"));
  c_ex->add_option("--name", name, "fixture name")->required();
  c_ex->add_option("--n", n_param, "parameter for selfintersection-n");

  CLI11_PARSE(app, argc, argv);
  CLI::App* sub = app.get_subcommands().front();
  std::string command = sub->get_name();

  int code = 0;
  try {
    Json request;
    request["inputs"] = Json::array();
    for (const auto& spec : in_specs) {
      auto eq = spec.find('=');
      if (eq == std::string::npos) throw std::runtime_error("--in expects name=path: " + spec);
      std::string nm = spec.substr(0, eq), path = spec.substr(eq + 1);
      request["inputs"].push_back({{"name", nm}, {"doc", Json::parse(read_file(path))}});
    }
    Json opts = Json::object();
    if (sub == c_stable) {
      if (!component.empty()) opts["component"] = csv_to_strings(component);
      if (want_degree) opts["degree"] = true;
    } else if (sub == c_comp) {
      if (!tau.empty()) opts["tau"] = csv_to_ints(tau);
      if (want_degree) opts["degree"] = true;
    } else if (sub == c_mw) {
      opts["op"] = op;
    } else if (sub == c_plot) {
      if (!bbox.empty()) opts["bbox"] = csv_to_strings(bbox);
    } else if (sub == c_ex) {
      opts["name"] = name;
      if (sub->count("--n")) opts["n"] = n_param;
    }
    (void)c_validate;
    (void)c_hyp;
    request["options"] = opts;
    if (!seed_arg.empty())
      request["seed"] = seed_arg;
    else if (const char* env = std::getenv("TROPCYCLE_SEED"))
      request["seed"] = std::string(env);

    trop_ctx* ctx = trop_ctx_new();
    if (!ctx) throw std::runtime_error("context allocation failed");
    char* response_text = nullptr;
    code = trop_run(ctx, command.c_str(), request.dump().c_str(), &response_text);
    std::string response_str = response_text ? response_text : "";
    trop_string_free(response_text);
    std::string err = trop_last_error(ctx);
    trop_ctx_free(ctx);

    if (code != 0) {
      std::cerr << "error: " << (err.empty() ? "command failed" : err) << "\n";
      if (!response_str.empty()) std::cerr << response_str << "\n";
      return code;
    }

    Json response = Json::parse(response_str);
    const Json& payload = response.at("payload");
    if (command == "plot") {
      std::string svg = payload.at("svg").get<std::string>();
      if (out_path.empty())
        std::cout << svg;
      else
        write_file_atomic(out_path, svg);
    } else if (command == "examples") {
      std::string dir = out_path.empty() ? "." : out_path;
      std::filesystem::create_directories(dir);
      for (const auto& [fname, doc] : payload.at("files").items())
        write_file_atomic(dir + "/" + fname, doc.dump(2) + "\n");
      std::cout << "wrote " << payload.at("files").size() << " files for fixture "
                << payload.at("fixture").get<std::string>() << " to " << dir << "\n";
    } else {
      std::string text = payload.dump(2) + "\n";
      if (out_path.empty())
        std::cout << text;
      else
        write_file_atomic(out_path, text);
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return code != 0 ? code : 2;
  }
}
