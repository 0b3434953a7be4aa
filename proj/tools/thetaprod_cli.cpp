// Command-line front end; talks to the library only through the C interface.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "thetaprod/thetaprod.h"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct CliError {
  std::string status, message;
};

[[noreturn]] void raise(tp_status s) { throw CliError{tp_status_name(s), tp_last_error()}; }

void check(tp_status s) {
  if (s != TP_OK) raise(s);
}

std::string take(char* s) {
  std::string out(s);
  tp_string_free(s);
  return out;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) throw CliError{"argument", "cannot read " + p.string()};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// inline "lattice": "<path>" references, resolved relative to the referring file
void resolve_refs(json& j, const fs::path& base, int depth = 0) {
  if (depth > 8) throw CliError{"schema", "lattice references nest too deeply"};
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "lattice" && it->is_string()) {
        fs::path p = base / it->get<std::string>();
        json sub;
        try {
          sub = json::parse(read_file(p));
        } catch (const json::parse_error& e) {
          throw CliError{"schema", p.string() + ": " + e.what()};
        }
        resolve_refs(sub, p.parent_path(), depth + 1);
        *it = sub;
      } else {
        resolve_refs(*it, base, depth);
      }
    }
  } else if (j.is_array()) {
    for (auto& x : j) resolve_refs(x, base, depth);
  }
}

// argument is inline JSON when it starts with '{' or '[', a file path otherwise
std::string load(const std::string& arg) {
  std::string text;
  fs::path base = fs::current_path();
  auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) {
    text = arg;
  } else {
    text = read_file(arg);
    base = fs::path(arg).parent_path();
    if (base.empty()) base = ".";
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw CliError{"schema", std::string("invalid JSON: ") + e.what()};
  }
  resolve_refs(j, base);
  return j.dump();
}

struct Lattice {
  tp_lattice* p = nullptr;
  explicit Lattice(const std::string& arg) { check(tp_lattice_parse(load(arg).c_str(), &p)); }
  ~Lattice() { tp_lattice_free(p); }
};

struct Context {
  tp_context* p = nullptr;
  explicit Context(const std::string& arg) { check(tp_context_parse(load(arg).c_str(), &p)); }
  ~Context() { tp_context_free(p); }
};

struct Form {
  tp_form* p = nullptr;
  Form() = default;
  explicit Form(const std::string& arg) { check(tp_form_parse(load(arg).c_str(), &p)); }
  Form(const Form&) = delete;
  Form(Form&& o) noexcept : p(o.p) { o.p = nullptr; }
  ~Form() { tp_form_free(p); }
  std::string str() const {
    char* s = nullptr;
    check(tp_form_serialize(p, &s));
    return take(s);
  }
};

std::string default_trunc() {
  const char* e = std::getenv("THETAPROD_TRUNC");
  return e && *e ? e : "5";
}

int run_checks(const std::string& which) {
  std::vector<std::string> names;
  if (which == "all") {
    char* s = nullptr;
    check(tp_suite_names(&s));
    names = json::parse(take(s)).get<std::vector<std::string>>();
  } else {
    names.push_back(which);
  }
  bool all_ok = true;
  json reports = json::array();
  for (const auto& n : names) {
    int passed = 0;
    char* s = nullptr;
    check(tp_check_suite(n.c_str(), &passed, &s));
    reports.push_back(json::parse(take(s)));
    all_ok = all_ok && passed;
  }
  std::cout << json{{"ok", all_ok}, {"suites", reports}}.dump(2) << "\n";
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact theta-product algebra on vector-valued modular forms"};
  app.require_subcommand(1);
  std::string trunc = default_trunc();
  std::string a1, a2, a3, sub, target, basis;
  std::vector<std::string> gens;
  int code = 0;

  auto* disc = app.add_subcommand("disc", "discriminant form and Milgram signature of a lattice");
  disc->add_option("lattice", a1)->required();

  auto* theta = app.add_subcommand("theta", "theta series of a positive-definite lattice");
  theta->add_option("lattice", a1)->required();
  theta->add_option("--trunc", trunc);

  auto* context = app.add_subcommand("context", "K, J and |I*/I| for a lattice and isotropic sublattice");
  context->add_option("lattice", a1)->required();
  context->add_option("--isotropic", basis, "basis rows, JSON or file")->required();

  auto* xi = app.add_subcommand("xi", "xi(f), a scalar series");
  xi->add_option("context", a1)->required();
  xi->add_option("form", a2)->required();

  auto* star = app.add_subcommand("star", "f * g");
  star->add_option("context", a1)->required();
  star->add_option("f", a2)->required();
  star->add_option("g", a3)->required();

  auto* bracket = app.add_subcommand("bracket", "f * g - g * f");
  bracket->add_option("context", a1)->required();
  bracket->add_option("f", a2)->required();
  bracket->add_option("g", a3)->required();

  auto* qpb = app.add_subcommand("qpb", "quasi-pullback to a sublattice");
  qpb->add_option("context", a1)->required();
  qpb->add_option("--sub", sub, "{\"basis\": [[int]]}, JSON or file")->required();
  qpb->add_option("form", a2)->required();

  auto* solve = app.add_subcommand("solve", "form with a prescribed principal part");
  solve->add_option("context", a1)->required();
  solve->add_option("--target", target)->required();
  solve->add_option("--generators", gens)->required();

  auto* catalog = app.add_subcommand("catalog", "catalog object by name ('list' prints the names)");
  catalog->add_option("name", a1)->required();
  catalog->add_option("--trunc", trunc);

  auto* chk = app.add_subcommand("check", "run an invariant suite, or all");
  chk->add_option("suite", a1)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << json{{"error", {{"status", "usage"}, {"message", e.what()}}}}.dump() << "\n";
    return 2;
  }

  try {
    if (*disc) {
      Lattice l(a1);
      char* s = nullptr;
      check(tp_lattice_disc(l.p, &s));
      std::cout << take(s);
    } else if (*theta) {
      Lattice l(a1);
      char* s = nullptr;
      check(tp_lattice_theta(l.p, trunc.c_str(), &s));
      std::cout << take(s);
    } else if (*context) {
      json lat = json::parse(load(a1));
      json b = json::parse(load(basis));
      if (b.is_object() && b.contains("basis")) b = b["basis"];
      Context c(json{{"lattice", lat}, {"isotropic", {{"basis", b}}}}.dump());
      char* s = nullptr;
      check(tp_context_describe(c.p, &s));
      std::cout << take(s);
    } else if (*xi) {
      Context c(a1);
      Form f(a2), out;
      check(tp_xi(c.p, f.p, &out.p));
      std::cout << out.str();
    } else if (*star || *bracket) {
      Context c(a1);
      Form f(a2), g(a3), out;
      check((*star ? tp_star : tp_bracket)(c.p, f.p, g.p, &out.p));
      std::cout << out.str();
    } else if (*qpb) {
      Context c(a1);
      Form f(a2), out;
      json s = json::parse(load(sub));
      if (s.is_array()) s = json{{"basis", s}};
      check(tp_quasi_pullback(c.p, s.dump().c_str(), f.p, &out.p));
      std::cout << out.str();
    } else if (*solve) {
      Context c(a1);
      std::vector<Form> fs;
      std::vector<const tp_form*> ptrs;
      for (const auto& g : gens) fs.emplace_back(g);
      for (const auto& f : fs) ptrs.push_back(f.p);
      char* s = nullptr;
      check(tp_solve(c.p, load(target).c_str(), ptrs.data(), ptrs.size(), &s));
      std::cout << take(s);
    } else if (*catalog) {
      char* s = nullptr;
      if (a1 == "list")
        check(tp_catalog_names(&s));
      else
        check(tp_catalog(a1.c_str(), trunc.c_str(), &s));
      std::cout << take(s);
    } else if (*chk) {
      code = run_checks(a1);
    }
  } catch (const CliError& e) {
    std::cerr << json{{"error", {{"status", e.status}, {"message", e.message}}}}.dump() << "\n";
    return 2;
  }
  return code;
}
