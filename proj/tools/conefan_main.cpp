// conefan: exact cones, fans and freeness decisions for lattice-group terms.
//
// Exit codes: 0 yes/found/ok, 1 no/none, 2 usage or input error,
// 3 budget exhausted.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conefan/bmap.hpp"
#include "conefan/combinat.hpp"
#include "conefan/fan.hpp"
#include "conefan/terms.hpp"

using json = nlohmann::json;

namespace {

using namespace conefan;

std::vector<Term> parse_terms(const std::string& csv, std::size_t vars) {
  std::vector<Term> terms;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = csv.find(',', start);
    std::string part = csv.substr(
        start, comma == std::string::npos ? std::string::npos : comma - start);
    terms.push_back(parse_term(part, vars));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return terms;
}

json vec_json(const IntVec& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

json vec_json(const RatVec& v) {
  json a = json::array();
  for (const auto& x : v) {
    std::ostringstream os;
    os << x;
    a.push_back(os.str());
  }
  return a;
}

json fan_json(const Fan& f) {
  json cones = json::array();
  for (const auto& c : f.max_cones()) {
    json gens = json::array();
    for (const auto& g : c.generators()) gens.push_back(vec_json(g));
    cones.push_back(gens);
  }
  return json{{"dim", f.ambient_dim()}, {"cones", cones}};
}

json iso_json(const ComplexIso& iso) {
  json a = json::array();
  for (const auto& [from, to] : iso.pairs)
    a.push_back(json{{"from", vec_json(from)}, {"to", vec_json(to)}});
  return a;
}

struct Options {
  bool json_output = false;
};

void emit(const Options& opt, const std::string& text, const json& j) {
  if (opt.json_output)
    std::cout << j.dump() << "\n";
  else
    std::cout << text;
}

int cmd_eval(const Options& opt, const std::string& term_text,
             std::size_t vars, const std::string& point_text) {
  Term t = parse_term(term_text, vars);
  RatVec p = parse_rat_vec(point_text);
  if (p.size() != vars) throw Error("point has wrong dimension");
  Rat value = eval_term(t, p);
  std::ostringstream os;
  os << value;
  emit(opt, os.str() + "\n", json{{"value", os.str()}});
  return 0;
}

int cmd_pieces(const Options& opt, const std::string& term_text,
               std::size_t vars) {
  Term t = parse_term(term_text, vars);
  std::vector<IntVec> forms = linear_pieces(t);
  std::string text;
  json arr = json::array();
  for (const auto& l : forms) {
    text += vec_to_string(l) + "\n";
    arr.push_back(vec_json(l));
  }
  emit(opt, text, json{{"forms", arr}});
  return 0;
}

int cmd_zeroset(const Options& opt, const std::string& term_text,
                std::size_t vars) {
  ZerosetFan z = zeroset_fan(parse_term(term_text, vars));
  emit(opt, fan_to_string(z.fan), fan_json(z.fan));
  return 0;
}

int cmd_range(const Options& opt, const std::string& terms_text,
              std::size_t vars) {
  std::vector<Term> terms = parse_terms(terms_text, vars);
  ImageFan img = image_fan(linearizing_fan(terms, vars));
  emit(opt, fan_to_string(img.fan), fan_json(img.fan));
  return 0;
}

int cmd_fan_validate(const Options& opt, const std::string& path) {
  Fan f = read_fan_file(path);
  auto v = fan_validate(f);
  if (!v) {
    emit(opt, "ok\n", json{{"ok", true}});
    return 0;
  }
  std::ostringstream os;
  os << "violation: cones " << v->cone_a << " and " << v->cone_b
     << " overlap at " << vec_to_string(v->witness) << "\n";
  emit(opt, os.str(),
       json{{"ok", false},
            {"cone_a", v->cone_a},
            {"cone_b", v->cone_b},
            {"witness", vec_json(v->witness)}});
  return 1;
}

int cmd_fan_regularize(const Options& opt, const std::string& path) {
  Fan f = desingularize(read_fan_file(path));
  emit(opt, fan_to_string(f), fan_json(f));
  return 0;
}

int cmd_fan_stellar(const Options& opt, const std::string& path,
                    const std::string& ray_text) {
  Fan f = stellar_subdivide(read_fan_file(path), parse_int_vec(ray_text));
  emit(opt, fan_to_string(f), fan_json(f));
  return 0;
}

int emit_verdict(const Options& opt, const Verdict& v) {
  if (v.yes) {
    std::string text =
        "YES: range covers R^" + std::to_string(v.covering->ambient_dim()) +
        "\n" + fan_to_string(*v.covering);
    emit(opt, text,
         json{{"answer", "yes"}, {"evidence", fan_json(*v.covering)}});
    return 0;
  }
  if (v.dimension_reason) {
    auto [n, m] = *v.dimension_reason;
    std::string text = "NO: dimension obstruction (" + std::to_string(n) +
                       " > " + std::to_string(m) + ")\n";
    emit(opt, text,
         json{{"answer", "no"},
              {"dimension", json{{"terms", n}, {"vars", m}}}});
    return 1;
  }
  std::string text =
      "NO: witness outside range\nwitness: " + vec_to_string(*v.witness) +
      "\n";
  emit(opt, text, json{{"answer", "no"}, {"witness", vec_json(*v.witness)}});
  return 1;
}

int cmd_decide_free(const Options& opt, const std::string& terms_text,
                    std::size_t vars) {
  return emit_verdict(opt, decide_free(parse_terms(terms_text, vars)));
}

int cmd_check_basis(const Options& opt, const std::string& terms_text) {
  // variable count is inferred from the number of terms
  std::size_t n = 1;
  for (char c : terms_text)
    if (c == ',') ++n;
  return emit_verdict(opt, check_free_basis(parse_terms(terms_text, n)));
}

int cmd_complex_iso(const Options& opt, const std::string& path_a,
                    const std::string& path_b) {
  Fan a = read_fan_file(path_a), b = read_fan_file(path_b);
  auto iso = complex_isomorphic(abstract_complex(a), abstract_complex(b));
  if (!iso) {
    emit(opt, "none\n", json{{"iso", nullptr}});
    return 1;
  }
  std::string text;
  for (const auto& [from, to] : iso->pairs)
    text += "map " + vec_to_string(from) + " -> " + vec_to_string(to) + "\n";
  emit(opt, text, json{{"iso", iso_json(*iso)}});
  return 0;
}

int cmd_certificate(const Options& opt, const std::string& path_a,
                    const std::string& path_b, std::size_t budget) {
  Fan a = read_fan_file(path_a), b = read_fan_file(path_b);
  SearchResult r = search_certificate(a, b, budget);
  switch (r.status) {
    case SearchStatus::Found:
      emit(opt, certificate_to_string(*r.certificate),
           json{{"status", "found"},
                {"fan_a", fan_json(r.certificate->delta)},
                {"fan_b", fan_json(r.certificate->nabla)},
                {"iso", iso_json(r.certificate->iso)}});
      return 0;
    case SearchStatus::Obstructed:
      emit(opt, "none\n", json{{"status", "none"}, {"reason", r.note}});
      return 1;
    case SearchStatus::BudgetExhausted:
      emit(opt, "budget-exhausted\n",
           json{{"status", "budget-exhausted"}, {"note", r.note}});
      return 3;
  }
  return 2;
}

std::size_t default_budget() {
  if (const char* env = std::getenv("CONEFAN_BUDGET_DEFAULT")) {
    try {
      return static_cast<std::size_t>(std::stoull(env));
    } catch (...) {
      throw Error("bad CONEFAN_BUDGET_DEFAULT value");
    }
  }
  return 500;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact fans and freeness decisions for lattice-group terms"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "text";
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"text", "json"}));
  long long seed = 0;
  app.add_option("--seed", seed,
                 "random seed (reserved; current commands are deterministic)");

  std::string term_text, terms_text, point_text, path_a, path_b, ray_text;
  std::size_t vars = 1;
  std::size_t budget = 0;
  bool budget_given = false;

  CLI::App* c_eval = app.add_subcommand("eval", "evaluate a term at a point");
  c_eval->add_option("--term", term_text)->required();
  c_eval->add_option("--vars", vars)->required()->check(CLI::PositiveNumber);
  c_eval->add_option("--point", point_text)->required();

  CLI::App* c_pieces = app.add_subcommand("pieces", "linear pieces of a term");
  c_pieces->add_option("--term", term_text)->required();
  c_pieces->add_option("--vars", vars)->required()->check(CLI::PositiveNumber);

  CLI::App* c_zeroset =
      app.add_subcommand("zeroset", "regular fan over the zero set");
  c_zeroset->add_option("--term", term_text)->required();
  c_zeroset->add_option("--vars", vars)->required()->check(CLI::PositiveNumber);

  CLI::App* c_range =
      app.add_subcommand("range", "regular fan over the range of a tuple");
  c_range->add_option("--terms", terms_text)->required();
  c_range->add_option("--vars", vars)->required()->check(CLI::PositiveNumber);

  CLI::App* c_fan = app.add_subcommand("fan", "fan file operations");
  c_fan->require_subcommand(1);
  CLI::App* c_validate = c_fan->add_subcommand("validate", "check fan axioms");
  c_validate->add_option("file", path_a)->required();
  CLI::App* c_regularize =
      c_fan->add_subcommand("regularize", "desingularize a fan");
  c_regularize->add_option("file", path_a)->required();
  CLI::App* c_stellar =
      c_fan->add_subcommand("stellar", "stellar subdivision at a ray");
  c_stellar->add_option("file", path_a)->required();
  c_stellar->add_option("--at", ray_text, "ray, comma-separated integers")
      ->required();

  CLI::App* c_decide =
      app.add_subcommand("decide-free", "is the generated group free?");
  c_decide->add_option("--terms", terms_text)->required();
  c_decide->add_option("--vars", vars)->required()->check(CLI::PositiveNumber);

  CLI::App* c_basis = app.add_subcommand(
      "check-basis", "do n terms in n variables freely generate?");
  c_basis->add_option("--terms", terms_text)->required();

  CLI::App* c_iso =
      app.add_subcommand("complex-iso", "abstract complex isomorphism");
  c_iso->add_option("--fan-a", path_a)->required();
  c_iso->add_option("--fan-b", path_b)->required();

  CLI::App* c_cert = app.add_subcommand(
      "certificate", "search for a pair of isomorphic regular subdivisions");
  c_cert->add_option("--fan-a", path_a)->required();
  c_cert->add_option("--fan-b", path_b)->required();
  c_cert->add_option("--budget", budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }
  budget_given = c_cert->count("--budget") > 0;

  Options opt{format == "json"};
  try {
    if (*c_eval) return cmd_eval(opt, term_text, vars, point_text);
    if (*c_pieces) return cmd_pieces(opt, term_text, vars);
    if (*c_zeroset) return cmd_zeroset(opt, term_text, vars);
    if (*c_range) return cmd_range(opt, terms_text, vars);
    if (*c_validate) return cmd_fan_validate(opt, path_a);
    if (*c_regularize) return cmd_fan_regularize(opt, path_a);
    if (*c_stellar) return cmd_fan_stellar(opt, path_a, ray_text);
    if (*c_decide) return cmd_decide_free(opt, terms_text, vars);
    if (*c_basis) return cmd_check_basis(opt, terms_text);
    if (*c_iso) return cmd_complex_iso(opt, path_a, path_b);
    if (*c_cert)
      return cmd_certificate(opt, path_a, path_b,
                             budget_given ? budget : default_budget());
  } catch (const conefan::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
