#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <omp.h>

#include "dialectic/calculus.hpp"
#include "dialectic/flowfix.hpp"
#include "dialectic/laws.hpp"
#include "dialectic/models.hpp"
#include "dialectic/semantics.hpp"

using namespace dialectic;

namespace {

struct input_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// file contents when the argument names a file, the argument itself otherwise
std::string file_or_text(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return slurp(arg);
  return arg;
}

std::string label(const std::string& arg) {
  std::error_code ec;
  return std::filesystem::is_regular_file(arg, ec) ? arg : "<argument>";
}

struct options {
  std::string laws_flags;
  std::vector<std::string> law_names;
  std::size_t depth = 6;
  std::uint64_t seed = 1;
  int jobs = 1;
  std::string format = "text";
};

void print(const report& r, const options& o) { std::cout << (o.format == "tsv" ? r.tsv() : r.text()); }

model_handle load_model(const std::string& desc, exec e) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(desc, ec)) {
    // a plain model file: wrapped so that Heyting structure is found if present
    auto B = std::make_shared<finite_biposet>(parse_model_file(slurp(desc), desc));
    model_handle h;
    h.descriptor = desc;
    h.heyting = std::make_shared<heyting_model>(heyting_model::build(B, e));
    return h;
  }
  return parse_model_descriptor(desc, e);
}

term parse_term(const finite_biposet& B, const std::string& spec) {
  // name:y->x, as printed by the reports
  auto colon = spec.rfind(':');
  auto arrow = spec.rfind("->");
  if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
    throw input_error("term '" + spec + "' is not of the form name:y->x");
  auto y = B.find_type(spec.substr(colon + 1, arrow - colon - 1));
  auto x = B.find_type(spec.substr(arrow + 2));
  if (!y || !x) throw input_error("unknown type in term '" + spec + "'");
  auto t = B.find_term(*y, *x, spec.substr(0, colon));
  if (!t) throw input_error("no term '" + spec + "'");
  return *t;
}

int cmd_validate(const std::string& desc, const options& o) {
  std::error_code ec;
  report rep;
  if (std::filesystem::is_regular_file(desc, ec)) {
    auto B = parse_model_file(slurp(desc), desc);
    rep = validate_biposet(B, parse_biposet_flags(o.laws_flags.empty() ? "biposet" : o.laws_flags));
  } else {
    auto M = parse_model_descriptor(desc);
    rep = validate_biposet(M.heyting->base(),
                           parse_biposet_flags(o.laws_flags.empty() ? "biposet" : o.laws_flags));
    rep.merge(audit_dialectical_axioms(*M.heyting));
  }
  print(rep, o);
  return rep.ok() ? 0 : 1;
}

int cmd_check_proof(const std::string& lang, const std::string& proof, const options&) {
  language L = parse_language(slurp(lang), lang);
  derivation d = parse_derivation(L, file_or_text(proof), label(proof));
  auto c = check_derivation(L, d);
  if (c.ok) {
    std::cout << "OK (" << c.nodes << (c.nodes == 1 ? " node)\n" : " nodes)\n");
    return 0;
  }
  std::cout << "FAIL at " << c.path << ": " << c.message << "\n";
  return 1;
}

int cmd_prove(const std::string& lang, const std::string& goal, const options& o) {
  language L = parse_language(slurp(lang), lang);
  assertion a = parse_assertion(L, file_or_text(goal));
  search_options so;
  so.depth = o.depth;
  auto d = prove_bounded(L, a, so);
  if (!d) {
    std::cout << "no derivation up to depth " << o.depth << "\n";
    return 1;
  }
  std::cout << to_sexpr(L, *d) << "\n";
  return 0;
}

int cmd_eval(const std::string& lang, const std::string& structure, const std::string& expr,
             const options&) {
  language L = parse_language(slurp(lang), lang);
  classical_structure S = parse_structure(L, slurp(structure), structure);
  std::string text = file_or_text(expr);
  auto first = text.find_first_not_of(" \t\r\n(");
  bool is_assertion = first != std::string::npos &&
                      (text.compare(first, 3, "ent") == 0 || text.compare(first, 4, "orth") == 0);
  if (is_assertion) {
    assertion a = parse_assertion(L, text);
    bool ok = is_valid(S, a);
    std::cout << to_infix(L, a) << ": " << (ok ? "valid" : "invalid") << " ("
              << S.cat->describe(interpret(S, a.lhs)) << ", " << S.cat->describe(interpret(S, a.rhs)) << ")\n";
    return ok ? 0 : 1;
  }
  formula f = parse_formula(L, text);
  std::cout << S.cat->describe(interpret(S, f)) << "\n";
  return 0;
}

int cmd_center(const std::string& desc, const options& o) {
  auto M = load_model(desc, exec::parallel);
  auto c = boolean_center(M.heyting);
  const auto& B = c.cat;
  for (idx y = 0; y < B.type_count(); ++y)
    for (idx x = 0; x < B.type_count(); ++x) {
      std::cout << "hom(" << B.type_name(y) << ", " << B.type_name(x) << "):";
      for (const auto& n : B.hom(y, x).names) std::cout << " " << n;
      std::cout << "\n";
    }
  report rep = validate_boolean_category(B);
  print(rep, o);
  return rep.ok() ? 0 : 1;
}

int cmd_fixpoint(const std::string& desc, const std::string& s, const std::string& r, bool greatest,
                 const std::string& variant, const options& o) {
  auto M = load_model(desc, exec::parallel);
  const auto& B = M.heyting->base();
  auto one = find_separator(B);
  if (!one) throw input_error("model has no separating type");
  flow_variant v = flow_variant::yinyang;
  if (variant == "yangyin") v = flow_variant::yangyin;
  else if (variant == "reverse") v = flow_variant::reverse_yinyang;
  else if (variant == "reverse-yangyin") v = flow_variant::reverse_yangyin;
  else if (variant != "yinyang") throw input_error("unknown variant '" + variant + "'");
  auto F = yinyang(*M.heyting, *one, {parse_term(B, s), parse_term(B, r)}, v);
  auto res = fixpoints(B, F, greatest ? extremal::greatest : extremal::least);
  std::cout << (greatest ? "greatest" : "least") << " fixpoint: " << B.describe({F.source, F.target, res.point})
            << " after " << res.iterations << " iterations\n";
  print(res.checks, o);
  return res.checks.ok() ? 0 : 1;
}

int cmd_datalog(const std::string& file, const options&) {
  auto P = parse_horn(slurp(file), file);
  auto res = horn_eval(P);
  for (std::size_t a : res.atoms) std::cout << P.atom_name(a) << "\n";
  return 0;
}

int cmd_laws(const std::string& desc, const std::vector<std::string>& topos, const options& o) {
  auto M = load_model(desc, exec::parallel);
  law_options lo;
  lo.depth = o.depth;
  lo.seed = o.seed;
  lo.topotypes = topos;
  auto out = run_laws(M, o.law_names, lo, o.jobs);
  bool ok = true;
  for (const auto& l : out) {
    if (!l.applicable) {
      std::cout << (o.format == "tsv" ? "SKIP\t" + l.name + "\t" + l.reason : "SKIP " + l.name + ": " + l.reason)
                << "\n";
      continue;
    }
    std::uint64_t inst = 0;
    for (const auto& c : l.result.checks()) inst += c.instances;
    ok = ok && l.passed();
    if (o.format == "tsv") {
      std::cout << (l.passed() ? "PASS" : "FAIL") << "\t" << l.name << "\t" << inst << "\t"
                << l.result.violations() << "\n";
    } else {
      std::cout << (l.passed() ? "PASS " : "FAIL ") << l.name << " (" << inst << " instances";
      if (!l.passed()) std::cout << ", " << l.result.violations() << " violations";
      std::cout << ")\n";
      if (!l.passed())
        for (const auto& c : l.result.checks())
          if (!c.passed()) {
            std::cout << "  " << c.name << ": " << c.violations << " of " << c.instances << "\n";
            for (const auto& ex : c.examples) std::cout << "    " << ex << "\n";
          }
    }
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dialectic: finite models, proofs and fixpoints for non-symmetric linear logic"};
  app.require_subcommand(1);
  app.fallthrough();
  options o;
  std::string law_single;
  app.add_option("--depth", o.depth, "derivation depth for prove and soundness")->capture_default_str();
  app.add_option("--seed", o.seed, "seed for sampled checks and corpora")->capture_default_str();
  app.add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  app.add_option("--format", o.format, "report format")->check(CLI::IsMember({"text", "tsv"}))->capture_default_str();

  std::string a1, a2, a3, variant = "yinyang";
  bool greatest = false;
  std::vector<std::string> topos;

  auto* validate = app.add_subcommand("validate", "validate a model descriptor or model file");
  validate->add_option("model", a1)->required();
  validate->add_option("--laws", o.laws_flags, "biposet, join, meet, cHc (comma separated)");

  auto* check = app.add_subcommand("check-proof", "check a derivation against a language");
  check->add_option("language", a1)->required();
  check->add_option("proof", a2)->required();

  auto* prove = app.add_subcommand("prove", "bounded proof search");
  prove->add_option("language", a1)->required();
  prove->add_option("goal", a2, "assertion or file")->required();

  auto* eval = app.add_subcommand("eval", "interpret a formula or assertion in a structure");
  eval->add_option("language", a1)->required();
  eval->add_option("structure", a2)->required();
  eval->add_option("expr", a3, "formula, assertion or file")->required();

  auto* center = app.add_subcommand("center", "Boolean center of a model");
  center->add_option("model", a1)->required();

  auto* fix = app.add_subcommand("fixpoint", "extremal fixpoint of a dialectical system");
  fix->add_option("model", a1)->required();
  fix->add_option("s", a2, "term name:y->x")->required();
  fix->add_option("r", a3, "term name:y->x")->required();
  fix->add_flag("--greatest", greatest);
  fix->add_option("--variant", variant, "yinyang, yangyin, reverse, reverse-yangyin")->capture_default_str();

  auto* datalog = app.add_subcommand("datalog", "evaluate a ground Horn program");
  datalog->add_option("program", a1)->required();

  auto* laws = app.add_subcommand("laws", "run the law suite on a model");
  laws->add_option("model", a1)->required();
  laws->add_option("--law", law_single, "comma separated law names");
  laws->add_option("--topo", topos, "topotype literal `topo x: {e1,e2}`");
  laws->add_flag("--list", "list the laws");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  if (o.jobs < 1) o.jobs = 1;
  omp_set_num_threads(o.jobs);
  if (!law_single.empty()) {
    std::stringstream ss(law_single);
    for (std::string n; std::getline(ss, n, ',');)
      if (!n.empty()) o.law_names.push_back(n);
  }

  try {
    if (*validate) return cmd_validate(a1, o);
    if (*check) return cmd_check_proof(a1, a2, o);
    if (*prove) return cmd_prove(a1, a2, o);
    if (*eval) return cmd_eval(a1, a2, a3, o);
    if (*center) return cmd_center(a1, o);
    if (*fix) return cmd_fixpoint(a1, a2, a3, greatest, variant, o);
    if (*datalog) return cmd_datalog(a1, o);
    if (*laws) {
      if (laws->count("--list")) {
        for (const auto& l : law_registry()) std::cout << l.name << "\t" << l.summary << "\n";
        return 0;
      }
      return cmd_laws(a1, topos, o);
    }
  } catch (const parse_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const input_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const type_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const model_error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return 2;
}
