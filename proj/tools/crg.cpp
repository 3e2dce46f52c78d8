// crg: command-line front end.  Exit 0 when every check passes, 1 on a
// failed verdict, 2 on budget or configuration errors.

#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "crg/runs.hpp"

namespace {

std::vector<crg::Rational> parse_coeffs(const std::string& text) {
  std::vector<crg::Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(crg::parse_rational(item));
  return out;
}

std::optional<std::vector<crg::Rational>> maybe_coeffs(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_coeffs(text);
}

int emit(const crg::Report& rep, bool json) {
  if (json) std::cout << rep.to_json().dump(2) << "\n";
  else std::cout << rep.to_text();
  return rep.all_pass() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations for the rank-4 complex reflection groups"};
  app.set_version_flag("--version", crg::kVersion);
  app.require_subcommand(1);

  crg::RunConfig cfg;
  std::string catalog_flag;
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_flag("--json", cfg.json, "Machine-readable output");
  app.add_flag("--timings", cfg.timings, "Report wall-clock sections (breaks byte reproducibility)");
  app.add_option("--catalog", catalog_flag, "Catalog directory (else CRG_CATALOG, else the shipped catalog)");
  app.add_option("--degree-cap", cfg.degree_cap, "Largest polynomial degree searched")->capture_default_str();
  app.add_option("--closure-cap", cfg.closure_cap, "Largest group enumerated")->capture_default_str();
  app.add_option("--gb-steps", cfg.gb_steps, "S-pair budget per Groebner run")->capture_default_str();

  std::string group_name, only, family = "F", slice = "a=1", gamma = "derived", coeffs, a = "0", b = "1", c, dir;
  int degree = 0, d = 0, e = 0;
  bool explicit_flag = false;

  auto* group = app.add_subcommand("group", "Build or verify a reflection group")->require_subcommand(1);
  auto* group_build = group->add_subcommand("build", "Enumerate the group");
  group_build->add_option("group", group_name)->required();
  auto* group_verify = group->add_subcommand("verify", "Check numerology against the catalog");
  group_verify->add_option("group", group_name)->required();

  auto* catalog = app.add_subcommand("catalog", "Inspect the catalog")->require_subcommand(1);
  auto* catalog_list = catalog->add_subcommand("list", "List catalog groups");
  auto* catalog_k3 = catalog->add_subcommand("k3", "List the pairs (W, d) with K3 quotient");
  auto* catalog_export = catalog->add_subcommand("export", "Write the builtin table groups as catalog files");
  catalog_export->add_option("dir", dir)->required();

  auto* invariants = app.add_subcommand("invariants", "Invariants of one degree");
  invariants->add_option("group", group_name)->required();
  invariants->add_option("--degree", degree)->required();
  invariants->add_flag("--explicit", explicit_flag, "Print the basis");

  auto* jrel = app.add_subcommand("jrel", "Express J^e in the fundamental invariants");
  jrel->add_option("group", group_name)->required();

  auto* quotient = app.add_subcommand("quotient", "Weighted projective presentation of Z(f)/Gamma");
  quotient->add_option("group", group_name)->required();
  quotient->add_option("--d", d)->required();
  quotient->add_option("--gamma", gamma)->check(CLI::IsMember({"derived", "sl"}))->capture_default_str();
  quotient->add_flag("--explicit", explicit_flag, "Compute the equations");
  quotient->add_option("--coeffs", coeffs, "Coefficients of f beyond the fundamental invariant");

  auto* springer = app.add_subcommand("springer", "Regular eigenvectors; without --e, sweep the singular weight positions");
  springer->add_option("group", group_name)->required();
  springer->add_option("--e", e);

  auto* pencil = app.add_subcommand("pencil", "The pencil F_{a,b,c}")->require_subcommand(1);
  auto* pencil_special = pencil->add_subcommand("special", "Eliminate the members with a singular point off the orbit");
  pencil_special->add_option("--family", family)->capture_default_str();
  pencil_special->add_option("--slice", slice)->capture_default_str();
  auto* pencil_certify = pencil->add_subcommand("certify", "Certify A1 singularities of F_{0,b,c}");
  pencil_certify->add_option("--family", family)->capture_default_str();
  pencil_certify->add_option("--a", a)->capture_default_str();
  pencil_certify->add_option("--b", b)->capture_default_str();
  pencil_certify->add_option("--c", c)->required();

  auto* surface = app.add_subcommand("surface", "Invariant surfaces")->require_subcommand(1);
  auto* surface_lines = surface->add_subcommand("lines", "Check that Z(f) contains no line P(H1 cap H2)");
  surface_lines->add_option("group", group_name)->required();
  surface_lines->add_option("--degree", degree, "Defaults to the smallest K3 degree of the group");
  surface_lines->add_option("--coeffs", coeffs, "Coefficients on the invariant basis");

  auto* verify_tables = app.add_subcommand("verify-tables", "Check both reference tables");
  verify_tables->add_option("--only", only, "Restrict to one group");

  auto* reproduce = app.add_subcommand("reproduce-elimination", "Recompute the special locus of the pencil");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    cfg.catalog = crg::resolve_catalog_path(catalog_flag);
    auto make = [&](std::string name) { return crg::Report(std::move(name), cfg); };
    auto cat = [&] { return crg::Catalog(cfg.catalog); };

    if (group_build->parsed()) {
      auto rep = make("group build");
      crg::run_group_build(rep, cfg, cat().find(group_name));
      return emit(rep, cfg.json);
    }
    if (group_verify->parsed()) {
      auto rep = make("group verify");
      crg::run_group_verify(rep, cfg, cat().find(group_name));
      return emit(rep, cfg.json);
    }
    if (catalog_list->parsed()) {
      auto rep = make("catalog list");
      crg::run_catalog_list(rep, cat());
      return emit(rep, cfg.json);
    }
    if (catalog_k3->parsed()) {
      auto rep = make("catalog k3");
      crg::run_catalog_k3(rep);
      return emit(rep, cfg.json);
    }
    if (catalog_export->parsed()) {
      auto rep = make("catalog export");
      const auto specs = crg::builtin_table_specs();
      crg::write_catalog(dir, specs);
      const crg::Catalog round(dir);
      bool same = round.specs().size() == specs.size();
      for (std::size_t i = 0; same && i < specs.size(); ++i)
        same = crg::to_json(round.specs()[i]) == crg::to_json(specs[i]);
      rep.line("wrote " + std::to_string(specs.size()) + " files to " + dir);
      rep.check("exported catalog reloads identically", same);
      return emit(rep, cfg.json);
    }
    if (invariants->parsed()) {
      auto rep = make("invariants");
      crg::run_invariants(rep, cfg, cat().find(group_name), degree, explicit_flag);
      return emit(rep, cfg.json);
    }
    if (jrel->parsed()) {
      auto rep = make("jrel");
      crg::run_jrel(rep, cfg, cat().find(group_name));
      return emit(rep, cfg.json);
    }
    if (quotient->parsed()) {
      auto rep = make("quotient");
      crg::run_quotient(rep, cfg, cat().find(group_name), d, crg::parse_gamma(gamma), explicit_flag, maybe_coeffs(coeffs));
      return emit(rep, cfg.json);
    }
    if (springer->parsed()) {
      auto rep = make(e ? "springer" : "springer sweep");
      if (e) crg::run_springer(rep, cfg, cat().find(group_name), e);
      else crg::run_springer_sweep(rep, cfg, cat().find(group_name));
      return emit(rep, cfg.json);
    }
    if (pencil_special->parsed()) {
      auto rep = make("pencil special");
      crg::run_pencil_special(rep, cfg, family, slice);
      return emit(rep, cfg.json);
    }
    if (pencil_certify->parsed()) {
      auto rep = make("pencil certify");
      crg::run_pencil_certify(rep, cfg, family, crg::parse_rational(a), crg::parse_rational(b), crg::parse_rational(c));
      return emit(rep, cfg.json);
    }
    if (surface_lines->parsed()) {
      auto rep = make("surface lines");
      const auto spec = cat().find(group_name);
      int deg = degree;
      if (!deg) {
        for (const auto& k : crg::k3_catalog())
          if (!deg && crg::canonical_group_name(k.group) == crg::canonical_group_name(spec.name) &&
              k.d.find_first_not_of("0123456789") == std::string::npos)
            deg = std::stoi(k.d);
        if (!deg) throw crg::ConfigError(spec.name + " has no K3 degree; pass --degree");
      }
      crg::run_surface_lines(rep, cfg, spec, deg, maybe_coeffs(coeffs));
      return emit(rep, cfg.json);
    }
    if (verify_tables->parsed()) {
      auto rep = make("verify-tables");
      crg::run_verify_tables(rep, cfg, cat(), only);
      return emit(rep, cfg.json);
    }
    if (reproduce->parsed()) {
      auto rep = make("reproduce-elimination");
      crg::run_reproduce_elimination(rep, cfg);
      return emit(rep, cfg.json);
    }
  } catch (const crg::BudgetExceeded& e) {
    std::cerr << "crg: budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const crg::Error& e) {
    std::cerr << "crg: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
