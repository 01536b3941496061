#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homcount/action.hpp"
#include "homcount/base.hpp"
#include "homcount/catalog.hpp"
#include "homcount/checkers.hpp"
#include "homcount/enumerate.hpp"
#include "homcount/group.hpp"
#include "homcount/subgroup.hpp"
#include "homcount/tails.hpp"

namespace homcount {

struct CliConfig {
  std::vector<std::string> catalog_paths;
  int order_bound = kDefaultOrderBound;
  int subgroup_bound = kDefaultSubgroupBound;
  int aut_bound = kDefaultAutBound;
  std::uint64_t budget = kDefaultBudget;
  int workers = 0;  // 0 = hardware concurrency
  std::string log_path;
  bool json_output = false;
  bool include_timings = false;
};

inline void apply_config_file(CliConfig& cfg, const std::string& path) {
  std::ifstream f(path);
  if (!f) fail_spec("cannot open config file: " + path);
  std::string line;
  while (std::getline(f, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    auto trim = [](std::string s) {
      while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.erase(s.begin());
      while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.pop_back();
      return s;
    };
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (key.empty()) continue;
    if (key == "order_bound") cfg.order_bound = std::stoi(val);
    else if (key == "subgroup_bound") cfg.subgroup_bound = std::stoi(val);
    else if (key == "aut_bound") cfg.aut_bound = std::stoi(val);
    else if (key == "budget") cfg.budget = std::stoull(val);
    else if (key == "workers") cfg.workers = std::stoi(val);
    else if (key == "log") cfg.log_path = val;
    else if (key == "catalog") cfg.catalog_paths.push_back(val);
    else if (key == "format") cfg.json_output = val == "json";
    else fail_spec("config: unknown key '" + key + "'");
  }
  if (cfg.workers < 0) fail_spec("config: workers must be >= 1");
  if (cfg.order_bound <= 0) fail_spec("config: order_bound must be positive");
}

namespace cli_detail {

inline std::string inputs_compact(const json& inputs) {
  std::string s;
  for (auto& [k, v] : inputs.items()) {
    if (!s.empty()) s += " ";
    s += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
  }
  return s;
}

class Reporter {
 public:
  Reporter(std::ostream& out, const CliConfig& cfg) : out_(out), cfg_(cfg) {}

  void emit(const CheckReport& r) {
    if (r.verdict == Verdict::fail) any_fail_ = true;
    if (cfg_.json_output) {
      out_ << report_to_json(r, cfg_.include_timings).dump() << "\n";
      return;
    }
    if (!header_done_) {
      out_ << std::left << std::setw(20) << "CHECK" << std::setw(10) << "COUNT" << std::setw(10)
           << "DIVISOR" << std::setw(14) << "VERDICT"
           << "INPUTS" << "\n";
      header_done_ = true;
    }
    out_ << std::left << std::setw(20) << r.check_name << std::setw(10) << r.measured_count
         << std::setw(10) << r.required_divisor << std::setw(14) << verdict_name(r.verdict)
         << inputs_compact(r.inputs) << "\n";
    if (r.witness && r.verdict != Verdict::pass) out_ << "  note: " << *r.witness << "\n";
  }

  void log_to_file(const std::vector<CheckReport>& rs) {
    if (cfg_.log_path.empty()) return;
    std::ofstream f(cfg_.log_path, std::ios::app);
    if (!f) fail_spec("cannot open log file: " + cfg_.log_path);
    for (const auto& r : rs) f << report_to_json(r, cfg_.include_timings).dump() << "\n";
  }

  bool any_fail() const { return any_fail_; }

 private:
  std::ostream& out_;
  const CliConfig& cfg_;
  bool header_done_ = false;
  bool any_fail_ = false;
};

inline Subgroup select_subgroup(const FiniteGroup& g, int order, int index, int bound) {
  std::vector<Subgroup> matching;
  for (auto& s : all_subgroups(g, bound))
    if (order <= 0 || s.size() == order) matching.push_back(std::move(s));
  if (matching.empty()) fail_spec("no subgroup of order " + std::to_string(order));
  if (index < 0 || index >= static_cast<int>(matching.size()))
    fail_spec("subgroup index out of range: " + std::to_string(index) + " of " +
              std::to_string(matching.size()));
  return matching[index];
}

inline Homomorphism select_epi(const FiniteGroup& f, const FiniteGroup& m, int index,
                               std::uint64_t budget) {
  EnumOptions opt;
  opt.budget = budget;
  opt.surjective_only = true;
  auto epis = enumerate_homs(f, m, opt);
  if (epis.empty()) fail_spec("no epimorphism " + f.label + " -> " + m.label);
  if (index < 0 || index >= static_cast<int>(epis.size()))
    fail_spec("epi index out of range: " + std::to_string(index) + " of " +
              std::to_string(epis.size()));
  return epis[index];
}

}  // namespace cli_detail

/// Executes one CLI invocation; returns the process exit status
/// (0 all-pass, 1 any fail, 2 usage or configuration error).
inline int run_command(std::vector<std::string> args, std::ostream& out = std::cout,
                       std::ostream& err = std::cerr) {
  CLI::App app{"finite-group homomorphism counting and divisibility checks"};
  app.require_subcommand(1);

  CliConfig cfg;
  std::string config_path;
  if (const char* env = std::getenv("HOMCOUNT_CONFIG")) config_path = env;
  app.add_option("--config", config_path, "key=value config file");
  app.add_flag("--json", cfg.json_output, "machine output (JSON lines)");
  app.add_flag("--timings", cfg.include_timings, "include elapsed_ms in machine output");
  app.add_option("--workers", cfg.workers, "worker threads (0 = auto)");
  app.add_option("--budget", cfg.budget, "candidate-tuple budget per enumeration");
  app.add_option("--order-bound", cfg.order_bound, "max group order for construction");
  app.add_option("--catalog", cfg.catalog_paths, "extra group-definition file")->allow_extra_args(false);
  app.add_option("--out", cfg.log_path, "append machine log (JSON lines) to this file");

  // ---- check ----
  auto* check = app.add_subcommand("check", "run one checker");
  std::string arg_group, arg_m, arg_g, arg_f, arg_h, arg_action = "all", arg_mode = "restricted";
  std::string arg_family = "homs", arg_phi = "all";
  long long arg_n = 1;
  int arg_h_order = -1, arg_h_index = 0, arg_epi = 0, arg_n_order = -1, arg_n_index = 0;
  bool arg_relaxed = false, arg_no_dedup = false;

  auto* c_frob = check->add_subcommand("frobenius", "x^n = 1 count vs gcd(|G|, n)");
  c_frob->add_option("--group", arg_group)->required();
  c_frob->add_option("--n", arg_n)->required();

  auto* c_yosh = check->add_subcommand("yoshida", "|Hom(M, G)| vs gcd(|G|, |M|)");
  c_yosh->add_option("--M", arg_m)->required();
  c_yosh->add_option("--G", arg_g)->required();

  auto* c_crossed = check->add_subcommand("crossed", "crossed-hom count divisibility");
  c_crossed->add_option("--M", arg_m)->required();
  c_crossed->add_option("--H", arg_h)->required();
  c_crossed->add_option("--action", arg_action, "action index or 'all'");
  c_crossed->add_option("--mode", arg_mode)->check(CLI::IsMember({"restricted", "gcd"}));
  c_crossed->add_flag("--no-dedup", arg_no_dedup, "one report per action, not per class");

  auto* c_brauer = check->add_subcommand("brauer", "Brauer conjugacy of |N|-th powers");
  c_brauer->add_option("--group", arg_group)->required();
  c_brauer->add_option("--N-order", arg_n_order, "normal subgroup order (default: all)");
  c_brauer->add_option("--N-index", arg_n_index);

  auto* c_tail = check->add_subcommand("lemma-tail", "tail class size vs crossed homs on the core");
  c_tail->add_option("--F", arg_f)->required();
  c_tail->add_option("--M", arg_m)->required();
  c_tail->add_option("--G", arg_g)->required();
  c_tail->add_option("--H-order", arg_h_order)->required();
  c_tail->add_option("--H-index", arg_h_index);
  c_tail->add_option("--epi", arg_epi, "which epimorphism F -> M");
  c_tail->add_option("--phi", arg_phi, "family index or 'all'");

  auto* c_fam = check->add_subcommand("hom-family", "family divisibility by |H|");
  c_fam->add_option("--family", arg_family)->check(CLI::IsMember({"homs", "sections"}));
  c_fam->add_option("--F", arg_f);
  c_fam->add_option("--M", arg_m)->required();
  c_fam->add_option("--G", arg_g);
  c_fam->add_option("--H", arg_h, "target group (sections mode)");
  c_fam->add_option("--H-order", arg_h_order);
  c_fam->add_option("--H-index", arg_h_index);
  c_fam->add_option("--epi", arg_epi);
  c_fam->add_option("--action", arg_action, "action index (sections mode)");
  c_fam->add_flag("--relaxed", arg_relaxed, "use the per-core relative hypotheses");

  // ---- count ----
  auto* count = app.add_subcommand("count", "print exact counts");
  auto* n_homs = count->add_subcommand("homs", "|Hom(F, G)|");
  n_homs->add_option("--F", arg_f)->required();
  n_homs->add_option("--G", arg_g)->required();
  auto* n_crossed = count->add_subcommand("crossed", "crossed homs per action");
  n_crossed->add_option("--M", arg_m)->required();
  n_crossed->add_option("--H", arg_h)->required();
  n_crossed->add_option("--action", arg_action, "action index or 'all'");
  bool arg_dedup = false;
  n_crossed->add_flag("--dedup", arg_dedup, "one count per action class");
  auto* n_roots = count->add_subcommand("roots", "|{x : x^n = 1}|");
  n_roots->add_option("--group", arg_group)->required();
  n_roots->add_option("--n", arg_n)->required();

  // ---- sweep ----
  auto* sweep = app.add_subcommand("sweep", "catalog-wide verification");
  SweepSpec sw;
  std::string arg_nmk, arg_m_list;
  auto add_sweep_common = [&](CLI::App* s) {
    s->add_option("--max-g", sw.max_g);
    s->add_option("--max-m", sw.max_m);
    s->add_option("--max-h", sw.max_h);
    s->add_option("--out", sw.out_path, "append JSONL reports to file");
  };
  auto* s_frob = sweep->add_subcommand("frobenius", "all (G, n <= |G|)");
  add_sweep_common(s_frob);
  auto* s_yosh = sweep->add_subcommand("yoshida", "all abelian M, all G");
  add_sweep_common(s_yosh);
  auto* s_ray = sweep->add_subcommand("restricted-ay", "crossed counts vs |H|, |H| dividing |M|");
  add_sweep_common(s_ray);
  s_ray->add_option("--M-list", arg_m_list, "';'-separated abelian actor labels");
  s_ray->add_flag("--no-dedup", arg_no_dedup, "quantify over actions, not classes");
  auto* s_main = sweep->add_subcommand("main-theorem", "crossed counts vs gcd(H, ord M)");
  add_sweep_common(s_main);
  s_main->add_option("--p", sw.p, "prime");
  s_main->add_option("--nmk", arg_nmk, "exponents n,m,k of Z/p^n x (Z/p)^m x (Z/p^2)^k")
      ->required();
  s_main->add_flag("--scope-only", sw.scope_only, "only H with |H| dividing ord M");
  s_main->add_flag("--no-dedup", arg_no_dedup);
  auto* s_eac = sweep->add_subcommand("elem-abelian-center",
                                      "p-groups whose non-abelian subgroups have elementary "
                                      "abelian centers");
  add_sweep_common(s_eac);
  s_eac->add_option("--p", sw.p, "prime");
  s_eac->add_flag("--no-dedup", arg_no_dedup);

  // ---- catalog ----
  auto* cat = app.add_subcommand("catalog", "inspect the group catalog");
  auto* cat_list = cat->add_subcommand("list", "all registered groups");
  auto* cat_show = cat->add_subcommand("show", "details for one label");
  std::string arg_show_label;
  cat_show->add_option("label", arg_show_label)->required();

  std::vector<const char*> argv;
  argv.push_back("homcount");
  for (auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!config_path.empty()) apply_config_file(cfg, config_path);

    Catalog catalog(cfg.order_bound);
    register_default_catalog(catalog);
    for (const auto& p : cfg.catalog_paths) catalog.load_definitions_file(p);

    cli_detail::Reporter reporter(out, cfg);
    std::vector<CheckReport> reports;
    auto finish = [&]() -> int {
      for (const auto& r : reports) reporter.emit(r);
      reporter.log_to_file(reports);
      return reporter.any_fail() ? 1 : 0;
    };

    EnumOptions eopt;
    eopt.budget = cfg.budget;
    eopt.workers = std::max(1, cfg.workers);

    // ---- check ----
    if (c_frob->parsed()) {
      reports.push_back(check_frobenius(catalog.get(arg_group), arg_n));
      return finish();
    }
    if (c_yosh->parsed()) {
      reports.push_back(check_yoshida(catalog.get(arg_m), catalog.get(arg_g), eopt));
      return finish();
    }
    if (c_crossed->parsed() || n_crossed->parsed()) {
      const FiniteGroup& m = catalog.get(arg_m);
      const FiniteGroup& h = catalog.get(arg_h);
      ActionEnumOptions aopt;
      aopt.dedup = n_crossed->parsed() ? arg_dedup : !arg_no_dedup;
      aopt.budget = cfg.budget;
      aopt.aut_bound = std::max(cfg.aut_bound, h.order);
      auto actions = enumerate_actions(m, h, aopt);
      std::vector<int> indices;
      if (arg_action == "all") {
        for (int i = 0; i < static_cast<int>(actions.size()); ++i) indices.push_back(i);
      } else {
        int idx = std::stoi(arg_action);
        if (idx < 0 || idx >= static_cast<int>(actions.size()))
          fail_spec("action index out of range: " + arg_action + " of " +
                    std::to_string(actions.size()));
        indices.push_back(idx);
      }
      SubgroupOrderCache sub_cache;
      for (int i : indices) {
        if (n_crossed->parsed()) {
          long long c = count_crossed_homs(actions[i], eopt);
          if (cfg.json_output) {
            json j{{"M", m.label}, {"H", h.label}, {"action", i},
                   {"class_size", actions[i].class_size}, {"count", c}};
            out << j.dump() << "\n";
          } else {
            out << "action " << i << " (class size " << actions[i].class_size
                << "): " << c << " crossed homomorphisms\n";
          }
        } else {
          auto mode = arg_mode == "gcd" ? CrossedMode::gcd : CrossedMode::restricted;
          auto r = check_crossed_divisibility(actions[i], mode, eopt, &sub_cache);
          r.inputs["action_index"] = i;
          reports.push_back(std::move(r));
        }
      }
      return n_crossed->parsed() ? 0 : finish();
    }
    if (c_brauer->parsed()) {
      const FiniteGroup& g = catalog.get(arg_group);
      std::vector<Subgroup> normals;
      for (auto& s : all_subgroups(g, cfg.subgroup_bound))
        if ((arg_n_order <= 0 || s.size() == arg_n_order) && is_normal(s))
          normals.push_back(std::move(s));
      if (normals.empty()) fail_spec("no matching normal subgroup");
      if (arg_n_order > 0) {
        if (arg_n_index < 0 || arg_n_index >= static_cast<int>(normals.size()))
          fail_spec("N index out of range");
        normals = {normals[arg_n_index]};
      }
      for (std::size_t i = 0; i < normals.size(); ++i)
        reports.push_back(check_brauer(g, normals[i], {{"N_index", i}}));
      return finish();
    }
    if (c_tail->parsed()) {
      const FiniteGroup& f = catalog.get(arg_f);
      const FiniteGroup& m = catalog.get(arg_m);
      const FiniteGroup& g = catalog.get(arg_g);
      Subgroup h = cli_detail::select_subgroup(g, arg_h_order, arg_h_index, cfg.subgroup_bound);
      Homomorphism deg = cli_detail::select_epi(f, m, arg_epi, cfg.budget);
      Quadruple quad = make_quadruple(f, std::move(deg), g, std::move(h));
      auto family = enumerate_homs(f, g, eopt);
      std::vector<int> phis;
      if (arg_phi == "all") {
        for (int i = 0; i < static_cast<int>(family.size()); ++i) phis.push_back(i);
      } else {
        phis.push_back(std::stoi(arg_phi));
      }
      for (int i : phis) {
        if (i < 0 || i >= static_cast<int>(family.size())) fail_spec("phi index out of range");
        reports.push_back(check_lemma_tail(quad, family, family[i], {{"phi", i}}, eopt));
      }
      return finish();
    }
    if (c_fam->parsed()) {
      HomFamilyOptions fopt;
      fopt.relaxed = arg_relaxed;
      fopt.enumeration = eopt;
      if (arg_family == "sections") {
        if (arg_h.empty()) fail_spec("sections mode needs --H");
        const FiniteGroup& m = catalog.get(arg_m);
        const FiniteGroup& h = catalog.get(arg_h);
        ActionEnumOptions aopt;
        aopt.budget = cfg.budget;
        aopt.aut_bound = std::max(cfg.aut_bound, h.order);
        auto actions = enumerate_actions(m, h, aopt);
        int idx = arg_action == "all" ? 0 : std::stoi(arg_action);
        if (idx < 0 || idx >= static_cast<int>(actions.size()))
          fail_spec("action index out of range");
        auto sd = semidirect_product(actions[idx], std::max(cfg.order_bound, m.order * h.order));
        auto family = enumerate_sections(sd, eopt);
        Quadruple quad = make_quadruple(m, identity_hom(m), *sd.product,
                                        make_subgroup(*sd.product, [&] {
                                          std::vector<int> gens;
                                          for (int x = 0; x < h.order; ++x)
                                            gens.push_back(sd.embed_h.images[x]);
                                          return gens;
                                        }()));
        auto r = check_hom_family(quad, family, fopt);
        r.inputs["H"] = h.label;
        r.inputs["action_index"] = idx;
        reports.push_back(std::move(r));
        return finish();
      }
      if (arg_f.empty() || arg_g.empty()) fail_spec("homs mode needs --F and --G");
      const FiniteGroup& f = catalog.get(arg_f);
      const FiniteGroup& m = catalog.get(arg_m);
      const FiniteGroup& g = catalog.get(arg_g);
      if (arg_h_order <= 0) fail_spec("homs mode needs --H-order");
      Subgroup h = cli_detail::select_subgroup(g, arg_h_order, arg_h_index, cfg.subgroup_bound);
      Homomorphism deg = cli_detail::select_epi(f, m, arg_epi, cfg.budget);
      Quadruple quad = make_quadruple(f, std::move(deg), g, std::move(h));
      auto family = enumerate_homs(f, g, eopt);
      reports.push_back(check_hom_family(quad, family, fopt));
      return finish();
    }

    // ---- count ----
    if (n_homs->parsed()) {
      long long c = static_cast<long long>(
          enumerate_homs(catalog.get(arg_f), catalog.get(arg_g), eopt).size());
      if (cfg.json_output)
        out << json{{"F", arg_f}, {"G", arg_g}, {"count", c}}.dump() << "\n";
      else
        out << c << "\n";
      return 0;
    }
    if (n_roots->parsed()) {
      long long c = count_nth_roots(catalog.get(arg_group), arg_n);
      if (cfg.json_output)
        out << json{{"group", arg_group}, {"n", arg_n}, {"count", c}}.dump() << "\n";
      else
        out << c << "\n";
      return 0;
    }

    // ---- sweep ----
    for (auto* s : {s_frob, s_yosh, s_ray, s_main, s_eac}) {
      if (!s->parsed()) continue;
      if (s == s_frob) sw.kind = SweepKind::frobenius;
      if (s == s_yosh) sw.kind = SweepKind::yoshida;
      if (s == s_ray) sw.kind = SweepKind::restricted_ay;
      if (s == s_main) sw.kind = SweepKind::main_theorem;
      if (s == s_eac) sw.kind = SweepKind::elem_abelian_center;
      sw.dedup_actions = !arg_no_dedup;
      sw.budget = cfg.budget;
      sw.workers = cfg.workers;
      sw.include_timings = cfg.include_timings;
      if (!arg_nmk.empty()) sw.nmk = parse_int_list(arg_nmk, "--nmk");
      if (sw.kind == SweepKind::restricted_ay) {
        if (arg_m_list.empty()) {
          sw.m_labels = {"abelian:2,2", "abelian:4,2", "abelian:4,4", "abelian:8,2",
                         "abelian:4,2,2"};
        } else {
          // Labels contain commas, so the list separator is ';'.
          sw.m_labels.clear();
          std::string tok;
          for (char ch : arg_m_list + ";") {
            if (ch == ';') {
              if (!tok.empty()) sw.m_labels.push_back(tok);
              tok.clear();
            } else {
              tok += ch;
            }
          }
        }
      }
      auto result = run_sweep(sw, catalog);
      for (const auto& r : result.reports) reporter.emit(r);
      reporter.log_to_file(result.reports);
      err << "sweep " << sweep_name(sw.kind) << ": " << result.summary.cells << " cells, "
          << result.summary.reports << " reports, " << result.summary.passes << " pass, "
          << result.summary.fails << " fail, " << result.summary.vacuous << " vacuous, "
          << result.summary.skipped << " skipped";
      if (!result.summary.slowest_cell.empty())
        err << "; slowest: " << result.summary.slowest_cell << " ("
            << static_cast<long long>(result.summary.slowest_ms) << " ms)";
      err << "\n";
      return result.summary.fails > 0 ? 1 : 0;
    }

    // ---- catalog ----
    if (cat_list->parsed()) {
      for (const FiniteGroup* g : catalog.groups()) {
        if (cfg.json_output) {
          out << json{{"label", g->label}, {"order", g->order}, {"abelian", g->abelian}}.dump()
              << "\n";
        } else {
          out << std::left << std::setw(32) << g->label << std::setw(8) << g->order
              << (g->abelian ? "abelian" : "") << "\n";
        }
      }
      return 0;
    }
    if (cat_show->parsed()) {
      const FiniteGroup& g = catalog.get(arg_show_label);
      json j;
      j["label"] = g.label;
      j["order"] = g.order;
      j["abelian"] = g.abelian;
      j["center_order"] = center(g).size();
      j["commutator_order"] = commutator_subgroup(g).size();
      std::map<int, int> hist;
      for (int o : g.element_orders) ++hist[o];
      json jh = json::object();
      for (auto& [o, c] : hist) jh[std::to_string(o)] = c;
      j["element_orders"] = jh;
      if (g.order <= cfg.subgroup_bound) {
        std::vector<int> orders;
        for (const auto& s : all_subgroups(g, cfg.subgroup_bound)) orders.push_back(s.size());
        j["subgroup_orders"] = orders;
      }
      if (cfg.json_output) {
        out << j.dump() << "\n";
      } else {
        for (auto& [k, v] : j.items()) out << std::left << std::setw(18) << k << v.dump() << "\n";
      }
      return 0;
    }

    err << "usage error: no action selected\n";
    return 2;
  } catch (const budget_error& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return 2;
  } catch (const error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace homcount
