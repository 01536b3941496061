#pragma once

#include <deque>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "homcount/action.hpp"
#include "homcount/base.hpp"
#include "homcount/group.hpp"
#include "homcount/hom.hpp"
#include "homcount/subgroup.hpp"

namespace homcount {

// --- permutation cycle notation ---------------------------------------------

/// "(1 2)(3 4); (1 3)" -> generators as permutations, 1-based points.
/// Degree is the largest point mentioned unless a larger one is forced.
inline std::vector<Perm> parse_cycle_generators(const std::string& text, int* degree_out) {
  std::vector<std::vector<std::vector<int>>> gens_cycles;
  std::vector<std::vector<int>> cycles;
  std::vector<int> cycle;
  int max_point = 0;
  std::string num;
  bool in_cycle = false;
  auto flush_num = [&]() {
    if (!num.empty()) {
      if (!in_cycle) fail_spec("cycle notation: number outside parentheses");
      int p = std::stoi(num);
      if (p < 1) fail_spec("cycle notation: points are 1-based");
      max_point = std::max(max_point, p);
      cycle.push_back(p);
      num.clear();
    }
  };
  auto flush_gen = [&]() {
    flush_num();
    if (in_cycle) fail_spec("cycle notation: unclosed parenthesis");
    gens_cycles.push_back(cycles);
    cycles.clear();
  };
  for (char c : text) {
    if (c >= '0' && c <= '9') {
      num += c;
    } else if (c == '(') {
      if (in_cycle) fail_spec("cycle notation: nested parenthesis");
      in_cycle = true;
    } else if (c == ')') {
      flush_num();
      if (!in_cycle) fail_spec("cycle notation: stray ')'");
      in_cycle = false;
      if (cycle.size() > 0) cycles.push_back(cycle);
      cycle.clear();
    } else if (c == ';') {
      flush_gen();
    } else if (c == ' ' || c == ',' || c == '\t') {
      flush_num();
    } else {
      fail_spec(std::string("cycle notation: unexpected character '") + c + "'");
    }
  }
  flush_gen();
  if (max_point == 0) fail_spec("cycle notation: no points");

  int degree = max_point;
  std::vector<Perm> out;
  for (const auto& gc : gens_cycles) {
    Perm p = perm_identity(degree);
    for (const auto& cyc : gc) {
      for (std::size_t i = 0; i < cyc.size(); ++i) {
        int from = cyc[i] - 1;
        int to = cyc[(i + 1) % cyc.size()] - 1;
        if (p[from] != from) fail_spec("cycle notation: point repeated within a generator");
        p[from] = static_cast<std::uint16_t>(to);
      }
    }
    out.push_back(std::move(p));
  }
  if (degree_out) *degree_out = degree;
  return out;
}

/// One-line cycle notation (1-based); the identity prints as "id".
inline std::string perm_to_cycle_string(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.size(), 0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

// --- Cayley CSV --------------------------------------------------------------

/// CSV with a header row of element labels; row i, column j holds the label
/// of the product (row element) * (column element).
inline FiniteGroup group_from_cayley_csv(const std::string& csv, std::string label,
                                         int order_bound = kDefaultOrderBound) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(csv);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
      while (!cell.empty() && cell.back() == ' ') cell.pop_back();
      cells.push_back(cell);
    }
    rows.push_back(std::move(cells));
  }
  if (rows.empty()) fail_spec(label + ": empty Cayley file");
  const auto& header = rows[0];
  int n = static_cast<int>(header.size());
  if (static_cast<int>(rows.size()) != n + 1)
    fail_spec(label + ": expected " + std::to_string(n) + " table rows");
  std::map<std::string, int> index;
  for (int i = 0; i < n; ++i) {
    if (index.count(header[i])) fail_spec(label + ": duplicate element label " + header[i]);
    index[header[i]] = i;
  }
  std::vector<std::uint16_t> t(std::size_t(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(rows[i + 1].size()) != n) fail_spec(label + ": ragged Cayley row");
    for (int j = 0; j < n; ++j) {
      auto it = index.find(rows[i + 1][j]);
      if (it == index.end()) fail_spec(label + ": unknown element label " + rows[i + 1][j]);
      t[std::size_t(i) * n + j] = static_cast<std::uint16_t>(it->second);
    }
  }
  return make_group(n, std::move(t), std::move(label), order_bound);
}

// --- labels and the catalog ---------------------------------------------------

/// Kind + parameters, as read from labels or group-definition files.
struct GroupSpec {
  std::string kind;
  std::string params;
};

inline std::vector<long long> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<long long> out;
  std::string num;
  for (char c : s) {
    if (c == ',') {
      if (num.empty()) fail_spec(what + ": empty number");
      out.push_back(std::stoll(num));
      num.clear();
    } else if ((c >= '0' && c <= '9') || c == '-') {
      num += c;
    } else if (c != ' ') {
      fail_spec(what + ": unexpected character in integer list");
    }
  }
  if (!num.empty()) out.push_back(std::stoll(num));
  if (out.empty()) fail_spec(what + ": empty integer list");
  return out;
}

/// Builds groups from `family:params` labels and owns them for reuse; sweep
/// drivers iterate the registered entries in insertion order.
class Catalog {
 public:
  explicit Catalog(int order_bound = kDefaultOrderBound) : order_bound_(order_bound) {}

  const FiniteGroup& get(const std::string& raw_label) {
    std::string label = resolve_alias(raw_label);
    auto it = by_label_.find(label);
    if (it != by_label_.end()) return *it->second;
    const FiniteGroup& g = store(build_label(label));
    return g;
  }

  /// Registers a group under its own label and adds it to the sweep list.
  const FiniteGroup& add(FiniteGroup g) {
    auto it = by_label_.find(g.label);
    const FiniteGroup& ref = it != by_label_.end() ? *it->second : store(std::move(g));
    if (std::find(listed_.begin(), listed_.end(), &ref) == listed_.end()) listed_.push_back(&ref);
    return ref;
  }

  const FiniteGroup& add_label(const std::string& label) {
    const FiniteGroup& g = get(label);
    if (std::find(listed_.begin(), listed_.end(), &g) == listed_.end()) listed_.push_back(&g);
    return g;
  }

  const std::vector<const FiniteGroup*>& groups() const { return listed_; }
  int order_bound() const { return order_bound_; }

  /// Parses group-definition stanzas: `group <name>: kind=<kind> params=<...>`.
  void load_definitions(const std::string& text, const std::string& dir = "") {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line = line.substr(0, hash);
      auto nonspace = line.find_first_not_of(" \t\r");
      if (nonspace == std::string::npos) continue;
      line = line.substr(nonspace);
      if (line.rfind("group ", 0) != 0) fail_spec("group file: expected 'group <name>: ...'");
      auto colon = line.find(':');
      if (colon == std::string::npos) fail_spec("group file: missing ':'");
      std::string name = line.substr(6, colon - 6);
      while (!name.empty() && name.back() == ' ') name.pop_back();
      std::string rest = line.substr(colon + 1);
      auto kind_pos = rest.find("kind=");
      auto params_pos = rest.find("params=");
      if (kind_pos == std::string::npos || params_pos == std::string::npos)
        fail_spec("group file: stanza needs kind= and params=");
      std::string kind = rest.substr(kind_pos + 5, rest.find(' ', kind_pos + 5) - kind_pos - 5);
      std::string params = rest.substr(params_pos + 7);
      while (!params.empty() && (params.back() == ' ' || params.back() == '\r')) params.pop_back();
      FiniteGroup g = build_spec(GroupSpec{kind, params}, name, dir);
      g.label = name;
      add(std::move(g));
    }
  }

  void load_definitions_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail_spec("cannot open group file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto slash = path.find_last_of('/');
    load_definitions(ss.str(), slash == std::string::npos ? "" : path.substr(0, slash + 1));
  }

 private:
  static std::string resolve_alias(const std::string& label) {
    if (label == "trivial") return "cyclic:1";
    if (label == "klein") return "abelian:2,2";
    return label;
  }

  const FiniteGroup& store(FiniteGroup g) {
    groups_.push_back(std::move(g));
    const FiniteGroup& ref = groups_.back();
    by_label_[ref.label] = &ref;
    return ref;
  }

  static std::string read_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail_spec("cannot open file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
  }

  FiniteGroup build_spec(const GroupSpec& spec, const std::string& label,
                         const std::string& dir) {
    const std::string& k = spec.kind;
    const std::string& p = spec.params;
    auto ints = [&]() { return parse_int_list(p, label); };
    if (k == "cyclic") return cyclic_group(static_cast<int>(ints()[0]), order_bound_);
    if (k == "abelian-factors" || k == "abelian") return abelian_group(AbelianFactors{ints()}, order_bound_);
    if (k == "dihedral") return dihedral_group(static_cast<int>(ints()[0]), order_bound_);
    if (k == "generalized-quaternion" || k == "quaternion")
      return quaternion_group(static_cast<int>(ints()[0]), order_bound_);
    if (k == "semidihedral") return semidihedral_group(static_cast<int>(ints()[0]), order_bound_);
    if (k == "modular") return modular_group(static_cast<int>(ints()[0]), order_bound_);
    if (k == "metacyclic") {
      auto v = ints();
      if (v.size() != 4) fail_spec(label + ": metacyclic needs n,m,s,t");
      return metacyclic_group(static_cast<int>(v[0]), static_cast<int>(v[1]), v[2], v[3], "",
                              order_bound_);
    }
    if (k == "symmetric") return symmetric_group(static_cast<int>(ints()[0]), order_bound_);
    if (k == "alternating") return alternating_group(static_cast<int>(ints()[0]), order_bound_);
    if (k == "permutations" || k == "perm") {
      std::string text = p;
      if (!p.empty() && p[0] == '@') text = read_file(dir + p.substr(1));
      int degree = 0;
      auto gens = parse_cycle_generators(text, &degree);
      return group_from_permutations(degree, gens, label, order_bound_);
    }
    if (k == "cayley-file" || k == "cayley") {
      if (p.empty() || p[0] != '@') fail_spec(label + ": cayley kind needs @file");
      return group_from_cayley_csv(read_file(dir + p.substr(1)), label, order_bound_);
    }
    if (k == "direct-product") {
      auto star = p.find('*');
      std::string sep = star == std::string::npos ? "," : "*";
      auto cut = p.find(sep);
      if (cut == std::string::npos) fail_spec(label + ": direct-product needs two factors");
      return direct_product(get(p.substr(0, cut)), get(p.substr(cut + 1)), "", order_bound_);
    }
    if (k == "semidirect-ref") {
      // params: <actor>,<target>,<action index> (labels may not contain ',')
      auto c1 = p.find(',');
      auto c2 = p.rfind(',');
      if (c1 == std::string::npos || c2 == c1)
        fail_spec(label + ": semidirect-ref needs actor,target,index");
      return build_semidirect(p.substr(0, c1), p.substr(c1 + 1, c2 - c1 - 1),
                              std::stoi(p.substr(c2 + 1)));
    }
    fail_spec(label + ": unknown kind '" + k + "'");
  }

  FiniteGroup build_semidirect(const std::string& actor_label, const std::string& target_label,
                               int action_index) {
    const FiniteGroup& m = get(actor_label);
    const FiniteGroup& h = get(target_label);
    auto actions = enumerate_actions(m, h, {});
    if (action_index < 0 || action_index >= static_cast<int>(actions.size()))
      fail_spec("semidirect: action index " + std::to_string(action_index) + " out of range (" +
                std::to_string(actions.size()) + " actions)");
    auto sd = semidirect_product(actions[action_index], std::max(order_bound_, m.order * h.order));
    FiniteGroup g = *sd.product;
    g.label = "sdp:" + actor_label + "*" + target_label + "*" + std::to_string(action_index);
    return g;
  }

  FiniteGroup build_central_product(const std::string& a_label, const std::string& b_label) {
    // (A x B) / <(z, w)> where z is A's minimal central involution and w is
    // B's unique central involution (B cyclic of order divisible by 2).
    const FiniteGroup& a = get(a_label);
    const FiniteGroup& b = get(b_label);
    FiniteGroup prod = direct_product(a, b, "", std::max(order_bound_, a.order * b.order));
    Subgroup za = center(a);
    int z = -1;
    for (int x : za.elements())
      if (a.element_orders[x] == 2) {
        z = x;
        break;
      }
    int w = -1;
    Subgroup zb = center(b);
    for (int x : zb.elements())
      if (b.element_orders[x] == 2) {
        w = x;
        break;
      }
    if (z < 0 || w < 0) fail_spec("cprod: factors need central involutions");
    Subgroup n = make_subgroup(prod, {z * b.order + w});
    auto q = quotient(prod, n);
    FiniteGroup g = *q.group;
    g.label = "cprod:" + a_label + "*" + b_label;
    return g;
  }

  FiniteGroup build_label(const std::string& label) {
    auto colon = label.find(':');
    if (colon == std::string::npos) fail_spec("unknown group label '" + label + "'");
    std::string family = label.substr(0, colon);
    std::string params = label.substr(colon + 1);
    if (family == "prod") {
      auto star = params.find('*');
      if (star == std::string::npos) fail_spec(label + ": prod needs two factors");
      FiniteGroup g = direct_product(get(params.substr(0, star)), get(params.substr(star + 1)),
                                     "", order_bound_);
      g.label = label;
      return g;
    }
    if (family == "sdp") {
      auto s1 = params.find('*');
      auto s2 = params.rfind('*');
      if (s1 == std::string::npos || s2 == s1) fail_spec(label + ": sdp:actor*target*index");
      FiniteGroup g = build_semidirect(params.substr(0, s1), params.substr(s1 + 1, s2 - s1 - 1),
                                       std::stoi(params.substr(s2 + 1)));
      g.label = label;
      return g;
    }
    if (family == "cprod") {
      auto star = params.find('*');
      if (star == std::string::npos) fail_spec(label + ": cprod needs two factors");
      FiniteGroup g = build_central_product(params.substr(0, star), params.substr(star + 1));
      g.label = label;
      return g;
    }
    GroupSpec spec;
    spec.kind = family;
    spec.params = params;
    FiniteGroup g = build_spec(spec, label, "");
    g.label = label;
    return g;
  }

  int order_bound_;
  std::deque<FiniteGroup> groups_;
  std::map<std::string, const FiniteGroup*> by_label_;
  std::vector<const FiniteGroup*> listed_;
};

/// The groups the default sweeps quantify over: every isomorphism type of
/// order <= 16, plus the standard families and assorted extensions up to
/// order 24.
inline void register_default_catalog(Catalog& c) {
  for (int n = 1; n <= 24; ++n) c.add_label("cyclic:" + std::to_string(n));
  // abelian, non-cyclic
  for (const char* l :
       {"abelian:2,2", "abelian:4,2", "abelian:2,2,2", "abelian:3,3", "abelian:6,2",
        "abelian:8,2", "abelian:4,4", "abelian:4,2,2", "abelian:2,2,2,2", "abelian:6,3",
        "abelian:10,2", "abelian:12,2", "abelian:6,2,2"})
    c.add_label(l);
  // dihedral family (order 4 is the Klein group, already present)
  for (int n : {6, 8, 10, 12, 14, 16, 18, 20, 22, 24}) c.add_label("dihedral:" + std::to_string(n));
  for (const char* l : {"quaternion:8", "quaternion:16", "semidihedral:16", "modular:16"})
    c.add_label(l);
  for (const char* l : {"symmetric:3", "symmetric:4", "alternating:4"}) c.add_label(l);
  // remaining order-16 types
  c.add_label("prod:dihedral:8*cyclic:2");
  c.add_label("prod:quaternion:8*cyclic:2");
  c.add_label("metacyclic:4,4,3,0");          // C4 : C4
  c.add_label("sdp:cyclic:4*abelian:2,2*1");  // (C2 x C2) : C4
  c.add_label("cprod:dihedral:8*cyclic:4");   // D8 o C4 central product
  // dicyclic groups
  c.add_label("metacyclic:6,2,5,3");    // dicyclic of order 12
  c.add_label("metacyclic:10,2,9,5");   // dicyclic of order 20
  c.add_label("metacyclic:12,2,11,6");  // dicyclic of order 24
  // assorted nonabelian groups of order 18..24
  c.add_label("prod:cyclic:3*symmetric:3");
  c.add_label("sdp:cyclic:2*abelian:3,3*7");  // generalized dihedral: action 7 is inversion
  c.add_label("sdp:cyclic:4*cyclic:5*1");     // Frobenius group of order 20
  c.add_label("sdp:cyclic:3*cyclic:7*1");     // nonabelian of order 21
  c.add_label("prod:alternating:4*cyclic:2");
  c.add_label("prod:dihedral:12*cyclic:2");
  c.add_label("prod:dihedral:8*cyclic:3");
  c.add_label("prod:quaternion:8*cyclic:3");
  c.add_label("sdp:cyclic:3*quaternion:8*1");  // SL(2,3) when the action is faithful
}

}  // namespace homcount
