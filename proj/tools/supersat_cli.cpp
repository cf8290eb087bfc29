// Command-line front end. Every run prints one JSON document (or a CSV table
// with --csv) and a manifest naming the subcommand, its parameters, the tool
// version and a CRC-32 of the primary output. Wall-clock timings are left out
// so that equal parameters give byte-identical output.
//
// Exit codes: 0 ok, 1 verification failed, 2 usage or input error,
// 3 inconclusive (a search budget ran out).

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "supersat/supersat.hpp"

namespace {

using nlohmann::json;
using namespace supersat;

enum Exit { kOk = 0, kFail = 1, kUsage = 2, kInconclusive = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

json exact(const Integer& v) {
  if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
    return v.convert_to<std::int64_t>();
  return v.str();
}
json exact(const Rational& v) { return to_fraction_string(v); }

json histogram_json(const std::map<std::size_t, std::uint64_t>& h) {
  json out = json::object();
  for (const auto& [c, n] : h) out[std::to_string(c)] = n;
  return out;
}

std::vector<std::size_t> parse_list(const std::string& text, const char* what) {
  try {
    return parse_residue_list(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string(what) + ": " + e.what());
  }
}

Side parse_side(const std::string& s) {
  if (s == "X" || s == "x") return Side::X;
  if (s == "Y" || s == "y") return Side::Y;
  throw UsageError("side must be X or Y");
}

json graph_stats(const BipartiteGraph& g, unsigned threads) {
  json j;
  j["n_x"] = g.n_x();
  j["n_y"] = g.n_y();
  j["m"] = g.edge_count();
  const auto reg = is_regular(g);
  j["regular_degree"] = reg ? json(*reg) : json(nullptr);
  j["codegree_histogram_x"] = histogram_json(codegree_histogram(g, Side::X, threads));
  j["c4"] = count_c4(g, Side::X, threads);
  if (g.n_x() == g.n_y() && g.n_x() >= 2) {
    j["improved_bound"] = exact(improved_lower_bound(g.n_x(), g.edge_count(), 2, 2));
    j["plain_bound"] = exact(plain_lower_bound(g.n_x(), g.edge_count(), 2, 2));
  }
  return j;
}

json subset_json(const CyclicSubset& d) {
  const auto s = classify_difference_structure(d);
  json j;
  j["n"] = d.modulus();
  j["D"] = d.elements();
  j["classification"] = to_string(s.kind);
  j["lambda"] = s.lambda;
  j["completions"] = is_planar(d) && d.modulus() % 2 == 1 ? completion_elements(d) : std::vector<std::size_t>{};
  return j;
}

json oracle_json(const OracleResult& r) {
  json j;
  j["n"] = r.n;
  j["m"] = r.m;
  j["status"] = to_string(r.status);
  j["minimum"] = r.minimum ? json(*r.minimum) : json(nullptr);
  j["improved_bound"] = exact(r.improved_bound);
  j["nodes"] = r.nodes;
  if (r.witness) {
    json edges = json::array();
    for (const auto& e : r.witness->edges()) edges.push_back({e.x, e.y});
    j["witness"] = edges;
  }
  return j;
}

/// Options given on the command line for `app` and every parsed subcommand, by long name.
void collect_parameters(const CLI::App* app, json& params) {
  for (const CLI::Option* opt : app->get_options()) {
    if (opt->count() == 0 || opt->get_lnames().empty()) continue;
    const auto& name = opt->get_lnames().front();
    if (name == "help") continue;
    const auto& res = opt->results();
    if (opt->get_type_size() == 0)
      params[name] = true;
    else
      params[name] = res.size() == 1 ? json(res.front()) : json(res);
  }
  for (const CLI::App* sub : app->get_subcommands()) collect_parameters(sub, params);
}

std::string command_path(const CLI::App* app) {
  std::string path;
  for (const CLI::App* sub : app->get_subcommands()) {
    path += (path.empty() ? "" : " ") + sub->get_name();
    const auto rest = command_path(sub);
    if (!rest.empty()) path += " " + rest;
  }
  return path;
}

std::string crc_hex(const std::string& text) {
  std::ostringstream os;
  os << std::hex << std::setw(8) << std::setfill('0') << crc32(text);
  return os.str();
}

struct Output {
  json body = json::object();
  std::optional<std::string> csv;
  int code = kOk;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extremal bipartite graphs, subgraph counts and supersaturation bounds"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  unsigned threads = 1;
  bool csv = false;
  std::string out_path;
  app.add_option("--threads", threads, "Worker threads (output does not depend on this)")->check(CLI::Range(1U, 1024U));
  app.add_flag("--csv", csv, "Emit tables as CSV");
  app.add_option("--out", out_path, "Write the constructed graph or difference set to FILE");

  std::function<Output()> action;
  auto save_graph_if_asked = [&](const BipartiteGraph& g, json& body) {
    if (out_path.empty()) return;
    save_graph(out_path, g);
    body["graph_file"] = out_path;
    body["graph_crc32"] = crc_hex(graph_to_string(g));
  };

  // ---- construct -------------------------------------------------------------
  auto* construct = app.add_subcommand("construct", "Build a graph or difference set")->require_subcommand(1, 1);
  std::uint64_t q = 0, k = 1;
  std::int64_t delta = 0;
  std::optional<Code> generator;
  std::size_t n = 0, modulus = 0;
  std::string set_text, set_file, orders_text;
  std::optional<std::size_t> completion_g;

  auto* c_singer = construct->add_subcommand("singer", "Planar difference set of order q");
  c_singer->add_option("--q", q, "Prime power")->required();
  c_singer->callback([&] {
    action = [&] {
      Output o;
      const auto d = singer_difference_set(q);
      o.body = subset_json(d);
      o.body["q"] = q;
      if (!out_path.empty()) {
        save_difference_set(out_path, d);
        o.body["set_file"] = out_path;
      }
      return o;
    };
  });

  auto load_subset = [&]() {
    if (modulus == 0) throw UsageError("--n is required");
    if (!set_file.empty()) return load_difference_set(set_file, modulus);
    if (set_text.empty()) throw UsageError("one of --set or --file is required");
    return CyclicSubset(modulus, parse_list(set_text, "--set"));
  };
  auto add_subset_options = [&](CLI::App* sub) {
    sub->add_option("--n", modulus, "Modulus")->required();
    auto* s = sub->add_option("--set", set_text, "Comma-separated residues");
    auto* f = sub->add_option("--file", set_file, "Difference-set file");
    s->excludes(f);
  };

  auto* c_dev = construct->add_subcommand("development", "Translates of a subset of Z_n");
  add_subset_options(c_dev);
  c_dev->callback([&] {
    action = [&] {
      Output o;
      const auto d = load_subset();
      const auto g = development(d);
      o.body = graph_stats(g, threads);
      o.body["D"] = d.elements();
      save_graph_if_asked(g, o.body);
      return o;
    };
  });

  auto* c_complete = construct->add_subcommand("complete", "Singer set of order q plus one completing element");
  c_complete->add_option("--q", q, "Prime power")->required();
  c_complete->add_option("--g", completion_g, "Completing element (default: the smallest)");
  c_complete->callback([&] {
    action = [&] {
      Output o;
      const auto d = singer_difference_set(q);
      const auto comps = completion_elements(d);
      const std::size_t g = completion_g.value_or(comps.empty() ? 0 : comps.front());
      if (std::find(comps.begin(), comps.end(), g) == comps.end())
        throw UsageError("--g " + std::to_string(g) + " is not a completing element; choose from " +
                         format_residue_list(comps));
      const auto graph = development(d.with(g));
      o.body = graph_stats(graph, threads);
      o.body["D"] = d.elements();
      o.body["g"] = g;
      save_graph_if_asked(graph, o.body);
      return o;
    };
  });

  auto* c_mors = construct->add_subcommand("mors", "Finite-field graph G(q,k)");
  auto add_mors_options = [&](CLI::App* sub) {
    sub->add_option("--q", q, "Prime power")->required();
    sub->add_option("--k", k, "Divisor of q-1")->required();
    sub->add_option("--delta", delta, "Coset shift");
    sub->add_option("--generator", generator, "Primitive element code");
  };
  auto mors_checks = [](const MorsReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks)
      checks.push_back({{"name", c.name}, {"predicted", c.expected}, {"measured", c.measured}, {"pass", c.pass}});
    return checks;
  };
  add_mors_options(c_mors);
  c_mors->callback([&] {
    action = [&] {
      Output o;
      const MorsParams p{q, k, delta, generator};
      const auto g = build_mors(p, threads);
      const auto report = verify_mors(p, threads);
      o.body = graph_stats(g, threads);
      o.body["q"] = q;
      o.body["k"] = k;
      o.body["delta"] = delta;
      o.body["checks"] = mors_checks(report);
      o.body["measured_equals_predicted"] = report.pass();
      save_graph_if_asked(g, o.body);
      return o;
    };
  });

  auto parse_orders = [&]() {
    if (orders_text.empty()) throw UsageError("--orders is required");
    const auto orders = parse_list(orders_text, "--orders");
    return AbelianGroup(orders);
  };

  auto* c_cayley = construct->add_subcommand("cayley", "Bipartite Cayley graph of an abelian group");
  c_cayley->add_option("--orders", orders_text, "Cyclic factor orders, comma-separated")->required();
  c_cayley->add_option("--set", set_text, "Subset as element indices")->required();
  c_cayley->callback([&] {
    action = [&] {
      Output o;
      const auto grp = parse_orders();
      const auto g = build_cayley_bipartite(grp, parse_list(set_text, "--set"));
      o.body = graph_stats(g, threads);
      save_graph_if_asked(g, o.body);
      return o;
    };
  });

  // ---- count -----------------------------------------------------------------
  auto* count = app.add_subcommand("count", "Count subgraphs in a graph file")->require_subcommand(1, 1);
  std::string graph_path, side_text = "X";
  std::size_t t = 2, a = 2, b = 2;
  auto add_graph_option = [&](CLI::App* sub) { sub->add_option("--graph", graph_path, "Graph file")->required(); };

  auto* k_c4 = count->add_subcommand("c4", "4-cycles");
  add_graph_option(k_c4);
  k_c4->callback([&] {
    action = [&] {
      Output o;
      const auto g = load_graph(graph_path);
      o.body["c4"] = count_c4(g, Side::X, threads);
      o.body["m"] = g.edge_count();
      return o;
    };
  });
  auto* k_k2t = count->add_subcommand("k2t", "Copies of K_{2,t} with the 2-side in --side");
  add_graph_option(k_k2t);
  k_k2t->add_option("--t", t, "t >= 2")->required();
  k_k2t->add_option("--side", side_text, "X or Y");
  k_k2t->callback([&] {
    action = [&] {
      Output o;
      const auto g = load_graph(graph_path);
      const auto c = count_k2t(g, t, parse_side(side_text), threads);
      o.body["t"] = t;
      o.body["side"] = side_text;
      o.body["k2t_unordered"] = c;
      o.body["k2t_ordered_pairs"] = exact(Integer(c) * 2);
      return o;
    };
  });
  auto* k_kab = count->add_subcommand("kab", "Copies of K_{a,b} with the a-side in --side");
  add_graph_option(k_kab);
  k_kab->add_option("--a", a)->required();
  k_kab->add_option("--b", b)->required();
  k_kab->add_option("--side", side_text, "X or Y");
  k_kab->callback([&] {
    action = [&] {
      Output o;
      const auto g = load_graph(graph_path);
      o.body["a"] = a;
      o.body["b"] = b;
      o.body["side"] = side_text;
      o.body["kab"] = count_kab(g, a, b, parse_side(side_text));
      return o;
    };
  });
  auto* k_codeg = count->add_subcommand("codegrees", "Codegree histogram over pairs in --side");
  add_graph_option(k_codeg);
  k_codeg->add_option("--side", side_text, "X or Y");
  k_codeg->callback([&] {
    action = [&] {
      Output o;
      const auto g = load_graph(graph_path);
      const auto h = codegree_histogram(g, parse_side(side_text), threads);
      if (csv) {
        std::string text = "codegree,pairs\n";
        for (const auto& [c, num] : h) text += std::to_string(c) + "," + std::to_string(num) + "\n";
        o.csv = text;
      }
      o.body["side"] = side_text;
      o.body["histogram"] = histogram_json(h);
      return o;
    };
  });

  // ---- bound -----------------------------------------------------------------
  auto* bound = app.add_subcommand("bound", "Lower bounds on K_{a,b} counts")->require_subcommand(1, 1);
  std::uint64_t m = 0;
  unsigned ba = 2, bb = 2;
  auto add_nm = [&](CLI::App* sub, bool ab) {
    sub->add_option("--n", n, "Vertices per side")->required();
    sub->add_option("--m", m, "Edges")->required();
    if (ab) {
      sub->add_option("--a", ba, "Size of the X-side of K_{a,b}");
      sub->add_option("--b", bb, "Size of the Y-side of K_{a,b}");
    }
  };
  auto bound_head = [&] { return json{{"n", n}, {"m", m}, {"a", ba}, {"b", bb}}; };

  auto* b_plain = bound->add_subcommand("plain", "Convexity bound");
  add_nm(b_plain, true);
  b_plain->callback([&] {
    action = [&] {
      Output o;
      o.body = bound_head();
      const auto p = plain_lower_bound(n, m, ba, bb);
      o.body["plain_bound"] = exact(p);
      o.body["plain_bound_approx"] = p.convert_to<double>();
      return o;
    };
  });
  auto* b_improved = bound->add_subcommand("improved", "Two-stage discrete Jensen bound");
  add_nm(b_improved, true);
  b_improved->callback([&] {
    action = [&] {
      Output o;
      o.body = bound_head();
      o.body["improved_bound"] = exact(improved_lower_bound(n, m, ba, bb));
      return o;
    };
  });
  auto* b_regime = bound->add_subcommand("regime", "All C4 bounds and the regime tag");
  add_nm(b_regime, false);
  b_regime->callback([&] {
    action = [&] {
      Output o;
      const auto r = c4_regime(n, m);
      o.body = bound_head();
      o.body["plain_bound"] = exact(r.plain);
      o.body["improved_bound"] = exact(r.improved);
      o.body["poly_bound"] = to_decimal_string(*r.poly_bound, 6);
      o.body["poly_bound_exact"] = exact(*r.poly_bound);
      o.body["average_degree"] = exact(r.average_degree);
      o.body["regime"] = r.regime;
      o.body["xi_approx"] = r.xi;
      o.body["excess_ratio_approx"] = r.excess_ratio;
      o.body["asymptote_iv_approx"] = r.asymptote_iv;
      return o;
    };
  });
  bool improved_mode = false;
  auto* b_equality = bound->add_subcommand("equality", "Check a graph against the equality conditions");
  add_graph_option(b_equality);
  b_equality->add_flag("--improved", improved_mode, "Allow degrees and codegrees to differ by one");
  b_equality->callback([&] {
    action = [&] {
      Output o;
      const auto g = load_graph(graph_path);
      const auto r = equality_conditions(g, improved_mode);
      o.body = {{"mode", improved_mode ? "improved" : "plain"},
                {"degrees_ok", r.degrees_ok},
                {"codegrees_ok", r.codegrees_ok},
                {"degree_range", {r.min_degree, r.max_degree}},
                {"codegree_range", {r.min_codegree, r.max_codegree}},
                {"witness", r.witness},
                {"c4", count_c4(g, Side::X, threads)},
                {"pass", r.pass()}};
      if (g.n_x() == g.n_y() && g.n_x() >= 2)
        o.body["bound"] = improved_mode ? exact(improved_lower_bound(g.n_x(), g.edge_count(), 2, 2))
                                        : exact(plain_lower_bound(g.n_x(), g.edge_count(), 2, 2));
      o.code = r.pass() ? kOk : kFail;
      return o;
    };
  });

  // ---- verify ----------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Check a structural claim; exit 1 when it fails")->require_subcommand(1, 1);
  auto* v_ds = verify->add_subcommand("difference-set", "Is the subset a difference set?");
  add_subset_options(v_ds);
  v_ds->callback([&] {
    action = [&] {
      Output o;
      const auto d = load_subset();
      o.body = subset_json(d);
      o.body["pass"] = classify_difference_structure(d).kind == DifferenceKind::difference_set;
      o.code = o.body["pass"].get<bool>() ? kOk : kFail;
      return o;
    };
  });
  bool relaxed = false;
  auto* v_ads = verify->add_subcommand("adesign", "Is the subset an almost difference set?");
  add_subset_options(v_ads);
  v_ads->add_flag("--relaxed", relaxed, "Also accept sets whose counts are all equal");
  v_ads->callback([&] {
    action = [&] {
      Output o;
      const auto d = load_subset();
      o.body = subset_json(d);
      o.body["relaxed"] = relaxed;
      o.body["pass"] = is_almost_difference_set(d, relaxed);
      o.code = o.body["pass"].get<bool>() ? kOk : kFail;
      return o;
    };
  });
  auto* v_completion = verify->add_subcommand("completion", "Completing elements of the Singer set of order q");
  // --set replaces the Singer set by any planar set modulo q^2+q+1
  auto plane_set = [&]() {
    if (set_text.empty()) return singer_difference_set(q);
    return CyclicSubset(static_cast<std::size_t>(q * q + q + 1), parse_list(set_text, "--set"));
  };
  v_completion->add_option("--q", q, "Prime power")->required();
  v_completion->add_option("--set", set_text, "Planar difference set to use instead of the Singer set");
  v_completion->callback([&] {
    action = [&] {
      Output o;
      const auto d = plane_set();
      const auto comps = completion_elements(d);
      const auto expected = choose(q, 2);
      bool ok = comps.size() == expected && comps == completions_by_reclassification(d);
      for (auto g : comps) {
        const auto dev = development(d.with(g));
        ok = ok && improved_lower_bound(dev.n_x(), dev.edge_count(), 2, 2) == Integer(count_c4(dev, Side::X, threads));
      }
      o.body = {{"q", q}, {"D", d.elements()}, {"completions", comps}, {"expected_count", expected}, {"pass", ok}};
      o.code = ok ? kOk : kFail;
      return o;
    };
  });
  auto* v_geometry = verify->add_subcommand("geometry", "Incidence structure of the non-completing elements");
  v_geometry->add_option("--q", q, "Prime power")->required();
  v_geometry->add_option("--set", set_text, "Planar difference set to use instead of the Singer set");
  v_geometry->callback([&] {
    action = [&] {
      Output o;
      const auto r = non_completion_structure(plane_set());
      o.body = {{"q", q},
                {"blocks", r.blocks},
                {"completions", r.completions},
                {"partitions_complement", r.partitions_complement},
                {"pairwise_single_intersection", r.pairwise_single_intersection},
                {"no_triple_point", r.no_triple_point},
                {"blocks_are_lines", r.blocks_are_lines},
                {"line_shifts", r.line_shifts},
                {"dual_hyperoval", r.dual_hyperoval},
                {"blocks_are_arcs", r.blocks_are_arcs},
                {"pass", r.pass()}};
      o.code = r.pass() ? kOk : kFail;
      return o;
    };
  });
  auto* v_mors = verify->add_subcommand("mors", "Measured vs predicted statistics of G(q,k)");
  add_mors_options(v_mors);
  v_mors->callback([&] {
    action = [&] {
      Output o;
      const auto r = verify_mors({q, k, delta, generator}, threads);
      json k2t = json::object();
      for (const auto& [tt, c] : r.k2t_v1) k2t[std::to_string(tt)] = c;
      o.body = {{"q", q},
                {"k", k},
                {"delta", delta},
                {"n", r.n},
                {"m", r.m},
                {"codegree_histogram_x", histogram_json(r.codegree_histogram_v1)},
                {"c4", r.c4},
                {"k2t_unordered", k2t},
                {"checks", mors_checks(r)},
                {"pass", r.pass()}};
      o.code = r.pass() ? kOk : kFail;
      return o;
    };
  });

  // ---- search / group --------------------------------------------------------
  auto* search = app.add_subcommand("search", "Subset searches")->require_subcommand(1, 1);
  auto* s_psi2 = search->add_subcommand("psi2", "Minimise the difference-count variance over k-subsets");
  SearchOptions sopt;
  std::size_t ks = 0;
  std::string mode_text = "exhaustive", objective_text = "h2";
  s_psi2->add_option("--orders", orders_text, "Cyclic factor orders")->required();
  s_psi2->add_option("--k", ks, "Subset size")->required();
  s_psi2->add_option("--mode", mode_text)->check(CLI::IsMember({"exhaustive", "local"}));
  s_psi2->add_option("--objective", objective_text)->check(CLI::IsMember({"h2", "psi2"}));
  s_psi2->add_option("--seed", sopt.seed);
  s_psi2->add_option("--budget", sopt.budget, "Local search evaluations per restart");
  s_psi2->add_option("--restarts", sopt.restarts);
  s_psi2->add_option("--cap", sopt.cap, "Largest C(n,k) searched exhaustively");
  s_psi2->callback([&] {
    action = [&] {
      Output o;
      sopt.mode = mode_text == "local" ? SearchMode::local : SearchMode::exhaustive;
      sopt.objective = objective_text == "psi2" ? SearchObjective::psi2 : SearchObjective::h2;
      sopt.threads = threads;
      const auto grp = parse_orders();
      try {
        const auto r = psi2_search(grp, ks, sopt);
        json trace = json::array();
        for (const auto& v : r.trace) trace.push_back(exact(v));
        o.body = {{"k", ks},   {"mode", mode_text}, {"best", r.best},          {"psi2", exact(r.psi2)},
                  {"h2", r.h2}, {"evaluated", r.evaluated}, {"trace", trace}, {"status", "exact"}};
        if (sopt.mode == SearchMode::local) o.body["status"] = "heuristic";
      } catch (const CapExceeded& e) {
        o.body = {{"k", ks}, {"mode", mode_text}, {"status", "inconclusive"}, {"reason", e.what()}};
        o.code = kInconclusive;
      }
      return o;
    };
  });

  bool report = false;
  auto* group = app.add_subcommand("group", "Difference statistics of a subset of an abelian group");
  group->add_option("--orders", orders_text, "Cyclic factor orders")->required();
  group->add_option("--set", set_text, "Subset as element indices")->required();
  group->add_flag("--report", report, "Include the difference-count vector");
  group->callback([&] {
    action = [&] {
      Output o;
      const auto grp = parse_orders();
      const auto s = group_subset_stats(grp, parse_list(set_text, "--set"));
      o.body = {{"order", grp.order()},
                {"subset", s.subset},
                {"h1", s.h1},
                {"h2", s.h2},
                {"psi2", exact(s.psi2)},
                {"average", exact(s.average)},
                {"c4_direct", count_c4(build_cayley_bipartite(grp, s.subset), Side::X, threads)}};
      try {
        o.body["c4_formula"] = c4_formula_odd(grp, s.subset);
      } catch (const FormulaUnavailable&) {
        o.body["c4_formula"] = nullptr;
      }
      if (report) o.body["counts"] = s.counts;
      return o;
    };
  });

  // ---- oracle ----------------------------------------------------------------
  auto* oracle = app.add_subcommand("oracle", "Exhaustive minimum C4 counts")->require_subcommand(0, 1);
  OracleOptions oopt;
  std::string contain_path;
  std::size_t extra = 0;
  auto add_oracle_search = [&](CLI::App* sub, bool required) {
    auto* on = sub->add_option("--n", n, "Vertices per side");
    auto* om = sub->add_option("--m", m, "Edges");
    if (required) {
      on->required();
      om->required();
    }
    sub->add_option("--contain", contain_path, "Graph file the minimiser must contain");
    sub->add_option("--cap", oopt.cap, "Node cap per subtree");
  };
  auto run_min = [&]() {
    Output o;
    oopt.threads = threads;
    std::optional<BipartiteGraph> base;
    if (!contain_path.empty()) base = load_graph(contain_path);
    const auto r = min_c4_exhaustive(n, m, base ? &*base : nullptr, oopt);
    o.body = oracle_json(r);
    o.code = r.status == OracleStatus::exact ? kOk : kInconclusive;
    return o;
  };
  add_oracle_search(oracle, false);
  oracle->callback([&] {
    if (oracle->get_subcommands().empty()) {
      if (oracle->count("--n") == 0 || oracle->count("--m") == 0) throw UsageError("oracle: --n and --m are required");
      action = run_min;
    }
  });
  auto* o_min = oracle->add_subcommand("min", "Minimum C4 over m-edge subgraphs of K_{n,n}");
  add_oracle_search(o_min, true);
  o_min->callback([&] { action = run_min; });

  auto* o_table = oracle->add_subcommand("table", "Oracle against both bounds for every m");
  o_table->add_option("--n", n, "Vertices per side")->required();
  o_table->add_option("--cap", oopt.cap, "Node cap per subtree");
  o_table->callback([&] {
    action = [&] {
      Output o;
      oopt.threads = threads;
      const auto rows = bound_vs_oracle_table(n, oopt);
      json jr = json::array();
      bool inconclusive = false;
      for (const auto& r : rows) {
        const auto gap = r.gap();
        jr.push_back({{"m", r.m},
                      {"oracle", r.oracle ? json(*r.oracle) : json(nullptr)},
                      {"plain", exact(r.plain)},
                      {"improved", exact(r.improved)},
                      {"gap", gap ? exact(*gap) : json(nullptr)},
                      {"status", to_string(r.status)}});
        inconclusive |= r.status != OracleStatus::exact;
      }
      const auto z = zarankiewicz_from_table(rows);
      o.body = {{"n", n}, {"rows", jr}, {"zarankiewicz", z ? json(*z) : json(nullptr)}};
      if (csv) o.csv = oracle_table_csv(rows);
      o.code = inconclusive ? kInconclusive : kOk;
      return o;
    };
  });

  auto* o_plane = oracle->add_subcommand("prop34", "Add e edges to the order-2 plane and compare with the bound");
  o_plane->add_option("--e", extra, "Extra edges")->required();
  o_plane->add_option("--cap", oopt.cap, "Node cap per subtree");
  o_plane->callback([&] {
    action = [&] {
      Output o;
      oopt.threads = threads;
      const auto r = check_prop34(extra, oopt);
      o.body = {{"e", r.e},
                {"m", r.m},
                {"bound", exact(r.bound)},
                {"equality_expected", r.equality_expected},
                {"strict_gap_expected", r.in_strict_range},
                {"oracle", oracle_json(r.oracle)},
                {"pass", r.pass()}};
      o.code = r.oracle.status != OracleStatus::exact ? kInconclusive : r.pass() ? kOk : kFail;
      return o;
    };
  });

  // ---- repro -----------------------------------------------------------------
  std::string filter;
  auto* repro = app.add_subcommand("repro", "Run the acceptance criteria");
  repro->add_option("--filter", filter, "Criterion id, id range a-b, or name substring");
  repro->callback([&] {
    action = [&] {
      Output o;
      const auto results = repro_all(filter, threads);
      json rows = json::array();
      bool all = !results.empty();
      for (const auto& r : results) {
        rows.push_back({{"id", r.id},
                        {"name", r.name},
                        {"pass", r.pass},
                        {"failures", r.failures},
                        {"transcript_crc32", crc_hex(r.transcript)}});
        all = all && r.pass;
      }
      o.body = {{"criteria", rows}, {"manifest", manifest_text(results)}, {"pass", all}};
      if (csv) {
        std::string text = "id,name,pass\n";
        for (const auto& r : results) text += std::to_string(r.id) + "," + r.name + "," + (r.pass ? "pass" : "fail") + "\n";
        o.csv = text;
      }
      o.code = all ? kOk : kFail;
      return o;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  Output result;
  try {
    result = action();
  } catch (const GraphFormatError& e) {
    std::cerr << "error: graph file " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    // bad parameter values and unreadable inputs surface here
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }

  json params = json::object();
  collect_parameters(&app, params);
  const std::string primary = result.csv ? *result.csv : result.body.dump(2) + "\n";
  json manifest = {{"subcommand", command_path(&app)},
                   {"parameters", params},
                   {"tool_version", kToolVersion},
                   {"output_crc32", crc_hex(primary)}};
  if (result.body.contains("graph_crc32")) manifest["graph_crc32"] = result.body["graph_crc32"];

  if (result.csv) {
    std::cout << *result.csv;
    std::cerr << manifest.dump() << "\n";
  } else {
    result.body["manifest"] = manifest;
    std::cout << result.body.dump(2) << "\n";
  }
  return result.code;
}
