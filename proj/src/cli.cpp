#include "cuspcalc/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>

#include "cuspcalc/birational.hpp"
#include "cuspcalc/config_search.hpp"
#include "cuspcalc/error.hpp"
#include "cuspcalc/graph_io.hpp"
#include "cuspcalc/hn_pairs.hpp"
#include "cuspcalc/notation.hpp"
#include "cuspcalc/peeling.hpp"
#include "cuspcalc/results_io.hpp"
#include "cuspcalc/scenarios.hpp"
#include "cuspcalc/twig_calculus.hpp"
#include "json.hpp"

namespace cuspcalc::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw DomainError("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

// Inline JSON if the argument starts with '{', a file path otherwise.
DivisorGraph graph_arg(const std::string& arg) {
  auto pos = arg.find_first_not_of(" \t\r\n");
  if (pos != std::string::npos && arg[pos] == '{') return parse_graph(arg);
  return load_graph_file(arg);
}

std::vector<int> parse_ids(const std::string& text) {
  std::vector<int> ids;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      ids.push_back(v);
    } catch (const std::logic_error&) {
      throw DomainError("bad component id '" + tok + "' in '" + text + "'");
    }
  }
  return ids;
}

// "id:mult,id:mult"
std::map<int, int> parse_meets(const std::string& text) {
  std::map<int, int> meets;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto colon = tok.find(':');
    try {
      int id = std::stoi(tok.substr(0, colon));
      int m = colon == std::string::npos ? 1 : std::stoi(tok.substr(colon + 1));
      meets[id] += m;
    } catch (const std::logic_error&) {
      throw DomainError("bad intersection entry '" + tok + "', expected id:mult");
    }
  }
  return meets;
}

std::string twig_line(const DivisorGraph& g, const std::vector<int>& twig, bool abbreviate) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < twig.size(); ++i) os << (i ? "," : "") << twig[i];
  os << ") " << format_chain(weights_along(g, twig), abbreviate);
  return os.str();
}

std::string twig_list(const DivisorGraph& g, const std::vector<std::vector<int>>& twigs, bool abbreviate) {
  if (twigs.empty()) return "none";
  std::string s;
  for (const auto& t : twigs) s += (s.empty() ? "" : "; ") + twig_line(g, t, abbreviate);
  return s;
}

std::string support_str(const Support& s) {
  std::string out = "{";
  for (int id : s) out += (out.size() > 1 ? ", " : "") + std::to_string(id);
  return out + "}";
}

MMPParams load_params(const std::string& path, std::optional<long>& kn_kn_dn, std::optional<long>& en_kn_dn) {
  ojson doc;
  try {
    doc = ojson::parse(read_file(path));
  } catch (const ojson::parse_error& e) {
    throw DomainError("params parse error: " + std::string(e.what()));
  }
  if (!doc.is_object()) throw DomainError("params file must hold a JSON object");
  MMPParams p;
  std::map<std::string, std::optional<long>*> ints{
      {"p2", &p.p2},         {"zeta", &p.zeta},       {"gamma_n", &p.gamma_n},
      {"tau_star", &p.tau_star}, {"n0", &p.n0},       {"n1", &p.n1},
      {"eta0", &p.eta0},     {"eta1", &p.eta1},       {"c", &p.c},
      {"s", &p.s},           {"n_exc", &p.n_exc},     {"k_dot_Rn", &p.k_dot_Rn},
      {"sharp_C_plus", &p.sharp_C_plus}, {"sum_kc_tau_plus", &p.sum_kc_tau_plus},
      {"sum_tau_exc", &p.sum_tau_exc},   {"rho_n", &p.rho_n}, {"hash_Dn", &p.hash_Dn},
      {"i", &p.i},           {"t", &p.t},             {"n1_i", &p.n1_i},
      {"m_E", &p.m_E},       {"kn_kn_dn", &kn_kn_dn}, {"en_kn_dn", &en_kn_dn}};
  std::map<std::string, std::optional<Rational>*> rats{{"ind", &p.ind}, {"delta", &p.delta}};
  for (const auto& [key, value] : doc.items()) {
    if (auto it = ints.find(key); it != ints.end()) {
      if (!value.is_number_integer()) throw DomainError("params field '" + key + "' must be an integer");
      *it->second = value.get<long>();
    } else if (auto jt = rats.find(key); jt != rats.end()) {
      if (value.is_number_integer())
        *jt->second = Rational(value.get<long>());
      else if (value.is_string())
        *jt->second = Rational::parse(value.get<std::string>());
      else
        throw DomainError("params field '" + key + "' must be an integer or a \"p/q\" string");
    } else {
      throw DomainError("unknown params field '" + key + "'");
    }
  }
  return p;
}

int cmd_resolve(const std::string& text, bool weak, bool json, bool abbreviate, std::ostream& out) {
  CharPairSeq seq = CharPairSeq::parse(text);
  ExceptionalGraph ex = weak ? build_weak_resolution_graph(seq) : build_exceptional_graph(seq);
  auto inv = cusp_invariants(seq);
  if (json) {
    ojson j;
    j["pairs"] = seq.str();
    j["canonical"] = canonical_form(seq).str();
    j["multiplicity_sequence"] = inv.mult_seq;
    j["M"] = inv.M;
    j["I"] = inv.I;
    j["tau"] = ex.tau;
    j["s"] = ex.s;
    ojson contact = ojson::object();
    for (const auto& [id, c] : ex.germ_contact) contact[std::to_string(id)] = c;
    j["germ_contact"] = contact;
    j["graph"] = ojson::parse(serialize_graph(ex.graph));
    out << j.dump(2) << "\n";
    return 0;
  }
  out << "pairs: " << seq.str() << "\n";
  if (canonical_form(seq) != seq) out << "canonical: " << canonical_form(seq).str() << "\n";
  std::string desc = describe_graph(ex.graph, abbreviate);
  if (!desc.empty() && desc.front() == '[')
    out << (weak ? "weak resolution: " : "chain: ") << desc << "\n";
  else
    out << (weak ? "weak resolution:\n" : "graph:\n") << desc << "\n";
  out << "multiplicity sequence: " << format_sequence(inv.mult_seq) << "\n";
  out << "M = " << inv.M << "\n";
  out << "I = " << inv.I << "\n";
  out << "tau = " << ex.tau << ", s = " << ex.s << "\n";
  out << "germ contact:";
  for (const auto& [id, c] : ex.germ_contact) out << " " << id << ":" << c;
  out << "\n";
  return 0;
}

int cmd_disc(const std::string& arg, const std::string& sub, std::ostream& out) {
  DivisorGraph g = graph_arg(arg);
  Support t = g.support();
  if (!sub.empty()) {
    auto ids = parse_ids(sub);
    t = Support(ids.begin(), ids.end());
    for (int id : t)
      if (!g.contains(id)) throw DomainError("unknown component id " + std::to_string(id));
  }
  out << "d = " << to_string(discriminant(g, t)) << "\n";
  return 0;
}

int cmd_ind(const std::string& arg, bool abbreviate, std::ostream& out) {
  DivisorGraph g = graph_arg(arg);
  Rational total = total_inductance(g);
  for (const auto& twig : maximal_twigs_unchecked(g)) {
    auto chain = OrderedChain::from_ids(g, twig);
    out << "twig " << twig_line(g, twig, abbreviate) << ": d = " << to_string(discriminant(g, chain.support()))
        << ", ind = " << inductance(g, chain).str() << "\n";
  }
  out << "ind = " << total.str() << "\n";
  out << "delta = " << total_delta(g).str() << "\n";
  return 0;
}

int cmd_bark(const std::string& arg, bool abbreviate, std::ostream& out) {
  DivisorGraph g = graph_arg(arg);
  check_twig_preconditions(g);
  for (const auto& twig : maximal_twigs_unchecked(g)) {
    auto bk = bark_twig(g, OrderedChain::from_ids(g, twig));
    out << "twig " << twig_line(g, twig, abbreviate) << ": Bk = {";
    for (std::size_t i = 0; i < twig.size(); ++i) out << (i ? ", " : "") << twig[i] << ": " << bk.at(twig[i]).str();
    out << "}\n";
  }
  auto bk = bark(g);
  out << "Bk = " << format_divisor(bk) << "\n";
  out << "(Bk)^2 = " << intersection_number(g, bk, bk).str() << "\n";
  return 0;
}

int cmd_chains(std::optional<int> kq, std::optional<int> kmax, bool enumerate_mode, std::optional<int> maxlen,
               bool abbreviate, std::ostream& out) {
  if (enumerate_mode) {
    if (!maxlen) throw CLI::ValidationError("--enumerate needs --maxlen");
    if (*maxlen > kMaxChainLength)
      throw DomainError("maxlen " + std::to_string(*maxlen) + " exceeds the ceiling " +
                        std::to_string(kMaxChainLength));
    auto chains = enumerate_contractible_chains(*maxlen);
    std::size_t unmatched = 0;
    for (const auto& c : chains) {
      out << format_chain(c.weights, abbreviate);
      if (c.matches.empty()) {
        out << "  unmatched";
        ++unmatched;
      }
      for (const auto& m : c.matches) {
        out << "  family " << m.family << " k=" << m.k << " x=" << m.x;
        if (!m.m.empty()) {
          out << " m=(";
          for (std::size_t i = 0; i < m.m.size(); ++i) out << (i ? "," : "") << m.m[i];
          out << ")";
        }
        if (m.reversed) out << " reversed";
        if (m.via_empty_convention) out << " empty-convention";
      }
      out << "\n";
    }
    out << chains.size() << " chains, " << unmatched << " unmatched\n";
    return 0;
  }
  if (!kq || !kmax) throw CLI::ValidationError("chains needs --kq and --kmax, or --enumerate --maxlen");
  auto chains = classify_chains_by_K(*kq, *kmax);
  for (const auto& c : chains) out << format_chain(c, abbreviate) << "\n";
  return 0;
}

int cmd_peel(const std::string& arg, const std::string& a_meets, int a_self, bool abbreviate, std::ostream& out) {
  DivisorGraph g = graph_arg(arg);
  PeelingData p = compute_peeling(g);
  out << "Delta: " << twig_list(g, p.delta, abbreviate) << "\n";
  out << "Upsilon: " << support_str(p.upsilon) << "\n";
  out << "Delta+: " << twig_list(g, p.delta_plus, abbreviate) << "\n";
  out << "Delta-: " << twig_list(g, p.delta_minus, abbreviate) << "\n";
  out << "Bk' = " << format_divisor(p.bark_prime) << "\n";
  out << "D_flat = " << format_divisor(p.d_flat) << "\n";
  Support checked = p.delta_support();
  checked.insert(p.upsilon.begin(), p.upsilon.end());
  out << "(K + D_flat/2).R = 0 on " << support_str(checked) << "\n";
  if (g.ksq()) out << "(K + D)^2 = " << log_canonical_square(g).str() << "\n";
  if (a_meets.empty()) return 0;
  ExternalCurve a{a_self, parse_meets(a_meets)};
  auto v = check_A_candidate(g, p, a);
  out << "A: (K + D_flat/2).A = " << v.half_log_canonical_dot.str() << "\n";
  if (!v.ok) {
    for (const auto& r : v.reasons) out << "A rejected: " << r << "\n";
    throw DomainError("A is not a valid candidate");
  }
  auto step = minimalization_step(g, a);
  out << "step type: " << to_string(step.type) << "\n";
  out << "contracted:";
  for (int id : step.contracted) out << " " << id;
  out << "\n";
  out << "(K + D)^2: " << step.kd_square_before.str() << " -> " << step.kd_square_after.str()
      << " ((K + D + A)^2 = " << step.kda_square.str() << ")\n";
  out << "image:\n" << serialize_graph(step.graph);
  return 0;
}

int cmd_check(const std::string& path, std::ostream& out) {
  std::optional<long> kn, en;
  MMPParams p = load_params(path, kn, en);
  for (const auto& v : inequality_suite(p)) {
    out << v.name << ": " << to_string(v.status);
    if (v.slack) out << " (slack " << v.slack->str() << ")";
    if (!v.missing.empty()) {
      out << " (";
      for (std::size_t k = 0; k < v.missing.size(); ++k) out << (k ? ", " : "") << v.missing[k];
      out << ")";
    }
    out << "  " << v.statement << "\n";
  }
  if (kn && en) {
    auto [r4, r5] = boundary_identities(p, *kn, *en);
    out << "identity K.(K+D): residual " << r4 << "\n";
    out << "identity E.(K+D): residual " << r5 << "\n";
  }
  return 0;
}

std::string filters_str(const CurveCandidate& c) {
  std::string s;
  for (const auto& [name, v] : c.filters) {
    s += (s.empty() ? "" : " ") + name + "=" + to_string(v.status);
    if (v.slack) s += "(" + v.slack->str() + ")";
  }
  return s;
}

int cmd_search(const SearchOptions& opt, bool json, std::ostream& out) {
  SearchResult res = enumerate(opt);
  if (json) {
    std::vector<ResultRecord> recs(res.candidates.begin(), res.candidates.end());
    out << results_to_json(recs);
    return 0;
  }
  out << "configurations examined: " << res.configs_examined << "\n";
  out << "candidates: " << res.candidates.size() << "\n";
  for (const auto& c : res.candidates) {
    out << "d=" << c.d << " gamma=" << c.gamma << " #D=" << c.hash_D
        << " ind=" << (c.ind_D ? c.ind_D->str() : std::string("undefined")) << " cusps:";
    for (const auto& cu : c.config) out << " " << cu.pairs.str();
    out << " | " << filters_str(c) << "\n";
  }
  return 0;
}

void print_scenario(const ScenarioResult& r, std::ostream& out) {
  out << r.name << ": " << (r.matches ? "match" : "MISMATCH") << "\n";
  out << "  variables: (";
  for (std::size_t i = 0; i < r.variables.size(); ++i) out << (i ? "," : "") << r.variables[i];
  out << ")\n";
  auto tuples = [](const std::vector<Tuple>& ts) {
    if (ts.empty()) return std::string("none");
    std::string s;
    for (const auto& t : ts) {
      s += s.empty() ? "(" : " (";
      for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
      s += ")";
    }
    return s;
  };
  out << "  solutions: " << tuples(r.solutions) << "\n";
  out << "  expected: " << r.expectation << "\n";
  if (r.certificate) out << "  modular certificate: " << (*r.certificate ? "agrees" : "disagrees") << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
}

int cmd_scenario(const std::string& name, bool all, bool json, std::ostream& out) {
  std::vector<ScenarioResult> results;
  if (all) {
    for (const auto& n : scenario_names()) results.push_back(run_scenario(n));
  } else {
    if (name.empty()) throw CLI::ValidationError("scenario needs a name or --all");
    results.push_back(run_scenario(name));
  }
  bool ok = true;
  for (const auto& r : results) ok = ok && r.matches;
  if (json) {
    std::vector<ResultRecord> recs(results.begin(), results.end());
    out << results_to_json(recs);
  } else {
    for (const auto& r : results) print_scenario(r, out);
  }
  return ok ? 0 : 3;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"cuspcalc: boundary divisor calculus for cuspidal plane curves"};
  app.name("cuspcalc");
  app.require_subcommand(1, 1);
  bool expand = false;
  app.add_flag("--expand", expand, "write runs of 2's in full instead of (2)_n");

  std::string arg, sub, params, scen_name, a_meets;
  bool weak = false, json = false, enum_mode = false, all = false;
  std::optional<int> kq, kmax, maxlen;
  int a_self = -1;
  SearchOptions sopt;
  long p2 = 0;

  auto* resolve = app.add_subcommand("resolve", "resolution graph, multiplicity sequence, M and I of a germ");
  resolve->add_option("pairs", arg, "characteristic pairs, e.g. \"(3,2)\"")->required();
  resolve->add_flag("--weak", weak, "minimal weak resolution only");
  resolve->add_flag("--json", json);

  auto* disc = app.add_subcommand("disc", "discriminant of a graph or of a set of its components");
  disc->add_option("graph", arg, "graph file or inline JSON")->required();
  disc->add_option("--sub", sub, "comma separated component ids");

  auto* ind = app.add_subcommand("ind", "inductance of the maximal twigs");
  ind->add_option("graph", arg)->required();

  auto* bark_cmd = app.add_subcommand("bark", "bark of the maximal twigs");
  bark_cmd->add_option("graph", arg)->required();

  auto* chains = app.add_subcommand("chains", "chains contracting to a smooth point");
  chains->add_option("--kq", kq, "K.Q");
  chains->add_option("--kmax", kmax, "largest number of leading (-2)-curves");
  chains->add_flag("--enumerate", enum_mode, "brute force with family matching");
  chains->add_option("--maxlen", maxlen);

  auto* peel = app.add_subcommand("peel", "Delta, Upsilon and D_flat of a boundary graph");
  peel->add_option("graph", arg)->required();
  peel->add_option("--a", a_meets, "apply a minimalization step with A meeting id:mult,...");
  peel->add_option("--a-self", a_self, "A^2, default -1");

  auto* check = app.add_subcommand("check", "inequality suite on MMP parameters");
  check->add_option("--params", params, "JSON object of parameters")->required();

  auto* search = app.add_subcommand("search", "enumerate cusp configurations");
  search->add_option("--cusps", sopt.cusps)->required();
  search->add_option("--bound", sopt.bound, "bound on the total number of exceptional curves")->required();
  auto* p2_opt = search->add_option("--p2", p2, "hypothesis on p2");
  search->add_option("--i", sopt.hyp.i, "step index i");
  search->add_option("--threads", sopt.threads, "worker threads")->check(CLI::Range(1u, 256u));
  search->add_flag("--json", json);

  auto* scenario = app.add_subcommand("scenario", "reproduce a named case analysis");
  scenario->add_option("name", scen_name);
  scenario->add_flag("--all", all);
  scenario->add_flag("--json", json);

  auto* fmt = app.add_subcommand("fmt", "canonical graph text");
  fmt->add_option("graph", arg)->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  const bool abbreviate = !expand;
  try {
    if (resolve->parsed()) return cmd_resolve(arg, weak, json, abbreviate, out);
    if (disc->parsed()) return cmd_disc(arg, sub, out);
    if (ind->parsed()) return cmd_ind(arg, abbreviate, out);
    if (bark_cmd->parsed()) return cmd_bark(arg, abbreviate, out);
    if (chains->parsed()) return cmd_chains(kq, kmax, enum_mode, maxlen, abbreviate, out);
    if (peel->parsed()) return cmd_peel(arg, a_meets, a_self, abbreviate, out);
    if (check->parsed()) return cmd_check(params, out);
    if (search->parsed()) {
      if (p2_opt->count() > 0) sopt.hyp.p2 = p2;
      return cmd_search(sopt, json, out);
    }
    if (scenario->parsed()) return cmd_scenario(scen_name, all, json, out);
    if (fmt->parsed()) {
      out << serialize_graph(graph_arg(arg));
      return 0;
    }
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cuspcalc::cli
