#include "nilcert/cli.hpp"

#include <fstream>
#include <memory>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilcert/area.hpp"
#include "nilcert/subdirect.hpp"
#include "nilcert/expr.hpp"
#include "nilcert/fibre.hpp"
#include "nilcert/parallel.hpp"
#include "nilcert/series.hpp"
#include "nilcert/word.hpp"

namespace nilcert::cli {

namespace {

using nlohmann::ordered_json;

struct CommandError : std::runtime_error {
  int code;
  CommandError(int code_, std::string msg) : std::runtime_error(std::move(msg)), code(code_) {}
};

struct Output {
  const RunConfig& cfg;
  std::string payload;  // final text or JSON document

  void set_json(const ordered_json& j) { payload = j.dump(); }
};

void require_word_count(const RunConfig& cfg, size_t n) {
  if (cfg.words.size() != n)
    throw CommandError(kUsageError, "expected " + std::to_string(n) + " positional word(s)");
}

void require_r(const RunConfig& cfg, int min_r = 3) {
  if (cfg.r < min_r)
    throw CommandError(kUsageError, "--r must be at least " + std::to_string(min_r));
}

void require_n(const RunConfig& cfg) {
  if (cfg.n < 1) throw CommandError(kUsageError, "--n must be positive");
}

Alphabet cfg_alphabet(const RunConfig& cfg) { return Alphabet::from_csv(cfg.alphabet); }

int cmd_expand(const RunConfig& cfg, Output& o) {
  require_word_count(cfg, 1);
  if (cfg.klass < 1) throw CommandError(kUsageError, "--class must be >= 1");
  Alphabet X = cfg_alphabet(cfg);
  TruncatedSeries s = magnus_expand(read_word(cfg.words[0], X), cfg.klass, X);
  if (cfg.format == "json") {
    o.payload = series_to_json_text(s);
  } else {
    std::string t;
    for (const auto& [m, c] : s.terms()) {
      t += c.to_decimal();
      for (uint32_t g : m) t += " " + X.name(g);
      t += "\n";
    }
    o.payload = t;
  }
  return kOk;
}

int cmd_gamma_test(const RunConfig& cfg, Output& o) {
  require_word_count(cfg, 1);
  if (cfg.klass < 1) throw CommandError(kUsageError, "--class must be >= 1");
  Alphabet X = cfg_alphabet(cfg);
  bool member = gamma_member(read_word(cfg.words[0], X), cfg.klass, X);
  ordered_json j{{"word", cfg.words[0]}, {"class", cfg.klass}, {"member", member}};
  if (cfg.format == "json")
    o.set_json(j);
  else
    o.payload = member ? "true\n" : "false\n";
  return kOk;
}

int cmd_wn(const RunConfig& cfg, Output& o) {
  require_r(cfg);
  require_n(cfg);
  Alphabet X = cfg_alphabet(cfg);
  if (X.size() < 2) throw CommandError(kUsageError, "need a two-letter alphabet");
  ReducedWord w = build_w(cfg.n, cfg.r - 1);
  if (cfg.format == "json") {
    ordered_json j{{"r", cfg.r},
                   {"n", cfg.n},
                   {"m", cfg.r - 1},
                   {"word", word_to_text(w, X)},
                   {"length", w.length()}};
    o.set_json(j);
  } else {
    o.payload = word_to_text(w, X) + "\n";
  }
  return kOk;
}

int cmd_area_lb(const RunConfig& cfg, Output& o) {
  Alphabet X = cfg_alphabet(cfg);
  ReducedWord v;
  int c;
  if (!cfg.words.empty()) {
    require_word_count(cfg, 1);
    if (cfg.klass < 2) throw CommandError(kUsageError, "--class must be >= 2");
    v = read_word(cfg.words[0], X);
    c = cfg.klass;
  } else {
    require_r(cfg);
    require_n(cfg);
    v = build_w(cfg.n, cfg.r - 1);
    c = cfg.r - 1;
  }
  GroupPresentation p{X, basic_commutators(static_cast<int>(X.size()), c)};
  BigInt lb = area_lower_bound(v, p, c);
  if (cfg.format == "json") {
    ordered_json j{{"word", word_to_text(v, X)}, {"class", c}, {"area_lb", lb.to_decimal()}};
    o.set_json(j);
  } else {
    o.payload = lb.to_decimal() + "\n";
  }
  return kOk;
}

int cmd_area_bf(const RunConfig& cfg, Output& o) {
  require_word_count(cfg, 1);
  if (cfg.klass < 2) throw CommandError(kUsageError, "--class must be >= 2");
  Alphabet X = cfg_alphabet(cfg);
  ReducedWord v = read_word(cfg.words[0], X);
  GroupPresentation p{X, basic_commutators(static_cast<int>(X.size()), cfg.klass)};
  SearchBudget budget;
  budget.max_nodes = cfg.budget_nodes;
  budget.conj_cap = cfg.budget_conj;
  auto rep = brute_force_area(v, p, budget);
  if (!rep) throw CommandError(kBudgetExhausted, "budget exhausted");
  if (cfg.format == "json") {
    ordered_json j;
    j["word"] = word_to_text(v, X);
    j["class"] = cfg.klass;
    j["area"] = *rep->upper_bound;
    j["lower_bound"] = rep->lower_bound.to_decimal();
    j["exact"] = rep->exact;
    j["certificate"] = nlohmann::json::parse(
        certificate_to_json_text(v, *rep->certificate, p));
    o.set_json(j);
  } else {
    o.payload = std::to_string(*rep->upper_bound) + "\n";
  }
  return kOk;
}

int cmd_fill_abelian(const RunConfig& cfg, Output& o) {
  require_word_count(cfg, 1);
  Alphabet X = cfg_alphabet(cfg);
  ReducedWord v = read_word(cfg.words[0], X);
  int k = static_cast<int>(X.size());
  FillingCertificate cert;
  try {
    cert = abelian_fill(v, k);
  } catch (const std::domain_error& e) {
    throw CommandError(kUsageError, e.what());
  }
  GroupPresentation p{X, basic_commutators(k, 2)};
  if (!verify_filling(v, cert, p))
    throw CommandError(kVerificationFailed, "emitted certificate failed verification");
  if (cfg.format == "json")
    o.payload = certificate_to_json_text(v, cert, p);
  else
    o.payload = std::to_string(cert.size()) + "\n";
  return kOk;
}

int cmd_verify_filling(const RunConfig& cfg, Output& o) {
  require_word_count(cfg, 1);
  std::string text;
  if (cfg.words[0] == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    text = ss.str();
  } else {
    std::ifstream in(cfg.words[0]);
    if (!in) throw CommandError(kUsageError, "cannot open '" + cfg.words[0] + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  ParsedCertificate pc = certificate_from_json_text(text);
  bool ok = verify_filling(pc.word, pc.cert, pc.presentation);
  if (cfg.format == "json") {
    ordered_json j{{"verified", ok}, {"steps", pc.cert.size()}};
    o.set_json(j);
  } else {
    o.payload = ok ? "verified\n" : "NOT verified\n";
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_gens(const RunConfig& cfg, Output& o) {
  require_r(cfg);
  GeneratorSystem g = build_generators(cfg.r);
  ordered_json j;
  j["r"] = g.r;
  j["Z"] = ordered_json::array();
  for (const auto& z : g.Z) j["Z"].push_back(tuple_to_text(z));
  j["Y"] = ordered_json::array();
  for (const auto& yi : g.Y) {
    ordered_json row = ordered_json::array();
    for (const auto& t : yi) row.push_back(tuple_to_text(t));
    j["Y"].push_back(row);
  }
  j["size"] = g.all().size();
  if (cfg.format == "json") {
    o.set_json(j);
  } else {
    std::string t;
    for (const auto& z : g.Z) t += tuple_to_text(z) + "\n";
    for (const auto& yi : g.Y)
      for (const auto& y : yi) t += tuple_to_text(y) + "\n";
    o.payload = t;
  }
  return kOk;
}

int cmd_vsp(const RunConfig& cfg, Output& o) {
  require_r(cfg);
  GeneratorSystem gens = build_generators(cfg.r);
  VspWitness w = build_vsp_witnesses(cfg.r);
  bool ok = verify_vsp_witness(w, gens);
  Alphabet zX({"z1", "z2", "z3", "z4"});
  ordered_json j;
  j["r"] = w.r;
  j["k"] = w.k;
  j["x"] = ordered_json::array();
  for (int jj = 2; jj <= cfg.r - 1; ++jj) {
    ordered_json e;
    e["j"] = jj;
    e["tuple"] = tuple_to_text(w.x[jj - 2]);
    e["z_expr"] = serialize_expr(w.x_expr[jj - 2], zX);
    j["x"].push_back(e);
  }
  j["y"] = ordered_json{{"tuple", tuple_to_text(w.y)},
                        {"z_expr", serialize_expr(w.y_expr, zX)}};
  j["verified"] = ok;
  if (cfg.format == "json")
    o.set_json(j);
  else
    o.payload = std::string(ok ? "verified" : "NOT verified") + "\n";
  return ok ? kOk : kVerificationFailed;
}

int cmd_verify_identity(const RunConfig& cfg, Output& o) {
  require_r(cfg);
  require_n(cfg);
  WitnessIdentityReport rep = verify_witness_identity(cfg.r, cfg.n);
  if (cfg.format == "json") {
    ordered_json j{{"r", rep.r},
                   {"n", rep.n},
                   {"k", rep.k},
                   {"identity_holds", rep.identity_holds},
                   {"in_gamma_prev", rep.in_gamma_prev},
                   {"not_in_gamma_r", rep.not_in_gamma_r},
                   {"u_letters", rep.u_letters},
                   {"letter_bound", rep.letter_bound},
                   {"length_ratio", rep.length_ratio},
                   {"passed", rep.passed()}};
    o.set_json(j);
  } else {
    o.payload = rep.passed() ? "identity holds\n" : "identity FAILS\n";
  }
  return rep.passed() ? kOk : kVerificationFailed;
}

int cmd_bfs_length(const RunConfig& cfg, Output& o) {
  require_r(cfg);
  require_word_count(cfg, 1);
  GeneratorSystem gens = build_generators(cfg.r);
  Tuple h = parse_tuple(cfg.words[0], cfg.r);
  BfsBudget budget{cfg.budget_nodes};
  auto len = shortest_length_bfs(h, gens, budget);
  if (!len) throw CommandError(kBudgetExhausted, "budget exhausted");
  if (cfg.format == "json") {
    ordered_json j{{"r", cfg.r}, {"tuple", tuple_to_text(h)}, {"length", *len}};
    o.set_json(j);
  } else {
    o.payload = std::to_string(*len) + "\n";
  }
  return kOk;
}

FibreSetup cli_setup(const Alphabet& X, int klass) {
  int k = static_cast<int>(X.size());
  return make_fibre_setup({}, {}, basic_commutators(k, klass), X);
}

std::unique_ptr<FillingOracle> cli_q_filler(const FibreSetup& s, const RunConfig& cfg) {
  if (cfg.klass == 2) return std::make_unique<AbelianFillingOracle>(s.X);
  SearchBudget budget;
  budget.max_nodes = cfg.budget_nodes;
  budget.conj_cap = cfg.budget_conj;
  return std::make_unique<SearchFillingOracle>(s.PQ, budget);
}

std::string fibre_word_text(const FibreWord& w, const Alphabet& X) {
  if (w.letters().empty()) return "1";
  std::string out;
  for (const FibreLetter& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += l.relator ? "t" + std::to_string(l.index) : X.name(l.index);
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

int cmd_rewrite_012(const RunConfig& cfg, Output& o) {
  require_word_count(cfg, 2);
  if (cfg.klass < 2) throw CommandError(kUsageError, "--class must be >= 2");
  Alphabet X = cfg_alphabet(cfg);
  FibreSetup s = cli_setup(X, cfg.klass);
  ReducedWord u = read_word(cfg.words[0], X);
  ReducedWord v = read_word(cfg.words[1], X);
  auto q_filler = cli_q_filler(s, cfg);
  FibreWord w = rewrite_012(u, v, s, *q_filler);
  auto [g1, g2] = eval_fibre_word(w, s);
  if (cfg.format == "json") {
    ordered_json j{{"fibre_word", fibre_word_text(w, X)},
                   {"q", w.relator_letter_count()},
                   {"coord1", word_to_text(g1, X)},
                   {"coord2", word_to_text(g2, X)}};
    o.set_json(j);
  } else {
    o.payload = fibre_word_text(w, X) + "\n";
  }
  return kOk;
}

int cmd_transfer(const RunConfig& cfg, Output& o) {
  require_word_count(cfg, 1);
  if (cfg.klass < 2) throw CommandError(kUsageError, "--class must be >= 2");
  Alphabet X = cfg_alphabet(cfg);
  FibreSetup s = cli_setup(X, cfg.klass);
  ReducedWord v = read_word(cfg.words[0], X);
  auto q_filler = cli_q_filler(s, cfg);
  FibreWord w = rewrite_012(v, ReducedWord{}, s, *q_filler);
  FreeFillingOracle free_oracle(X);
  TransferReport rep = area_transfer(w, v, s, free_oracle, free_oracle);
  if (cfg.format == "json") {
    ordered_json j;
    j["q"] = rep.q;
    j["k"] = rep.k;
    j["l"] = rep.l;
    j["bound_rhs"] = rep.bound_rhs;
    j["certificate_length"] = rep.certificate.size();
    j["holds"] = rep.holds;
    j["certificate"] =
        nlohmann::json::parse(certificate_to_json_text(v, rep.certificate, s.PQ));
    o.set_json(j);
  } else {
    o.payload = "q=" + std::to_string(rep.q) + " k=" + std::to_string(rep.k) +
                " l=" + std::to_string(rep.l) +
                " holds=" + (rep.holds ? "yes" : "no") + "\n";
  }
  return rep.holds ? kOk : kVerificationFailed;
}

int cmd_report(const RunConfig& cfg, Output& o) {
  require_r(cfg);
  require_n(cfg);
  std::vector<int64_t> ns;
  for (int64_t i = 1; i <= cfg.n; ++i) ns.push_back(i);
  GrowthReport rep = growth_report(cfg.r, ns, BfsBudget{cfg.budget_nodes});
  if (cfg.format == "json") {
    o.payload = growth_report_to_json_text(rep);
  } else {
    std::string t = "n\tarea_lb\th_upper\tv_len\n";
    for (const auto& e : rep.entries)
      t += std::to_string(e.n) + "\t" + e.area_lb.to_decimal() + "\t" +
           std::to_string(e.h_upper) + "\t" + std::to_string(e.v_len) + "\n";
    t += "slope: " + (rep.slope ? std::to_string(*rep.slope) : "n/a") +
         "  target: " + std::to_string(rep.target_exponent) + "\n";
    o.payload = t;
  }
  return kOk;
}

using Handler = int (*)(const RunConfig&, Output&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"expand", cmd_expand},
      {"gamma-test", cmd_gamma_test},
      {"wn", cmd_wn},
      {"area-lb", cmd_area_lb},
      {"area-bf", cmd_area_bf},
      {"fill-abelian", cmd_fill_abelian},
      {"verify-filling", cmd_verify_filling},
      {"gens", cmd_gens},
      {"vsp", cmd_vsp},
      {"verify-identity", cmd_verify_identity},
      {"bfs-length", cmd_bfs_length},
      {"rewrite-012", cmd_rewrite_012},
      {"transfer", cmd_transfer},
      {"report", cmd_report},
  };
  return h;
}

int emit_error(const RunConfig& cfg, std::ostream& out, std::ostream& err, int code,
               const std::string& msg) {
  if (cfg.format == "json")
    out << ordered_json{{"error", msg}}.dump() << "\n";
  else
    err << "error: " << msg << "\n";
  return code;
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  auto it = handlers().find(cfg.command);
  if (it == handlers().end())
    return emit_error(cfg, out, err, kUsageError, "unknown command '" + cfg.command + "'");
  if (cfg.budget_nodes < 1)
    return emit_error(cfg, out, err, kUsageError, "budgets must be positive");
  set_max_threads(cfg.threads);

  Output o{cfg, {}};
  int code;
  try {
    code = it->second(cfg, o);
  } catch (const CommandError& e) {
    return emit_error(cfg, out, err, e.code, e.what());
  } catch (const BudgetExhausted& e) {
    return emit_error(cfg, out, err, kBudgetExhausted, e.what());
  } catch (const ParseError& e) {
    return emit_error(cfg, out, err, kUsageError,
                      std::string(e.what()) + " at byte " + std::to_string(e.offset));
  } catch (const std::invalid_argument& e) {
    return emit_error(cfg, out, err, kUsageError, e.what());
  } catch (const std::domain_error& e) {
    return emit_error(cfg, out, err, kUsageError, e.what());
  } catch (const std::out_of_range& e) {
    return emit_error(cfg, out, err, kUsageError, e.what());
  } catch (const std::exception& e) {
    return emit_error(cfg, out, err, kVerificationFailed, e.what());
  }

  if (!o.payload.empty() && o.payload.back() != '\n') o.payload += '\n';
  if (!cfg.out_path.empty()) {
    std::ofstream f(cfg.out_path);
    if (!f) return emit_error(cfg, out, err, kUsageError, "cannot write '" + cfg.out_path + "'");
    f << o.payload;
  } else {
    out << o.payload;
  }
  return code;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"certified computations in free groups, nilpotent quotients and fibre products"};
  app.require_subcommand(0, 1);
  RunConfig cfg;

  static const std::vector<std::pair<std::string, std::string>> kCommands = {
      {"expand", "Magnus expansion of a word, truncated at --class"},
      {"gamma-test", "lower central series membership"},
      {"wn", "the iterated commutator word w_n for --r, --n"},
      {"area-lb", "certified area lower bound"},
      {"area-bf", "exact area by bounded best-first search"},
      {"fill-abelian", "exact filling certificate over F_k/gamma_2"},
      {"verify-filling", "check a certificate JSON file ('-' for stdin)"},
      {"gens", "generating tuples of H_r"},
      {"vsp", "virtual-surjection witnesses and their checks"},
      {"verify-identity", "check the iterated-commutator identity for --r, --n"},
      {"bfs-length", "exact word length of a tuple over the H_r generators"},
      {"rewrite-012", "rewrite a pair (u, v) over diagonal and relator letters"},
      {"transfer", "area transfer pipeline report for a word"},
      {"report", "growth report: certified area lower bounds vs length upper bounds"},
  };

  std::string word1, word2;
  for (const auto& [name, desc] : kCommands) {
    CLI::App* sc = app.add_subcommand(name, desc);
    sc->add_option("--alphabet", cfg.alphabet, "generator names, comma separated");
    sc->add_option("--class", cfg.klass, "truncation / nilpotency class");
    sc->add_option("--r", cfg.r, "number of factors");
    sc->add_option("--n", cfg.n, "parameter n");
    sc->add_option("--budget-nodes", cfg.budget_nodes, "search node budget");
    sc->add_option("--budget-conj", cfg.budget_conj, "conjugator length cap");
    sc->add_option("--format", cfg.format, "json or text")
        ->check(CLI::IsMember({"json", "text"}));
    sc->add_option("--out", cfg.out_path, "write the report to a file");
    sc->add_option("--threads", cfg.threads, "max worker threads");
    sc->add_option("word1", word1, "positional word argument");
    sc->add_option("word2", word2, "second positional word argument");
  }

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return kOk;
    }
    return emit_error(cfg, out, err, kUsageError, e.what());
  }
  auto subs = app.get_subcommands();
  if (subs.size() != 1)
    return emit_error(cfg, out, err, kUsageError, "expected exactly one subcommand");
  if (subs[0]->count("word1")) cfg.words.push_back(word1);
  if (subs[0]->count("word2")) cfg.words.push_back(word2);
  cfg.command = subs[0]->get_name();
  return run(cfg, out, err);
}

int main_entry(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace nilcert::cli
