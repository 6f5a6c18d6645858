#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <ostream>

#include <CLI11.hpp>

#include "utvar/analysis.hpp"
#include "utvar/errors.hpp"
#include "utvar/semidirect.hpp"

namespace utvar::cli {
namespace {

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kError = 2;
constexpr int kLimit = 3;

struct Options {
  std::string semiring = "tropical";
  int n = 2;
  std::string alphabet;
  std::string word;
  std::string identity;
  bool json = false;
  std::uint64_t seed = 0x5eed;
  std::uint64_t budget = 100'000;
  bool oracle = false;
  bool lambda = false;
  bool alpha = false;
  bool unicode = false;
  int rank = 1;
  std::size_t limit = 10'000;
  bool semigroup = false;
  std::string csv;
  std::string out;
  bool verify_embedding = false;
  std::uint64_t bound = 0;
  std::vector<std::string> elements;
};

// "a,b,c" or "abc"
std::string parse_alphabet(const std::string& text) {
  std::string out;
  for (char c : text)
    if (c != ',' && c != ' ') out += c;
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

std::string describe(const MatrixAssignment& a) {
  std::string out;
  for (const auto& [c, m] : a) out += std::string("  ") + c + " = " + to_string(m) + "\n";
  return out;
}

int cmd_check(const Options& o, std::ostream& out) {
  auto s = make_semiring(o.semiring);
  auto id = Identity::parse(o.identity);
  Verdict v = o.oracle ? oracle_check(id, o.n, s, {o.budget, o.seed}) : check_identity(id, o.n, s);
  if (o.json) {
    out << verdict_to_json(v, id, o.n, s) << "\n";
  } else {
    out << to_string(id) << " in UT_" << o.n << "(" << s->name() << "): "
        << (v.holds ? "holds" : "fails") << "\n";
    if (o.oracle) {
      out << "substitutions checked: " << v.substitutions_checked
          << (v.exhaustive ? " (exhaustive)" : "") << "\n";
      if (v.seed) out << "seed: " << *v.seed << "\n";
      if (v.holds && v.budget_exhausted) out << "budget exhausted without a counterexample\n";
    }
    if (v.witness_path) out << "witness path: " << to_string(*v.witness_path) << "\n";
    if (v.witness_assignment) out << "witness matrices:\n" << describe(*v.witness_assignment);
  }
  return v.holds ? kHolds : kFails;
}

int cmd_rho(const Options& o, std::ostream& out, bool force_lambda, bool force_alpha) {
  auto s = make_semiring(o.semiring);
  auto alphabet = o.alphabet.empty() ? std::string() : parse_alphabet(o.alphabet);
  for (char c : o.word)
    if (!alphabet.empty() && alphabet.find(c) == std::string::npos)
      throw Error(std::string("letter '") + c + "' outside --alphabet");
  if (alphabet.empty()) {
    alphabet = o.word;
    std::sort(alphabet.begin(), alphabet.end());
    alphabet.erase(std::unique(alphabet.begin(), alphabet.end()), alphabet.end());
  }
  const bool use_alpha = force_alpha || o.alpha;
  const bool use_lambda = force_lambda || o.lambda || use_alpha;
  if (use_alpha && o.n != 2) throw Error("alpha needs --n 2");
  auto p = rho(o.word, o.n, s);
  if (use_lambda) p = lambda_reduce(p);
  if (use_alpha) {
    auto g = alpha(p, alphabet);
    out << to_string(g, o.unicode) << "\n";
    return kHolds;
  }
  out << (o.json ? to_json(p) : to_string(p)) << "\n";
  return kHolds;
}

int cmd_reduce(const Options& o, std::ostream& out) {
  auto s = make_semiring(o.semiring);
  auto p = rho(o.word, o.n, s);
  auto q = lambda_reduce(p);
  out << (o.json ? to_json(q) : to_string(q)) << "\n";
  if (o.n >= 2 && !(lambda_reconstruct(q) == p)) throw Error("lambda reconstruction mismatch");
  return kHolds;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  auto s = make_semiring(o.semiring);
  auto t = enumerate_free(o.n, s, o.rank, o.limit, !o.semigroup);
  if (!o.csv.empty()) write_file(o.csv, t.to_csv());
  if (!o.out.empty()) write_file(o.out, t.to_json());
  if (o.json) {
    out << t.to_json() << "\n";
  } else {
    out << "free " << (o.semigroup ? "semigroup" : "monoid") << " of rank " << o.rank << " for UT_"
        << o.n << "(" << s->name() << "): " << t.size() << " elements\n";
    out << t.to_csv();
  }
  return kHolds;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  auto s = make_semiring(o.semiring);
  auto r = local_finiteness_report(s, o.n, o.bound ? static_cast<std::uint32_t>(o.bound) : 12);
  if (o.json) {
    out << r.to_json() << "\n";
  } else {
    out << r.summary() << "\n";
    if (!r.falsifier_family.empty()) out << "falsifying elements: " << r.falsifier_family << "\n";
    if (r.distinct_powers)
      out << "distinct free elements among a^0..a^" << r.torsion.bound << ": " << *r.distinct_powers << "\n";
  }
  return kHolds;
}

BicyclicElem parse_bicyclic(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw ParseError("bicyclic element must be \"i,j\"");
  try {
    return {std::stoull(text.substr(0, comma)), std::stoull(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError("bicyclic element must be \"i,j\" with nonnegative integers");
  }
}

int cmd_bicyclic(const Options& o, std::ostream& out) {
  int code = kHolds;
  if (o.verify_embedding) {
    auto check = verify_embedding(o.bound ? o.bound : 20);
    out << (check.ok() ? "morphism+injectivity verified" : "embedding check failed: " + check.failure)
        << "\n";
    if (!check.ok()) code = kFails;
  }
  if (!o.elements.empty()) {
    BicyclicElem acc;
    for (const auto& e : o.elements) acc = bicyclic_mul(acc, parse_bicyclic(e));
    out << "(" << acc.i << "," << acc.j << ") -> " << to_string(bicyclic_embed(acc)) << "\n";
  }
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Identities and free objects of upper triangular matrix monoids over semirings",
               "utvar"};
  app.require_subcommand(1);
  Options o;

  auto semiring = [&](CLI::App* c) {
    c->add_option("--semiring,-s", o.semiring,
                  "tropical | boolean | nat | interval | zmod:<p> | freeidpt:<k> | table:<path>");
  };
  auto dimension = [&](CLI::App* c) {
    c->add_option("--n", o.n, "matrix size")->check(CLI::Range(1, 16));
  };

  auto* check = app.add_subcommand("check", "decide an identity \"u = v\" in UT_n(S)");
  semiring(check);
  dimension(check);
  check->add_option("identity", o.identity, "identity, e.g. \"xyyxxyxyyx = xyyxyxxyyx\"")->required();
  check->add_flag("--oracle", o.oracle, "matrix-substitution oracle instead of the checker");
  check->add_option("--budget", o.budget, "oracle substitution budget");
  check->add_option("--seed", o.seed, "oracle seed (UTVAR_SEED overrides)");
  check->add_flag("--json", o.json, "print the verdict as JSON");

  auto word_cmd = [&](const char* name, const char* help) {
    auto* c = app.add_subcommand(name, help);
    semiring(c);
    dimension(c);
    c->add_option("--word,-w", o.word, "word over the alphabet");
    c->add_option("--alphabet", o.alphabet, "alphabet, e.g. a,b");
    c->add_flag("--json", o.json, "JSON output");
    return c;
  };
  auto* rho_cmd = word_cmd("rho", "print rho(w) in the quiver algebra");
  rho_cmd->add_flag("--lambda", o.lambda, "apply lambda (sigma_n := 1)");
  rho_cmd->add_flag("--alpha", o.alpha, "map into the semidirect product (n = 2)");
  rho_cmd->add_flag("--unicode", o.unicode, "print maps with a unicode arrow");
  auto* reduce_cmd = word_cmd("reduce", "print lambda(rho(w)) and check its reconstruction");
  auto* alpha_cmd = word_cmd("alpha", "print alpha(lambda(rho(w))) (n = 2)");
  alpha_cmd->add_flag("--unicode", o.unicode, "print maps with a unicode arrow");

  auto* enumerate = app.add_subcommand("enumerate", "enumerate a free object with its Cayley table");
  semiring(enumerate);
  dimension(enumerate);
  enumerate->add_option("--rank", o.rank, "number of generators")->check(CLI::Range(1, 26));
  enumerate->add_option("--limit", o.limit, "maximum number of elements");
  enumerate->add_flag("--semigroup", o.semigroup, "omit the identity");
  enumerate->add_flag("--monoid", [&o](std::int64_t) { o.semigroup = false; }, "include the identity (default)");
  enumerate->add_option("--csv", o.csv, "write the Cayley table as CSV");
  enumerate->add_option("--out", o.out, "write the table as JSON");
  enumerate->add_flag("--json", o.json, "JSON output");

  auto* analyze = app.add_subcommand("analyze", "local finiteness report");
  semiring(analyze);
  dimension(analyze);
  analyze->add_option("--bound", o.bound, "torsion search bound (default 12)");
  analyze->add_flag("--json", o.json, "JSON output");

  auto* bicyclic = app.add_subcommand("bicyclic", "bicyclic monoid and its tropical embedding");
  bicyclic->add_flag("--verify-embedding", o.verify_embedding, "check morphism and injectivity");
  bicyclic->add_option("--bound", o.bound, "verification bound (default 20)");
  bicyclic->add_option("elements", o.elements, "elements \"i,j\" to multiply and embed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kError;
  }
  if (const char* env = std::getenv("UTVAR_SEED")) {
    try {
      o.seed = std::stoull(env);
    } catch (const std::exception&) {
      err << "error: UTVAR_SEED must be a nonnegative integer\n";
      return kError;
    }
  }

  try {
    if (check->parsed()) return cmd_check(o, out);
    if (rho_cmd->parsed()) return cmd_rho(o, out, false, false);
    if (reduce_cmd->parsed()) return cmd_reduce(o, out);
    if (alpha_cmd->parsed()) return cmd_rho(o, out, true, true);
    if (enumerate->parsed()) return cmd_enumerate(o, out);
    if (analyze->parsed()) return cmd_analyze(o, out);
    if (bicyclic->parsed()) return cmd_bicyclic(o, out);
  } catch (const LimitExceeded& e) {
    err << "limit exceeded: " << e.what() << "\n";
    return kLimit;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}

}  // namespace utvar::cli
