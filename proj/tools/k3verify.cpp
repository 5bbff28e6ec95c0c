// Batch verification front-end: named identity suites over the descendent
// algebra, plus small inspection commands.
//
//   k3verify <suite> [--seed N] [--imax N] [--margin N] [--ranks r1,r2,...]
//            [--gram FILE] [--format text|json] [--out FILE]
//   k3verify list-suites
//   k3verify print-operator <token> [--on POLY]
//
// Exit codes: 0 all checks pass, 1 some check failed, 2 configuration error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "k3/errors.hpp"
#include "k3/suites.hpp"

namespace {

using namespace k3;

std::vector<Rat> parse_ranks(const std::string& text) {
  std::vector<Rat> out;
  std::string cur;
  std::stringstream ss(text);
  while (std::getline(ss, cur, ',')) {
    if (cur.empty()) continue;
    out.push_back(parse_rat(cur));
  }
  if (out.empty()) throw ConfigError("--ranks needs at least one value");
  return out;
}

std::pair<std::string, std::vector<std::string>> split_token(const std::string& token) {
  auto open = token.find('[');
  if (open == std::string::npos) return {token, {}};
  if (token.back() != ']') throw ConfigError("malformed operator token '" + token + "'");
  std::string name = token.substr(0, open);
  std::string inside = token.substr(open + 1, token.size() - open - 2);
  std::vector<std::string> args;
  std::string cur;
  std::stringstream ss(inside);
  while (std::getline(ss, cur, ',')) args.push_back(cur);
  return {name, args};
}

int to_int(const std::string& s) {
  Rat r = parse_rat(s);
  if (denominator(r) != 1) throw ConfigError("expected an integer, got '" + s + "'");
  return static_cast<int>(numerator(r));
}

LinearOperator parse_operator_token(const DescendentContext& ctx, const std::string& token) {
  auto [name, args] = split_token(token);
  auto need = [&](size_t n) {
    if (args.size() != n)
      throw ConfigError("operator '" + name + "' expects " + std::to_string(n) + " argument(s)");
  };
  if (name == "R") {
    need(1);
    int k = to_int(args[0]);
    return k >= -1 ? ops::R(k) : ops::R_neg(-k);
  }
  if (name == "T") {
    need(1);
    int k = to_int(args[0]);
    return k >= -1 ? ops::T(ctx, k) : ops::T_neg(ctx, -k);
  }
  if (name == "Tneg") {
    need(1);
    return ops::T_neg(ctx, to_int(args[0]));
  }
  if (name == "S") {
    need(2);
    return ops::S(ctx, to_int(args[0]), parse_rat(args[1]));
  }
  if (name == "L") {
    need(1);
    return ops::L_any(ctx, to_int(args[0]));
  }
  if (name == "Lneg") {
    need(1);
    return ops::L_neg(ctx, to_int(args[0]));
  }
  if (name == "calL") {
    need(2);
    return ops::calL(ctx, to_int(args[0]), parse_rat(args[1]));
  }
  if (name == "Rm1") {
    need(1);
    return ops::Rm1(ctx, parse_coh_class(args[0]));
  }
  if (name == "d") {
    need(2);
    return ops::d(ctx, to_int(args[0]), parse_coh_class(args[1]));
  }
  if (name == "SY") {
    // defaults: Y = g1, v = (0, g1, 1), n = 1
    if (args.size() != 1 && args.size() != 4)
      throw ConfigError("SY takes [k] or [k,Y,v2-class,n]");
    int k = to_int(args[0]);
    CohClass y = CohClass::basis(kGammaFirst);
    MukaiVector v(0, CohClass::basis(kGammaFirst), 1);
    Rat n = 1;
    if (args.size() == 4) {
      y = parse_coh_class(args[1]);
      v = MukaiVector(0, parse_coh_class(args[2]), 1);
      n = parse_rat(args[3]);
    }
    return ops::SY(ctx, k, y, v, n);
  }
  if (name == "Linv") {
    need(0);
    return LinearOperator::custom(
        "Linv",
        [&ctx](const Monomial& m) {
          return ops::apply_L_inv(ctx, DescendentPoly::from_monomial(m),
                                  ops::LinvVariant::with_rank(1));
        },
        0);
  }
  if (name == "M") {
    need(0);
    return ops::M_op();
  }
  if (name == "F") {
    need(1);
    return ops::F_op(ctx, parse_coh_class(args[0]));
  }
  if (name == "eta") {
    // defaults: delta = point, v = (1, 0, 0), factorial convention
    if (args.size() > 1) throw ConfigError("eta takes [] or [delta]");
    CohClass delta = args.empty() ? CohClass::basis(kPoint) : parse_coh_class(args[0]);
    return ops::eta(ctx, delta, MukaiVector(1, CohClass(), 0), ops::EtaConvention::Factorial);
  }
  throw ConfigError("unknown operator token '" + token + "'");
}

int run_print_operator(const std::string& token, const std::string& on,
                       const std::optional<std::string>& gram_path) {
  HodgeBasis basis = HodgeBasis::standard();
  if (gram_path) {
    FileConfig fc = load_config(*gram_path);
    if (fc.gram) basis = HodgeBasis::with_gram(*fc.gram);
  }
  DescendentContext ctx = DescendentContext::make(basis);
  LinearOperator op = parse_operator_token(ctx, token);
  if (!on.empty()) {
    DescendentPoly p = parse_poly(on);
    std::cout << to_string(op.apply(p)) << "\n";
    return 0;
  }
  // no argument given: dump the action on a few low-index generators
  for (int i = 0; i <= 3; ++i) {
    for (int b : {kOne, kSigma, kSigmaBar, kGammaFirst, kPoint}) {
      DescendentPoly img = op.apply(DescendentPoly::generator(i, b));
      std::cout << "ch[" << i << "](" << basis_name(b) << ") -> " << to_string(img) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact verification suites for the descendent-algebra operators"};
  app.require_subcommand(0, 1);

  std::string suite;
  SuiteConfig cfg;
  std::string ranks_text;
  std::string format = "text";
  std::string out_path;
  std::string gram_path;
  std::string golden_path;

  app.add_option("suite", suite, "suite name (see list-suites), or 'all'");
  app.add_option("--seed", cfg.seed, "sampler seed");
  app.add_option("--imax", cfg.i_max, "largest generator index in the window");
  app.add_option("--margin", cfg.margin, "index headroom above imax");
  app.add_option("--degmax", cfg.degree_max, "largest random-monomial degree");
  app.add_option("--nrandom", cfg.n_random, "random monomials per check");
  app.add_option("--ranks", ranks_text, "comma-separated nonzero ranks, e.g. 1,2,3");
  app.add_option("--gram", gram_path, "JSON config file with gram_h11 (and optional seed)");
  app.add_option("--format", format, "report format: text or json");
  app.add_option("--out", out_path, "write the report to a file instead of stdout");
  app.add_option("--golden", golden_path, "golden integral-table file (dim2-constraints)");
  bool write_golden = false;
  app.add_flag("--write-golden", write_golden, "regenerate the golden file instead of checking");

  auto* list_cmd = app.add_subcommand("list-suites", "list the available suites");
  auto* print_cmd =
      app.add_subcommand("print-operator", "print an operator's action in the poly grammar");
  std::string token, on_text;
  print_cmd->add_option("token", token, "operator token, e.g. R[2], T[1], calL[2,3], d[1,point]")
      ->required();
  print_cmd->add_option("--on", on_text, "polynomial to apply the operator to");
  print_cmd->add_option("--gram", gram_path, "JSON config file with gram_h11");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*list_cmd) {
      for (const auto& name : suite_names()) std::cout << name << "\n";
      std::cout << "all\n";
      return 0;
    }
    if (*print_cmd) {
      return run_print_operator(
          token, on_text,
          gram_path.empty() ? std::nullopt : std::optional<std::string>(gram_path));
    }
    if (suite.empty()) {
      std::cerr << "error: no suite given (try 'k3verify list-suites')\n";
      return 2;
    }
    if (!ranks_text.empty()) cfg.ranks = parse_ranks(ranks_text);
    if (!gram_path.empty()) {
      cfg.gram_path = gram_path;
      // a config file may also pin the seed; explicit --seed wins
      FileConfig fc = load_config(gram_path);
      if (fc.seed && app.count("--seed") == 0) cfg.seed = *fc.seed;
    }
    if (!golden_path.empty()) cfg.golden_path = golden_path;
    cfg.write_golden = write_golden;
    if (format != "text" && format != "json")
      throw ConfigError("unknown report format '" + format + "'");

    SuiteReport rep = run_suite(suite, cfg);
    std::string text = emit_report(rep, format);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw ConfigError("cannot write '" + out_path + "'");
      out << text;
    } else {
      std::cout << text;
    }
    return rep.all_pass() ? 0 : 1;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
