// pythag_cli: command-line front end for the Thompson group / Pythagorean
// representation library.
//
// Exit codes: 0 success, 1 contract or validation failure, 2 usage or parse
// error.

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pythag/errors.hpp"
#include "pythag/io.hpp"
#include "pythag/jones.hpp"
#include "pythag/random.hpp"

using namespace pythag;

namespace {

struct Options {
  std::string pair_file;
  std::string element;
  std::string point;
  std::string vector;
  std::size_t depth = DiffuseOptions{}.max_depth;
  double eps = DiffuseOptions{}.eps;
  std::size_t witness_len = DiffuseOptions{}.witness_len;
  double tol = -1.0;  // negative: keep the file's tolerance
  std::uint64_t seed = 1;
  std::string n_list = "1,2,4,8,16,32,64";
  std::size_t i_max = 20;
  std::string out;
  double s = 0.0;
};

std::string sig6(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::shared_ptr<const Pair> load_pair(const Options& o, bool require_valid = true) {
  Pair p = load_pair_file(o.pair_file);
  if (o.tol >= 0) p = Pair(p.A(), p.B(), o.tol);
  if (require_valid) {
    auto report = validate(p);
    if (!report.pass)
      throw ContractError("pair is not Pythagorean: defect " + format_short_sci(report.defect) + " > tol " +
                          format_short_sci(p.tol()));
  }
  return std::make_shared<const Pair>(std::move(p));
}

// --vector if given, else embed(e_1).
Vec load_vector(const Options& o, const std::shared_ptr<const Pair>& pair) {
  if (!o.vector.empty()) return parse_limit_vector(o.vector, pair);
  Vector e = Vector::Zero(pair->dim());
  e(0) = 1.0;
  return embed(pair, e);
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::stringstream in(text);
  std::string item;
  std::size_t offset = 0;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    unsigned long long n = 0;
    try {
      n = std::stoull(item, &used);
    } catch (const std::exception&) {
      throw ParseError("expected a positive integer in --n-list", offset);
    }
    if (used != item.size() || n == 0) throw ParseError("expected a positive integer in --n-list", offset);
    out.push_back(static_cast<std::size_t>(n));
    offset += item.size() + 1;
  }
  if (out.empty()) throw ParseError("empty --n-list", 0);
  return out;
}

int pair_check(const Options& o) {
  auto pair = load_pair(o, false);
  auto report = validate(*pair);
  std::cout << "defect " << format_short_sci(report.defect) << (report.pass ? " PASS" : " FAIL") << "\n";
  return report.pass ? 0 : 1;
}

int diffuse(const Options& o) {
  auto pair = load_pair(o);
  DiffuseOptions opts;
  opts.max_depth = o.depth;
  opts.eps = o.eps;
  opts.witness_len = o.witness_len;
  std::cout << to_string(diffuse_certificate(*pair, opts)) << "\n";
  return 0;
}

void print_words(const char* name, const std::vector<BinaryWord>& ws) {
  std::cout << name;
  for (const auto& w : ws) std::cout << ' ' << w.to_string();
  std::cout << "\n";
}

int element(const Options& o) {
  auto g = parse_element(o.element);
  std::cout << g.to_string() << "\n";
  std::cout << "leaves " << g.leaf_count() << "\n";
  print_words("range ", g.range_tree().leaves());
  print_words("domain", g.domain_tree().leaves());
  std::cout << "slope-at-0 2^" << slope_exponent_at_zero(g) << "\n";
  return 0;
}

int support_cmd(const Options& o) {
  auto s = support(parse_element(o.element));
  for (const auto& w : s.words()) {
    auto [lo, hi] = word_to_interval(w);
    std::cout << w.to_string() << " [" << lo.to_string() << ", " << hi.to_string() << "]\n";
  }
  auto m = s.measure();
  std::cout << "measure " << m.to_string() << " (" << sig6(m.to_double()) << ")\n";
  return 0;
}

int act_cmd(const Options& o) {
  auto g = parse_element(o.element);
  std::cout << act_point(g, CantorPoint::parse(o.point)).to_string() << "\n";
  return 0;
}

int coeff(const Options& o) {
  auto pair = load_pair(o);
  auto g = parse_element(o.element);
  auto c = o.vector.empty() ? coefficient_cyclic(*pair, g) : coefficient(g, load_vector(o, pair));
  std::cout << format_complex(c) << "\n";
  return 0;
}

int ergodic(const Options& o) {
  auto pair = load_pair(o);
  auto g = parse_element(o.element);
  auto z = load_vector(o, pair);
  std::cout << "n defect\n";
  for (auto n : parse_n_list(o.n_list)) std::cout << n << ' ' << sig6(ergodic_defect(g, z, n)) << "\n";
  return 0;
}

int mixing_scan_cmd(const Options& o) {
  auto pair = load_pair(o);
  std::vector<Vec> vectors;
  if (!o.vector.empty()) {
    vectors.push_back(load_vector(o, pair));
  } else {
    std::mt19937_64 rng(o.seed);
    for (int k = 0; k < 2; ++k) vectors.push_back(random_limit_vector<std::complex<double>>(rng, pair, 3, 4));
  }
  auto table = mixing_scan(*pair, vectors, o.i_max);
  if (o.out.empty()) {
    write_csv(std::cout, table);
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw ContractError("cannot write " + o.out);
    write_csv(f, table);
    auto vine = table.select("vine");
    auto from = decreasing_from(table, "vine");
    std::cout << "rows " << table.rows.size() << " -> " << o.out << "\n";
    if (!vine.empty()) std::cout << "vine |c| at i=" << vine.back().index << ": " << sig6(vine.back().abs) << "\n";
    std::cout << "vine decreasing from " << (from ? std::to_string(*from) : std::string("-")) << "\n";
  }
  return 0;
}

int character(const Options& o) {
  auto pair = load_pair(o);
  auto c = character_check(pair, parse_element(o.element));
  std::cout << "predicted " << format_complex(c.predicted) << "\n";
  std::cout << "measured  " << format_complex(c.measured) << "\n";
  std::cout << "residual  " << sig6(c.residual) << "\n";
  return c.residual <= 1e-10 ? 0 : 1;
}

int koopman(const Options& o) {
  std::cout << format_complex(koopman_coefficient(parse_element(o.element), o.s)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thompson group F, Pythagorean pairs and their representations"};
  app.require_subcommand(1);
  Options o;

  auto pair_opt = [&](CLI::App* c) { c->add_option("--pair", o.pair_file, "pair JSON file")->required(); };
  auto elt_opt = [&](CLI::App* c) { c->add_option("--element", o.element, "element, e.g. \"x0 x1^-1\"")->required(); };
  auto tol_opt = [&](CLI::App* c) { c->add_option("--tol", o.tol, "override the pair tolerance"); };

  auto* pc = app.add_subcommand("pair-check", "validate A*A + B*B = 1");
  pair_opt(pc);
  tol_opt(pc);

  auto* df = app.add_subcommand("diffuse", "diffuseness certificate");
  pair_opt(df);
  tol_opt(df);
  df->add_option("--depth", o.depth, "search budget on block length");
  df->add_option("--eps", o.eps, "target operator norm")->check(CLI::Range(1e-300, 1.0 - 1e-15));
  df->add_option("--witness-len", o.witness_len, "longest periodic witness tried");

  auto* el = app.add_subcommand("element", "reduced tree pair");
  elt_opt(el);

  auto* sp = app.add_subcommand("support", "support as dyadic intervals");
  elt_opt(sp);

  auto* ac = app.add_subcommand("act", "image of an eventually periodic point");
  elt_opt(ac);
  ac->add_option("--point", o.point, "point, e.g. \"1(0)\"")->required();

  auto* co = app.add_subcommand("coeff", "matrix coefficient <sigma(g)z, z>");
  pair_opt(co);
  elt_opt(co);
  tol_opt(co);
  co->add_option("--vector", o.vector, "\"tree : v1 ; v2 ...\" (default: embedded e1)");

  auto* er = app.add_subcommand("ergodic", "mean ergodic defect table");
  pair_opt(er);
  elt_opt(er);
  tol_opt(er);
  er->add_option("--vector", o.vector, "limit vector (default: embedded e1)");
  er->add_option("--n-list", o.n_list, "comma-separated averaging lengths");

  auto* ms = app.add_subcommand("mixing-scan", "coefficient decay table as CSV");
  pair_opt(ms);
  tol_opt(ms);
  ms->add_option("--i-max", o.i_max, "largest index")->check(CLI::PositiveNumber);
  ms->add_option("--vector", o.vector, "test vector (default: two seeded random vectors)");
  ms->add_option("--seed", o.seed, "seed for random test vectors");
  ms->add_option("--out", o.out, "CSV output file (default: stdout)");

  auto* ch = app.add_subcommand("character", "character on a b = 0 scalar pair");
  pair_opt(ch);
  elt_opt(ch);
  tol_opt(ch);

  auto* ko = app.add_subcommand("koopman", "twisted Koopman coefficient on L2[0,1]");
  elt_opt(ko);
  ko->add_option("--s", o.s, "twist parameter");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*pc) return pair_check(o);
    if (*df) return diffuse(o);
    if (*el) return element(o);
    if (*sp) return support_cmd(o);
    if (*ac) return act_cmd(o);
    if (*co) return coeff(o);
    if (*er) return ergodic(o);
    if (*ms) return mixing_scan_cmd(o);
    if (*ch) return character(o);
    if (*ko) return koopman(o);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const ContractError& e) {
    std::cerr << "contract violated: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
