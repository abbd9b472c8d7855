#include "schubert_kit/schubert_kit.hpp"
#include "schema_text.hpp"

#include "criteria.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace schubert_kit;
using Json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitComputation = 2;

Json big(const BigInt &x) {
  if (fits_json_number(x))
    return to_int64(x);
  return to_string(x);
}

Json big_list(const std::vector<BigInt> &xs) {
  Json out = Json::array();
  for (const auto &x : xs)
    out.push_back(big(x));
  return out;
}

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string group;
  std::string group_positional;
  std::int64_t prime = 0;
  int q = 2;
  int N = 2;
  int length = -1;
  std::string word;
  std::string lower;
  std::string parahoric;
  bool parahoric_given = false;
  int k = 1;
  std::string series;
  int n = 0;
  bool finite = false;
  bool tsv = false;
};

RootDatum group_of(const Options &o) {
  const std::string &text = o.group.empty() ? o.group_positional : o.group;
  if (text.empty())
    throw UsageError("a group is required (--group <spec> or positional)");
  try {
    return build(parse_group_argument(text));
  } catch (const InvalidInput &e) {
    throw UsageError(e.what());
  }
}

CoxeterSystem system_of(const RootDatum &rd, bool finite) {
  if (finite)
    return finite_weyl(rd);
  return affine_coxeter(rd).coxeter;
}

Word word_of(const CoxeterSystem &cs, const std::string &text) {
  try {
    return parse_word(cs, text);
  } catch (const InvalidInput &e) {
    throw UsageError(e.what());
  }
}

/// Finite nodes of the affine system, or the empty set for a finite system.
std::vector<int> default_parahoric(const RootDatum &rd, bool finite) {
  std::vector<int> out;
  if (finite)
    return out;
  const AffineSystem sys = affine_coxeter(rd);
  for (std::size_t g = 0; g < sys.generators.size(); ++g)
    if (!sys.is_affine_node[g])
      out.push_back(static_cast<int>(g));
  return out;
}

std::vector<int> parahoric_of(const Options &o, const RootDatum &rd, const CoxeterSystem &cs) {
  if (!o.parahoric_given)
    return default_parahoric(rd, o.finite);
  return word_of(cs, o.parahoric);
}

std::string labels_of(const CoxeterSystem &cs, const std::vector<int> &gens) { return format_word(cs, gens); }

Json cmd_pi1(const Options &o) {
  const RootDatum rd = group_of(o);
  const FiniteAbelianGroup g = pi1(rd);
  return Json{{"invariant_factors", big_list(g.invariant_factors)}, {"free_rank", g.free_rank}};
}

Json matrix_json(const IntMatrix &m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

Json cmd_omega(const Options &o) {
  const RootDatum rd = group_of(o);
  const OmegaGroup g = omega_group(rd);
  const AffineSystem sys = affine_coxeter(rd);
  Json elements = Json::array();
  for (std::size_t i = 0; i < g.elements.size(); ++i) {
    const auto perm = omega_conjugation(sys, g.elements[i]);
    Json permutation = Json::object();
    for (std::size_t s = 0; s < perm.size(); ++s)
      permutation[sys.coxeter.labels()[s]] = sys.coxeter.labels()[static_cast<std::size_t>(perm[s])];
    elements.push_back(Json{{"translation", g.elements[i].element.translation},
                            {"finite_part", matrix_json(g.elements[i].element.finite_part)},
                            {"pi1_class", big_list(g.pi1_classes[i])},
                            {"conjugation", permutation}});
  }
  return Json{{"order", g.elements.size()}, {"elements", elements}, {"product_table", g.product_table}};
}

Json cmd_reduced_locus(const Options &o) {
  const RootDatum rd = group_of(o);
  if (o.prime == 0)
    throw UsageError("--prime is required");
  if (!is_prime(o.prime))
    throw UsageError("--prime must be a prime number");
  const ReducednessResult r = reducedness_oracle(rd, o.prime);
  Json out{{"reduced", r.reduced()}, {"prime", o.prime}, {"reason", r.reason}};
  if (r.witness) {
    out["witness"] = r.witness->series.to_string();
    out["k"] = r.witness->k;
    out["class"] = r.witness->cls.to_string();
    out["verified"] = true;
  }
  return out;
}

Json cmd_ind_flat(const Options &o) {
  const RootDatum rd = group_of(o);
  const auto locus = ind_flat_locus(rd);
  if (!locus)
    return Json{{"status", "unknown"}, {"excluded_primes", nullptr}};
  return Json{{"status", "known"}, {"excluded_primes", *locus}};
}

Json cmd_bruhat(const Options &o) {
  const RootDatum rd = group_of(o);
  const CoxeterSystem cs = system_of(rd, o.finite);
  const Word v = word_of(cs, o.lower), w = word_of(cs, o.word);
  return Json{{"lower", format_word(cs, reduce(cs, v))}, {"upper", format_word(cs, reduce(cs, w))}, {"leq", bruhat_leq(cs, v, w)}};
}

Json cmd_coset(const Options &o) {
  const RootDatum rd = group_of(o);
  const CoxeterSystem cs = system_of(rd, o.finite);
  const Word w = word_of(cs, o.word);
  const ParahoricType j(cs, parahoric_of(o, rd, cs));
  return Json{{"w", format_word(cs, reduce(cs, w))},
              {"parahoric", labels_of(cs, j.generators())},
              {"min_rep", format_word(cs, min_coset_rep(cs, w, j))},
              {"longest", format_word(cs, j.longest())},
              {"lift", format_word(cs, lift_element(cs, w, j))}};
}

Json cmd_demazure(const Options &o) {
  const RootDatum rd = group_of(o);
  const CoxeterSystem cs = system_of(rd, o.finite);
  const DemazureWord dw = DemazureWord::make(cs, word_of(cs, o.word));
  const BigInt q = o.q;
  check_field_size(q);
  BigInt schubert = 0;
  for (const Word &v : bruhat_interval_below(cs, dw.expression.word))
    schubert += ipow(q, static_cast<unsigned>(v.size()));
  Json cells = Json::array();
  for (const auto &c : demazure_fiber_cells(cs, dw, q))
    cells.push_back(Json{{"cell", format_word(cs, c.cell)}, {"length", c.length}, {"fiber", big(c.fiber)}});
  return Json{{"w", format_word(cs, dw.expression.word)},
              {"q", o.q},
              {"demazure", big(demazure_point_count(dw, q))},
              {"schubert", big(schubert)},
              {"cells", cells}};
}

Json cmd_schubert(const Options &o) {
  const RootDatum rd = group_of(o);
  const CoxeterSystem cs = system_of(rd, o.finite);
  const ParahoricType j(cs, parahoric_of(o, rd, cs));
  const BigInt q = o.q;
  check_field_size(q);
  Word w;
  if (!o.word.empty() || o.length < 0) {
    w = word_of(cs, o.word);
  } else {
    bool found = false;
    for (const auto &e : ball(cs, static_cast<std::size_t>(o.length)))
      if (e.word.size() == static_cast<std::size_t>(o.length) && is_min_coset_rep(cs, e.word, j)) {
        w = e.word;
        found = true;
        break;
      }
    if (!found)
      throw InvalidInput("no minimal coset representative of length " + std::to_string(o.length));
  }
  return big(schubert_point_count(cs, w, j, q));
}

Json cmd_lattice_table(const Options &o) {
  const RootDatum pgl2 = build(parse_group_spec("A1:adjoint"));
  Json rows = Json::array();
  for (int n = 0; n <= 2 * o.N; ++n) {
    const StratumCount c = stratum_point_count(o.q, o.N, n);
    const BigInt weyl = grassmannian_schubert_count(pgl2, {n}, o.q);
    rows.push_back(Json{{"n", n}, {"cell", big(c.cell)}, {"closure", big(c.closure)}, {"demazure", big(weyl)},
                        {"match", c.closure == weyl}});
  }
  return Json{{"q", o.q}, {"N", o.N}, {"rows", rows}};
}

Json cmd_tangent(const Options &o) {
  if (o.n < 0)
    throw UsageError("--n must be nonnegative");
  const int N = (o.n + 1) / 2;
  std::map<int, std::map<std::size_t, int>> summary;
  Json points = Json::array();
  bool matches = true;
  for (const auto &l : enumerate_lattices(o.q, N, stratum_index(o.n))) {
    const int m = stratum_of(l);
    if (m > o.n || (o.n - m) % 2 != 0)
      continue;
    const std::size_t t = tangent_dim(l, o.n);
    summary[m][t] += 1;
    matches = matches && (m == o.n ? t == static_cast<std::size_t>(o.n) : t > static_cast<std::size_t>(o.n));
    points.push_back(Json{{"lattice", l.to_string()}, {"stratum", m}, {"tangent_dim", t}});
  }
  Json strata = Json::array();
  for (const auto &[m, dims] : summary) {
    Json d = Json::object();
    for (const auto &[t, count] : dims)
      d[std::to_string(t)] = count;
    strata.push_back(Json{{"stratum", m}, {"tangent_dims", d}});
  }
  return Json{{"q", o.q}, {"n", o.n}, {"strata", strata}, {"singular_locus_matches", matches}, {"points", points}};
}

Json cmd_witness(const Options &o) {
  if (o.prime == 0)
    throw UsageError("--prime is required");
  if (o.series.empty())
    throw UsageError("--series is required");
  TruncatedLaurentSeries f = [&] {
    try {
      return parse_series(o.series, ArtinRing(o.prime));
    } catch (const InvalidInput &e) {
      throw UsageError(e.what());
    }
  }();
  const WitnessClass c = class_mod_pk(f, o.k);
  Json tail = Json::object();
  for (const auto &[e, v] : c.tail)
    tail[std::to_string(e)] = v;
  return Json{{"series", f.to_string()},  {"prime", o.prime},     {"k", o.k},
              {"class", c.to_string()},   {"valuation_class", c.valuation_class},
              {"tail", tail},             {"trivial", c.is_trivial()}};
}

void print_tsv(const std::string &command, const Json &j) {
  if (command == "lattice-table") {
    std::cout << "n\tcell\tclosure\tdemazure_check\n";
    for (const auto &r : j["rows"])
      std::cout << r["n"] << '\t' << (r["cell"].is_string() ? r["cell"].get<std::string>() : r["cell"].dump()) << '\t'
                << (r["closure"].is_string() ? r["closure"].get<std::string>() : r["closure"].dump()) << '\t'
                << (r["match"].get<bool>() ? "pass" : "fail") << '\n';
    return;
  }
  if (command == "demazure-count") {
    std::cout << "cell\tlength\tfiber\n";
    for (const auto &c : j["cells"])
      std::cout << c["cell"].get<std::string>() << '\t' << c["length"] << '\t'
                << (c["fiber"].is_string() ? c["fiber"].get<std::string>() : c["fiber"].dump()) << '\n';
    return;
  }
  if (command == "tangent") {
    std::cout << "lattice\tstratum\ttangent_dim\n";
    for (const auto &p : j["points"])
      std::cout << p["lattice"].get<std::string>() << '\t' << p["stratum"] << '\t' << p["tangent_dim"] << '\n';
    return;
  }
  if (j.is_object()) {
    for (const auto &[key, value] : j.items())
      std::cout << key << '\t' << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
    return;
  }
  std::cout << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

int emit_error(const std::string &kind, const std::string &message, int code) {
  std::cerr << "error: " << message << '\n';
  std::cout << Json{{"error", Json{{"kind", kind}, {"message", message}}}}.dump() << '\n';
  return code;
}

int run_verify(bool tsv) {
  const auto results = acceptance::run_all();
  bool all = true;
  Json rows = Json::array();
  for (const auto &r : results) {
    all = all && r.pass;
    rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
  }
  if (tsv) {
    std::cout << "id\tresult\tname\n";
    for (const auto &r : results)
      std::cout << r.id << '\t' << (r.pass ? "PASS" : "FAIL") << '\t' << r.name << '\n';
  } else {
    std::cout << Json{{"criteria", rows}, {"all_pass", all}}.dump() << '\n';
  }
  return all ? 0 : kExitComputation;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact combinatorics of affine flag varieties of Chevalley groups"};
  app.require_subcommand(0, 1);
  Options o;
  bool print_schema = false;
  app.add_flag("--json-schema", print_schema, "Print the JSON schema of all outputs");

  using Handler = std::function<Json(const Options &)>;
  std::vector<std::pair<CLI::App *, Handler>> commands;

  auto add_group = [&](CLI::App *sub) {
    sub->add_option("spec", o.group_positional, "Group spec, e.g. 'A3:adjoint x D4:sc +T1' or JSON");
    sub->add_option("--group", o.group, "Group spec (text or JSON)");
  };
  auto add_common = [&](CLI::App *sub) { sub->add_flag("--tsv", o.tsv, "Tab-separated output"); };
  auto add_system = [&](CLI::App *sub) {
    sub->add_flag("--finite", o.finite, "Use the finite Weyl group instead of the affine one");
  };

  auto *pi1_cmd = app.add_subcommand("pi1", "Fundamental group X_*/Q^vee");
  add_group(pi1_cmd);
  add_common(pi1_cmd);
  commands.push_back({pi1_cmd, cmd_pi1});

  auto *omega_cmd = app.add_subcommand("omega", "Length-zero subgroup of the Iwahori-Weyl group");
  add_group(omega_cmd);
  add_common(omega_cmd);
  commands.push_back({omega_cmd, cmd_omega});

  auto *reduced_cmd = app.add_subcommand("reduced-locus", "Reducedness of the affine Grassmannian at a prime");
  add_group(reduced_cmd);
  reduced_cmd->add_option("--prime", o.prime, "Residue characteristic")->required();
  add_common(reduced_cmd);
  commands.push_back({reduced_cmd, cmd_reduced_locus});

  auto *flat_cmd = app.add_subcommand("ind-flat-locus", "Primes excluded from the ind-flat locus");
  add_group(flat_cmd);
  add_common(flat_cmd);
  commands.push_back({flat_cmd, cmd_ind_flat});

  auto *bruhat_cmd = app.add_subcommand("bruhat", "Bruhat comparison lower <= word");
  add_group(bruhat_cmd);
  bruhat_cmd->add_option("--word", o.word, "Upper word, e.g. '1 0 1'")->required();
  bruhat_cmd->add_option("--lower", o.lower, "Lower word")->required();
  add_system(bruhat_cmd);
  add_common(bruhat_cmd);
  commands.push_back({bruhat_cmd, cmd_bruhat});

  auto *coset_cmd = app.add_subcommand("coset", "Minimal coset representative, longest element and lift");
  add_group(coset_cmd);
  coset_cmd->add_option("--word", o.word, "Word")->required();
  coset_cmd->add_option("--parahoric", o.parahoric, "Generators of J, e.g. '1'");
  add_system(coset_cmd);
  add_common(coset_cmd);
  commands.push_back({coset_cmd, cmd_coset});

  auto *dem_cmd = app.add_subcommand("demazure-count", "Demazure and Schubert point counts with fiber profile");
  add_group(dem_cmd);
  dem_cmd->add_option("--word", o.word, "Reduced word")->required();
  dem_cmd->add_option("--q", o.q, "Field size");
  add_system(dem_cmd);
  add_common(dem_cmd);
  commands.push_back({dem_cmd, cmd_demazure});

  auto *sch_cmd = app.add_subcommand("schubert-count", "Point count of a parahoric Schubert variety");
  add_group(sch_cmd);
  sch_cmd->add_option("--word", o.word, "Minimal coset representative");
  sch_cmd->add_option("--length", o.length, "Use the first minimal representative of this length");
  sch_cmd->add_option("--parahoric", o.parahoric, "Generators of J (default: the finite nodes)");
  sch_cmd->add_option("--q", o.q, "Field size");
  add_system(sch_cmd);
  add_common(sch_cmd);
  commands.push_back({sch_cmd, cmd_schubert});

  auto *lat_cmd = app.add_subcommand("lattice-table", "Stratum counts of the PGL2 lattice model");
  lat_cmd->add_option("--q", o.q, "Field size (<= 16)");
  lat_cmd->add_option("--N", o.N, "Window z^N L0 <= L <= z^-N L0");
  add_common(lat_cmd);
  commands.push_back({lat_cmd, cmd_lattice_table});

  auto *tan_cmd = app.add_subcommand("tangent", "Tangent dimensions on the closure of S_n");
  tan_cmd->add_option("--q", o.q, "Field size (<= 16)");
  tan_cmd->add_option("--n", o.n, "Stratum n")->required();
  add_common(tan_cmd);
  commands.push_back({tan_cmd, cmd_tangent});

  auto *wit_cmd = app.add_subcommand("witness-class", "Class of a unit series modulo p^k-th powers and integral units");
  wit_cmd->add_option("--series", o.series, "Series literal, e.g. '1+e*z^-1'")->required();
  wit_cmd->add_option("--prime", o.prime, "Residue characteristic")->required();
  wit_cmd->add_option("--k", o.k, "Exponent k of mu_{p^k}");
  add_common(wit_cmd);
  commands.push_back({wit_cmd, cmd_witness});

  auto *verify_cmd = app.add_subcommand("verify", "Run the acceptance table");
  add_common(verify_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kExitUsage;
  }
  if (const auto *opt = coset_cmd->get_option("--parahoric"); opt->count() > 0)
    o.parahoric_given = true;
  if (const auto *opt = sch_cmd->get_option("--parahoric"); opt->count() > 0)
    o.parahoric_given = true;

  if (print_schema) {
    std::cout << schema_text << '\n';
    return 0;
  }
  if (verify_cmd->parsed())
    return run_verify(o.tsv);

  for (const auto &[sub, handler] : commands) {
    if (!sub->parsed())
      continue;
    const std::string name = sub->get_name();
    try {
      const Json out = handler(o);
      if (o.tsv)
        print_tsv(name, out);
      else
        std::cout << out.dump() << '\n';
      return 0;
    } catch (const UsageError &e) {
      return emit_error("usage", e.what(), kExitUsage);
    } catch (const PrecisionError &e) {
      return emit_error("precision", e.what(), kExitComputation);
    } catch (const BoundsError &e) {
      return emit_error("bounds", e.what(), kExitComputation);
    } catch (const InvalidInput &e) {
      return emit_error("invalid_input", e.what(), kExitComputation);
    } catch (const std::exception &e) {
      return emit_error("internal", e.what(), kExitComputation);
    }
  }
  std::cerr << app.help();
  return kExitUsage;
}
