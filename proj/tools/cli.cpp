#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <tuple>
#include <utility>

#include "CLI11.hpp"
#include "json.hpp"
#include "treecount/closed_form.hpp"
#include "treecount/entropy.hpp"
#include "treecount/errors.hpp"
#include "treecount/graph.hpp"
#include "treecount/oracle.hpp"

namespace treecount::cli {

namespace {

using Json = nlohmann::ordered_json;

struct Config {
  std::string command;
  std::string subject;
  std::uint64_t beta = 0;
  std::uint64_t n = 0;
  std::uint64_t gamma_d = 0;
  std::vector<std::uint64_t> gammas;
  std::vector<std::uint64_t> alphas;
  std::vector<std::int64_t> generators;
  std::string mode = "exact";
  std::string engine = "closed-form";
  std::string format = "json";
  std::string output;
  bool factors = false;
  long initial_bits = 128;
  long max_bits = 1L << 20;
  std::string beta_range;
  std::string n_range;
  std::string alpha_range;
  std::size_t max_gammas = 2;
  std::size_t max_alphas = 2;
  std::uint64_t max_vertices = 200;
  long corrupt_factor = -1;
  bool blur_factors = false;
  int repeat = 1;
  CLI::App* app = nullptr;

  bool given(const std::string& flag) const { return app->count(flag) > 0; }
  void require(const std::string& flag) const {
    if (!given(flag)) throw InvalidInput(command + " " + subject + " needs " + flag);
  }
};

struct Report {
  Json doc;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  int exit_code = ok;
};

Json ball(const Interval& x) {
  const BallStrings b = x.to_ball_strings();
  return Json{{"mid", b.mid}, {"rad", b.rad}};
}

std::string rational_string(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Json header(const Config& c) { return Json{{"command", c.command}, {"subject", c.subject}}; }

Json scaled_instance(std::uint64_t beta, const std::vector<std::uint64_t>& gammas, std::uint64_t n) {
  return Json{{"beta", beta}, {"gammas", gammas}, {"n", n}};
}

Json torus_instance(const std::vector<std::uint64_t>& alphas, std::uint64_t n) {
  return Json{{"alphas", alphas}, {"n", n}};
}

EvalOptions eval_options(const Config& c) {
  EvalOptions o;
  o.precision = PrecisionPolicy{c.initial_bits, c.max_bits};
  o.precision.validate();
  if (c.blur_factors) o.factor_hook = [](std::size_t, Interval& f) { f = f.widened(1.0); };
  return o;
}

Json factors_json(const std::vector<FactorTerm>& factors) {
  Json out = Json::array();
  for (const FactorTerm& f : factors)
    out.push_back(Json{{"index", f.index},
                       {"mu", ball(f.mu)},
                       {"theta", ball(f.theta)},
                       {"omega", rational_string(f.omega)},
                       {"factor", ball(f.factor)}});
  return out;
}

Json entropy_json(const EntropyReport& r) {
  return Json{{"method", to_string(r.method)}, {"value", ball(r.value)}, {"error_bound", r.error_bound}};
}

void check_mode(const Config& c) {
  if (c.mode != "exact" && c.mode != "log") throw InvalidInput("--mode must be exact or log");
  if (c.engine != "closed-form" && c.engine != "oracle") throw InvalidInput("--engine must be closed-form or oracle");
  if (c.mode == "log" && c.engine == "oracle") throw InvalidInput("log mode is only available with the closed-form engine");
}

void fill_exact(Json& doc, const BigCount& tau) {
  doc["value"] = tau.to_string();
  doc["digits"] = tau.decimal_digits();
}

void fill_log(Json& doc, const Interval& ln_tau, const mpz_class& vertices) {
  doc["ln_tau"] = ball(ln_tau);
  doc["ln_tau_per_vertex"] = ball(ln_tau / Interval(vertices, ln_tau.precision()));
}

Report count_scaled(const Config& c) {
  c.require("--beta");
  c.require("--n");
  const ScaledCirculantFamily family(c.beta, c.gammas, c.n);
  Report r;
  r.doc = header(c);
  r.doc["instance"] = scaled_instance(family.beta(), family.base_generators(), family.scale());
  const mpz_class vertices = mpz_class(std::to_string(c.beta)) * mpz_class(std::to_string(c.n));
  r.doc["vertices"] = vertices.get_str();
  r.doc["engine"] = c.engine;
  r.doc["mode"] = c.mode;
  if (c.mode == "log") {
    fill_log(r.doc, log_tau_estimate(family, c.initial_bits), vertices);
  } else if (c.engine == "oracle") {
    fill_exact(r.doc, count_spanning_trees_oracle(build_multigraph(family.instantiate())));
  } else {
    const ClosedFormResult res = evaluate_scaled_circulant(family, eval_options(c));
    fill_exact(r.doc, res.tau);
    r.doc["precision_bits"] = res.precision_bits;
    r.doc["attempts"] = res.attempts;
    if (c.factors) r.doc["factors"] = factors_json(res.factors);
  }
  return r;
}

Report count_torus(const Config& c) {
  c.require("--n");
  const TorusSpec spec(c.alphas, c.n);
  Report r;
  r.doc = header(c);
  r.doc["instance"] = torus_instance(spec.alphas(), spec.last());
  const mpz_class vertices = mpz_class(std::to_string(spec.base_determinant())) * mpz_class(std::to_string(c.n));
  r.doc["vertices"] = vertices.get_str();
  r.doc["engine"] = c.engine;
  r.doc["mode"] = c.mode;
  if (c.mode == "log") {
    fill_log(r.doc, log_tau_estimate(spec, c.initial_bits), vertices);
  } else if (c.engine == "oracle") {
    fill_exact(r.doc, count_spanning_trees_oracle(build_torus_multigraph(spec)));
  } else {
    const ClosedFormResult res = evaluate_torus(spec, eval_options(c));
    fill_exact(r.doc, res.tau);
    r.doc["precision_bits"] = res.precision_bits;
    r.doc["attempts"] = res.attempts;
    if (c.factors) r.doc["factors"] = factors_json(res.factors);
  }
  return r;
}

Report count_fixed(const Config& c) {
  c.require("--n");
  c.require("--generators");
  const CirculantSpec spec(c.n, c.generators);
  Report r;
  r.doc = header(c);
  r.doc["instance"] = Json{{"generators", spec.generators()}, {"n", spec.vertex_count()}};
  r.doc["vertices"] = std::to_string(spec.vertex_count());
  r.doc["engine"] = c.engine == "closed-form" ? "spectral" : "oracle";
  r.doc["mode"] = c.mode;
  if (c.mode == "log") {
    fill_log(r.doc, log_eigenproduct(circulant_spectrum(spec, c.initial_bits), spec.vertex_count()),
             mpz_class(std::to_string(spec.vertex_count())));
  } else if (c.engine == "oracle") {
    fill_exact(r.doc, count_spanning_trees_oracle(build_multigraph(spec)));
  } else {
    try {
      fill_exact(r.doc, tau_from_spectrum(spec, eval_options(c).precision));
    } catch (const DisconnectedGraph&) {
      fill_exact(r.doc, BigCount(0ul));
      r.doc["disconnected"] = true;
    }
  }
  return r;
}

Report cmd_count(const Config& c) {
  check_mode(c);
  if (c.subject == "circulant-scaled") return count_scaled(c);
  if (c.subject == "torus") return count_torus(c);
  return count_fixed(c);
}

// Nondecreasing lists of length <= max_length over [lo, hi], in lexicographic order.
std::vector<std::vector<std::uint64_t>> monotone_lists(std::uint64_t lo, std::uint64_t hi, std::size_t max_length) {
  std::vector<std::vector<std::uint64_t>> out{{}};
  if (lo > hi) return out;
  std::vector<std::vector<std::uint64_t>> frontier{{}};
  for (std::size_t len = 1; len <= max_length; ++len) {
    std::vector<std::vector<std::uint64_t>> next;
    for (const auto& prefix : frontier)
      for (std::uint64_t v = prefix.empty() ? lo : prefix.back(); v <= hi; ++v) {
        auto list = prefix;
        list.push_back(v);
        next.push_back(std::move(list));
      }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct VerifyCase {
  std::tuple<std::uint64_t, std::vector<std::uint64_t>, std::uint64_t> order;
  std::string key;
  Json instance;
  std::uint64_t vertices = 0;
  std::function<BigCount(const EvalOptions&)> closed_form;
  std::function<BigCount()> oracle;
  std::uint64_t corruption = 1;
};

Report run_verify(const Config& c, std::vector<VerifyCase> cases) {
  std::sort(cases.begin(), cases.end(), [](const VerifyCase& a, const VerifyCase& b) { return a.order < b.order; });
  Report r;
  r.doc = header(c);
  r.header = {"key", "vertices", "closed_form", "oracle", "equal"};
  Json instances = Json::array();
  std::size_t mismatches = 0;
  const VerifyCase* minimal = nullptr;
  for (const VerifyCase& vc : cases) {
    EvalOptions opts = eval_options(c);
    if (c.corrupt_factor >= 0) {
      const auto target = static_cast<std::size_t>(c.corrupt_factor);
      const long multiplier = static_cast<long>(vc.corruption);
      opts.factor_hook = [target, multiplier](std::size_t i, Interval& f) {
        if (i == target) f = f * multiplier;
      };
    }
    Json row{{"key", vc.key}, {"instance", vc.instance}, {"vertices", vc.vertices}};
    const std::string oracle = vc.oracle().to_string();
    std::string closed;
    bool equal = false;
    try {
      closed = vc.closed_form(opts).to_string();
      equal = closed == oracle;
      row["closed_form"] = closed;
    } catch (const std::exception& e) {
      row["closed_form"] = nullptr;
      row["error"] = e.what();
    }
    row["oracle"] = oracle;
    row["equal"] = equal;
    if (!equal) {
      ++mismatches;
      if (!minimal || vc.vertices < minimal->vertices) minimal = &vc;
    }
    r.rows.push_back({vc.key, std::to_string(vc.vertices), closed, oracle, equal ? "true" : "false"});
    instances.push_back(std::move(row));
  }
  r.doc["instances"] = std::move(instances);
  r.doc["total"] = cases.size();
  r.doc["mismatches"] = mismatches;
  r.doc["all_equal"] = mismatches == 0;
  r.doc["minimal_failing"] = minimal ? Json{{"key", minimal->key}, {"instance", minimal->instance}} : Json(nullptr);
  if (mismatches) r.exit_code = mismatch;
  return r;
}

Report verify_scaled(const Config& c) {
  c.require("--beta-range");
  c.require("--n-range");
  const Range betas = parse_range(c.beta_range);
  const Range ns = parse_range(c.n_range);
  if (betas.lo == 0 || ns.lo == 0) throw InvalidInput("ranges must start at 1 or above");
  std::vector<VerifyCase> cases;
  for (std::uint64_t beta = betas.lo; beta <= betas.hi; ++beta)
    for (const auto& gammas : monotone_lists(1, beta / 2, c.max_gammas))
      for (std::uint64_t n = ns.lo; n <= ns.hi; ++n) {
        if (beta * n > c.max_vertices) continue;
        const ScaledCirculantFamily family(beta, gammas, n);
        VerifyCase vc;
        vc.order = {beta, gammas, n};
        vc.key = family.describe();
        vc.instance = scaled_instance(beta, gammas, n);
        vc.vertices = beta * n;
        vc.closed_form = [family](const EvalOptions& o) { return tau_scaled_circulant(family, o); };
        vc.oracle = [family] { return count_spanning_trees_oracle(build_multigraph(family.instantiate())); };
        vc.corruption = beta + 1;
        cases.push_back(std::move(vc));
      }
  Report r = run_verify(c, std::move(cases));
  r.doc["parameters"] =
      Json{{"beta_range", c.beta_range}, {"n_range", c.n_range}, {"max_gammas", c.max_gammas}, {"max_vertices", c.max_vertices}};
  return r;
}

Report verify_torus(const Config& c) {
  c.require("--alpha-range");
  c.require("--n-range");
  const Range alphas = parse_range(c.alpha_range);
  const Range ns = parse_range(c.n_range);
  if (alphas.lo == 0 || ns.lo == 0) throw InvalidInput("ranges must start at 1 or above");
  std::vector<VerifyCase> cases;
  for (const auto& list : monotone_lists(alphas.lo, alphas.hi, c.max_alphas))
    for (std::uint64_t n = ns.lo; n <= ns.hi; ++n) {
      const TorusSpec spec(list, n);
      if (spec.determinant() > c.max_vertices) continue;
      VerifyCase vc;
      vc.order = {list.size(), list, n};
      vc.key = spec.describe();
      vc.instance = torus_instance(list, n);
      vc.vertices = spec.determinant();
      vc.closed_form = [spec](const EvalOptions& o) { return tau_torus(spec, o); };
      vc.oracle = [spec] { return count_spanning_trees_oracle(build_torus_multigraph(spec)); };
      vc.corruption = spec.base_determinant() + 1;
      cases.push_back(std::move(vc));
    }
  Report r = run_verify(c, std::move(cases));
  r.doc["parameters"] =
      Json{{"alpha_range", c.alpha_range}, {"n_range", c.n_range}, {"max_alphas", c.max_alphas}, {"max_vertices", c.max_vertices}};
  return r;
}

Report cmd_verify(const Config& c) {
  if (c.subject == "circulant-scaled") return verify_scaled(c);
  return verify_torus(c);
}

std::vector<std::uint64_t> full_generator_list(const Config& c) {
  std::vector<std::uint64_t> out;
  for (std::int64_t g : c.generators) {
    if (g <= 0) throw InvalidInput("generators must be positive");
    out.push_back(static_cast<std::uint64_t>(g));
  }
  std::sort(out.begin(), out.end());
  return out;
}

Report cmd_entropy(const Config& c) {
  Report r;
  r.doc = header(c);
  if (c.subject == "circulant-scaled") {
    c.require("--beta");
    const EntropyReport sum = z_nf_sum(c.beta, c.gammas);
    const EntropyReport integral = z_nf_integral(c.beta, c.gammas);
    r.doc["instance"] = Json{{"beta", c.beta}, {"gammas", c.gammas}};
    r.doc["value"] = ball(sum.value);
    r.doc["method"] = to_string(sum.method);
    r.doc["error_bound"] = sum.error_bound;
    r.doc["representations"] = Json::array({entropy_json(sum), entropy_json(integral)});
    r.doc["gap"] = std::abs(sum.value.mid() - integral.value.mid());
    r.doc["combined_error_bound"] = sum.error_bound + integral.error_bound;
  } else if (c.subject == "circulant-fixed") {
    c.require("--generators");
    const auto gens = full_generator_list(c);
    const EntropyReport z = z_f(gens);
    r.doc["instance"] = Json{{"generators", gens}};
    r.doc["value"] = ball(z.value);
    r.doc["method"] = to_string(z.method);
    r.doc["error_bound"] = z.error_bound;
  } else if (c.subject == "limit") {
    const EntropyReport bessel = riemann_limit(c.gammas, RiemannRoute::bessel);
    const EntropyReport angular = riemann_limit(c.gammas, RiemannRoute::angular);
    r.doc["instance"] = Json{{"gammas", c.gammas}};
    r.doc["value"] = ball(bessel.value);
    r.doc["method"] = to_string(bessel.method);
    r.doc["error_bound"] = bessel.error_bound;
    r.doc["routes"] = Json{{"bessel", entropy_json(bessel)}, {"angular", entropy_json(angular)}};
    r.doc["gap"] = std::abs(bessel.value.mid() - angular.value.mid());
  } else {
    c.require("--gamma-d");
    c.require("--beta-range");
    const Range range = parse_range(c.beta_range);
    std::vector<std::uint64_t> betas;
    for (std::uint64_t b = std::max<std::uint64_t>(range.lo, 1); b <= range.hi; ++b) betas.push_back(b);
    const ComparisonTable table = compare_nf_vs_f(c.gammas, c.gamma_d, betas);
    r.doc["instance"] = Json{{"gammas", c.gammas}, {"gamma_d", c.gamma_d}, {"beta_range", c.beta_range}};
    r.doc["z_f"] = entropy_json(table.z_f);
    Json rows = Json::array();
    r.header = {"beta", "z_nf_mid", "z_nf_rad", "z_f_mid", "z_f_rad", "certified_greater", "inconclusive"};
    const BallStrings zf = table.z_f.value.to_ball_strings();
    for (const ComparisonRow& row : table.rows) {
      const BallStrings nf = row.z_nf.value.to_ball_strings();
      rows.push_back(Json{{"beta", row.beta},
                          {"z_nf", ball(row.z_nf.value)},
                          {"certified_greater", row.certified_greater},
                          {"inconclusive", row.inconclusive}});
      r.rows.push_back({std::to_string(row.beta), nf.mid, nf.rad, zf.mid, zf.rad,
                        row.certified_greater ? "true" : "false", row.inconclusive ? "true" : "false"});
    }
    r.doc["rows"] = std::move(rows);
    r.doc["observed_B"] = table.observed_b ? Json(*table.observed_b) : Json(nullptr);
  }
  return r;
}

Report cmd_bench(const Config& c) {
  check_mode(c);
  if (c.repeat < 1) throw InvalidInput("--repeat must be positive");
  Report last;
  double best = 0, total = 0;
  for (int i = 0; i < c.repeat; ++i) {
    const auto start = std::chrono::steady_clock::now();
    last = cmd_count(c);
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    best = i == 0 ? s : std::min(best, s);
    total += s;
  }
  last.doc.erase("value");
  last.doc.erase("factors");
  last.doc["command"] = "bench";
  last.doc["timing"] = Json{{"repeat", c.repeat}, {"seconds_min", best}, {"seconds_mean", total / c.repeat}};
  return last;
}

void flatten(const Json& j, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
  } else if (j.is_array() && !j.empty() && std::none_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
    std::string s;
    for (const Json& e : j) s += (s.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
    out.emplace_back(prefix, s);
  } else if (j.is_array() && !j.empty()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", out);
  } else {
    out.emplace_back(prefix, j.is_string() ? j.get<std::string>() : j.dump());
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string render(const Report& r, const std::string& format) {
  if (format == "json") return r.doc.dump(2) + "\n";
  std::ostringstream os;
  if (format == "csv") {
    auto line = [&](const std::vector<std::string>& fields) {
      for (std::size_t i = 0; i < fields.size(); ++i) os << (i ? "," : "") << csv_field(fields[i]);
      os << "\n";
    };
    if (!r.header.empty()) {
      line(r.header);
      for (const auto& row : r.rows) line(row);
    } else {
      std::vector<std::pair<std::string, std::string>> flat;
      flatten(r.doc, "", flat);
      line({"key", "value"});
      for (const auto& [k, v] : flat) line({k, v});
    }
    return os.str();
  }
  std::vector<std::pair<std::string, std::string>> flat;
  flatten(r.doc, "", flat);
  for (const auto& [k, v] : flat) os << k << ": " << v << "\n";
  return os.str();
}

long default_initial_bits() {
  const char* env = std::getenv("TREECOUNT_PRECISION_BITS");
  if (!env || !*env) return 128;
  char* end = nullptr;
  const long bits = std::strtol(env, &end, 10);
  if (*end != '\0' || bits < 2) throw InvalidInput(std::string("TREECOUNT_PRECISION_BITS is not a valid bit count: ") + env);
  return bits;
}

int report_error(const Config& c, std::ostream& out, std::ostream& err, const char* kind, const std::exception& e,
                 int code) {
  if (c.format == "json") {
    out << Json{{"error", {{"kind", kind}, {"message", e.what()}}}, {"exit_code", code}}.dump(2) << "\n";
  } else {
    err << "error (" << kind << "): " << e.what() << "\n";
  }
  return code;
}

void add_instance_options(CLI::App* sub, Config& c) {
  sub->add_option("--beta", c.beta, "Scale factor beta of C^{1,g n,...}_{beta n}");
  sub->add_option("--gammas", c.gammas, "Base generators, comma separated")->delimiter(',');
  sub->add_option("--n", c.n, "Vertex scale n (last torus modulus)");
  sub->add_option("--alphas", c.alphas, "Torus moduli alpha_1,...,alpha_{d-1}")->delimiter(',');
  sub->add_option("--generators", c.generators, "Fixed circulant generators")->delimiter(',');
}

void add_output_options(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv", "plain"}));
  sub->add_option("--output", c.output, "Write output to this file instead of stdout");
}

void add_precision_options(CLI::App* sub, Config& c) {
  sub->add_option("--initial-bits", c.initial_bits, "Initial guard precision in bits");
  sub->add_option("--max-bits", c.max_bits, "Largest guard precision in bits");
}

}  // namespace

Range parse_range(const std::string& text) {
  auto number = [&](const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
      throw InvalidInput("malformed range '" + text + "'");
    return std::stoull(s);
  };
  const auto dots = text.find("..");
  Range r;
  if (dots == std::string::npos) {
    r.lo = r.hi = number(text);
  } else {
    r.lo = number(text.substr(0, dots));
    r.hi = number(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw InvalidInput("empty range '" + text + "'");
  return r;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  try {
    c.initial_bits = default_initial_bits();
  } catch (const InvalidInput& e) {
    return report_error(c, out, err, "invalid-input", e, usage_error);
  }

  CLI::App app{"Spanning-tree counts and tree entropies of scaled circulant graphs and discrete tori", "treecount"};
  app.require_subcommand(1);
  const std::vector<std::string> instance_subjects{"circulant-scaled", "circulant-fixed", "torus"};

  CLI::App* count = app.add_subcommand("count", "Count spanning trees");
  count->add_option("subject", c.subject)->required()->check(CLI::IsMember(instance_subjects));
  add_instance_options(count, c);
  count->add_option("--mode", c.mode, "exact or log")->check(CLI::IsMember({"exact", "log"}));
  count->add_option("--engine", c.engine, "closed-form or oracle")->check(CLI::IsMember({"closed-form", "oracle"}));
  count->add_flag("--factors", c.factors, "Include per-factor enclosures");
  count->add_flag("--blur-factors", c.blur_factors)->group("");
  add_precision_options(count, c);
  add_output_options(count, c);

  CLI::App* entropy = app.add_subcommand("entropy", "Tree entropies");
  entropy->add_option("subject", c.subject)
      ->required()
      ->check(CLI::IsMember({"circulant-scaled", "circulant-fixed", "compare", "limit"}));
  add_instance_options(entropy, c);
  entropy->add_option("--gamma-d", c.gamma_d, "Extra fixed generator for compare");
  entropy->add_option("--beta-range", c.beta_range, "Range a..b of beta for compare");
  add_output_options(entropy, c);

  CLI::App* verify = app.add_subcommand("verify", "Check closed forms against the matrix-tree oracle");
  verify->add_option("subject", c.subject)->required()->check(CLI::IsMember({"circulant-scaled", "torus"}));
  verify->add_option("--beta-range", c.beta_range, "Range a..b of beta");
  verify->add_option("--n-range", c.n_range, "Range a..b of n");
  verify->add_option("--alpha-range", c.alpha_range, "Range a..b of torus moduli");
  verify->add_option("--max-gammas", c.max_gammas, "Longest base generator list");
  verify->add_option("--max-alphas", c.max_alphas, "Longest torus modulus list");
  verify->add_option("--max-vertices", c.max_vertices, "Skip instances with more vertices");
  verify->add_option("--corrupt-factor", c.corrupt_factor)->group("");
  add_precision_options(verify, c);
  add_output_options(verify, c);

  CLI::App* bench = app.add_subcommand("bench", "Time a count");
  bench->add_option("subject", c.subject)->required()->check(CLI::IsMember(instance_subjects));
  add_instance_options(bench, c);
  bench->add_option("--mode", c.mode, "exact or log")->check(CLI::IsMember({"exact", "log"}));
  bench->add_option("--engine", c.engine, "closed-form or oracle")->check(CLI::IsMember({"closed-form", "oracle"}));
  bench->add_option("--repeat", c.repeat, "Number of runs");
  add_precision_options(bench, c);
  add_output_options(bench, c);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  for (CLI::App* sub : {count, entropy, verify, bench})
    if (*sub) {
      c.app = sub;
      c.command = sub->get_name();
    }

  try {
    Report r;
    if (c.command == "count") r = cmd_count(c);
    else if (c.command == "entropy") r = cmd_entropy(c);
    else if (c.command == "verify") r = cmd_verify(c);
    else r = cmd_bench(c);

    const std::string text = render(r, c.format);
    if (c.output.empty()) {
      out << text;
    } else {
      std::ofstream file(c.output);
      if (!file || !(file << text)) throw InvalidInput("cannot write " + c.output);
    }
    if (r.exit_code == mismatch) err << "mismatch; minimal failing instance: " << r.doc["minimal_failing"]["key"].get<std::string>() << "\n";
    return r.exit_code;
  } catch (const ResultTooLarge& e) {
    return report_error(c, out, err, "result-too-large", e, usage_error);
  } catch (const InvalidInput& e) {
    return report_error(c, out, err, "invalid-input", e, usage_error);
  } catch (const DisconnectedGraph& e) {
    return report_error(c, out, err, "disconnected-graph", e, usage_error);
  } catch (const PrecisionExhausted& e) {
    return report_error(c, out, err, "precision-exhausted", e, budget_exhausted);
  } catch (const QuadratureBudgetExceeded& e) {
    return report_error(c, out, err, "quadrature-budget-exceeded", e, budget_exhausted);
  } catch (const std::exception& e) {
    return report_error(c, out, err, "internal-error", e, usage_error);
  }
}

}  // namespace treecount::cli
