#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "addcomb/conv.hpp"
#include "addcomb/energy.hpp"
#include "addcomb/error.hpp"
#include "addcomb/forge.hpp"
#include "addcomb/harness.hpp"
#include "addcomb/incidence.hpp"
#include "addcomb/io.hpp"
#include "addcomb/opmethod.hpp"
#include "addcomb/structure.hpp"
#include "plot.hpp"

namespace addcomb::cli {

namespace {

constexpr double kMinBudget = 1e6;

struct Source {
  std::vector<std::string> inputs;
  std::string spec_path;
  std::string family;
  std::optional<Elem> p;
  FamilySpec spec;
};

struct Run {
  std::string out_path;
  double budget = static_cast<double>(Budget::kDefaultSteps);
  bool oracle = false;
  unsigned jobs = 0;
};

void add_run_options(CLI::App* sub, Run& run, bool jobs) {
  sub->add_option("--out", run.out_path, "Write the artifact here instead of stdout");
  sub->add_option("--budget", run.budget, "Work budget in elementary steps (>= 1e6; ADDCOMB_BUDGET overrides)");
  sub->add_flag("--oracle", run.oracle, "Force naive reference paths");
  if (jobs) sub->add_option("--jobs", run.jobs, "Worker threads; 0 = logical cores");
}

void add_family_options(CLI::App* sub, FamilySpec& spec, bool sizes) {
  if (sizes) sub->add_option("--n", spec.n, "Size parameter");
  sub->add_option("--start", spec.start, "First element (ap, geometric)");
  sub->add_option("--step", spec.step, "Difference or ratio (ap, geometric)");
  if (sizes) sub->add_option("--order", spec.order, "Subgroup order (mult_subgroup)");
  sub->add_option("--probability", spec.probability, "Keep probability (random_interval)");
  sub->add_option("--seed", spec.seed, "Seed");
}

void add_source_options(CLI::App* sub, Source& src, bool many) {
  CLI::Option* in = many ? sub->add_option("--input", src.inputs, "JSON set file(s)")
                         : sub->add_option("--input", src.inputs, "JSON set file")->expected(1);
  CLI::Option* spec = sub->add_option("--spec", src.spec_path, "JSON family spec file");
  CLI::Option* fam = sub->add_option("--family", src.family, "Generate the set from a family");
  in->excludes(spec)->excludes(fam);
  spec->excludes(fam);
  sub->add_option("--p", src.p, "Modulus; omitted means the integers");
  add_family_options(sub, src.spec, true);
}

Budget resolve_budget(double flag) {
  double v = flag;
  if (const char* env = std::getenv("ADDCOMB_BUDGET"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    v = std::strtod(env, &end);
    if (end == env || *end != '\0') throw ParameterError("ADDCOMB_BUDGET is not a number: '" + std::string(env) + "'");
  }
  if (!(v >= kMinBudget)) throw ParameterError("budget must be at least 1e6");
  if (v > 1.8e19) v = 1.8e19;
  return Budget{static_cast<std::uint64_t>(v)};
}

GroupCtx ctx_for(const std::optional<Elem>& p) { return p ? GroupCtx::residues(*p) : GroupCtx::integers(); }

GSet read_set(const std::string& path, const std::optional<Elem>& p) {
  GSet s = set_from_json(read_file(path));
  if (p && s.ctx() != GroupCtx::residues(*p))
    throw ParameterError("'" + path + "' is over " + s.ctx().describe() + ", not Z/" + std::to_string(*p));
  return s;
}

std::string spec_id(const FamilySpec& s) {
  std::string id = family_name(s.family);
  id += "-" + std::to_string(s.family == Family::MultSubgroup ? s.order : s.n);
  if (s.family == Family::RandomInterval || s.family == Family::ApPlusGeneric) id += "-s" + std::to_string(s.seed);
  return id;
}

struct Instance {
  std::string id;
  GSet set;
};

std::vector<Instance> load(const Source& src) {
  std::vector<Instance> out;
  if (!src.inputs.empty()) {
    for (const auto& path : src.inputs)
      out.push_back({std::filesystem::path(path).stem().string(), read_set(path, src.p)});
    return out;
  }
  FamilySpec spec = src.spec;
  if (!src.spec_path.empty()) {
    spec = spec_from_json(read_file(src.spec_path));
  } else if (!src.family.empty()) {
    spec.family = parse_family(src.family);
  } else {
    throw ParameterError("no input set: give --input, --spec or --family");
  }
  out.push_back({spec_id(spec), generate(spec, ctx_for(src.p))});
  return out;
}

Instance load_one(const Source& src) { return load(src).front(); }

void emit(const Run& run, std::ostream& out, const std::string& text) {
  if (run.out_path.empty()) {
    out << text;
  } else {
    write_file(run.out_path, text);
  }
}

// Restores the process-wide convolution path on scope exit.
class OracleScope {
 public:
  explicit OracleScope(bool oracle) : saved_(default_conv_path()) {
    if (oracle) set_default_conv_path(ConvPath::Naive);
  }
  ~OracleScope() { set_default_conv_path(saved_); }
  OracleScope(const OracleScope&) = delete;
  OracleScope& operator=(const OracleScope&) = delete;

 private:
  ConvPath saved_;
};

int cmd_gen(const Source& src, const Run& run, std::ostream& out) {
  if (!src.inputs.empty()) throw ParameterError("gen takes --family or --spec, not --input");
  emit(run, out, set_to_json(load_one(src).set) + "\n");
  return kOk;
}

int cmd_energy(const Source& src, const Run& run, const std::string& set_b, const std::vector<unsigned>& ks,
               const std::vector<unsigned>& ts, std::ostream& out) {
  const auto inst = load_one(src);
  std::vector<EnergyRecord> records;
  if (set_b.empty()) {
    for (unsigned k : ks) records.push_back(self_energy_record(inst.set, k, "A"));
  } else {
    const GSet b = read_set(set_b, inst.set.ctx().is_residues() ? std::optional(inst.set.ctx().modulus()) : std::nullopt);
    for (unsigned k : ks)
      records.push_back({"E" + std::to_string(k) + "+(A,B)", energy(inst.set, b, k), {"A", "B"}, k});
  }
  for (unsigned k : ts) records.push_back({"T" + std::to_string(k), t_k(inst.set, k), {"A"}, k});
  std::ostringstream os;
  write_energy_csv(os, inst.id, records);
  emit(run, out, os.str());
  return kOk;
}

int cmd_d4(const Source& src, const Run& run, const std::string& universe, const std::string& witness_out,
           std::ostream& out) {
  const auto inst = load_one(src);
  const Budget budget = resolve_budget(run.budget);
  const D4Estimate est = universe.empty() ? default_d4_estimate(inst.set, budget)
                                          : d4_exact_small(inst.set, read_set(universe, std::nullopt));
  std::ostringstream os;
  os << "schema_version,instance_id,method,exact,lower_bound,lower_bound_decimal,witness_size,candidates\n";
  os << kCsvSchemaVersion << ',' << inst.id << ',' << d4_method_name(est.method) << ',' << (est.exact ? "yes" : "no")
     << ',' << to_string(est.lower_bound) << ',' << format_double(to_double(est.lower_bound)) << ','
     << est.witness.size() << ',' << est.candidates << '\n';
  emit(run, out, os.str());
  if (!witness_out.empty()) write_file(witness_out, set_to_json(est.witness) + "\n");
  return kOk;
}

int cmd_spectrum(const Source& src, const Run& run, const std::string& variant, const std::string& g_set,
                 double tolerance, const std::string& matrix_out, std::ostream& out, std::ostream& err) {
  const auto inst = load_one(src);
  const bool diff = variant == "difference";
  const CountFn g = g_set.empty() ? repr(inst.set, inst.set, diff ? Sign::Minus : Sign::Plus)
                                  : CountFn::indicator(read_set(g_set, std::nullopt));
  const SymMat m = build_T(inst.set, g, diff ? MatVariant::Difference : MatVariant::Sum);
  const Spectrum sp = spectrum(m, tolerance);
  std::ostringstream os;
  os << "schema_version,instance_id,rank,eigenvalue\n";
  for (std::size_t i = 0; i < sp.eigenvalues.size(); ++i)
    os << kCsvSchemaVersion << ',' << inst.id << ',' << i << ',' << format_double(sp.eigenvalues[i]) << '\n';
  emit(run, out, os.str());
  err << "spectrum: " << sp.sweeps << " sweeps, residual " << format_double(sp.residual) << '\n';
  if (!matrix_out.empty()) write_file(matrix_out, matrix_to_json(m) + "\n");
  return kOk;
}

LineSet read_lines(const std::string& path, const GroupCtx& ctx) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  std::vector<Line> lines;
  try {
    if (j.contains("lines")) {
      long i = 0;
      for (const auto& l : j.at("lines")) {
        if (!l.is_array() || l.size() != 2) throw FormatError("line is not a [slope, intercept] pair", i);
        lines.push_back(Line::affine(ctx.reduce(l[0].get<Elem>()), ctx.reduce(l[1].get<Elem>())));
        ++i;
      }
    }
    if (j.contains("vertical"))
      for (const auto& x : j.at("vertical")) lines.push_back(Line::vertical_at(ctx.reduce(x.get<Elem>())));
  } catch (const json::exception& e) {
    throw FormatError(std::string("bad line file: ") + e.what());
  }
  return LineSet(ctx, std::move(lines));
}

int cmd_incidence(Elem p, const std::string& set_a, const std::string& set_b, const std::string& lines_from,
                  const std::string& lines_path, const Run& run, std::ostream& out) {
  const GSet a = read_set(set_a, p), b = read_set(set_b, p);
  LineSet lines(a.ctx());
  if (lines_from == "pairs") {
    lines = LineSet::from_pairs(a, b);
  } else {
    if (lines_path.empty()) throw ParameterError("--lines-from file needs --lines PATH");
    lines = read_lines(lines_path, a.ctx());
  }
  const Count count = count_incidences(a, b, lines, run.oracle ? IncidencePath::Oracle : IncidencePath::Fast);
  const SzTerms t = sz_terms(a.size(), b.size(), lines.size(), static_cast<std::uint64_t>(p));
  std::ostringstream os;
  os << "schema_version,p,size_a,size_b,lines,tuples,count,sz_main,sz_lines,sz_points,sz_p,sz_total,dominant_term\n";
  os << kCsvSchemaVersion << ',' << p << ',' << a.size() << ',' << b.size() << ',' << lines.size() << ','
     << lines.tuples() << ',' << to_string(count);
  for (long double term : t.terms) os << ',' << format_double(static_cast<double>(term));
  os << ',' << format_double(static_cast<double>(t.total())) << ',' << sz_term_name(t.dominant()) << '\n';
  emit(run, out, os.str());
  return kOk;
}

int cmd_verify(const Source& src, const Run& run, std::ostream& out, std::ostream& err) {
  const auto instances = load(src);
  VerifyOptions opts;
  opts.budget = resolve_budget(run.budget);
  const auto reports = parallel_map<VerificationReport>(instances.size(), run.jobs, [&](std::size_t i) {
    return verify_all(instances[i].set, instances[i].id, opts);
  });
  std::ostringstream os;
  write_report_csv_header(os);
  bool ok = true;
  for (const auto& rep : reports) {
    write_report_csv_rows(os, rep);
    ok = ok && rep.passed();
    for (const auto& r : rep.rows) {
      if (r.status() == Status::Skipped) err << "skipped: " << rep.instance_id << ' ' << r.check() << ": " << r.notes() << '\n';
      if (r.failed()) err << "FAILED: " << rep.instance_id << ' ' << r.check() << ": " << r.lhs() << " > " << r.rhs() << '\n';
    }
  }
  emit(run, out, os.str());
  return ok ? kOk : kCheckFailed;
}

struct SweepArgs {
  std::vector<std::string> families;
  std::vector<Elem> primes;
  std::vector<std::int64_t> orders;
  std::vector<std::int64_t> sizes;
  unsigned seeds = 1;
  std::string plot_path;
  FamilySpec base;
};

int cmd_sweep(const SweepArgs& args, const Run& run, std::ostream& out) {
  std::vector<FamilySpec> specs;
  for (const auto& name : args.families) {
    FamilySpec spec = args.base;
    spec.family = parse_family(name);
    const bool subgroup = spec.family == Family::MultSubgroup;
    const auto& values = subgroup ? args.orders : args.sizes;
    if (values.empty()) throw ParameterError(std::string(family_name(spec.family)) + " needs " +
                                             (subgroup ? "--orders" : "--sizes"));
    for (std::int64_t v : values) {
      (subgroup ? spec.order : spec.n) = v;
      for (unsigned s = 0; s < args.seeds; ++s) {
        FamilySpec seeded = spec;
        seeded.seed = args.base.seed + s;
        specs.push_back(seeded);
      }
    }
  }
  const std::vector<Elem> primes = args.primes.empty() ? std::vector<Elem>{0} : args.primes;
  const auto rows = sweep(specs, primes, run.jobs, resolve_budget(run.budget));
  std::ostringstream os;
  write_sweep_csv(os, rows);
  emit(run, out, os.str());
  if (!args.plot_path.empty()) {
    std::ostringstream svg;
    write_exponent_svg(svg, rows);
    write_file(args.plot_path, svg.str());
  }
  return kOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact sum-product and additive energy computations"};
  app.name("addcomb");
  app.require_subcommand(1);

  Source src;
  Run run;

  auto* gen = app.add_subcommand("gen", "Generate a family member as a JSON set");
  add_source_options(gen, src, false);
  add_run_options(gen, run, false);

  auto* en = app.add_subcommand("energy", "Higher energies E_k and T_k");
  std::string energy_b;
  std::vector<unsigned> ks{1, 2, 3, 4}, ts;
  add_source_options(en, src, false);
  add_run_options(en, run, false);
  en->add_option("--set-b", energy_b, "Second set for E_k(A, B)");
  en->add_option("--k", ks, "Energy orders")->delimiter(',');
  en->add_option("--t", ts, "T_k orders (1, 2, 4, 8)")->delimiter(',');

  auto* d4 = app.add_subcommand("d4", "Lower bound for d4 with its witness set");
  std::string universe, witness_out;
  add_source_options(d4, src, false);
  add_run_options(d4, run, false);
  d4->add_option("--universe", universe, "Exhaust all subsets of this set (at most 20 elements)");
  d4->add_option("--witness-out", witness_out, "Write the witness set as JSON");

  auto* spec = app.add_subcommand("spectrum", "Eigenvalues of an operator T_A^g");
  std::string variant = "difference", g_set, matrix_out;
  double tolerance = 1e-10;
  add_source_options(spec, src, false);
  add_run_options(spec, run, false);
  spec->add_option("--variant", variant, "g(x - y) or g(x + y)")->check(CLI::IsMember({"difference", "sum"}));
  spec->add_option("--g-set", g_set, "Use the indicator of this set as g (default r_{A-A} or r_{A+A})");
  spec->add_option("--tolerance", tolerance, "Off-diagonal tolerance for the eigensolver");
  spec->add_option("--matrix-out", matrix_out, "Write the matrix as JSON");

  auto* inc = app.add_subcommand("incidence", "Point-line incidences over F_p^2");
  Elem inc_p = 0;
  std::string set_a, set_b, lines_from = "pairs", lines_path;
  inc->add_option("--p", inc_p, "Prime modulus")->required();
  inc->add_option("--set-a", set_a, "x-coordinates (JSON set)")->required();
  inc->add_option("--set-b", set_b, "y-coordinates (JSON set)")->required();
  inc->add_option("--lines-from", lines_from, "pairs: y = a x + a b for a in A, b in B; file: --lines")
      ->check(CLI::IsMember({"pairs", "file"}));
  inc->add_option("--lines", lines_path, "JSON {\"lines\": [[slope, intercept], ...], \"vertical\": [x, ...]}");
  add_run_options(inc, run, false);

  auto* ver = app.add_subcommand("verify", "Run every identity and inequality check");
  add_source_options(ver, src, true);
  add_run_options(ver, run, true);

  auto* sw = app.add_subcommand("sweep", "Sumset exponents over a family grid");
  SweepArgs sargs;
  sw->add_option("--family", sargs.families, "Families to sweep")->required();
  sw->add_option("--p", sargs.primes, "Moduli; 0 or omitted means the integers")->delimiter(',');
  sw->add_option("--orders", sargs.orders, "Subgroup orders")->delimiter(',');
  sw->add_option("--sizes", sargs.sizes, "Size parameters n")->delimiter(',');
  sw->add_option("--seeds", sargs.seeds, "Seeds per grid point, counting up from --seed")
      ->check(CLI::PositiveNumber);
  sw->add_option("--plot", sargs.plot_path, "Write an SVG chart of the exponents");
  add_family_options(sw, sargs.base, false);
  add_run_options(sw, run, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kUsage;
  }

  try {
    resolve_budget(run.budget);
    const OracleScope scope(run.oracle);
    if (*gen) return cmd_gen(src, run, out);
    if (*en) return cmd_energy(src, run, energy_b, ks, ts, out);
    if (*d4) return cmd_d4(src, run, universe, witness_out, out);
    if (*spec) return cmd_spectrum(src, run, variant, g_set, tolerance, matrix_out, out, err);
    if (*inc) return cmd_incidence(inc_p, set_a, set_b, lines_from, lines_path, run, out);
    if (*ver) return cmd_verify(src, run, out, err);
    if (*sw) return cmd_sweep(sargs, run, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kIo;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << " (raise --budget)\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace addcomb::cli
