// Command-line front end: box validation, inequality derivation and
// evaluation, exact information-theoretic checks, and the named reproduction
// experiments. Machine output (JSON/CSV) goes to --out or stdout; pass/fail
// lines go to stderr; the exit code is 0 iff every assertion passed.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "icbell/experiments.hpp"
#include "icbell/inequality.hpp"
#include "icbell/infotheory.hpp"
#include "icbell/nsbox.hpp"
#include "icbell/oracle.hpp"
#include "icbell/protocol.hpp"
#include "icbell/serialization.hpp"

namespace {

using namespace icbell;

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty())
    std::cout << text << std::endl;
  else
    write_text(out_path, text);
}

void report(const ExperimentResult& r) {
  for (const Check& c : r.checks)
    std::cerr << (c.pass ? "[PASS] " : "[FAIL] ") << r.name << "/" << c.name
              << "  expected " << c.expected << "  actual " << c.actual
              << "  tol " << c.tolerance << "  (" << c.source << ")\n";
  for (const std::string& note : r.notes) std::cerr << "note: " << note << "\n";
  std::cerr << r.name << ": " << (r.pass() ? "PASS" : "FAIL") << " ("
            << r.runtime_seconds << " s)\n";
}

struct Options {
  std::string in_box, in_protocol, in_inequality, in_biases, out;
  std::string family, variant = "derivation", format = "json", name;
  int n = 6, d = 5, t = 1, trials = 500, jobs = 0;
  double grid_step = 0.005, tol = 1e-9, eps = 0.0, e_c = 1.0;
  std::uint64_t seed = 12345;
  bool limit = false;
};

int run_validate_box(const Options& opt) {
  std::string text = read_text(opt.in_box);
  try {
    const NSBox box = box_from_json(text);
    std::string out = "{\n  \"valid\": true,\n  \"nonsignaling_residual\": " +
                      std::to_string(box.nonsignaling_residual()) + "\n}";
    emit(opt.out, out);
    std::cerr << "box OK: " << box.n_a() << "x" << box.n_b() << " settings, "
              << box.d_a() << "x" << box.d_b() << " outcomes\n";
    return 0;
  } catch (const Error& e) {
    emit(opt.out, std::string("{\n  \"valid\": false,\n  \"error\": \"") + e.what() +
                      "\"\n}");
    std::cerr << "box invalid: " << e.what() << "\n";
    return 1;
  }
}

int run_derive(const Options& opt) {
  QuadraticInequality q;
  if (opt.family == "uffink") {
    q = uffink();
  } else if (opt.family == "result1") {
    q = result1_nn22(opt.n);
  } else if (opt.family == "protocol") {
    q = from_protocol_nn22(protocol_from_json(read_text(opt.in_protocol)));
  } else if (opt.family == "d2dd") {
    auto family = d2dd_family(opt.d);
    if (opt.t < 1 || opt.t > static_cast<int>(family.size()))
      throw InvalidPhaseIndex("t must lie in [1, floor(d/2)]");
    q = family[opt.t - 1];
  } else if (opt.family == "nndd") {
    const NnddVariant variant = opt.variant == "two-phase"
                                    ? NnddVariant::TwoPhasePrint
                                    : NnddVariant::Derivation;
    q = nndd_from_protocol(protocol_from_json(read_text(opt.in_protocol)), opt.t,
                           variant);
  } else if (opt.family == "correlated") {
    q = correlated_2222(opt.eps);
  } else {
    throw DomainError("unknown family " + opt.family);
  }
  emit(opt.out, to_json(q));
  return 0;
}

int run_evaluate(const Options& opt) {
  const QuadraticInequality q = inequality_from_json(read_text(opt.in_inequality));
  const BiasTable t = opt.in_biases.empty()
                          ? biases(box_from_json(read_text(opt.in_box)))
                          : bias_table_from_json(read_text(opt.in_biases));
  const Evaluation ev = evaluate(q, t, opt.tol);
  emit(opt.out, to_json(ev));
  std::cerr << q.family << ": lhs " << ev.lhs << " vs bound " << ev.bound
            << (ev.violated ? " VIOLATED\n" : " satisfied\n");
  return 0;
}

int run_oracle(const Options& opt) {
  const NSBox box = box_from_json(read_text(opt.in_box));
  const Protocol p = protocol_from_json(read_text(opt.in_protocol));
  const Channel ch = p.d == 2 ? Channel::binary_symmetric(opt.e_c) : [&] {
    std::vector<double> free_params(p.d / 2 + 1, 0.0);
    free_params[0] = 1.0;
    return Channel::clock(p.d, free_params);
  }();
  const ICEvaluation ev = ic_lhs(box, p, ch, InputDistribution::uniform(p.n, p.d));
  std::string out = to_json(ev);
  if (opt.limit && p.d == 2) {
    const double lim = lhopital_limit(box, p);
    out.insert(out.rfind('\n'), ",\n  \"ratio_limit\": " + std::to_string(lim));
    std::cerr << "ratio limit " << lim << "\n";
  }
  emit(opt.out, out);
  std::cerr << "information lhs " << ev.lhs_bits << " bits vs capacity "
            << ev.capacity_bits << " bits, gap " << ev.gap << "\n";
  return 0;
}

ExperimentResult run_one(const std::string& name, const Options& opt) {
  if (name == "uffink") return repro_uffink();
  if (name == "result1") return repro_result1(opt.n);
  if (name == "qbound") return repro_qbound(opt.n);
  if (name == "3322") return repro_3322(opt.jobs);
  if (name == "fig2") return repro_fig2(opt.grid_step, opt.jobs);
  if (name == "d2dd") return repro_d2dd(opt.d, opt.seed);
  if (name == "correlated") return repro_correlated(opt.seed);
  throw DomainError("unknown experiment " + name +
                    " (expected uffink|result1|qbound|3322|fig2|d2dd|correlated|all)");
}

int run_repro(const Options& opt) {
  std::vector<std::string> names;
  if (opt.name == "all")
    names = {"uffink", "result1", "qbound", "3322", "fig2", "d2dd", "correlated"};
  else
    names = {opt.name};

  bool all_pass = true;
  std::string out;
  for (const std::string& name : names) {
    if (name == "fig2" && opt.format == "csv") {
      const ExperimentResult r = repro_fig2(opt.grid_step, opt.jobs);
      report(r);
      all_pass = all_pass && r.pass();
      out += to_csv(scan_region(opt.grid_step, opt.jobs));
      continue;
    }
    const ExperimentResult r = run_one(name, opt);
    report(r);
    all_pass = all_pass && r.pass();
    if (!out.empty()) out += ",\n";
    out += to_json(r);
  }
  if (names.size() > 1 && opt.format != "csv") out = "[\n" + out + "\n]";
  emit(opt.out, out);
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quadratic quantum Bell inequalities from information-based "
               "encoding/decoding protocols"};
  app.require_subcommand(1);
  Options opt;

  CLI::App* validate = app.add_subcommand(
      "validate-box", "check a probability table for normalization and nonsignaling");
  validate->add_option("box", opt.in_box, "box JSON file")->required();
  validate->add_option("--tol", opt.tol, "validation tolerance");
  validate->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* derive =
      app.add_subcommand("derive", "derive a quadratic inequality from a family or "
                                   "from a protocol JSON file");
  derive->add_option("--family", opt.family,
                     "uffink|result1|protocol|d2dd|nndd|correlated")
      ->required();
  derive->add_option("--n", opt.n, "number of encoded inputs");
  derive->add_option("--d", opt.d, "outcome alphabet size");
  derive->add_option("--t", opt.t, "Fourier phase index");
  derive->add_option("--eps", opt.eps, "input-correlation strength");
  derive->add_option("--variant", opt.variant, "derivation|two-phase");
  derive->add_option("--protocol", opt.in_protocol, "protocol JSON file");
  derive->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* evaluate =
      app.add_subcommand("evaluate", "evaluate an inequality on a box or bias table");
  evaluate->add_option("inequality", opt.in_inequality, "inequality JSON file")
      ->required();
  evaluate->add_option("box", opt.in_box, "box JSON file");
  evaluate->add_option("--biases", opt.in_biases, "bias-table JSON file");
  evaluate->add_option("--tol", opt.tol, "violation tolerance");
  evaluate->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "exact information-theoretic evaluation of a (box, protocol) pair");
  oracle->add_option("box", opt.in_box, "box JSON file")->required();
  oracle->add_option("protocol", opt.in_protocol, "protocol JSON file")->required();
  oracle->add_option("--e-c", opt.e_c, "channel correctness bias (binary only)");
  oracle->add_flag("--limit", opt.limit, "also report the zero-noise ratio limit");
  oracle->add_option("--out", opt.out, "output path (default stdout)");

  CLI::App* repro = app.add_subcommand(
      "repro", "run a named reproduction experiment (exit 0 iff all checks pass)");
  repro->add_option("name", opt.name,
                    "uffink|result1|qbound|3322|fig2|d2dd|correlated|all")
      ->required();
  repro->add_option("--n", opt.n, "largest input count (result1, qbound)");
  repro->add_option("--d", opt.d, "largest alphabet (d2dd)");
  repro->add_option("--grid-step", opt.grid_step, "region grid step (fig2)");
  repro->add_option("--trials", opt.trials, "randomized trial count");
  repro->add_option("--seed", opt.seed, "random seed");
  repro->add_option("--jobs", opt.jobs, "worker count (0 = all cores)");
  repro->add_option("--tol", opt.tol, "violation tolerance");
  repro->add_option("--out", opt.out, "output path (default stdout)");
  repro->add_option("--format", opt.format, "json|csv (csv applies to fig2)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_validate_box(opt);
    if (derive->parsed()) return run_derive(opt);
    if (evaluate->parsed()) return run_evaluate(opt);
    if (oracle->parsed()) return run_oracle(opt);
    if (repro->parsed()) return run_repro(opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
