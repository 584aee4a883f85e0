#pragma once

// Command-line front end.  run() takes the arguments after the program
// name and returns the exit code: 0 success, 1 a check failed, 2 bad
// usage or input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "bcox/bcox.hpp"

namespace bcox::cli {

namespace detail {

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

inline int status(bool ok) { return ok ? 0 : 1; }

inline std::optional<Presentation> presentation_for(const std::string& algebra, int n, Registry& reg) {
  if (algebra == "bmwB") return present_bmwB(n, BmwParameters::symbolic(reg));
  if (algebra == "bmwA") return present_bmwA(n, BmwParameters::symbolic(reg));
  if (algebra == "heckeB") return present_heckeB(n, HeckeParameters::symbolic(reg));
  if (algebra == "tlb") return present_tlb(n, TlbParameters::symbolic(reg));
  return std::nullopt;
}

inline int cmd_dims(const std::string& algebra, std::optional<int> n, Io io) {
  Registry& reg = standard_registry();
  struct Range {
    const char* name;
    int lo, hi;
  };
  const std::vector<Range> all{{"bmwB", 1, 3}, {"bmwA", 2, 4}, {"heckeB", 1, 4}, {"tlb", 1, 4}};
  if (!algebra.empty() && n) {
    const BasisTable t = compute_basis(*presentation_for(algebra, *n, reg));
    io.out << t.dimension() << "\n";
    return 0;
  }
  bool ok = true;
  for (const auto& r : all) {
    if (!algebra.empty() && algebra != r.name) continue;
    for (int k = r.lo; k <= r.hi; ++k) {
      const Presentation p = *presentation_for(r.name, k, reg);
      const std::size_t expected = p.expected_dim.value_or(0);
      const std::size_t dim = compute_basis(p).dimension();
      ok = ok && dim == expected;
      io.out << r.name << " n=" << k << " dim=" << dim << " expected=" << expected << (dim == expected ? " PASS" : " FAIL")
             << "\n";
    }
  }
  return status(ok);
}

inline int cmd_bratteli(int n, Io io) {
  const bool ok = dimension_check(n);
  std::uint64_t sum = 0;
  for (const auto& [v, c] : path_counts(n)) {
    io.out << v.to_string() << ": " << c << "\n";
    sum += c * c;
  }
  io.out << "sum of squares " << sum << ", 2^n(2n-1)!! = " << bmwB_dimension(n) << (ok ? " PASS" : " FAIL") << "\n";
  return status(ok);
}

inline void report(const IdentityCheck& c, const std::string& label, Io io) {
  if (c.holds) return;
  io.out << label << "first difference at " << c.basis_word << ":\n  lhs " << c.lhs << "\n  rhs " << c.rhs << "\n";
}

inline int cmd_verify(const std::string& what, bool perturb, Io io) {
  Registry& reg = standard_registry();
  const BmwParameters par = BmwParameters::symbolic(reg);
  const RationalFn t1 = RationalFn::variable(reg["t1"]), t2 = RationalFn::variable(reg["t2"]);
  if (what == "ybe") {
    const BasisTable alg = compute_basis(present_bmwA(3, par));
    const auto r = [&](int i, const RationalFn& t) {
      Element e = baxterized_R(alg, i, t);
      if (perturb) e = e + t * alg.generator("e" + std::to_string(i));
      return e;
    };
    const IdentityCheck c = check_ybe(alg, t1, t2, r);
    io.out << (c.holds ? "PASS" : "FAIL") << "\n";
    report(c, "", io);
    return status(c.holds);
  }
  if (what == "re") {
    const BasisTable alg = compute_basis(present_bmwB(2, par));
    bool ok = true;
    std::ostringstream detail;
    for (const bool symbolic_f1 : {false, true}) {
      const RationalFn f1 = symbolic_f1 ? RationalFn::variable(reg["f1"]) : RationalFn(&reg, 1);
      const auto k = [&](const RationalFn& t) {
        Element e = boundary_K(alg, t, f1);
        if (perturb) e = e + t * alg.unit();
        return e;
      };
      const IdentityCheck c = check_re(alg, t1, t2, k);
      ok = ok && c.holds;
      report(c, std::string("f1 = ") + (symbolic_f1 ? "f1" : "1") + ": ", {io.in, detail, io.err});
    }
    io.out << (ok ? "PASS" : "FAIL") << "\n" << detail.str();
    return status(ok);
  }
  if (what == "relations") {
    bool ok = true;
    auto line = [&](const std::string& name, std::size_t total, std::size_t good) {
      ok = ok && good == total;
      io.out << name << ": " << good << "/" << total << " relations hold\n";
    };
    for (int n = 1; n <= 3; ++n) {
      const BasisTable t = compute_basis(present_bmwB(n, par));
      const auto checks = defining_relation_checks(t, par);
      std::size_t good = 0;
      for (const auto& c : checks) good += c.holds();
      line(t.presentation().name, checks.size(), good);
    }
    const HeckeParameters hp = HeckeParameters::symbolic(reg);
    for (int n = 1; n <= 3; ++n) {
      const BasisTable t = compute_basis(present_heckeB(n, hp));
      const auto checks = defining_relation_checks(t, hp);
      std::size_t good = 0;
      for (const auto& c : checks) good += c.holds();
      line(t.presentation().name, checks.size(), good);
    }
    for (int n = 1; n <= 4; ++n) {
      const TlbAlgebra alg(n, TlbParameters::symbolic(reg));
      const auto checks = tlb_relation_checks(alg);
      std::size_t good = 0;
      for (const auto& c : checks) good += c.holds();
      line("blob diagrams n=" + std::to_string(n), checks.size(), good);
    }
    io.out << (ok ? "PASS" : "FAIL") << "\n";
    return status(ok);
  }
  throw UsageError("verify: expected ybe, re or relations");
}

// "name=rational" pairs, e.g. q=2 or lambda=-3/5.
inline Bindings parse_settings(const std::vector<std::string>& settings, const Registry& reg) {
  Bindings b;
  for (const auto& s : settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw UsageError("--set expects name=value, got '" + s + "'");
    const auto v = reg.find(s.substr(0, eq));
    if (!v) throw UsageError("--set: unknown parameter '" + s.substr(0, eq) + "'");
    Rational value;
    if (value.set_str(s.substr(eq + 1), 10) != 0 || value.get_den() == 0) throw UsageError("--set: '" + s.substr(eq + 1) + "' is not a rational number");
    value.canonicalize();
    b.emplace_back(*v, RationalFn(&reg, value));
  }
  return b;
}

inline int cmd_invariant(const std::string& path, const std::string& route, std::optional<int> strands,
                         const std::vector<std::string>& settings, Io io) {
  BraidWord w;
  if (path == "-") {
    w = read_braid(io.in, strands);
  } else {
    std::ifstream f(path);
    if (!f) throw UsageError("cannot open braid file '" + path + "'");
    w = read_braid(f, strands);
  }
  Registry& reg = standard_registry();
  RationalFn value;
  if (route == "kauffman") {
    if (w.strands() > KauffmanInvariant::kMaxStrands)
      throw CapabilityError("kauffman_B handles at most 3 strands; use --route jones");
    value = KauffmanInvariant(reg)(w);
  } else {
    value = JonesInvariant(reg)(w);
  }
  io.out << substitute(value, parse_settings(settings, reg)) << "\n";
  return 0;
}

inline int cmd_potts(const std::string& path, int states, bool cross, int jobs, Io io) {
  Registry& reg = standard_registry();
  const BoundaryLattice l = load_lattice(path);
  if (!cross) {
    io.out << brute_force_Z(l, states, reg, jobs) << "\n";
    return 0;
  }
  const CrosscheckReport rep = crosscheck(l, states, reg);
  io.out << "brute force: " << rep.brute << "\n";
  if (!rep.error.empty()) {
    io.out << "trace: " << rep.error << "\nFAIL\n";
    return 1;
  }
  io.out << "trace:       " << rep.trace << "\n" << (rep.pass ? "PASS" : "FAIL") << "\n";
  for (const auto& d : rep.differences) io.out << "  " << d << "\n";
  return status(rep.pass);
}

inline int cmd_trace_solve(int n, Io io) {
  if (n < 1 || n > 3) throw CapabilityError("trace-solve: 1 <= n <= 3 supported");
  Registry& reg = standard_registry();
  const BmwParameters par = BmwParameters::symbolic(reg);
  std::vector<BasisTable> tables;
  for (int k = 1; k <= n; ++k) tables.push_back(compute_basis(present_bmwB(k, par)));
  std::vector<const BasisTable*> tower;
  for (int k = n - 1; k >= 1; --k) tower.push_back(&tables[static_cast<std::size_t>(k - 1)]);
  const BasisTable& top = tables.back();
  const MarkovTrace tr = solve_markov_trace(top, tower, reg);
  io.out << top.presentation().name << " dimension " << top.dimension() << "\nfree parameters:";
  for (const auto& [v, word] : tr.parameters()) io.out << " " << reg.name(v);
  io.out << "\n";
  for (std::size_t i = 0; i < top.dimension(); ++i) {
    const std::string word = top.basis_word(i).empty() ? "1" : top.presentation().render(top.basis_word(i));
    io.out << "tr(" << word << ") = " << tr.values()[i] << "\n";
  }
  return 0;
}

inline int cmd_invariance(int trials, std::uint64_t seed, int jobs, int max_strands, bool control, bool verbose, Io io) {
  if (trials < 0) throw UsageError("invariance-suite: trials must be nonnegative");
  if (max_strands < 1 || max_strands > KauffmanInvariant::kMaxStrands)
    throw CapabilityError("invariance-suite: 1 <= --max-strands <= 3");
  Registry& reg = standard_registry();
  const KauffmanInvariant k(reg);
  const JonesInvariant j(reg);
  InvarianceOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.jobs = jobs;
  opt.max_strands = max_strands;
  opt.negative_control = control;
  const InvarianceReport rep = invariance_suite(opt, k, j);
  auto mark = [](bool b) { return b ? "equal" : "differ"; };
  for (const auto& t : rep.results) {
    const bool expected = control ? (!t.kauffman_equal && !t.jones_equal) : (t.kauffman_equal && t.jones_equal);
    if (verbose || !expected)
      io.out << "trial " << t.index << ": " << t.original << " -> " << t.moved << " via " << t.moves
             << "; kauffman " << mark(t.kauffman_equal) << ", jones " << mark(t.jones_equal) << "\n";
  }
  io.out << "kauffman_B: " << rep.kauffman_passes << "/" << rep.trials << " unchanged\n";
  io.out << "jones_B: " << rep.jones_passes << "/" << rep.trials << " unchanged\n";
  const bool ok = control ? (rep.kauffman_passes == 0 && rep.jones_passes == 0)
                          : (rep.kauffman_passes == rep.trials && rep.jones_passes == rep.trials);
  io.out << (ok ? "PASS" : "FAIL") << "\n";
  return status(ok);
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Type-B braid algebras: dimensions, traces, invariants, Baxterization, boundary Potts"};
  app.name("bcox");
  app.require_subcommand(1);

  std::string algebra;
  std::optional<int> dims_n;
  auto* dims = app.add_subcommand("dims", "Dimensions of the algebras computed from their presentations");
  dims->add_option("--algebra", algebra, "bmwB, bmwA, heckeB or tlb")
      ->check(CLI::IsMember({"bmwB", "bmwA", "heckeB", "tlb"}));
  dims->add_option("--n", dims_n, "Number of strands")->check(CLI::Range(1, 8));

  int brat_n = 0;
  auto* brat = app.add_subcommand("bratteli", "Path counts of the Bratteli diagram at level n");
  brat->add_option("n", brat_n, "Level")->required()->check(CLI::Range(0, 8));

  std::string what;
  bool perturb = false;
  auto* verify = app.add_subcommand("verify", "Exact symbolic checks");
  verify->add_option("what", what, "ybe, re or relations")->required()->check(CLI::IsMember({"ybe", "re", "relations"}));
  verify->add_flag("--perturb", perturb, "Perturb R (ybe) or K (re); the check is expected to fail");

  std::string braid_path, route = "kauffman";
  std::optional<int> strands;
  auto* inv = app.add_subcommand("invariant", "Link invariant of a closed braid");
  inv->add_option("--braid", braid_path, "Braid file, or - for standard input")->required();
  inv->add_option("--route", route, "kauffman or jones")->check(CLI::IsMember({"kauffman", "jones"}));
  inv->add_option("--strands", strands, "Strand count (overrides the file)")->check(CLI::PositiveNumber);
  std::vector<std::string> settings;
  inv->add_option("--set", settings, "Specialize a parameter, name=rational (repeatable)");

  std::string lattice_path;
  int states = 2, potts_jobs = 1;
  bool cross = false;
  auto* potts = app.add_subcommand("potts", "Partition function of the Potts model with a wall");
  potts->add_option("--lattice", lattice_path, "Lattice file")->required();
  potts->add_option("--states", states, "Number of spin states f")->required()->check(CLI::PositiveNumber);
  potts->add_flag("--crosscheck", cross, "Compare with the blob-algebra trace evaluation");
  potts->add_option("--jobs", potts_jobs, "Threads for state enumeration")->check(CLI::PositiveNumber);

  int ts_n = 0;
  auto* ts = app.add_subcommand("trace-solve", "Markov trace on the reduced Birman-Wenzl algebra of type B");
  ts->add_option("n", ts_n, "Number of strands (1..3)")->required();

  int trials = 200, suite_jobs = 1, max_strands = 3;
  std::uint64_t seed = 0;
  bool control = false, verbose = false;
  auto* suite = app.add_subcommand("invariance-suite", "Randomized Markov-move invariance of both invariants");
  suite->add_option("--trials", trials, "Number of trials");
  suite->add_option("--seed", seed, "Random seed")->required();
  suite->add_option("--jobs", suite_jobs, "Worker threads")->check(CLI::PositiveNumber);
  suite->add_option("--max-strands", max_strands, "Largest strand count (1..3)");
  suite->add_flag("--negative-control", control, "Append a non-move; every trial should then change");
  suite->add_flag("--verbose", verbose, "Print every trial");

  std::vector<std::string> argv_store{"bcox"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  const detail::Io io{in, out, err};
  try {
    if (*dims) {
      if (dims_n && algebra.empty()) throw UsageError("dims: --n needs --algebra");
      return detail::cmd_dims(algebra, dims_n, io);
    }
    if (*brat) return detail::cmd_bratteli(brat_n, io);
    if (*verify) return detail::cmd_verify(what, perturb, io);
    if (*inv) return detail::cmd_invariant(braid_path, route, strands, settings, io);
    if (*potts) return detail::cmd_potts(lattice_path, states, cross, potts_jobs, io);
    if (*ts) return detail::cmd_trace_solve(ts_n, io);
    if (*suite) return detail::cmd_invariance(trials, seed, suite_jobs, max_strands, control, verbose, io);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const CapabilityError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace bcox::cli
