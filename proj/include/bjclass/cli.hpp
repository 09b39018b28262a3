#pragma once

#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "bjclass/verify.hpp"

namespace bjclass::cli {

namespace detail {

[[nodiscard]] inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

[[nodiscard]] inline Element load_element(const AlgebraPtr& alg,
                                          const std::string& path) {
  return element_from_json(alg, json::parse(read_file(path)));
}

}  // namespace detail

/// Entry point behind the bjclass binary. Exit codes: 0 success (orthogonal /
/// all-pass / equal), 1 negative outcome or check failure, 2 usage, parse or
/// internal error.
inline int run(int argc, const char* const* argv,
               std::ostream& out = std::cout, std::ostream& err = std::cerr) {
  CLI::App app{"Birkhoff-James orthogonality and structure recovery for "
               "finite-dimensional C*-algebras"};
  app.require_subcommand(1);
  double tol = kDefaultTol;
  std::uint64_t seed = 1;
  bool as_json = false;
  app.add_option("--tol", tol, "absolute tolerance (default 1e-9)")
      ->capture_default_str();
  app.add_option("--seed", seed, "random seed")->capture_default_str();
  app.add_flag("--json", as_json, "machine-readable JSON output");

  // orth
  auto* orth = app.add_subcommand("orth", "test A perp B");
  orth->fallthrough();
  std::string orth_alg, orth_a, orth_b;
  bool orth_oracle = false;
  orth->add_option("--algebra", orth_alg, "algebra spec (text or JSON)")
      ->required();
  orth->add_option("--a", orth_a, "element file for A (JSON)")->required();
  orth->add_option("--b", orth_b, "element file for B (JSON)")->required();
  orth->add_flag("--oracle", orth_oracle,
                 "use the norm-minimization oracle instead of the fast test");

  // symmetry
  auto* sym = app.add_subcommand("symmetry", "left/right symmetry and "
                                             "smoothness of an element");
  sym->fallthrough();
  std::string sym_alg, sym_elem, sym_mode = "structural";
  int sym_trials = 300;
  sym->add_option("--algebra", sym_alg)->required();
  sym->add_option("--element", sym_elem)->required();
  sym->add_option("--mode", sym_mode, "structural|sampled|both")
      ->check(CLI::IsMember({"structural", "sampled", "both"}));
  sym->add_option("--trials", sym_trials, "sampled-mode trials");

  // classify
  auto* cls = app.add_subcommand("classify", "recover the algebra structure");
  cls->fallthrough();
  std::string cls_alg, cls_mode = "bj";
  cls->add_option("--algebra", cls_alg)->required();
  cls->add_option("--mode", cls_mode, "structural|bj|both")
      ->check(CLI::IsMember({"structural", "bj", "both"}));

  // compare
  auto* cmp = app.add_subcommand("compare", "signature equality of two "
                                            "algebras");
  cmp->fallthrough();
  std::string cmp_a, cmp_b;
  cmp->add_option("--a", cmp_a, "first algebra spec")->required();
  cmp->add_option("--b", cmp_b, "second algebra spec")->required();

  // verify
  auto* ver = app.add_subcommand("verify", "run a verification suite over "
                                           "the built-in catalog");
  ver->fallthrough();
  std::string ver_suite = "all";
  int ver_trials = 0;
  int ver_max_dim = 12;
  bool ver_no_composites = false;
  ver->add_option("suite", ver_suite,
                  "orthogonality|symmetry|neighborhoods|classify|all");
  ver->add_option("--trials", ver_trials,
                  "per-algebra element budget (default 500)");
  ver->add_option("--max-dim", ver_max_dim, "catalog dimension bound");
  ver->add_flag("--no-composites", ver_no_composites,
                "skip the oversized composite algebras");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*orth) {
      const AlgebraPtr alg = parse_algebra(orth_alg);
      const Element a = detail::load_element(alg, orth_a);
      const Element b = detail::load_element(alg, orth_b);
      const OrthResult r = orth_oracle ? bj_oracle(a, b, tol)
                                       : is_bj_orthogonal(a, b, tol);
      json j = to_json(r);
      j["algebra"] = format_algebra(*alg);
      j["mode"] = orth_oracle ? "oracle" : "fast";
      out << j.dump(2) << "\n";
      return r.orthogonal ? 0 : 1;
    }
    if (*sym) {
      const AlgebraPtr alg = parse_algebra(sym_alg);
      const Element a = detail::load_element(alg, sym_elem);
      const SymmetryMode mode = sym_mode == "structural"
                                    ? SymmetryMode::Structural
                                    : sym_mode == "sampled"
                                          ? SymmetryMode::OracleSampled
                                          : SymmetryMode::Both;
      const SymmetryVerdict v = symmetry_verdict(a, mode, sym_trials, seed,
                                                 tol);
      json j = to_json(v);
      j["algebra"] = format_algebra(*alg);
      out << j.dump(2) << "\n";
      return mode == SymmetryMode::Both && !v.modes_agree ? 1 : 0;
    }
    if (*cls) {
      const AlgebraPtr alg = parse_algebra(cls_alg);
      ClassifyConfig cfg;
      cfg.seed = seed;
      cfg.tol = tol;
      json j;
      bool match = true;
      if (cls_mode == "structural") {
        j = to_json(structural_signature(alg));
      } else if (cls_mode == "bj") {
        j = to_json(signature(alg, cfg));
      } else {
        const ClassificationReport bj = signature(alg, cfg);
        const ClassificationReport truth = structural_signature(alg);
        match = signatures_equal(bj, truth);
        j = to_json(bj);
        j["structural"] = to_json(truth);
        j["match"] = match;
      }
      j["algebra"] = format_algebra(*alg);
      out << j.dump(2) << "\n";
      return match ? 0 : 1;
    }
    if (*cmp) {
      ClassifyConfig cfg;
      cfg.seed = seed;
      cfg.tol = tol;
      const ClassificationReport a = signature(parse_algebra(cmp_a), cfg);
      cfg.seed = seed + 0x5eedu;
      const ClassificationReport b = signature(parse_algebra(cmp_b), cfg);
      const bool equal = signatures_equal(a, b);
      json j{{"a", to_json(a)}, {"b", to_json(b)}, {"equal", equal}};
      if (as_json)
        out << j.dump(2) << "\n";
      else
        out << (equal ? "signatures equal\n" : "signatures differ\n");
      return equal ? 0 : 1;
    }
    if (*ver) {
      VerifyOptions opt;
      opt.seed = seed;
      opt.tol = tol;
      opt.max_dim = ver_max_dim;
      opt.include_composites = !ver_no_composites;
      if (ver_trials > 0) {
        opt.symmetry_elements = ver_trials;
        opt.left_trials = std::max(300, ver_trials);
        opt.smooth_elements = std::max(10, ver_trials * 2 / 5);
        opt.orth_pairs_total = std::max(500, ver_trials * 20);
      }
      const VerificationSuite suite = run_suite(ver_suite, opt);
      if (as_json)
        out << to_json(suite).dump(2) << "\n";
      else
        out << format_table(suite);
      return suite.all_pass() ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

}  // namespace bjclass::cli
