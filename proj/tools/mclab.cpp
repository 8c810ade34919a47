// Command-line front end: exact dimensions, orientations, shifting traces,
// the learners, two-stage compression, complex/coset pipelines, generators,
// and the bundled selftest.  All randomness flows from an explicit --seed.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mclab/compress.hpp"
#include "mclab/dims.hpp"
#include "mclab/generators.hpp"
#include "mclab/group.hpp"
#include "mclab/json_io.hpp"
#include "mclab/learn.hpp"
#include "mclab/oig.hpp"
#include "mclab/shift.hpp"
#include "mclab/simplicial.hpp"

#include "selftest.hpp"

using namespace mclab;

namespace {

struct CommonOpts {
  std::optional<std::uint64_t> budget;
  std::string out;
  int threads = 1;
};

void emit(const CommonOpts& opts, const json& j) {
  if (opts.out.empty()) {
    std::cout << j.dump(2) << "\n";
  } else {
    write_json_file(opts.out, j);
  }
}

void emit_text(const CommonOpts& opts, const std::string& text) {
  if (opts.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(opts.out);
    if (!f) throw parse_error("cannot open " + opts.out + " for writing");
    f << text;
  }
}

Budget make_budget(const CommonOpts& opts) {
  return Budget(opts.budget ? *opts.budget : Budget::default_limit());
}

void add_common(CLI::App* cmd, CommonOpts& opts) {
  cmd->add_option("--budget", opts.budget, "Per-search check limit (default: MCLAB_BUDGET or 1e8)");
  cmd->add_option("-o,--out", opts.out, "Write the report here instead of stdout");
  cmd->add_option("--threads", opts.threads, "Worker thread cap (default 1 for bit-stable output)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"mclab: concept-class dimensions, one-inclusion learners, and compression"};
  app.require_subcommand(1);

  // ---- dims ----
  std::string dims_file;
  CommonOpts dims_opts;
  auto* cmd_dims = app.add_subcommand("dims", "Exact dimension report with witnesses");
  cmd_dims->add_option("class", dims_file, "Concept class JSON")->required();
  add_common(cmd_dims, dims_opts);

  // ---- orient ----
  std::string orient_file;
  CommonOpts orient_opts;
  auto* cmd_orient = app.add_subcommand("orient", "Optimal orientation of the one-inclusion graph");
  cmd_orient->add_option("class", orient_file, "Concept class JSON")->required();
  add_common(cmd_orient, orient_opts);

  // ---- shift ----
  std::string shift_file;
  bool shift_stats = false;
  CommonOpts shift_opts;
  auto* cmd_shift = app.add_subcommand("shift", "Shift to a fixed point, reporting the trace");
  cmd_shift->add_option("class", shift_file, "Concept class JSON")->required();
  cmd_shift->add_flag("--stats", shift_stats, "Record per-step exponential dimensions (slow)");
  add_common(cmd_shift, shift_opts);

  // ---- learn ----
  std::string learn_class_file, learn_dist_file, learn_menu_file, learn_curve;
  int learn_n = 1;
  long long learn_trials = 100000;
  std::optional<std::uint64_t> learn_seed;
  bool learn_mc = false;
  std::string learn_format = "json";
  CommonOpts learn_opts;
  auto* cmd_learn = app.add_subcommand("learn", "Point-learner error under a finite distribution");
  cmd_learn->add_option("class", learn_class_file, "Concept class JSON")->required();
  cmd_learn->add_option("dist", learn_dist_file, "Distribution JSON")->required();
  cmd_learn->add_option("-n,--n", learn_n, "Training sample size")->check(CLI::NonNegativeNumber);
  cmd_learn->add_option("--menu", learn_menu_file, "Menu JSON: use the menu-filtered learner");
  cmd_learn->add_flag("--mc", learn_mc, "Monte-Carlo instead of exact enumeration");
  cmd_learn->add_option("--trials", learn_trials, "Monte-Carlo trials");
  cmd_learn->add_option("--seed", learn_seed, "Seed (required with --mc)");
  cmd_learn->add_option("--curve", learn_curve, "Emit CSV rows for n in MIN:MAX");
  cmd_learn->add_option("--format", learn_format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  add_common(cmd_learn, learn_opts);

  // ---- list-learn ----
  std::string ll_class_file, ll_sample_file;
  int ll_t = 1;
  std::optional<int> ll_d;
  bool ll_truncate = false;
  CommonOpts ll_opts;
  auto* cmd_ll = app.add_subcommand("list-learn", "Menu from the list learner");
  cmd_ll->add_option("class", ll_class_file, "Concept class JSON")->required();
  cmd_ll->add_option("sample", ll_sample_file, "Sample JSON (size d+t)")->required();
  cmd_ll->add_option("-t,--t", ll_t, "List parameter t")->check(CLI::NonNegativeNumber);
  cmd_ll->add_option("-d,--d", ll_d, "DS dimension bound (skips the exact computation)");
  cmd_ll->add_flag("--truncate", ll_truncate, "Truncate a larger sample to size d+t");
  add_common(cmd_ll, ll_opts);

  // ---- compress ----
  std::string cp_class_file, cp_sample_file, cp_stage = "combined";
  int cp_t = 1;
  std::optional<std::uint64_t> cp_seed;
  std::optional<int> cp_d, cp_dnat;
  CommonOpts cp_opts;
  auto* cmd_compress = app.add_subcommand("compress", "Two-stage sample compression");
  cmd_compress->add_option("class", cp_class_file, "Concept class JSON")->required();
  cmd_compress->add_option("sample", cp_sample_file, "Realizable sample JSON")->required();
  cmd_compress->add_option("-t,--t", cp_t, "List parameter t")->check(CLI::NonNegativeNumber);
  cmd_compress->add_option("--seed", cp_seed, "Seed for all randomized search")->required();
  cmd_compress->add_option("--stage", cp_stage, "list|combined")
      ->check(CLI::IsMember({"list", "combined"}));
  cmd_compress->add_option("-d,--d", cp_d, "DS dimension bound");
  cmd_compress->add_option("--d-nat", cp_dnat, "Natarajan dimension bound");
  add_common(cmd_compress, cp_opts);

  // ---- complex ----
  auto* cmd_complex = app.add_subcommand("complex", "Simplicial-complex pipelines");
  cmd_complex->require_subcommand(1);
  std::string cx_file;
  CommonOpts cx_opts;
  auto* cx_check = cmd_complex->add_subcommand("check", "Goodness report (purity, coloring, replacement)");
  cx_check->add_option("complex", cx_file, "Complex JSON")->required();
  add_common(cx_check, cx_opts);
  std::string cx_tocube_file;
  CommonOpts cx_tocube_opts;
  auto* cx_tocube = cmd_complex->add_subcommand("to-cube", "Good complex + coloring -> pseudo-cube");
  cx_tocube->add_option("complex", cx_tocube_file, "Complex JSON (needs a coloring)")->required();
  add_common(cx_tocube, cx_tocube_opts);
  std::string cx_tocplx_file;
  CommonOpts cx_tocplx_opts;
  auto* cx_tocplx = cmd_complex->add_subcommand("to-complex", "Pseudo-cube -> colored complex");
  cx_tocplx->add_option("class", cx_tocplx_file, "Concept class JSON")->required();
  add_common(cx_tocplx, cx_tocplx_opts);
  std::string cx_sq_file;
  CommonOpts cx_sq_opts;
  auto* cx_squares = cmd_complex->add_subcommand("squares", "Alternating / empty square search");
  cx_squares->add_option("complex", cx_sq_file, "Complex JSON")->required();
  add_common(cx_squares, cx_sq_opts);

  // ---- coset ----
  std::string coset_file;
  std::uint64_t coset_max_elements = 1'000'000;
  CommonOpts coset_opts;
  auto* cmd_coset = app.add_subcommand("coset", "Coset complex + certificate from a group file");
  cmd_coset->add_option("group", coset_file, "Group JSON")->required();
  cmd_coset->add_option("--max-elements", coset_max_elements, "Group enumeration cap");
  add_common(cmd_coset, coset_opts);

  // ---- gen ----
  auto* cmd_gen = app.add_subcommand("gen", "Reference constructions");
  cmd_gen->require_subcommand(1);
  CommonOpts gen_opts;
  auto* gen_hex = cmd_gen->add_subcommand("hexagon", "The 6-word 2-dimensional pseudo-cube");
  add_common(gen_hex, gen_opts);
  std::string torus_complex_out;
  auto* gen_torus = cmd_gen->add_subcommand("torus", "27-vertex triangulated torus pseudo-cube");
  gen_torus->add_option("--complex-out", torus_complex_out, "Also write the colored complex here");
  add_common(gen_torus, gen_opts);
  int tree_k = 3, tree_m = 2;
  auto* gen_tree = cmd_gen->add_subcommand("tree", "Depth-truncated tree class");
  gen_tree->add_option("-k,--branching", tree_k, "Domain size / branching")->check(CLI::PositiveNumber);
  gen_tree->add_option("-m,--depth", tree_m, "Depth")->check(CLI::NonNegativeNumber);
  add_common(gen_tree, gen_opts);
  int cube_d = 3;
  auto* gen_cube = cmd_gen->add_subcommand("cube", "Boolean cube {0,1}^d");
  gen_cube->add_option("-d,--dim", cube_d, "Dimension")->check(CLI::NonNegativeNumber);
  add_common(gen_cube, gen_opts);

  // ---- selftest ----
  std::uint64_t selftest_seed = 0;
  bool selftest_verbose = false;
  auto* cmd_selftest = app.add_subcommand("selftest", "Run the bundled invariant suite");
  cmd_selftest->add_option("--seed", selftest_seed, "Seed for the randomized claims");
  cmd_selftest->add_flag("-v,--verbose", selftest_verbose, "Print detail for passing claims too");

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_dims->parsed()) {
      ConceptClass cls = concept_class_from_json(read_json_file(dims_file));
      Budget budget = make_budget(dims_opts);
      emit(dims_opts, dimension_report_to_json(dimension_report(cls, &budget)));
    } else if (cmd_orient->parsed()) {
      ConceptClass cls = concept_class_from_json(read_json_file(orient_file));
      OneInclusionGraph g(cls);
      OptimalOrientation opt = optimal_orientation(g);
      json j = orientation_to_json(g, opt.orientation);
      j["optimal_max_outdeg"] = opt.max_out_degree;
      j["avd"] = avg_degree(g).str();
      j["avd_prime"] = shifting_avg_degree(g).str();
      emit(orient_opts, j);
    } else if (cmd_shift->parsed()) {
      ConceptClass cls = concept_class_from_json(read_json_file(shift_file));
      Budget budget = make_budget(shift_opts);
      emit(shift_opts, shift_trace_to_json(shift_to_fixed_point(cls, {}, shift_stats, &budget)));
    } else if (cmd_learn->parsed()) {
      ConceptClass cls = concept_class_from_json(read_json_file(learn_class_file));
      FiniteDistribution dist = distribution_from_json(read_json_file(learn_dist_file));
      std::unique_ptr<Predictor> pred;
      std::optional<Menu> mu;
      if (!learn_menu_file.empty()) {
        mu = menu_from_json(read_json_file(learn_menu_file));
        pred = std::make_unique<MenuOigPredictor>(cls, *mu);
      } else {
        pred = std::make_unique<OigPredictor>(cls);
      }
      if (learn_mc && !learn_seed) throw precondition_error("--mc requires --seed");

      auto bound_for = [&](int n) -> std::pair<double, std::string> {
        if (mu) {
          int dn = natarajan_dimension(cls).value;
          double b = 20.0 * dn * std::log2(static_cast<double>(mu->size_bound())) / (n + 1);
          return {std::min(1.0, b), "20dNlog2p_over_n1"};
        }
        Budget budget = make_budget(learn_opts);
        int m = oig_outdeg_bound(cls, dist, n, &budget);
        return {static_cast<double>(m) / (n + 1), "max_outdeg_over_n1"};
      };
      auto error_for = [&](int n) -> std::pair<double, std::string> {
        if (learn_mc) {
          return {mc_error(*pred, dist, n, learn_trials, *learn_seed, learn_opts.threads), "mc"};
        }
        Budget budget = make_budget(learn_opts);
        return {exact_expected_error(*pred, dist, n, &budget).to_double(), "exact"};
      };

      if (!learn_curve.empty()) {
        auto colon = learn_curve.find(':');
        if (colon == std::string::npos) throw parse_error("--curve expects MIN:MAX");
        int lo = std::stoi(learn_curve.substr(0, colon));
        int hi = std::stoi(learn_curve.substr(colon + 1));
        std::string csv = "n,error,bound,error_kind,bound_kind\n";
        for (int n = lo; n <= hi; ++n) {
          auto [err, kind] = error_for(n);
          auto [bound, bname] = bound_for(n);
          csv += std::to_string(n) + "," + std::to_string(err) + "," + std::to_string(bound) +
                 "," + kind + "," + bname + "\n";
        }
        emit_text(learn_opts, csv);
      } else {
        auto [err, kind] = error_for(learn_n);
        auto [bound, bname] = bound_for(learn_n);
        json j{{"n", learn_n}, {"error", err}, {"error_kind", kind},
               {"bound", bound}, {"bound_kind", bname}};
        if (!learn_mc) {
          Budget budget = make_budget(learn_opts);
          j["error_exact"] = exact_expected_error(*pred, dist, learn_n, &budget).str();
        }
        if (learn_format == "csv") {
          emit_text(learn_opts, "n,error,bound,error_kind,bound_kind\n" + std::to_string(learn_n) +
                                    "," + std::to_string(err) + "," + std::to_string(bound) + "," +
                                    kind + "," + bname + "\n");
        } else {
          emit(learn_opts, j);
        }
      }
    } else if (cmd_ll->parsed()) {
      ConceptClass cls = concept_class_from_json(read_json_file(ll_class_file));
      Sample s = sample_from_json(read_json_file(ll_sample_file));
      int d = ll_d ? *ll_d : ds_dimension(cls).value;
      if (ll_truncate && static_cast<int>(s.size()) > d + ll_t) {
        s.resize(static_cast<std::size_t>(d + ll_t));
      }
      Menu mu = list_learn(cls, ll_t, s, d);
      json j = menu_to_json(mu);
      j["d"] = d;
      j["t"] = ll_t;
      emit(ll_opts, j);
    } else if (cmd_compress->parsed()) {
      ConceptClass cls = concept_class_from_json(read_json_file(cp_class_file));
      Sample s = sample_from_json(read_json_file(cp_sample_file));
      CompressConfig cfg;
      cfg.seed = *cp_seed;
      cfg.ds_bound = cp_d;
      cfg.nat_bound = cp_dnat;
      CompressionResult res = cp_stage == "list" ? list_compress(cls, s, cp_t, cfg)
                                                 : compress_end_to_end(cls, s, cp_t, cfg);
      emit(cp_opts, compression_result_to_json(res));
    } else if (cx_check->parsed()) {
      ComplexFile file = complex_from_json(read_json_file(cx_file));
      emit(cx_opts, goodness_to_json(is_good(file.complex, file.coloring)));
    } else if (cx_tocube->parsed()) {
      ComplexFile file = complex_from_json(read_json_file(cx_tocube_file));
      std::vector<int> coloring;
      if (file.coloring) {
        coloring = *file.coloring;
      } else {
        GoodnessReport good = is_good(file.complex);
        if (!good.good) {
          throw precondition_error("complex is not good: " + good.failing_property + " (" +
                                   good.detail + ")");
        }
        coloring = *good.coloring;
      }
      ConceptClass cube = complex_to_pseudocube(file.complex, coloring);
      json j = concept_class_to_json(cube);
      j["natarajan"] = natarajan_dimension(cube).value;
      j["coloring_used"] = coloring;
      emit(cx_tocube_opts, j);
    } else if (cx_tocplx->parsed()) {
      ConceptClass cls = concept_class_from_json(read_json_file(cx_tocplx_file));
      ComplexWithColoring c = pseudocube_to_complex(cls);
      json j = complex_to_json(c.complex, c.coloring);
      json names = json::array();
      for (const auto& [label, coord] : c.vertex_names) names.push_back({label, coord});
      j["vertex_names"] = names;
      emit(cx_tocplx_opts, j);
    } else if (cx_squares->parsed()) {
      ComplexFile file = complex_from_json(read_json_file(cx_sq_file));
      json j;
      auto empty = find_empty_square(file.complex);
      j["empty_square"] = empty ? json(std::vector<int>(empty->begin(), empty->end())) : json();
      j["empty_squares"] = empty ? 1 : 0;
      if (file.coloring) {
        auto alt = find_alternating_square(file.complex, *file.coloring);
        j["alternating_square"] = alt ? json(std::vector<int>(alt->begin(), alt->end())) : json();
        j["alternating_squares"] = alt ? 1 : 0;
      }
      emit(cx_sq_opts, j);
    } else if (cmd_coset->parsed()) {
      GroupFile file = group_from_json(read_json_file(coset_file));
      PermGroup group = PermGroup::generate(file.degree, file.generators, coset_max_elements);
      PolishReport rep = check_polish_conditions(group, file.subgroups, coset_max_elements);
      json j = polish_report_to_json(rep);
      j["group_order"] = group.order();
      emit(coset_opts, j);
    } else if (gen_hex->parsed()) {
      emit(gen_opts, concept_class_to_json(gen_hexagon()));
    } else if (gen_torus->parsed()) {
      TorusConstruction t = gen_torus_pseudocube();
      if (!torus_complex_out.empty()) {
        write_json_file(torus_complex_out, complex_to_json(t.complex, t.coloring));
      }
      emit(gen_opts, concept_class_to_json(t.pseudocube));
    } else if (gen_tree->parsed()) {
      emit(gen_opts, concept_class_to_json(gen_tree_class(tree_k, tree_m)));
    } else if (gen_cube->parsed()) {
      emit(gen_opts, concept_class_to_json(gen_boolean_cube(cube_d)));
    } else if (cmd_selftest->parsed()) {
      return run_selftest(selftest_seed, selftest_verbose) == 0 ? 0 : 1;
    }
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return 3;
  } catch (const precondition_error& e) {
    std::cerr << "precondition violated: " << e.what() << "\n";
    return 4;
  } catch (const verification_error& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return 5;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
