#include "selftest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mclab/compress.hpp"
#include "mclab/dims.hpp"
#include "mclab/generators.hpp"
#include "mclab/group.hpp"
#include "mclab/learn.hpp"
#include "mclab/oig.hpp"
#include "mclab/shift.hpp"
#include "mclab/simplicial.hpp"

namespace {

using namespace mclab;

struct Claim {
  std::string name;
  std::function<bool(std::string&)> check;
};

std::vector<LabeledExample> distinct_examples(const ConceptClass& cls) {
  std::vector<LabeledExample> out;
  for (const Word& w : cls.words()) {
    for (int x = 0; x < cls.domain_size(); ++x) out.push_back({x, w[static_cast<std::size_t>(x)]});
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Small fixed corpus of random classes; the generation seed is a constant so
// exact verdicts cannot vary between runs.
std::vector<ConceptClass> fixed_corpus(int count) {
  std::mt19937_64 rng(0xA11CEULL);
  std::vector<ConceptClass> out;
  while (static_cast<int>(out.size()) < count) {
    int n = 1 + static_cast<int>(rng() % 4);
    int p = 2 + static_cast<int>(rng() % 4);
    int words = 2 + static_cast<int>(rng() % 24);
    std::vector<Word> ws;
    for (int w = 0; w < words; ++w) {
      Word word(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) word[static_cast<std::size_t>(i)] = static_cast<Label>(rng() % p);
      ws.push_back(std::move(word));
    }
    ConceptClass cls(n, std::move(ws));
    if (!cls.empty()) out.push_back(std::move(cls));
  }
  return out;
}

}  // namespace

int run_selftest(std::uint64_t seed, bool verbose) {
  std::vector<Claim> claims;

  claims.push_back({"hexagon.pseudo_cube", [](std::string&) {
    return is_pseudo_cube(gen_hexagon());
  }});

  claims.push_back({"hexagon.dims(nat=1,ds=2,exp=2)", [](std::string& why) {
    ConceptClass hex = gen_hexagon();
    DimensionReport r = dimension_report(hex);
    why = "nat=" + std::to_string(r.natarajan.value) + " ds=" + std::to_string(r.ds.value) +
          " exp=" + std::to_string(r.exponential.value);
    return r.natarajan.value == 1 && r.ds.value == 2 && r.exponential.value == 2;
  }});

  claims.push_back({"hexagon.orientation(avd=2,avd1=1,k*=1)", [](std::string& why) {
    OneInclusionGraph g(gen_hexagon());
    auto opt = optimal_orientation(g);
    why = "avd=" + avg_degree(g).str() + " avd'=" + shifting_avg_degree(g).str() +
          " k*=" + std::to_string(opt.max_out_degree);
    return avg_degree(g) == Rational(2) && shifting_avg_degree(g) == Rational(1) &&
           opt.max_out_degree == 1;
  }});

  claims.push_back({"cube3.dims(vc=nat=ds=exp=3)", [](std::string& why) {
    DimensionReport r = dimension_report(gen_boolean_cube(3));
    why = "vc=" + std::to_string(r.vc ? r.vc->value : -1);
    return r.vc && r.vc->value == 3 && r.natarajan.value == 3 && r.ds.value == 3 &&
           r.exponential.value == 3;
  }});

  claims.push_back({"shift.example_dims_jump", [](std::string& why) {
    ConceptClass before(2, {{1, 1}, {1, 0}, {0, 1}, {2, 0}, {0, 2}});
    ConceptClass after = shift_once(before, 0);
    ConceptClass expected(2, {{1, 1}, {0, 0}, {0, 1}, {1, 0}, {0, 2}});
    if (!(after == expected)) {
      why = "shifted class mismatch";
      return false;
    }
    return natarajan_dimension(before).value == 1 && natarajan_dimension(after).value == 2 &&
           ds_dimension(before).value == 1 && ds_dimension(after).value == 2;
  }});

  claims.push_back({"shift.example_edges_shrink", [](std::string& why) {
    ConceptClass before(2, {{2, 2}, {1, 1}, {1, 0}, {2, 0}});
    ConceptClass after = shift_once(before, 0);
    ConceptClass expected(2, {{0, 2}, {0, 1}, {0, 0}, {1, 0}});
    if (!(after == expected)) {
      why = "shifted class mismatch";
      return false;
    }
    auto heavy_sum = [](const ConceptClass& cls) {
      OneInclusionGraph g(cls);
      long long sum = 0;
      for (const OigEdge& e : g.edges()) {
        if (e.members.size() > 1) sum += static_cast<long long>(e.members.size());
      }
      return sum;
    };
    OneInclusionGraph ga(before), gb(after);
    why = "sums " + std::to_string(heavy_sum(before)) + "->" + std::to_string(heavy_sum(after));
    return heavy_sum(before) == 6 && heavy_sum(after) == 5 &&
           shifting_avg_degree(ga) <= shifting_avg_degree(gb);
  }});

  claims.push_back({"fig3.torus(27v,54w,ds=3,nat=1)", [](std::string& why) {
    try {
      TorusConstruction t = gen_torus_pseudocube();
      why = "words=" + std::to_string(t.pseudocube.size());
      return t.pseudocube.size() == 54 && t.pseudocube.alphabet_size() == 27 &&
             ds_dimension(t.pseudocube).value == 3 && natarajan_dimension(t.pseudocube).value == 1;
    } catch (const std::exception& e) {
      why = e.what();
      return false;
    }
  }});

  claims.push_back({"tree(3,2).13_words_ds1", [](std::string&) {
    ConceptClass tree = gen_tree_class(3, 2);
    return tree.size() == 13 && ds_dimension(tree).value == 1;
  }});

  claims.push_back({"hexagon.loo_good_index(all_size3)", [](std::string& why) {
    ConceptClass hex = gen_hexagon();
    OigPredictor pred(hex);
    auto ex = distinct_examples(hex);
    int worst = 0;
    for (const auto& a : ex) {
      for (const auto& b : ex) {
        for (const auto& c : ex) {
          Sample s{a, b, c};
          if (!is_realizable(hex, s)) continue;
          worst = std::max(worst, loo_bad_count(pred, s));
        }
      }
    }
    why = "max bad = " + std::to_string(worst) + " of 3";
    return worst <= 2;
  }});

  claims.push_back({"hexagon.list_cover(all_size4,t=1)", [](std::string& why) {
    ConceptClass hex = gen_hexagon();
    auto ex = distinct_examples(hex);
    int worst_covered = 4;
    for (const auto& a : ex) {
      for (const auto& b : ex) {
        for (const auto& c : ex) {
          for (const auto& d : ex) {
            Sample s{a, b, c, d};
            if (!is_realizable(hex, s)) continue;
            int covered = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
              Sample rest;
              for (std::size_t j = 0; j < s.size(); ++j) {
                if (j != i) rest.push_back(s[j]);
              }
              Menu mu = list_learn(hex, 1, rest, 2);
              if (mu.at(s[i].x).contains(s[i].y)) ++covered;
            }
            worst_covered = std::min(worst_covered, covered);
          }
        }
      }
    }
    why = "min covered = " + std::to_string(worst_covered) + " of 4";
    return worst_covered >= 2;
  }});

  claims.push_back({"coset.S3_hexagon_certified", [](std::string& why) {
    PermGroup s3 = PermGroup::generate(3, {{1, 0, 2}, {2, 1, 0}});
    PolishReport rep = check_polish_conditions(s3, {SubgroupSpec{{{1, 0, 2}}}, SubgroupSpec{{{2, 1, 0}}}});
    why = "certified=" + std::to_string(rep.certified);
    return rep.certified && rep.natarajan && rep.natarajan->value == 1 &&
           rep.complex.complex.vertex_count() == 6;
  }});

  claims.push_back({"coset.Z2Z2_empty_square", [](std::string& why) {
    PermGroup z22 = PermGroup::generate(4, {{1, 0, 2, 3}, {0, 1, 3, 2}});
    PolishReport rep =
        check_polish_conditions(z22, {SubgroupSpec{{{1, 0, 2, 3}}}, SubgroupSpec{{{0, 1, 3, 2}}}});
    why = "empty_square=" + std::to_string(!rep.no_empty_squares);
    return rep.condition1_all && !rep.no_empty_squares && rep.natarajan &&
           rep.natarajan->value == 2;
  }});

  claims.push_back({"corpus.dimension_inequalities", [](std::string& why) {
    for (const ConceptClass& cls : fixed_corpus(50)) {
      DimensionReport r = dimension_report(cls);
      int p = std::max(2, cls.alphabet_size());
      if (r.natarajan.value > r.ds.value || r.natarajan.value > r.exponential.value) {
        why = "nat exceeds ds or exp";
        return false;
      }
      if (r.natarajan.value >= 1 &&
          static_cast<double>(r.exponential.value) >
              5.0 * r.natarajan.value * std::log2(static_cast<double>(p))) {
        why = "exp dim above its Natarajan bound";
        return false;
      }
      OneInclusionGraph g(cls);
      if (!(avg_degree(g) <= Rational(4) * Rational(r.exponential.value))) {
        why = "avd above 4*exp";
        return false;
      }
    }
    return true;
  }});

  claims.push_back({"dictionary.round_trips", [](std::string& why) {
    for (const ConceptClass& cube : {gen_hexagon(), gen_torus_pseudocube().pseudocube}) {
      ComplexWithColoring c = pseudocube_to_complex(cube);
      ConceptClass back = complex_to_pseudocube(c.complex, c.coloring);
      ComplexWithColoring c2 = pseudocube_to_complex(back);
      if (!complexes_isomorphic(c.complex, c.coloring, c2.complex, c2.coloring)) {
        why = "round trip broke isomorphism";
        return false;
      }
    }
    return true;
  }});

  claims.push_back({"compress.hexagon_sound", [seed](std::string& why) {
    ConceptClass hex = gen_hexagon();
    std::mt19937_64 rng(0xFEEDULL);
    Sample s;
    const Word& target = hex.words()[0];
    for (int i = 0; i < 20; ++i) {
      int x = static_cast<int>(rng() % 2);
      s.push_back({x, target[static_cast<std::size_t>(x)]});
    }
    CompressConfig cfg;
    cfg.seed = seed;
    CompressionResult res = compress_end_to_end(hex, s, 1, cfg);
    why = "r=" + std::to_string(res.r_achieved) + " bound=" + std::to_string(res.r_bound);
    return res.verified && static_cast<double>(res.r_achieved) <= res.r_bound;
  }});

  int failures = 0;
  for (const Claim& claim : claims) {
    std::string why;
    bool ok = false;
    try {
      ok = claim.check(why);
    } catch (const std::exception& e) {
      why = e.what();
    }
    if (!ok) ++failures;
    if (verbose || !ok) {
      std::printf("[%s] %-40s %s\n", ok ? "PASS" : "FAIL", claim.name.c_str(), why.c_str());
    } else {
      std::printf("[PASS] %s\n", claim.name.c_str());
    }
  }
  std::printf("%zu claims, %d failed\n", claims.size(), failures);
  return failures;
}
