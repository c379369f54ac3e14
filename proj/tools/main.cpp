// Command-line frontend: compare soft clusterings, fit reference clusterers,
// rerun the bundled Iris study, probe metric axioms, and benchmark the
// enumeration/sampling machinery.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <softcmp/softcmp.hpp>

using namespace softcmp;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  unsigned threads = 1;
  double budget = kDefaultBudget;
  std::string output = "table";
};

void emit_error(const GlobalOpts& g, const Error& e) {
  if (g.output == "json") {
    nlohmann::json j;
    j["error"] = {{"code", errc_name(e.code())}, {"message", e.what()}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what() << "\n";
  }
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// --- axiom probing -----------------------------------------------------------

std::vector<HardClustering> make_hard_instances(std::size_t n, std::size_t k, std::size_t count,
                                                std::uint64_t seed, bool exhaustive) {
  std::vector<HardClustering> out;
  if (exhaustive) {
    for_each_partition(n, [&](std::span<const std::uint32_t> labels) {
      out.emplace_back(Frame(n), std::vector<std::uint32_t>(labels.begin(), labels.end()));
    });
    return out;
  }
  CounterRng rng(seed, 0xA110);
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::uint32_t> labels(n);
    for (auto& l : labels) l = static_cast<std::uint32_t>(rng.next_below(k));
    out.emplace_back(Frame(k), std::move(labels));
  }
  return out;
}

std::vector<RoughClustering> make_rough_instances(std::size_t n, std::size_t k, std::size_t count,
                                                  std::uint64_t seed) {
  std::vector<RoughClustering> out;
  CounterRng rng(seed, 0xB0C0);
  const std::uint64_t top = (std::uint64_t{1} << k) - 1;
  for (std::size_t i = 0; i < count; ++i) {
    std::vector<std::uint64_t> regions(n);
    for (auto& r : regions) r = 1 + rng.next_below(top);  // any nonempty subset
    out.emplace_back(Frame(k), std::move(regions));
  }
  return out;
}

void print_axiom_report(const GlobalOpts& g, const AxiomReport& rep, std::size_t instances) {
  const char* verdict = rep.is_metric()        ? "metric"
                        : rep.is_pseudo_metric() ? "pseudo-metric"
                        : rep.is_meta_metric()   ? "meta-metric"
                        : rep.is_semi_metric()   ? "semi-metric"
                                                 : "none of the axiom bundles";
  if (g.output == "json") {
    nlohmann::json j;
    j["instances"] = instances;
    j["axioms"] = {{"selfDistanceZero", rep.holdsM1}, {"zeroImpliesEqual", rep.holdsM1b},
                   {"distinctImpliesPositive", rep.holdsM2}, {"symmetry", rep.holdsM3},
                   {"triangle", rep.holdsM4}};
    j["normalized"] = rep.isNormalized;
    j["maxValue"] = rep.maxValue;
    j["verdict"] = verdict;
    nlohmann::json cxs = nlohmann::json::array();
    for (const auto& c : rep.counterexamples) {
      nlohmann::json cj{{"axiom", c.axiom}, {"i", c.i}, {"j", c.j}, {"dij", c.dij}};
      if (c.k != SIZE_MAX) {
        cj["k"] = c.k;
        cj["djk"] = c.djk;
        cj["dik"] = c.dik;
      }
      cxs.push_back(std::move(cj));
    }
    j["counterexamples"] = std::move(cxs);
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << "instances: " << instances << "\n";
  auto flag = [](bool b) { return b ? "holds" : "FAILS"; };
  std::cout << "  d(x,x)=0:            " << flag(rep.holdsM1) << "\n";
  std::cout << "  d(x,y)=0 => x=y:     " << flag(rep.holdsM1b) << "\n";
  std::cout << "  x!=y => d(x,y)>0:    " << flag(rep.holdsM2) << "\n";
  std::cout << "  symmetry:            " << flag(rep.holdsM3) << "\n";
  std::cout << "  triangle inequality: " << flag(rep.holdsM4) << "\n";
  std::cout << "  normalized to [0,1]: " << (rep.isNormalized ? "yes" : "NO") << " (max "
            << rep.maxValue << ")\n";
  std::cout << "verdict: " << verdict << "\n";
  for (const auto& c : rep.counterexamples) {
    if (c.k == SIZE_MAX)
      std::cout << "  counterexample [" << c.axiom << "] i=" << c.i << " j=" << c.j
                << " d=" << c.dij << "\n";
    else
      std::cout << "  counterexample [" << c.axiom << "] i=" << c.i << " j=" << c.j << " k=" << c.k
                << "  d(i,k)=" << c.dik << " > d(i,j)+d(j,k)=" << c.dij << "+" << c.djk << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "soft-clustering comparison toolkit\n"
      "Distances are normalized to [0, 1]; wherever a result is reported, the similarity\n"
      "view is 1 - distance with interval endpoints swapped."};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--seed", g.seed, "base RNG seed")->capture_default_str();
  app.add_option("--threads", g.threads, "worker threads for sampling")->capture_default_str();
  auto* budgetOpt =
      app.add_option("--budget", g.budget, "max enumerated pairs for exact routes")
          ->capture_default_str();
  app.add_option("--output", g.output, "output format: table or json")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();

  // --- compare ---------------------------------------------------------------
  auto* cmp = app.add_subcommand("compare", "compare two clustering files (or one vs dataset labels)");
  cmp->fallthrough();
  std::string cmpFirst, cmpSecond, cmpDataset, cmpLabelCol = "label";
  std::string cmpMeasure = "rand", cmpMode = "auto", cmpTnorm = "min", cmpDm = "l1";
  std::string cmpSampleMode = "exact-inner";
  std::uint64_t cmpSamples = 0;
  double cmpEps = 0.02, cmpDelta = 0.05, cmpPrune = 0.0;
  cmp->add_option("first", cmpFirst, "clustering JSON file")->required();
  cmp->add_option("second", cmpSecond, "clustering JSON file (omit with --dataset)");
  cmp->add_option("--dataset", cmpDataset, "CSV whose label column is the second clustering");
  cmp->add_option("--label-col", cmpLabelCol, "label column in --dataset")->capture_default_str();
  cmp->add_option("--measure", cmpMeasure, "rand | partition | rand-evidential")
      ->check(CLI::IsMember({"rand", "partition", "rand-evidential"}))
      ->capture_default_str();
  cmp->add_option("--mode", cmpMode, "auto | exact | sample")
      ->check(CLI::IsMember({"auto", "exact", "sample"}))
      ->capture_default_str();
  cmp->add_option("--samples", cmpSamples, "sample count (0 = derive from epsilon/delta)");
  cmp->add_option("--epsilon", cmpEps, "Hoeffding accuracy target")->capture_default_str();
  cmp->add_option("--delta", cmpDelta, "Hoeffding failure probability")->capture_default_str();
  cmp->add_option("--tnorm", cmpTnorm, "possibilistic conjunction: min | product")
      ->check(CLI::IsMember({"min", "product"}))
      ->capture_default_str();
  cmp->add_option("--d-m", cmpDm, "mass metric for rand-evidential: l1 | jousselme")
      ->check(CLI::IsMember({"l1", "jousselme"}))
      ->capture_default_str();
  cmp->add_option("--sample-mode", cmpSampleMode,
                  "evidential sampling: exact-inner | nested (nested is biased narrower)")
      ->check(CLI::IsMember({"exact-inner", "nested"}))
      ->capture_default_str();
  cmp->add_option("--prune", cmpPrune, "drop focal sets below this mass, keep argmax, renormalize");
  cmp->callback([&] {
    SoftClustering m1 = read_clustering(cmpFirst);
    SoftClustering m2;
    if (!cmpSecond.empty()) {
      m2 = read_clustering(cmpSecond);
    } else if (!cmpDataset.empty()) {
      LoadOptions lo;
      lo.labelColumn = cmpLabelCol;
      LoadedDataset ld = load_dataset(cmpDataset, lo);
      if (!ld.groundTruth)
        throw Error(Errc::ValidationError, cmpDataset + " has no '" + cmpLabelCol + "' column");
      m2 = ld.groundTruth->to_soft();
    } else {
      throw Error(Errc::ValidationError, "need a second clustering file or --dataset");
    }
    CompareOptions co;
    co.measure = parse_measure(cmpMeasure);
    co.mode = cmpMode == "exact" ? CompareMode::Exact
              : cmpMode == "sample" ? CompareMode::Sample
                                    : CompareMode::Auto;
    co.budget = g.budget;
    co.plan.sampleCount = cmpSamples;
    co.plan.epsilon = cmpEps;
    co.plan.delta = cmpDelta;
    co.plan.seed = g.seed;
    co.sampleMode = cmpSampleMode == "nested" ? EvidentialSampleMode::Nested
                                              : EvidentialSampleMode::ExactInner;
    co.threads = g.threads;
    co.tnorm = parse_tnorm(cmpTnorm);
    co.massMetric = cmpDm == "jousselme" ? MassMetricKind::JousselmeJaccard : MassMetricKind::HalfL1;
    co.prune = cmpPrune;
    const EvaluationReport rep = run_compare(m1, m2, co);
    if (g.output == "json")
      std::cout << report_to_json(rep).dump(2) << "\n";
    else
      print_report(std::cout, rep);
  });

  // --- cluster ----------------------------------------------------------------
  auto* clu = app.add_subcommand("cluster", "fit a clusterer and write a clustering file");
  clu->fallthrough();
  std::string cluCsv, cluAlgo = "kmeans", cluOut, cluLabelCol, cluEmptySet = "omega";
  std::size_t cluK = 3;
  double cluM = 2.0, cluEpsilon = 1.1, cluLowerWeight = 0.7;
  double cluAlpha = 1.0, cluBeta = 2.0, cluDelta = 10.0, cluTol = 1e-6, cluPrune = 0.0;
  std::uint32_t cluMaxIter = 300;
  bool cluStandardize = false;
  clu->add_option("dataset", cluCsv, "CSV of numeric features")->required();
  clu->add_option("--algo", cluAlgo, "kmeans | fcm | pcm | rkm | ecm")
      ->check(CLI::IsMember({"kmeans", "fcm", "pcm", "rkm", "ecm"}))
      ->capture_default_str();
  clu->add_option("--k", cluK, "number of clusters")->capture_default_str();
  clu->add_option("--label-col", cluLabelCol, "column to exclude from the features");
  clu->add_option("--m", cluM, "fuzzifier (fcm, pcm)")->capture_default_str();
  clu->add_option("--epsilon", cluEpsilon, "boundary ratio (rkm)")->capture_default_str();
  clu->add_option("--lower-weight", cluLowerWeight, "lower-approximation weight (rkm)")
      ->capture_default_str();
  clu->add_option("--alpha", cluAlpha, "cardinality exponent (ecm)")->capture_default_str();
  clu->add_option("--beta", cluBeta, "fuzzifier (ecm)")->capture_default_str();
  clu->add_option("--delta", cluDelta, "outlier distance (ecm)")->capture_default_str();
  clu->add_option("--empty-set", cluEmptySet, "ecm empty-set handling: omega | renormalize | reject")
      ->check(CLI::IsMember({"omega", "renormalize", "reject"}))
      ->capture_default_str();
  clu->add_option("--max-iter", cluMaxIter, "iteration cap")->capture_default_str();
  clu->add_option("--tol", cluTol, "center-shift convergence threshold")->capture_default_str();
  clu->add_flag("--standardize", cluStandardize, "z-score the features first");
  clu->add_option("--prune", cluPrune, "drop focal sets below this mass before writing");
  clu->add_option("--out", cluOut, "output clustering JSON path (default: stdout)");
  clu->callback([&] {
    LoadOptions lo;
    lo.labelColumn = cluLabelCol;
    LoadedDataset ld = load_dataset(cluCsv, lo);
    if (cluStandardize) standardize(ld.data);
    FitOptions fo;
    fo.maxIter = cluMaxIter;
    fo.tol = cluTol;
    fo.seed = g.seed;
    SoftClustering soft;
    double objective = 0.0;
    std::uint32_t iterations = 0;
    bool converged = false;
    if (cluAlgo == "kmeans") {
      auto r = kmeans(ld.data, cluK, fo);
      soft = r.to_hard().to_soft();
      objective = r.objective; iterations = r.iterations; converged = r.converged;
    } else if (cluAlgo == "fcm") {
      auto r = fuzzy_cmeans(ld.data, cluK, cluM, fo);
      soft = r.to_soft();
      objective = r.objective; iterations = r.iterations; converged = r.converged;
    } else if (cluAlgo == "pcm") {
      auto r = possibilistic_cmeans(ld.data, cluK, cluM, fo);
      soft = r.to_soft();
      objective = r.objective; iterations = r.iterations; converged = r.converged;
    } else if (cluAlgo == "rkm") {
      auto r = rough_kmeans(ld.data, cluK, cluEpsilon, cluLowerWeight, fo);
      soft = r.to_soft();
      objective = r.objective; iterations = r.iterations; converged = r.converged;
    } else {
      auto r = evidential_cmeans(ld.data, cluK, cluAlpha, cluBeta, cluDelta, fo);
      const EmptySetPolicy policy = cluEmptySet == "renormalize" ? EmptySetPolicy::Renormalize
                                    : cluEmptySet == "reject"    ? EmptySetPolicy::Reject
                                                                 : EmptySetPolicy::RedistributeOmega;
      soft = r.to_soft(policy);
      objective = r.objective; iterations = r.iterations; converged = r.converged;
    }
    if (cluPrune > 0.0) soft = prune_focal(soft, cluPrune);
    nlohmann::json meta{{"algorithm", cluAlgo},
                        {"k", cluK},
                        {"kind", kind_name(classify(soft))},
                        {"objective", objective},
                        {"iterations", iterations},
                        {"converged", converged}};
    if (!cluOut.empty()) {
      write_clustering(soft, cluOut);
      meta["written"] = cluOut;
      if (g.output == "json")
        std::cout << meta.dump(2) << "\n";
      else
        std::cout << "wrote " << cluOut << " (" << meta["kind"].get<std::string>()
                  << ", objective " << objective << ", " << iterations << " iterations"
                  << (converged ? "" : ", not converged") << ")\n";
    } else {
      nlohmann::json j = clustering_to_json(soft);
      j["fit"] = std::move(meta);
      std::cout << j.dump(2) << "\n";
    }
  });

  // --- reproduce-iris ------------------------------------------------------------
  auto* iris = app.add_subcommand("reproduce-iris",
                                  "rerun the Iris comparison study on the bundled dataset");
  iris->fallthrough();
  IrisOptions io;
  iris->add_option("--csv", io.csvPath, "Iris CSV path")->capture_default_str();
  iris->add_option("--label-col", io.labelColumn, "label column")->capture_default_str();
  iris->add_option("--samples", io.samples, "sample count for the sampled rows")
      ->capture_default_str();
  iris->add_option("--sweep", io.seedSweep, "seed restarts per fitter (best objective wins)")
      ->capture_default_str();
  iris->add_option("--prune-fuzzy", io.pruneFuzzy, "mass floor on fuzzy memberships")
      ->capture_default_str();
  iris->add_option("--cut-poss", io.cutPossibilistic,
                   "relative possibility threshold on possibilistic outputs")
      ->capture_default_str();
  iris->add_option("--cut-evid", io.cutEvidential,
                   "relative plausibility threshold on evidential outputs")
      ->capture_default_str();
  iris->callback([&] {
    io.seed = g.seed;
    io.threads = g.threads;
    if (budgetOpt->count() > 0) io.budget = g.budget;
    const IrisTable t = reproduce_iris(io);
    if (g.output == "json")
      std::cout << iris_table_to_json(t).dump(2) << "\n";
    else
      print_iris_table(std::cout, t);
  });

  // --- axioms ---------------------------------------------------------------------
  auto* ax = app.add_subcommand("axioms", "probe metric axioms on generated instances");
  ax->fallthrough();
  std::string axMeasure = "rand", axFamily = "hard";
  std::size_t axN = 4, axK = 3, axCount = 40;
  bool axExhaustive = false;
  ax->add_option("--measure", axMeasure, "rand | partition")
      ->check(CLI::IsMember({"rand", "partition"}))
      ->capture_default_str();
  ax->add_option("--family", axFamily,
                 "hard | rough-lower | rough-upper (interval endpoints over rough inputs)")
      ->check(CLI::IsMember({"hard", "rough-lower", "rough-upper"}))
      ->capture_default_str();
  ax->add_option("--n", axN, "objects per instance")->capture_default_str();
  ax->add_option("--k", axK, "clusters per instance")->capture_default_str();
  ax->add_option("--count", axCount, "random instances")->capture_default_str();
  ax->add_flag("--exhaustive", axExhaustive, "use every partition of n objects (hard family)");
  ax->callback([&] {
    const BaseMetric metric =
        axMeasure == "rand" ? BaseMetric::RandDistance : BaseMetric::PartitionDistance;
    if (axFamily == "hard") {
      const auto pts = make_hard_instances(axN, axK, axCount, g.seed, axExhaustive);
      const AxiomReport rep = check_axioms_hard(pts, metric);
      print_axiom_report(g, rep, pts.size());
      return;
    }
    std::vector<RoughClustering> pts = make_rough_instances(axN, axK, axCount, g.seed);
    if (axFamily == "rough-lower") {
      // canonical triangle-breaking triple for the lower bound: decided pair,
      // undecided middle
      pts.push_back(RoughClustering(Frame(2), std::vector<std::uint64_t>{1, 1}));
      pts.push_back(RoughClustering(Frame(2), std::vector<std::uint64_t>{1, 3}));
      pts.push_back(RoughClustering(Frame(2), std::vector<std::uint64_t>{1, 2}));
    }
    const bool lower = axFamily == "rough-lower";
    auto dist = [&](const RoughClustering& a, const RoughClustering& b) {
      if (a.n() != b.n()) return lower ? 0.0 : 1.0;  // incomparable sizes never generated together
      const IntervalSummary iv = rough_interval_exact(a, b, metric, g.budget);
      return lower ? iv.lower : iv.upper;
    };
    auto eq = [](const RoughClustering& a, const RoughClustering& b) {
      return a.n() == b.n() && a.regions == b.regions;
    };
    const AxiomReport rep =
        check_axioms<RoughClustering>(std::span<const RoughClustering>(pts), dist, eq);
    print_axiom_report(g, rep, pts.size());
  });

  // --- bench ------------------------------------------------------------------------
  auto* bench = app.add_subcommand("bench", "time the enumeration and sampling machinery");
  bench->fallthrough();
  std::string benchOp = "enumerate";
  std::size_t benchN = 150, benchK = 3, benchAmbiguous = 16;
  std::uint64_t benchSamples = 10000;
  int benchTrials = 3;
  bench->add_option("--op", benchOp, "enumerate | sample | expectation")
      ->check(CLI::IsMember({"enumerate", "sample", "expectation"}))
      ->capture_default_str();
  bench->add_option("--n", benchN, "objects")->capture_default_str();
  bench->add_option("--k", benchK, "clusters")->capture_default_str();
  bench->add_option("--ambiguous", benchAmbiguous, "objects with two-cluster regions")
      ->capture_default_str();
  bench->add_option("--samples", benchSamples, "sample count")->capture_default_str();
  bench->add_option("--trials", benchTrials, "repetitions (median reported)")
      ->capture_default_str();
  bench->callback([&] {
    CounterRng rng(g.seed, 0xBE7C);
    std::vector<std::uint64_t> regions(benchN);
    std::vector<std::uint32_t> gtLabels(benchN);
    for (std::size_t i = 0; i < benchN; ++i) {
      const std::uint32_t c = static_cast<std::uint32_t>(rng.next_below(benchK));
      gtLabels[i] = c;
      if (i < benchAmbiguous) {
        const std::uint32_t c2 = (c + 1) % benchK;
        regions[i] = (std::uint64_t{1} << c) | (std::uint64_t{1} << c2);
      } else {
        regions[i] = std::uint64_t{1} << c;
      }
    }
    const RoughClustering rough(Frame(benchK), regions);
    const RoughClustering gtRough =
        RoughClustering::from_hard(HardClustering(Frame(benchK), gtLabels));
    std::vector<double> times;
    double payload = 0.0;
    for (int t = 0; t < benchTrials; ++t) {
      const auto t0 = std::chrono::steady_clock::now();
      if (benchOp == "enumerate") {
        const IntervalSummary iv =
            rough_interval_exact(rough, gtRough, BaseMetric::RandDistance, g.budget);
        payload = iv.upper;
      } else if (benchOp == "sample") {
        SamplePlan plan;
        plan.sampleCount = benchSamples;
        plan.seed = g.seed + static_cast<std::uint64_t>(t);
        const ApproxResult a =
            approx_interval_rough(rough, gtRough, BaseMetric::RandDistance, plan, g.threads);
        payload = a.upper;
      } else {
        // random fuzzy pair, closed-form expectation
        std::vector<std::vector<MassFunction::Entry>> raw1(benchN), raw2(benchN);
        CounterRng frng(g.seed, 0xFA22 + static_cast<std::uint64_t>(t));
        for (std::size_t i = 0; i < benchN; ++i) {
          for (std::size_t c = 0; c < benchK; ++c) {
            raw1[i].emplace_back(std::uint64_t{1} << c, frng.next_unit() + 1e-3);
            raw2[i].emplace_back(std::uint64_t{1} << c, frng.next_unit() + 1e-3);
          }
        }
        ValidateOptions vo;
        vo.acceptTol = 1e9;  // raw entries are unnormalized on purpose
        const SoftClustering f1 = validate_soft_clustering(Frame(benchK), std::move(raw1), vo);
        const SoftClustering f2 = validate_soft_clustering(Frame(benchK), std::move(raw2), vo);
        payload = fuzzy_rand_expectation_fast(f1, f2);
      }
      times.push_back(seconds_since(t0));
    }
    std::sort(times.begin(), times.end());
    const double median = times[times.size() / 2];
    if (g.output == "json") {
      nlohmann::json j{{"op", benchOp},       {"n", benchN},
                       {"k", benchK},         {"ambiguous", benchAmbiguous},
                       {"samples", benchSamples}, {"medianSeconds", median},
                       {"trials", benchTrials},   {"value", payload}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cout << benchOp << ": n=" << benchN << " k=" << benchK
                << " ambiguous=" << benchAmbiguous << " -> median " << median << "s over "
                << benchTrials << " trials (value " << payload << ")\n";
    }
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    emit_error(g, e);
    return 1;
  } catch (const std::exception& e) {
    if (g.output == "json") {
      nlohmann::json j;
      j["error"] = {{"code", "internal"}, {"message", e.what()}};
      std::cout << j.dump(2) << "\n";
    } else {
      std::cerr << "error: " << e.what() << "\n";
    }
    return 1;
  }
  return 0;
}
