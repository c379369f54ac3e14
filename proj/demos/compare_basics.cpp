// Minimal walkthrough: build two small clusterings in code, compare them with
// every route the library offers, and print the reports.

#include <iostream>

#include <softcmp/softcmp.hpp>

using namespace softcmp;

int main() {
  // Evidential clustering of three objects over two clusters. Object a hedges
  // between "cluster 1" and "could be either"; b and c are certain.
  std::vector<std::vector<MassFunction::Entry>> raw(3);
  raw[0].emplace_back(0b01, 0.6);
  raw[0].emplace_back(0b11, 0.4);
  raw[1].emplace_back(0b01, 1.0);
  raw[2].emplace_back(0b10, 1.0);
  const SoftClustering evidential = validate_soft_clustering(Frame(2), std::move(raw));

  // Reference hard clustering {a, b | c}.
  const HardClustering reference(Frame(2), {0, 0, 1});
  const SoftClustering referenceSoft = reference.to_soft();

  std::cout << "exact distributional comparison (Rand distance):\n";
  CompareOptions exact;
  exact.measure = Measure::Rand;
  exact.mode = CompareMode::Exact;
  print_report(std::cout, run_compare(evidential, referenceSoft, exact));

  std::cout << "\nsampled comparison, 2000 draws:\n";
  CompareOptions sampled;
  sampled.measure = Measure::Rand;
  sampled.mode = CompareMode::Sample;
  sampled.plan.sampleCount = 2000;
  sampled.plan.seed = 42;
  print_report(std::cout, run_compare(evidential, referenceSoft, sampled));

  std::cout << "\nsame comparison as machine-readable JSON:\n";
  std::cout << report_to_json(run_compare(evidential, referenceSoft, exact)).dump(2) << "\n";
  return 0;
}
