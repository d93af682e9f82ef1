#include "mfo/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <utility>

#include "mfo/errors.hpp"

namespace mfo::analysis {

Matrix aggregate_transfer(std::span<const TransferLedger> ledgers) {
  if (ledgers.empty()) throw AnalysisError("cannot aggregate an empty list of transfer ledgers");
  const std::size_t k = ledgers.front().size();
  Matrix m{k, std::vector<double>(k * k, 0.0)};
  for (const auto& ledger : ledgers) {
    if (ledger.size() != k) throw AnalysisError("transfer ledgers have different task counts");
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) m(i, j) += static_cast<double>(ledger(i, j));
    }
  }
  for (double& v : m.values) v /= static_cast<double>(ledgers.size());
  return m;
}

std::vector<PairIntensity> ranked_pairs(const Matrix& transfer) {
  std::vector<PairIntensity> pairs;
  for (std::size_t a = 0; a < transfer.size; ++a) {
    for (std::size_t b = a + 1; b < transfer.size; ++b) {
      pairs.push_back({a, b, transfer(a, b) + transfer(b, a)});
    }
  }
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const PairIntensity& x, const PairIntensity& y) { return x.intensity > y.intensity; });
  return pairs;
}

SampleSummary summarize(std::span<const double> values) {
  SampleSummary s;
  s.n = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean = sum / static_cast<double>(s.n);
  s.best = *std::min_element(values.begin(), values.end());
  if (s.n > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(s.n - 1));
  }
  return s;
}

double best_solution_overlap(const tsp::TspInstance& a, const tsp::Tour& tour_a,
                             const tsp::TspInstance& b, const tsp::Tour& tour_b) {
  using Key = std::pair<double, double>;
  auto key = [](const tsp::Point& p) { return Key{p.x, p.y}; };

  std::map<Key, int> id_in_b;
  for (std::size_t i = 0; i < b.dimension(); ++i) id_in_b.emplace(key(b.coords()[i]), 0);
  std::map<Key, int> shared_id;
  for (const auto& p : a.coords()) {
    if (id_in_b.contains(key(p)) && !shared_id.contains(key(p))) {
      shared_id.emplace(key(p), static_cast<int>(shared_id.size()));
    }
  }

  auto restrict = [&](const tsp::TspInstance& inst, const tsp::Tour& tour) {
    std::vector<int> seq;
    std::set<int> used;
    for (tsp::City c : tour.order) {
      auto it = shared_id.find(key(inst.coord(c)));
      if (it != shared_id.end() && used.insert(it->second).second) seq.push_back(it->second);
    }
    return seq;
  };
  const auto seq_a = restrict(a, tour_a);
  const auto seq_b = restrict(b, tour_b);
  const std::size_t s = seq_a.size();
  if (s < 2 || seq_b.size() != s) return 0.0;

  auto edges = [](const std::vector<int>& seq) {
    std::set<std::pair<int, int>> out;
    const std::size_t n = seq.size();
    const std::size_t count = n == 2 ? 1 : n;
    for (std::size_t i = 0; i < count; ++i) {
      const int u = seq[i];
      const int v = seq[(i + 1) % n];
      out.emplace(std::min(u, v), std::max(u, v));
    }
    return out;
  };
  const auto ea = edges(seq_a);
  const auto eb = edges(seq_b);
  std::size_t common = 0;
  for (const auto& e : ea) common += eb.contains(e) ? 1 : 0;
  return 100.0 * static_cast<double>(common) / static_cast<double>(std::min(ea.size(), eb.size()));
}

}  // namespace mfo::analysis
