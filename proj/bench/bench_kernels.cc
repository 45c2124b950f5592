/*
 * Copyright 2026 The rankfaith Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Parallel kernels against their serial references on the synthetic corpus.

#include <cstddef>
#include <numeric>
#include <vector>

#include "benchmark/benchmark.h"
#include "rankfaith/attribution/attribution.h"
#include "rankfaith/data/prepared.h"
#include "rankfaith/data/synthetic.h"
#include "rankfaith/data/table.h"
#include "rankfaith/models/gbdt.h"
#include "rankfaith/models/split_search.h"

namespace rf = rankfaith;

namespace {

const rf::data::PreparedData& Corpus() {
  static const auto data = rf::data::PrepareData(
      rf::data::ParseCsv(rf::data::GenerateSyntheticLoans(10000, 42)),
      rf::data::SyntheticLoanSchema(), 0.7, 42);
  return data;
}

struct RootProblem {
  rf::data::DenseMatrix x;
  std::vector<double> grad, hess;
  std::vector<std::uint32_t> rows;
};

const RootProblem& Root() {
  static const RootProblem p = [] {
    const auto& data = Corpus();
    RootProblem r;
    r.x = data.dataset.matrix.Rows(data.split.train);
    for (auto i : data.split.train) {
      const double y = data.dataset.labels[i];
      r.grad.push_back(0.265 - y);
      r.hess.push_back(0.265 * 0.735);
    }
    r.rows.resize(r.x.rows());
    std::iota(r.rows.begin(), r.rows.end(), 0u);
    return r;
  }();
  return p;
}

void BM_RootSplitLevel(benchmark::State& state) {
  const auto& p = Root();
  const rf::models::SortedColumns columns(p.x);
  const std::vector<int> node(p.x.rows(), 0);
  rf::models::NodeStats total;
  for (std::size_t i = 0; i < p.grad.size(); ++i) {
    total.grad += p.grad[i];
    total.hess += p.hess[i];
  }
  const std::vector totals{total};
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rf::models::FindSplitsLevel(columns, node, 1, totals, p.grad, p.hess, {}));
  }
}
BENCHMARK(BM_RootSplitLevel)->Unit(benchmark::kMillisecond);

void BM_RootSplitReference(benchmark::State& state) {
  const auto& p = Root();
  for (auto _ : state) {
    benchmark::DoNotOptimize(rf::models::FindSplitReference(p.x, p.rows, p.grad, p.hess, {}));
  }
}
BENCHMARK(BM_RootSplitReference)->Unit(benchmark::kMillisecond);

void FitWith(benchmark::State& state, rf::models::SplitKernel kernel) {
  const auto& data = Corpus();
  const auto x = data.dataset.matrix.Rows(data.split.train);
  std::vector<int> y;
  for (auto r : data.split.train) y.push_back(data.dataset.labels[r]);
  rf::models::GbdtParams params;
  params.n_rounds = 20;
  params.max_depth = 4;
  for (auto _ : state) benchmark::DoNotOptimize(rf::models::FitGbdt(x, y, params, kernel));
}

void BM_FitGbdtLevel(benchmark::State& state) {
  FitWith(state, rf::models::SplitKernel::kParallelLevel);
}
BENCHMARK(BM_FitGbdtLevel)->Unit(benchmark::kMillisecond);

void BM_FitGbdtReference(benchmark::State& state) {
  FitWith(state, rf::models::SplitKernel::kSerialReference);
}
BENCHMARK(BM_FitGbdtReference)->Unit(benchmark::kMillisecond);

const rf::models::Model& Forest() {
  static const rf::models::Model model = [] {
    const auto& data = Corpus();
    const auto x = data.dataset.matrix.Rows(data.split.train);
    std::vector<int> y;
    for (auto r : data.split.train) y.push_back(data.dataset.labels[r]);
    rf::models::GbdtParams params;
    params.n_rounds = 100;
    return rf::models::Model(rf::models::FitGbdt(x, y, params).model);
  }();
  return model;
}

void BM_TreeShapBatch(benchmark::State& state) {
  const auto& data = Corpus();
  const auto& forest = Forest();
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        rf::attribution::AttributeBatch(forest, data.dataset.matrix, data.split.test));
  }
}
BENCHMARK(BM_TreeShapBatch)->Unit(benchmark::kMillisecond);

void BM_TreeShapSerial(benchmark::State& state) {
  const auto& data = Corpus();
  const auto& forest = Forest();
  for (auto _ : state) {
    std::vector<rf::attribution::AttributionVector> out;
    out.reserve(data.split.test.size());
    for (auto r : data.split.test) {
      out.push_back(rf::attribution::Attribute(forest, data.dataset.matrix.row(r)));
    }
    benchmark::DoNotOptimize(out);
  }
}
BENCHMARK(BM_TreeShapSerial)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
