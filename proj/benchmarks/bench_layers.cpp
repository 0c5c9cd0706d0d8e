// Copyright 2026 The hwarch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include <benchmark/benchmark.h>

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hwarch/layer.hpp"
#include "hwarch/oja.hpp"
#include "hwarch/rng.hpp"
#include "hwarch/synth.hpp"

namespace {

using hwarch::HwLayer;
using hwarch::Vector;

constexpr std::size_t kModules = 16;
constexpr std::size_t kPerModule = 32;

HwLayer make_layer(int backend, std::size_t d) {
  switch (backend) {
    case 0: return hwarch::ExactLayer(d);
    case 1: return hwarch::SvdLayer(d, 8);
    case 2: {
      hwarch::RpLayer::Options o;
      o.initial_columns = d / 4;
      o.seed = 11;
      o.policy.kind = hwarch::AugmentPolicy::Kind::kNever;
      return hwarch::RpLayer(d, o);
    }
    default: return hwarch::LshLayer(hwarch::WtaHashFamily(d, 16, 4, 4, 11));
  }
}

const char* label(int backend) {
  static const char* names[] = {"exact", "svd", "rp", "wta"};
  return names[backend];
}

std::vector<Vector> inputs(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::vector<Vector> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(hwarch::random_unit(d, hwarch::derive_seed(seed, {i})));
  return out;
}

HwLayer filled(int backend, std::size_t d) {
  HwLayer layer = make_layer(backend, d);
  const auto templates = inputs(kModules * kPerModule, d, 1);
  for (std::size_t k = 0; k < kModules; ++k) {
    layer.add_module();
    for (std::size_t j = 0; j < kPerModule; ++j) layer.insert(k, templates[k * kPerModule + j]);
  }
  return layer;
}

void BM_Signature(benchmark::State& state) {
  const int backend = static_cast<int>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const HwLayer layer = filled(backend, d);
  const auto xs = inputs(64, d, 2);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(layer.signature(xs[i++ % xs.size()]));
  }
  state.SetLabel(label(backend));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kModules));
}

void BM_Insert(benchmark::State& state) {
  const int backend = static_cast<int>(state.range(0));
  const auto d = static_cast<std::size_t>(state.range(1));
  const auto templates = inputs(kModules * kPerModule, d, 3);
  for (auto _ : state) {
    HwLayer layer = make_layer(backend, d);
    for (std::size_t k = 0; k < kModules; ++k) {
      layer.add_module();
      for (std::size_t j = 0; j < kPerModule; ++j) layer.insert(k, templates[k * kPerModule + j]);
    }
    benchmark::DoNotOptimize(layer.size());
  }
  state.SetLabel(label(backend));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(kModules * kPerModule));
}

void BM_OjaTrain(benchmark::State& state) {
  const auto samples = static_cast<std::size_t>(state.range(0));
  const auto stream = hwarch::spectral_stream(samples, {16, 8, 4, 2, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1}, 4);
  for (auto _ : state) {
    benchmark::DoNotOptimize(hwarch::oja_train(stream.samples, 3, 5, {}, 5));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(samples * 5));
}

void LayerArgs(benchmark::internal::Benchmark* b) {
  for (int backend = 0; backend < 4; ++backend) {
    for (int d : {64, 256}) b->Args({backend, d});
  }
}

BENCHMARK(BM_Signature)->Apply(LayerArgs);
BENCHMARK(BM_Insert)->Apply(LayerArgs)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_OjaTrain)->Arg(1000)->Arg(4000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
