// Serial reference vs OpenMP kernels on the bundled corpus.

#include <benchmark/benchmark.h>

#include <filesystem>
#include <memory>

#include "mass/classifier.hpp"
#include "mass/corpus.hpp"
#include "mass/kernels.hpp"
#include "mass/resources.hpp"

namespace {

struct Fixture {
  std::shared_ptr<const mass::Resources> resources;
  mass::LabeledCorpus corpus;
  std::unique_ptr<mass::Summarizer> summarizer;
  std::unique_ptr<mass::Classifier> classifier;
  mass::Summary report;
};

const Fixture& fixture() {
  static const Fixture f = [] {
    const std::filesystem::path data = MASS_DATA_DIR;
    Fixture f;
    f.resources = std::make_shared<const mass::Resources>(mass::load_resources(data / "resources"));
    f.corpus = mass::load_corpus(data / "corpus");
    f.summarizer = std::make_unique<mass::Summarizer>(f.resources, mass::SummarizerConfig{});
    f.classifier = std::make_unique<mass::Classifier>(f.resources, mass::train_serial(f.corpus, f.resources));
    f.report = f.summarizer->summarize({f.corpus.reports().front()});
    return f;
  }();
  return f;
}

void BM_BuildCentroidsSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(mass::build_centroids_serial(*f.summarizer, f.corpus));
}

void BM_BuildCentroidsParallel(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(mass::build_centroids_parallel(*f.summarizer, f.corpus));
}

void BM_ScoreCategoriesSerial(benchmark::State& state) {
  const auto& f = fixture();
  const auto& model = f.classifier->model();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        mass::score_categories_serial(f.report, model.centroids, model.config.weights, *f.resources));
}

void BM_ScoreCategoriesParallel(benchmark::State& state) {
  const auto& f = fixture();
  const auto& model = f.classifier->model();
  for (auto _ : state)
    benchmark::DoNotOptimize(
        mass::score_categories_parallel(f.report, model.centroids, model.config.weights, *f.resources));
}

void BM_ClassifyBatchSerial(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(mass::classify_batch_serial(*f.classifier, f.corpus.reports()));
}

void BM_ClassifyBatchParallel(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(mass::classify_batch_parallel(*f.classifier, f.corpus.reports()));
}

}  // namespace

BENCHMARK(BM_BuildCentroidsSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_BuildCentroidsParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScoreCategoriesSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ScoreCategoriesParallel)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassifyBatchSerial)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ClassifyBatchParallel)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
