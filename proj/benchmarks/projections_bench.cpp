#include <benchmark/benchmark.h>

#include <random>

#include "csvip/geometry.hpp"

namespace {

using csvip::ConvexSet;
using csvip::Matrix;
using csvip::Vector;

Vector random_point(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 3.0);
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = g(rng);
  return v;
}

void run_projection(benchmark::State& state, const ConvexSet& set) {
  std::mt19937_64 rng(1);
  const Vector x = random_point(rng, static_cast<Eigen::Index>(set.dim()));
  for (auto _ : state) benchmark::DoNotOptimize(csvip::project(set, x));
}

void BM_ProjectBox(benchmark::State& state) {
  const auto n = state.range(0);
  run_projection(state, ConvexSet::box(Vector::Constant(n, -1.0), Vector::Constant(n, 1.0)));
}
BENCHMARK(BM_ProjectBox)->Arg(10)->Arg(100)->Arg(1000);

void BM_ProjectBall(benchmark::State& state) {
  const auto n = state.range(0);
  run_projection(state, ConvexSet::ball(Vector::Zero(n), 1.0));
}
BENCHMARK(BM_ProjectBall)->Arg(10)->Arg(100)->Arg(1000);

void BM_ProjectSimplex(benchmark::State& state) {
  run_projection(state, ConvexSet::simplex(static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_ProjectSimplex)->Arg(10)->Arg(100)->Arg(1000);

void BM_ProjectAffineSubspace(benchmark::State& state) {
  const auto n = state.range(0);
  std::mt19937_64 rng(2);
  std::normal_distribution<double> g;
  Matrix a(n / 2, n);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g(rng);
  run_projection(state, ConvexSet::affine_subspace(a, Vector::Zero(n / 2)));
}
BENCHMARK(BM_ProjectAffineSubspace)->Arg(10)->Arg(50)->Arg(200);

void BM_ProjectIntersection(benchmark::State& state) {
  const auto n = state.range(0);
  run_projection(state, ConvexSet::intersection({ConvexSet::ball(Vector::Zero(n), 1.0),
                                                 ConvexSet::halfspace(Vector::Ones(n), 0.5)}));
}
BENCHMARK(BM_ProjectIntersection)->Arg(2)->Arg(10)->Arg(100);

}  // namespace
