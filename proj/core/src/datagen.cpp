#include "fracprox/datagen.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "fracprox/error.hpp"
#include "fracprox/rng.hpp"

namespace fracprox {

GeneratedInstance gen_instance(Index m, Index n, Index s, std::uint64_t seed, const GenParams& params) {
  if (m < 1 || n < 1) throw Error(ErrorCode::BadShape, "m and n must be positive");
  if (s < 1 || s > n) throw Error(ErrorCode::BadShape, "sparsity s must satisfy 1 <= s <= n");

  Matrix A(m, n);
  {
    CounterRng rng(seed, stream::kMatrix);
    double* data = A.data();
    for (Index i = 0; i < m * n; ++i) data[i] = rng.normal();
  }

  std::vector<Index> idx(static_cast<std::size_t>(n));
  std::iota(idx.begin(), idx.end(), Index{0});
  {
    CounterRng rng(seed, stream::kSupport);
    for (Index i = 0; i < s; ++i) {
      const auto j = i + static_cast<Index>(rng.below(static_cast<std::uint64_t>(n - i)));
      std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
  }
  std::sort(idx.begin(), idx.begin() + s);

  Vector x_orig = Vector::Zero(n);
  {
    CounterRng rng(seed, stream::kSignal);
    for (Index i = 0; i < s; ++i) x_orig[idx[static_cast<std::size_t>(i)]] = rng.normal();
  }

  Vector noise(m);
  {
    CounterRng rng(seed, stream::kNoise);
    for (Index i = 0; i < m; ++i) noise[i] = rng.normal();
  }

  Vector b = A * x_orig + 0.01 * noise;

  if (params.variant == VariantKind::BoxLasso) {
    BoxLasso p;
    p.lambda = params.lambda;
    p.lower = Vector::Constant(n, -params.box);
    p.upper = Vector::Constant(n, params.box);
    return {ProblemInstance(std::move(A), std::move(b), std::move(p)), std::move(x_orig),
            std::move(noise)};
  }
  BallConstrained p;
  p.sigma = params.nf * (0.01 * noise).norm();
  return {ProblemInstance(std::move(A), std::move(b), p), std::move(x_orig), std::move(noise)};
}

}  // namespace fracprox
