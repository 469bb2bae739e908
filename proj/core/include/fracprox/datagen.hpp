#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "fracprox/problem.hpp"

namespace fracprox {

struct GenParams {
  VariantKind variant = VariantKind::BoxLasso;
  double lambda = 0.1;  // BoxLasso
  double box = 5.0;     // BoxLasso bounds are [-box, box]
  double nf = 1.2;      // BallConstrained sigma = nf * ||0.01 * noise||
};

struct GeneratedInstance {
  ProblemInstance instance;
  Vector x_orig;
  Vector noise;  // the standard Gaussian vector n_hat; b = A x_orig + 0.01 * n_hat
};

// A: column-major fill from stream kMatrix; support: partial Fisher-Yates from kSupport, sorted;
// x_orig values: kSignal in support order; noise: kNoise.
GeneratedInstance gen_instance(Index m, Index n, Index s, std::uint64_t seed, const GenParams& params);

struct GeneratorInfo {
  Index m = 0;
  Index n = 0;
  Index s = 0;
  std::uint64_t seed = 0;
  GenParams params;
};

struct LoadedInstance {
  ProblemInstance instance;
  std::optional<Vector> x_orig;
  std::optional<GeneratorInfo> generator;
};

inline constexpr int kManifestSchemaVersion = 1;

// Writes A.mtx, b.txt, [lower.txt, upper.txt | x_feas.txt], [x_orig.txt] and manifest.json
// into `dir` and returns the manifest path.
std::filesystem::path save_instance(const ProblemInstance& inst, const std::filesystem::path& dir,
                                    const std::optional<Vector>& x_orig = std::nullopt,
                                    const std::optional<GeneratorInfo>& generator = std::nullopt);

// Reads a manifest; paths inside are relative to the manifest's directory.
// Throws ParseError (with line/column) or InvariantViolation.
LoadedInstance load_instance(const std::filesystem::path& manifest);

Matrix read_matrix_market(const std::filesystem::path& path);
void write_matrix_market(const std::filesystem::path& path, const Matrix& A);
Vector read_vector(const std::filesystem::path& path);
void write_vector(const std::filesystem::path& path, const Vector& v);

}  // namespace fracprox
