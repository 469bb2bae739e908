#include <iostream>

#include "commands.hpp"
#include "fracprox/datagen.hpp"
#include "fracprox/rng.hpp"
#include "json.hpp"
#include "options.hpp"

namespace fracprox::cli {

int cmd_gen(const GenArgs& a) {
  if (a.s > a.n) throw UsageError("--s must not exceed --n");
  GenParams p;
  p.variant = parse_variant(a.variant);
  p.lambda = a.lambda;
  p.box = a.box;
  p.nf = a.nf;
  const std::uint64_t seed = a.index ? derive_seed(a.seed, *a.index) : a.seed;
  GeneratedInstance g = gen_instance(a.m, a.n, a.s, seed, p);
  GeneratorInfo info{a.m, a.n, a.s, seed, p};
  const auto manifest = save_instance(g.instance, a.out, g.x_orig, info);

  nlohmann::json j;
  j["schema_version"] = kManifestSchemaVersion;
  j["manifest"] = manifest.string();
  j["variant"] = to_string(p.variant);
  j["seed"] = seed;
  std::cout << j.dump() << '\n';
  return kOk;
}

}  // namespace fracprox::cli
