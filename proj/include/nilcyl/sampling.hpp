#pragma once

#include "nilcyl/cylmodel.hpp"

#include <cstdint>
#include <random>

// Seeded generators for property tests and verification suites.
namespace nilcyl::sampling {

using Rng = std::mt19937_64;

// Independent stream for one case of a seeded run.
Rng case_rng(std::uint64_t seed, std::uint64_t case_index);
long uniform(Rng &rng, long lo, long hi);

Word random_word(const Signature &sig, Rng &rng, int max_len, int max_exp);
// At most `terms` nonzero coordinates in [-range, range].
LieVector random_lie(const Signature &sig, int degree, Rng &rng, int range,
                     int terms = 3);
// Element of F_depth, nontrivial modulo F_level in general.
Word random_deep_word(const Signature &sig, int depth, int level, Rng &rng);
GradedTuple random_kernel_tuple(const Signature &sig, int k, Rng &rng,
                                int range = 2);

IntMatrix random_unimodular(int n, Rng &rng, int steps = 6);
IntMatrix random_symplectic(int g, Rng &rng, int steps = 4);

NilAut random_automorphism(const Signature &sig, int level, Rng &rng);
// Lift of phi to a higher level, perturbing images by elements of F_level.
NilAut random_lift(const NilAut &phi, int level, Rng &rng);

struct ModelOptions {
  bool zero_framed = false;
  bool h15 = false;     // no x-components in the m/l abelianized images
  int start_degree = 1; // entries trivial below this degree
};

// Admissible model built degree by degree: random data in each degree and
// a boundary correction solved one degree higher.
CylModel random_model(const Signature &sig, int level, Rng &rng,
                      const ModelOptions &opt = {});

} // namespace nilcyl::sampling
