#pragma once

#include "nilcyl/nilaut.hpp"

#include <vector>

namespace nilcyl {

class NotAdmissible : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class QueryAboveLevel : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class NotInH15 : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// (mu_1..mu_{n-1}, mu'_1..mu'_g, mu''_1..mu''_g); entry b sits at the
// position of generator letter b.
using MilnorTuple = std::vector<Word>;
using FramingVector = std::vector<Integer>;

// Nilpotent model of a homology cylinder: Milnor-type words modulo F_level
// whose derived automorphism fixes the boundary class up to a lift.
class CylModel {
public:
  // Rejects tuples whose derived automorphism fails the membership test.
  static CylModel make(const Signature &sig, int level, MilnorTuple mu);
  static CylModel identity(const Signature &sig, int level);

  const Signature &sig() const { return sig_; }
  int level() const { return level_; }
  const MilnorTuple &mu() const { return mu_; }
  const Word &x_entry(int i) const { return mu_.at(sig_.x(i)); }
  const Word &m_entry(int j) const { return mu_.at(sig_.m(j)); }
  const Word &l_entry(int j) const { return mu_.at(sig_.l(j)); }

  // Entrywise equality modulo F_level.
  bool same_as(const CylModel &o) const;

private:
  friend CylModel compose(const CylModel &, const CylModel &);
  friend CylModel truncate(const CylModel &, int);
  CylModel(Signature sig, int level, MilnorTuple mu)
      : sig_(sig), level_(level), mu_(std::move(mu)) {}

  Signature sig_;
  int level_;
  MilnorTuple mu_;
};

// x_i -> mu_i^-1 x_i mu_i, m_j -> m_j mu'_j, l_j -> l_j mu''_j.
NilAut derive_eta(const Signature &sig, int level, const MilnorTuple &mu);
NilAut derive_eta(const CylModel &M);

// mu(MN) = mu(M) * eta(M)(mu(N)) entrywise.
CylModel compose(const CylModel &M, const CylModel &N);
CylModel truncate(const CylModel &M, int level);

FramingVector framing(const CylModel &M);
bool zero_framed(const CylModel &M);
CylModel dehn_twist_model(const Signature &sig, int i, const Integer &t,
                          int level);

struct FrameNormalized {
  CylModel model;
  FramingVector twist;
};
FrameNormalized frame_normalize(const CylModel &M);

enum class FiltrationKind { Milnor, Johnson0 }; // H(k) and H0[k]

bool filtration_member(const CylModel &M, FiltrationKind kind, int k);
bool h15_member(const CylModel &M);
// Component in H0[2]/H(2); returned as a level-2 model with trivial m/l
// entries.
CylModel split_projection_f(const CylModel &M);

} // namespace nilcyl
