#pragma once

#include "nilcyl/filtration.hpp"
#include "nilcyl/magnus.hpp"

#include <variant>
#include <vector>

namespace nilcyl {

class NotAutomorphism : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class AdSolveFailed : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class NotInKernel : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// Endomorphism of F/F_level given by one image word per generator.
struct NilAut {
  Signature sig;
  int level = 2;
  std::vector<Word> images;

  static NilAut identity(const Signature &sig, int level);
  static NilAut from_images(const Signature &sig, int level,
                            std::vector<Word> images);

  const Word &image(int letter) const { return images.at(letter); }
  // Equality of the induced maps on F/F_level.
  bool same_as(const NilAut &o) const;
  bool is_identity() const;
};

// Extends a NilAut to the Magnus ring truncated at `bound`.
class Substitution {
public:
  Substitution(const NilAut &phi, int bound);
  TruncatedSeries apply(const Word &w) const;
  // Ring map X_a -> phi(x_a) - 1.
  TruncatedSeries apply(const TruncatedSeries &s) const;

private:
  Signature sig_;
  int bound_;
  std::vector<TruncatedSeries> nil_; // phi(x_a) - 1
};

// Canonical word of a group-like series: a product over degrees of Hall
// commutator words.
Word collect(const TruncatedSeries &s);
Word normalize(const Word &w, int level);

// Image of w under phi, normalized modulo F_level.
Word apply(const NilAut &phi, const Word &w);

// (phi o psi)(gen) = phi(psi(gen)).
NilAut compose(const NilAut &phi, const NilAut &psi);
NilAut truncate(const NilAut &phi, int level);

// Exponent-sum matrix; column g holds the abelianized image of generator g.
IntMatrix abelianization(const NilAut &phi);
bool is_automorphism(const NilAut &phi);
NilAut invert(const NilAut &phi);

enum class NotMemberReason { XImageNotConjugate, BoundaryObstruction };

struct NotMember {
  NotMemberReason reason;
  int generator = -1; // letter of the offending x_i, if any
  int degree = 0;     // degree at which the obstruction appears
};

// Data of a lift to F/F_{level+1} of conjugation form fixing the boundary.
// conjugators[i] already includes the retargeting by a[i] (degree level-1).
// b and c (degree level) record corrections to the m and l images; they do
// not affect the boundary modulo F_{level+1} and are always zero.
struct AutStarCertificate {
  std::vector<Word> conjugators;
  std::vector<LieVector> a, b, c;
};

using AutStarResult = std::variant<AutStarCertificate, NotMember>;

AutStarResult aut_star_membership(const NilAut &phi);
// The lift described by a certificate, at level phi.level + 1.
NilAut certificate_lift(const NilAut &phi, const AutStarCertificate &cert);
bool is_aut_star(const NilAut &phi);

// phi o boundary o boundary^-1 expanded at `bound`.
TruncatedSeries boundary_defect(const Signature &sig,
                                const std::vector<Word> &images, int bound);

bool kfilter_member(const NilAut &phi, int k);
bool afilter_member(const NilAut &phi, int k);

// For phi at level k+2 fixing generators mod F_k and x-generators mod
// F_{k+1}: the degree-k tuple read off from phi.
GradedTuple theta(const NilAut &phi, int k);
NilAut realize(const GradedTuple &t);

IntMatrix symplectic_form(int g);
// Block form [[I, A], [0, P]] with P symplectic on the m/l span.
bool aut_star_H_member(const Signature &sig, const IntMatrix &M);

} // namespace nilcyl
