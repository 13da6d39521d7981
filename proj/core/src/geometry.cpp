#include "casimir/geometry.hpp"

#include <cmath>

#include "casimir/errors.hpp"

namespace casimir {

namespace {

bool positive_finite(double v) { return v > 0.0 && std::isfinite(v); }

}  // namespace

Geometry Geometry::from_gap(double r_A, double r_B, double d, Mode mode) {
  Geometry g;
  g.r_A = r_A;
  g.r_B = r_B;
  g.mode = mode;
  g.L = mode == Mode::Interior ? r_B - r_A - d : r_A + r_B + d;
  return g;
}

void Geometry::validate() const {
  if (!positive_finite(r_A) || !positive_finite(r_B)) {
    throw ValidationError("radii must be positive and finite");
  }
  if (!std::isfinite(L)) throw ValidationError("center distance must be finite");
  const double gap = d();
  if (!(gap > 0.0)) throw ValidationError("gap d must be positive, got " + std::to_string(gap));
  if (mode == Mode::Interior) {
    if (!(r_A < r_B)) throw ValidationError("interior geometry needs r_A < r_B");
    if (!(L > 0.0)) throw ValidationError("interior geometry needs eccentric spheres (L > 0)");
  }
}

Geometry Geometry::swapped() const {
  if (mode != Mode::Exterior) throw ValidationError("only exterior geometries can swap A and B");
  Geometry g = *this;
  g.r_A = r_B;
  g.r_B = r_A;
  return g;
}

char Condition::code() const {
  switch (kind) {
    case Kind::Dirichlet: return 'D';
    case Kind::Robin: return 'R';
    case Kind::PEC: return 'C';
    case Kind::Permeable: return 'P';
  }
  return '?';
}

bool operator==(const Condition& a, const Condition& b) {
  return a.kind == b.kind && (a.kind != Condition::Kind::Robin || a.alpha == b.alpha);
}

void BoundaryPair::validate() const {
  for (const Condition* c : {&cond_A, &cond_B}) {
    if (field == FieldType::Scalar && !c->is_scalar()) {
      throw ValidationError("scalar field takes Dirichlet or Robin conditions");
    }
    if (field == FieldType::EM && c->is_scalar()) {
      throw ValidationError("electromagnetic field takes PEC or permeable conditions");
    }
    if (c->kind == Condition::Kind::Robin && !std::isfinite(c->alpha)) {
      throw ValidationError("Robin alpha must be finite");
    }
  }
}

bool BoundaryPair::is_symmetric() const {
  if (field == FieldType::EM) return cond_A.kind == cond_B.kind;
  return (cond_A.kind == Condition::Kind::Dirichlet) == (cond_B.kind == Condition::Kind::Dirichlet);
}

std::string BoundaryPair::label() const { return std::string{cond_A.code(), cond_B.code()}; }

std::string to_string(Mode m) { return m == Mode::Interior ? "interior" : "exterior"; }
std::string to_string(FieldType f) { return f == FieldType::Scalar ? "scalar" : "em"; }

}  // namespace casimir
