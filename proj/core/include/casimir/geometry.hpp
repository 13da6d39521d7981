#pragma once

#include <string>

namespace casimir {

enum class Mode { Interior, Exterior };

/// Two spheres A (radius r_A) and B (radius r_B) with centers a distance L
/// apart. Interior: A sits inside B, gap d = r_B - r_A - L. Exterior: the
/// spheres are outside each other, gap d = L - r_A - r_B.
struct Geometry {
  double r_A = 1.0;
  double r_B = 2.0;
  double L = 0.9;
  Mode mode = Mode::Interior;

  /// Builds the geometry from the gap instead of the center distance.
  static Geometry from_gap(double r_A, double r_B, double d, Mode mode);

  double d() const { return mode == Mode::Interior ? r_B - r_A - L : L - (r_A + r_B); }

  // Dimensionless combinations used by the small-gap expansions.
  double epsilon() const { return d() / (r_B - r_A); }
  double a() const { return r_A / (r_B - r_A); }
  double b() const { return r_B / (r_B - r_A); }

  /// Throws ValidationError unless radii are positive, d > 0 and, for the
  /// interior case, r_A < r_B and L > 0. The exterior case accepts either
  /// ordering of the radii so that A and B can be exchanged.
  void validate() const;

  /// Same configuration with the roles of A and B exchanged (exterior only).
  Geometry swapped() const;

  /// Same radii and mode, different gap.
  Geometry with_gap(double d) const { return from_gap(r_A, r_B, d, mode); }
};

enum class FieldType { Scalar, EM };

/// Boundary condition on one sphere. Robin means d_n phi + (alpha / r) phi = 0
/// with the dimensionless alpha; Neumann is Robin with alpha = 0.
struct Condition {
  enum class Kind { Dirichlet, Robin, PEC, Permeable };
  Kind kind = Kind::Dirichlet;
  double alpha = 0.0;

  static Condition dirichlet() { return {Kind::Dirichlet, 0.0}; }
  static Condition robin(double alpha) { return {Kind::Robin, alpha}; }
  static Condition neumann() { return {Kind::Robin, 0.0}; }
  static Condition pec() { return {Kind::PEC, 0.0}; }
  static Condition permeable() { return {Kind::Permeable, 0.0}; }

  /// Robin parameter in the shifted form u = alpha - 1/2.
  double u() const { return alpha - 0.5; }

  bool is_scalar() const { return kind == Kind::Dirichlet || kind == Kind::Robin; }

  /// One-letter code: D, R, C (PEC) or P (permeable).
  char code() const;
};

bool operator==(const Condition& a, const Condition& b);

struct BoundaryPair {
  FieldType field = FieldType::Scalar;
  Condition cond_A;
  Condition cond_B;

  static BoundaryPair scalar(Condition a, Condition b) { return {FieldType::Scalar, a, b}; }
  static BoundaryPair em(Condition a, Condition b) { return {FieldType::EM, a, b}; }

  /// Scalar pairs take Dirichlet/Robin only, EM pairs PEC/permeable only;
  /// Robin alpha must be finite.
  void validate() const;

  /// Exchanges the conditions of A and B.
  BoundaryPair swapped() const { return {field, cond_B, cond_A}; }

  /// True when the leading small-gap interaction is attractive, i.e. both
  /// spheres carry conditions of the same family (DD, RR, CC, PP).
  bool is_symmetric() const;

  /// Label such as "DD", "RD", "CP".
  std::string label() const;
};

std::string to_string(Mode m);
std::string to_string(FieldType f);

}  // namespace casimir
