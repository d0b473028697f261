#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hhbv/bv_engine.hpp"

namespace hhbv {

enum class GeneratorKind {
  Unit,       // invertible, degree 0 (Laurent variable)
  Cyclic,     // g^order = 1
  Nilpotent,  // g^order = 0
  Odd,        // g^2 rewritten by the presentation's square rule (0 when absent)
  Polynomial,
};

// How a generator is represented on the tensor small resolution: Σ coefficient · (multidegree ↦ group monomial).
struct EncodingTerm {
  MultiDegree degree;
  std::vector<std::int64_t> group_exponents;
  mpq_class coefficient = 1;
};

struct Generator {
  std::string name;
  int degree = 0;
  GeneratorKind kind = GeneratorKind::Polynomial;
  std::int64_t order = 0;  // Cyclic, Nilpotent
  // degree-0 generators that are a group coordinate: g^e ↦ e on that coordinate
  std::optional<std::size_t> group_coordinate;
  std::vector<EncodingTerm> encoding;
};

using Exponents = std::vector<std::int64_t>;
using Polynomial = std::map<Exponents, mpq_class>;

struct MonomialClass {
  Exponents exponents;
  mpq_class coefficient = 1;
};

// Coefficients of monomials containing any of `generators` live in Z/modulus.
struct TorsionRule {
  std::vector<std::size_t> generators;
  mpz_class modulus;
};

class GradedPresentation {
 public:
  using DeltaFn = std::function<Polynomial(const GradedPresentation&, const Exponents&)>;
  using BracketFn = std::function<std::optional<Polynomial>(const GradedPresentation&, const Exponents&, const Exponents&)>;

  std::string family;
  CoeffRingTag ring;
  std::optional<GroupDescriptor> group;  // the group whose HH^* this presents, if any
  std::vector<Generator> generators;
  std::vector<std::string> relations;
  std::vector<std::string> hypotheses;  // hypotheses checked when building it
  std::map<std::size_t, Polynomial> square_rules;
  std::vector<TorsionRule> torsion_rules;
  DeltaFn delta_fn;      // on normal monomials
  BracketFn bracket_fn;  // closed-form table, when the source gives one

  std::size_t size() const noexcept { return generators.size(); }
  std::size_t index_of(std::string_view name) const;
  int degree(const Exponents& e) const;
  // degree of a homogeneous polynomial; throws on mixed degrees, 0 for the zero polynomial
  int degree(const Polynomial& p) const;

  Polynomial generator(std::string_view name) const;
  Polynomial monomial(const Exponents& e, const mpq_class& c = 1) const;
  Polynomial scalar(const mpq_class& c) const;

  Polynomial normalize(const Polynomial& p) const;
  MonomialClass normalize(const MonomialClass& m) const;
  Polynomial multiply(const Polynomial& a, const Polynomial& b) const;
  Polynomial add(const Polynomial& a, const Polynomial& b, const mpq_class& scale = 1) const;
  Polynomial power(const Polynomial& a, std::int64_t e) const;

  Polynomial delta(const Polynomial& p) const;
  // {a,b} = -(-1)^{|a|}(Δ(ab) - Δ(a)b - (-1)^{|a|} aΔ(b))
  Polynomial bracket_from_delta(const Polynomial& a, const Polynomial& b) const;
  // closed-form table on monomial pairs; nullopt when not covered
  std::optional<Polynomial> bracket_table(const Polynomial& a, const Polynomial& b) const;

  // Normal monomials of exactly `degree`; Unit exponents range over [-unit_range, unit_range].
  std::vector<Exponents> normal_monomials(int degree, std::int64_t unit_range = 2) const;

  // "3*x^2*y", "x1^-1 y1", "-z*x + 2*y"
  Polynomial parse(std::string_view text) const;
  std::string to_string(const Polynomial& p) const;
  std::string monomial_to_string(const Exponents& e) const;

 private:
  void normalize_into(Exponents e, mpq_class c, Polynomial& out, int depth) const;
  mpz_class coefficient_modulus(const Exponents& e) const;  // 0 = no reduction, 1 = zero
};

GradedPresentation present_cyclic(const CoeffRingTag& ring, std::int64_t n);
// R[Z] with Δ_a for a = u t^k: Δ(y x^i) = (i + k) x^{i-1}
GradedPresentation present_laurent(const CoeffRingTag& ring, std::int64_t k = -1);
GradedPresentation present_free_abelian(int rank, const CoeffRingTag& ring = {});
GradedPresentation present_tensor_Z(std::int64_t n, std::int64_t m);
GradedPresentation present_fg_abelian(const GroupDescriptor& group, const CoeffRingTag& ring);

// Generators renamed name → name<j+1>; Δ = Σ_j (-1)^{|earlier factors|} Δ^{(j)}.
GradedPresentation tensor_presentations(const std::vector<GradedPresentation>& factors);

// The representative of a presentation class on the engine's tensor small resolution.
TensorCochain encode_class(const TensorBvModel& model, const GradedPresentation& p, const Polynomial& value);

struct SevenTermResidual {
  bool holds = false;
  Polynomial residual;
};
SevenTermResidual seven_term_closed_form(const GradedPresentation& p, const Polynomial& a, const Polynomial& b,
                                         const Polynomial& c);

struct IsoReport {
  bool holds = true;
  std::size_t checked = 0;
  std::vector<std::string> failures;
  std::vector<std::string> notes;
};

// F_p[x]/(x^p) with the transferred Frobenius form, against F_p[Z/p] along x ↦ x-1, v ↦ y, t ↦ z.
struct TruncatedPolyIso {
  GradedPresentation source, target;
  std::vector<Polynomial> images;  // φ of each source generator
  IsoReport report;
};
GradedPresentation present_truncated_poly(std::int64_t p);
TruncatedPolyIso truncated_poly_iso(std::int64_t p, int degree_bound = 6);

// H_*(LS^1) ≅ HH^*(R[Z]) with Δ_a for a = t^{-1}, along x ↦ x, z ↦ yx; checked against the
// closed form and against the engine's transferred operator.
struct LoopSpaceIso {
  GradedPresentation source, target;
  std::vector<Polynomial> images;
  IsoReport report;
};
GradedPresentation present_loop_space(const CoeffRingTag& ring = {});
LoopSpaceIso loop_space_iso(const CoeffRingTag& ring = {});

// Künneth display for Z[Z/n] ⊗ Z[Z/m], m | n: (free rank, torsion orders) of HH^degree.
struct ModuleShape {
  std::size_t free_rank = 0;
  std::vector<mpz_class> torsion;  // sorted ascending, one entry per cyclic summand
  friend bool operator==(const ModuleShape&, const ModuleShape&) = default;
  std::string to_string() const;
};
ModuleShape kunneth_shape(std::int64_t n, std::int64_t m, int degree);
// the same module read off the presentation's normal monomials and their coefficient moduli
ModuleShape presentation_shape(const GradedPresentation& p, int degree);
ModuleShape shape_of(const HomologySummary& h);

// Structured view used by the CLI.
struct PresentationDocument {
  std::string family, ring, group;
  std::vector<std::pair<std::string, int>> generators;
  std::vector<std::string> relations, hypotheses;
  std::vector<std::pair<std::string, std::string>> delta_table;
  std::vector<std::pair<std::pair<std::string, std::string>, std::string>> bracket_table;
};
PresentationDocument document(const GradedPresentation& p, int degree_bound);

}  // namespace hhbv
