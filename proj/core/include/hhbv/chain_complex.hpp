#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hhbv/coeff.hpp"

namespace hhbv {

using IntVector = std::vector<mpz_class>;

// Dense exact matrix over Z or Z/m (entries reduced into [0, m)).
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols, CoeffRingTag ring = {});
  static IntMatrix identity(std::size_t n, CoeffRingTag ring = {});
  static IntMatrix diagonal(const IntVector& entries, CoeffRingTag ring = {});
  static IntMatrix from_rows(const std::vector<IntVector>& rows, CoeffRingTag ring = {});

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const CoeffRingTag& ring() const noexcept { return ring_; }

  const mpz_class& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, const mpz_class& v);
  void add_to(std::size_t r, std::size_t c, const mpz_class& v);

  bool is_zero() const;
  IntMatrix lifted() const;  // same entries viewed over Z
  IntMatrix with_ring(const CoeffRingTag& ring) const;
  IntMatrix transpose() const;
  IntVector column(std::size_t c) const;
  IntVector apply(const IntVector& v) const;
  // columns [begin, end)
  IntMatrix column_block(std::size_t begin, std::size_t end) const;
  IntMatrix row_block(std::size_t begin, std::size_t end) const;
  static IntMatrix hconcat(const IntMatrix& a, const IntMatrix& b);
  mpz_class determinant() const;  // Z only, Bareiss

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  std::string to_string() const;

 private:
  void reduce(mpz_class& v) const;
  std::size_t rows_ = 0, cols_ = 0;
  CoeffRingTag ring_;
  std::vector<mpz_class> data_;
};

struct SmithForm {
  IntMatrix u, d, v;          // u * m * v = d
  IntMatrix u_inv, v_inv;
  std::size_t rank = 0;       // number of nonzero diagonal entries
  IntVector diagonal() const;
};

SmithForm smith_normal_form(const IntMatrix& m);

// Columns spanning {x : m x = 0} over Z.
IntMatrix integer_kernel(const IntMatrix& m);

// Some x with m x = target over m.ring() (Z, Z/m, or Q by rank), nullopt if none.
std::optional<IntVector> solve_in_image(const IntMatrix& m, const IntVector& target);
bool in_image(const IntMatrix& m, const IntVector& target);

// Differential of degree `step` (-1 for chain, +1 for cochain complexes).
class FreeComplex {
 public:
  FreeComplex() = default;
  FreeComplex(CoeffRingTag ring, int lowest, std::vector<std::size_t> ranks, int step);

  // matrix of d leaving `degree`: rank(degree + step) x rank(degree)
  void set_differential(int degree, IntMatrix d);
  // throws DomainError if some d∘d != 0
  void validate() const;

  const CoeffRingTag& ring() const noexcept { return ring_; }
  int lowest() const noexcept { return lowest_; }
  int highest() const noexcept { return lowest_ + static_cast<int>(ranks_.size()) - 1; }
  int step() const noexcept { return step_; }
  std::size_t rank(int degree) const;
  // zero matrix when absent
  IntMatrix differential(int degree) const;
  bool has_differential(int degree) const { return d_.contains(degree); }

  std::string serialize() const;
  static FreeComplex deserialize(const std::string& text);

 private:
  CoeffRingTag ring_;
  int lowest_ = 0;
  int step_ = -1;
  std::vector<std::size_t> ranks_;
  std::map<int, IntMatrix> d_;
};

struct HomologySummary {
  int degree = 0;
  std::size_t free_rank = 0;             // over Z/m: summands isomorphic to Z/m
  IntVector torsion;                      // invariant factors >= 2, dividing each other
  std::vector<IntVector> representatives; // torsion generators first, then free ones

  bool is_zero() const { return free_rank == 0 && torsion.empty(); }
  std::string to_string() const;
  std::string serialize() const;
  static HomologySummary deserialize(const std::string& text);
  friend bool operator==(const HomologySummary& a, const HomologySummary& b) {
    return a.degree == b.degree && a.free_rank == b.free_rank && a.torsion == b.torsion;
  }
};

HomologySummary homology_at(const FreeComplex& c, int degree);

FreeComplex tensor_total_complex(const FreeComplex& a, const FreeComplex& b);

// Tor_1^Z(A/(n x^{n-1}), B/(m t^{m-1})) for A = Z[Z/n], B = Z[Z/m].
HomologySummary tor_one(long n, long m);

// Invariant factors of Z^k / (column span of m); zeros mean free summands.
IntVector cokernel_invariants(const IntMatrix& m);

// Normalises a list of cyclic orders (0 = Z) into invariant-factor form.
IntVector invariant_factor_form(const IntVector& orders);

// Matrix of multiplication by Σ coeffs[i] s^i on Z[Z/n] in the basis 1, s, ..., s^{n-1}.
IntMatrix cyclic_multiplication_matrix(long n, const IntVector& coeffs, const CoeffRingTag& ring = {});

// 0 -> A --0--> A --(n s^{n-1})--> A --0--> ... for A = R[Z/n], degrees 0..top.
FreeComplex periodic_cochain_complex(long n, int top, const CoeffRingTag& ring = {});

}  // namespace hhbv
