#include "hhbv/chain_complex.hpp"

#include <algorithm>
#include <sstream>
#include <utility>

namespace hhbv {

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols, CoeffRingTag ring)
    : rows_(rows), cols_(cols), ring_(std::move(ring)), data_(rows * cols) {}

IntMatrix IntMatrix::identity(std::size_t n, CoeffRingTag ring) {
  IntMatrix m(n, n, std::move(ring));
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

IntMatrix IntMatrix::diagonal(const IntVector& entries, CoeffRingTag ring) {
  IntMatrix m(entries.size(), entries.size(), std::move(ring));
  for (std::size_t i = 0; i < entries.size(); ++i) m.set(i, i, entries[i]);
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<IntVector>& rows, CoeffRingTag ring) {
  const std::size_t c = rows.empty() ? 0 : rows.front().size();
  IntMatrix m(rows.size(), c, std::move(ring));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != c) throw DomainError("ragged matrix rows");
    for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
  }
  return m;
}

void IntMatrix::reduce(mpz_class& v) const {
  if (ring_.is_modular()) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), ring_.modulus().get_mpz_t());
}

void IntMatrix::set(std::size_t r, std::size_t c, const mpz_class& v) {
  auto& slot = data_[r * cols_ + c];
  slot = v;
  reduce(slot);
}

void IntMatrix::add_to(std::size_t r, std::size_t c, const mpz_class& v) {
  auto& slot = data_[r * cols_ + c];
  slot += v;
  reduce(slot);
}

bool IntMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const mpz_class& v) { return v == 0; });
}

IntMatrix IntMatrix::lifted() const {
  IntMatrix m = *this;
  m.ring_ = CoeffRingTag::integers();
  return m;
}

IntMatrix IntMatrix::with_ring(const CoeffRingTag& ring) const {
  IntMatrix m(rows_, cols_, ring);
  for (std::size_t i = 0; i < data_.size(); ++i) {
    m.data_[i] = data_[i];
    m.reduce(m.data_[i]);
  }
  return m;
}

IntMatrix IntMatrix::transpose() const {
  IntMatrix t(cols_, rows_, ring_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.data_[j * rows_ + i] = at(i, j);
  return t;
}

IntVector IntMatrix::column(std::size_t c) const {
  IntVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = at(i, c);
  return v;
}

IntVector IntMatrix::apply(const IntVector& v) const {
  if (v.size() != cols_) throw DomainError("matrix/vector size mismatch");
  IntVector out(rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    mpz_class s = 0;
    for (std::size_t j = 0; j < cols_; ++j)
      if (at(i, j) != 0 && v[j] != 0) s += at(i, j) * v[j];
    reduce(s);
    out[i] = s;
  }
  return out;
}

IntMatrix IntMatrix::column_block(std::size_t begin, std::size_t end) const {
  IntMatrix m(rows_, end - begin, ring_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = begin; j < end; ++j) m.data_[i * m.cols_ + (j - begin)] = at(i, j);
  return m;
}

IntMatrix IntMatrix::row_block(std::size_t begin, std::size_t end) const {
  IntMatrix m(end - begin, cols_, ring_);
  for (std::size_t i = begin; i < end; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m.data_[(i - begin) * cols_ + j] = at(i, j);
  return m;
}

IntMatrix IntMatrix::hconcat(const IntMatrix& a, const IntMatrix& b) {
  if (a.rows_ != b.rows_) throw DomainError("hconcat row mismatch");
  IntMatrix m(a.rows_, a.cols_ + b.cols_, a.ring_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) m.data_[i * m.cols_ + j] = a.at(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) m.data_[i * m.cols_ + a.cols_ + j] = b.at(i, j);
  }
  return m;
}

mpz_class IntMatrix::determinant() const {
  if (rows_ != cols_) throw DomainError("determinant of non-square matrix");
  const std::size_t n = rows_;
  if (n == 0) return 1;
  std::vector<mpz_class> a = data_;
  auto A = [&](std::size_t i, std::size_t j) -> mpz_class& { return a[i * n + j]; };
  mpz_class prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (A(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n && A(p, k) == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(A(k, j), A(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        A(i, j) = A(i, j) * A(k, k) - A(i, k) * A(k, j);
        mpz_divexact(A(i, j).get_mpz_t(), A(i, j).get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = A(k, k);
  }
  return sign * A(n - 1, n - 1);
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
  if (a.cols_ != b.rows_) throw DomainError("matrix product size mismatch");
  IntMatrix m(a.rows_, b.cols_, a.ring_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const mpz_class& x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (b.at(k, j) != 0) m.data_[i * m.cols_ + j] += x * b.at(k, j);
    }
  for (auto& v : m.data_) m.reduce(v);
  return m;
}

std::string IntMatrix::to_string() const {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) out << (j ? ", " : "") << at(i, j).get_str();
    out << "]";
  }
  out << "]";
  return out.str();
}

IntVector SmithForm::diagonal() const {
  IntVector out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d.at(i, i));
  return out;
}

namespace {

// Working state for SNF: A is reduced in place while U, V and inverses track the moves.
class SmithWorker {
 public:
  explicit SmithWorker(const IntMatrix& m)
      : r_(m.rows()), c_(m.cols()), a_(r_ * c_), u_(ident(r_)), ui_(ident(r_)), v_(ident(c_)), vi_(ident(c_)) {
    for (std::size_t i = 0; i < r_; ++i)
      for (std::size_t j = 0; j < c_; ++j) a_[i * c_ + j] = m.at(i, j);
  }

  SmithForm run() {
    std::size_t t = 0;
    for (; t < std::min(r_, c_); ++t) {
      if (!place_min(t, t, r_, c_)) break;
      for (;;) {
        bool clean = true;
        for (std::size_t i = t + 1; i < r_; ++i) {
          if (A(i, t) == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), A(i, t).get_mpz_t(), A(t, t).get_mpz_t());
          if (q != 0) row_add(i, t, -q);
          if (A(i, t) != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < c_; ++j) {
          if (A(t, j) == 0) continue;
          mpz_class q;
          mpz_tdiv_q(q.get_mpz_t(), A(t, j).get_mpz_t(), A(t, t).get_mpz_t());
          if (q != 0) col_add(j, t, -q);
          if (A(t, j) != 0) clean = false;
        }
        if (!clean) {
          pivot_from_cross(t);
          continue;
        }
        bool divisible = true;
        for (std::size_t i = t + 1; i < r_ && divisible; ++i)
          for (std::size_t j = t + 1; j < c_; ++j)
            if (A(i, j) != 0 && !mpz_divisible_p(A(i, j).get_mpz_t(), A(t, t).get_mpz_t())) {
              row_add(t, i, 1);
              divisible = false;
              break;
            }
        if (divisible) break;
      }
      if (A(t, t) < 0) negate_row(t);
    }
    SmithForm out;
    out.rank = t;
    out.d = pack(a_, r_, c_);
    out.u = pack(u_, r_, r_);
    out.u_inv = pack(ui_, r_, r_);
    out.v = pack(v_, c_, c_);
    out.v_inv = pack(vi_, c_, c_);
    return out;
  }

 private:
  static std::vector<mpz_class> ident(std::size_t n) {
    std::vector<mpz_class> m(n * n);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    return m;
  }
  static IntMatrix pack(const std::vector<mpz_class>& data, std::size_t r, std::size_t c) {
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, data[i * c + j]);
    return m;
  }

  mpz_class& A(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }

  // row_i += q * row_k
  void row_add(std::size_t i, std::size_t k, const mpz_class& q) {
    for (std::size_t j = 0; j < c_; ++j)
      if (A(k, j) != 0) A(i, j) += q * A(k, j);
    for (std::size_t j = 0; j < r_; ++j)
      if (u_[k * r_ + j] != 0) u_[i * r_ + j] += q * u_[k * r_ + j];
    for (std::size_t j = 0; j < r_; ++j)
      if (ui_[j * r_ + i] != 0) ui_[j * r_ + k] -= q * ui_[j * r_ + i];
  }
  // col_j += q * col_k
  void col_add(std::size_t j, std::size_t k, const mpz_class& q) {
    for (std::size_t i = 0; i < r_; ++i)
      if (A(i, k) != 0) A(i, j) += q * A(i, k);
    for (std::size_t i = 0; i < c_; ++i)
      if (v_[i * c_ + k] != 0) v_[i * c_ + j] += q * v_[i * c_ + k];
    for (std::size_t i = 0; i < c_; ++i)
      if (vi_[j * c_ + i] != 0) vi_[k * c_ + i] -= q * vi_[j * c_ + i];
  }
  void swap_rows(std::size_t i, std::size_t k) {
    if (i == k) return;
    for (std::size_t j = 0; j < c_; ++j) std::swap(A(i, j), A(k, j));
    for (std::size_t j = 0; j < r_; ++j) std::swap(u_[i * r_ + j], u_[k * r_ + j]);
    for (std::size_t j = 0; j < r_; ++j) std::swap(ui_[j * r_ + i], ui_[j * r_ + k]);
  }
  void swap_cols(std::size_t j, std::size_t k) {
    if (j == k) return;
    for (std::size_t i = 0; i < r_; ++i) std::swap(A(i, j), A(i, k));
    for (std::size_t i = 0; i < c_; ++i) std::swap(v_[i * c_ + j], v_[i * c_ + k]);
    for (std::size_t i = 0; i < c_; ++i) std::swap(vi_[j * c_ + i], vi_[k * c_ + i]);
  }
  void negate_row(std::size_t i) {
    for (std::size_t j = 0; j < c_; ++j) A(i, j) = -A(i, j);
    for (std::size_t j = 0; j < r_; ++j) u_[i * r_ + j] = -u_[i * r_ + j];
    for (std::size_t j = 0; j < r_; ++j) ui_[j * r_ + i] = -ui_[j * r_ + i];
  }

  bool place_min(std::size_t t0, std::size_t s0, std::size_t r1, std::size_t c1) {
    std::size_t bi = r1, bj = c1;
    for (std::size_t i = t0; i < r1; ++i)
      for (std::size_t j = s0; j < c1; ++j)
        if (A(i, j) != 0 && (bi == r1 || mpz_cmpabs(A(i, j).get_mpz_t(), A(bi, bj).get_mpz_t()) < 0)) {
          bi = i;
          bj = j;
        }
    if (bi == r1) return false;
    swap_rows(t0, bi);
    swap_cols(s0, bj);
    return true;
  }

  void pivot_from_cross(std::size_t t) {
    std::size_t bi = t, bj = t;
    for (std::size_t i = t + 1; i < r_; ++i)
      if (A(i, t) != 0 && mpz_cmpabs(A(i, t).get_mpz_t(), A(bi, bj).get_mpz_t()) < 0) {
        bi = i;
        bj = t;
      }
    for (std::size_t j = t + 1; j < c_; ++j)
      if (A(t, j) != 0 && mpz_cmpabs(A(t, j).get_mpz_t(), A(bi, bj).get_mpz_t()) < 0) {
        bi = t;
        bj = j;
      }
    swap_rows(t, bi);
    swap_cols(t, bj);
  }

  std::size_t r_, c_;
  std::vector<mpz_class> a_, u_, ui_, v_, vi_;
};

IntMatrix columns_to_matrix(const std::vector<IntVector>& cols, std::size_t rows) {
  IntMatrix m(rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j)
    for (std::size_t i = 0; i < rows; ++i) m.set(i, j, cols[j][i]);
  return m;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& m) {
  if (m.ring().kind() != RingKind::Integers) throw DomainError("Smith normal form needs an integer matrix");
  return SmithWorker(m).run();
}

IntMatrix integer_kernel(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m.lifted());
  return s.v.column_block(s.rank, m.cols());
}

std::optional<IntVector> solve_in_image(const IntMatrix& m, const IntVector& target) {
  if (target.size() != m.rows()) throw DomainError("target has wrong length");
  const CoeffRingTag& ring = m.ring();
  if (ring.kind() == RingKind::Rationals) throw DomainError("solve_in_image: use in_image over Q");
  IntMatrix lifted = m.lifted();
  if (ring.is_modular()) lifted = IntMatrix::hconcat(lifted, IntMatrix::diagonal(IntVector(m.rows(), ring.modulus())));
  const SmithForm s = smith_normal_form(lifted);
  const IntVector ub = s.u.apply(target);
  IntVector y(lifted.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < s.rank) {
      const mpz_class& d = s.d.at(i, i);
      if (!mpz_divisible_p(ub[i].get_mpz_t(), d.get_mpz_t())) return std::nullopt;
      y[i] = ub[i] / d;
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  IntVector x = s.v.apply(y);
  x.resize(m.cols());
  if (ring.is_modular())
    for (auto& v : x) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), ring.modulus().get_mpz_t());
  return x;
}

bool in_image(const IntMatrix& m, const IntVector& target) {
  if (m.ring().kind() == RingKind::Rationals) {
    const SmithForm s = smith_normal_form(m.lifted());
    const IntVector ub = s.u.apply(target);
    for (std::size_t i = s.rank; i < ub.size(); ++i)
      if (ub[i] != 0) return false;
    return true;
  }
  return solve_in_image(m, target).has_value();
}

FreeComplex::FreeComplex(CoeffRingTag ring, int lowest, std::vector<std::size_t> ranks, int step)
    : ring_(std::move(ring)), lowest_(lowest), step_(step), ranks_(std::move(ranks)) {
  if (step_ != 1 && step_ != -1) throw DomainError("complex step must be +1 or -1");
}

std::size_t FreeComplex::rank(int degree) const {
  if (degree < lowest_ || degree > highest()) return 0;
  return ranks_[static_cast<std::size_t>(degree - lowest_)];
}

void FreeComplex::set_differential(int degree, IntMatrix d) {
  if (d.rows() != rank(degree + step_) || d.cols() != rank(degree))
    throw DomainError("differential at degree " + std::to_string(degree) + " has wrong shape");
  d_[degree] = d.with_ring(ring_);
}

IntMatrix FreeComplex::differential(int degree) const {
  if (auto it = d_.find(degree); it != d_.end()) return it->second;
  return IntMatrix(rank(degree + step_), rank(degree), ring_);
}

void FreeComplex::validate() const {
  for (const auto& [k, d] : d_) {
    const IntMatrix next = differential(k + step_);
    if (!(next * d).is_zero()) throw DomainError("d∘d != 0 at degree " + std::to_string(k));
  }
}

std::string FreeComplex::serialize() const {
  std::ostringstream out;
  out << "complex ring=" << ring_.to_string() << " step=" << step_ << " lowest=" << lowest_ << "\n";
  out << "ranks";
  for (auto r : ranks_) out << ' ' << r;
  out << "\n";
  for (const auto& [k, d] : d_) {
    out << "d " << k << ' ' << d.rows() << ' ' << d.cols() << " :";
    for (std::size_t i = 0; i < d.rows(); ++i)
      for (std::size_t j = 0; j < d.cols(); ++j) out << ' ' << d.at(i, j).get_str();
    out << "\n";
  }
  return out.str();
}

FreeComplex FreeComplex::deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string word, ring_field, step_field, low_field;
  in >> word >> ring_field >> step_field >> low_field;
  auto value_of = [](const std::string& field, const char* key) {
    const std::string prefix = std::string(key) + "=";
    if (!field.starts_with(prefix)) throw ParseError("expected " + prefix);
    return field.substr(prefix.size());
  };
  if (word != "complex") throw ParseError("not a serialized complex");
  const CoeffRingTag ring = CoeffRingTag::parse(value_of(ring_field, "ring"));
  const int step = std::stoi(value_of(step_field, "step"));
  const int lowest = std::stoi(value_of(low_field, "lowest"));
  std::string line;
  std::getline(in, line);
  std::getline(in, line);
  std::istringstream ranks_line(line);
  ranks_line >> word;
  if (word != "ranks") throw ParseError("expected ranks line");
  std::vector<std::size_t> ranks;
  for (std::size_t r; ranks_line >> r;) ranks.push_back(r);
  FreeComplex c(ring, lowest, ranks, step);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream dl(line);
    int k;
    std::size_t rows, cols;
    std::string colon;
    dl >> word >> k >> rows >> cols >> colon;
    if (word != "d" || colon != ":") throw ParseError("bad differential line: " + line);
    IntMatrix m(rows, cols, ring);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) {
        std::string v;
        if (!(dl >> v)) throw ParseError("short differential line");
        m.set(i, j, mpz_class(v));
      }
    c.set_differential(k, std::move(m));
  }
  c.validate();
  return c;
}

std::string HomologySummary::to_string() const {
  std::ostringstream out;
  bool first = true;
  auto emit = [&](const std::string& s) {
    out << (first ? "" : " + ") << s;
    first = false;
  };
  std::map<mpz_class, std::size_t> counts;
  for (const auto& t : torsion) ++counts[t];
  if (free_rank) emit(free_rank == 1 ? "R" : "R^" + std::to_string(free_rank));
  for (const auto& [t, k] : counts) emit("Z/" + t.get_str() + (k > 1 ? "^" + std::to_string(k) : ""));
  if (first) out << "0";
  return out.str();
}

std::string HomologySummary::serialize() const {
  std::ostringstream out;
  out << "homology degree=" << degree << " free=" << free_rank << " torsion=";
  for (std::size_t i = 0; i < torsion.size(); ++i) out << (i ? "," : "") << torsion[i].get_str();
  out << "\n";
  for (const auto& r : representatives) {
    out << "rep";
    for (const auto& v : r) out << ' ' << v.get_str();
    out << "\n";
  }
  return out.str();
}

HomologySummary HomologySummary::deserialize(const std::string& text) {
  std::istringstream in(text);
  std::string word, deg, fr, tor;
  in >> word >> deg >> fr >> tor;
  if (word != "homology" || !deg.starts_with("degree=") || !fr.starts_with("free=") || !tor.starts_with("torsion="))
    throw ParseError("not a serialized homology summary");
  HomologySummary h;
  h.degree = std::stoi(deg.substr(7));
  h.free_rank = std::stoul(fr.substr(5));
  std::istringstream ts(tor.substr(8));
  for (std::string t; std::getline(ts, t, ',');)
    if (!t.empty()) h.torsion.emplace_back(t);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::istringstream rl(line);
    rl >> word;
    if (word != "rep") continue;
    IntVector v;
    for (std::string x; rl >> x;) v.emplace_back(x);
    h.representatives.push_back(std::move(v));
  }
  return h;
}

namespace {

HomologySummary homology_integral(const IntMatrix& out, const IntMatrix& in, std::size_t n, int degree, bool rank_only) {
  HomologySummary h;
  h.degree = degree;
  const SmithForm so = smith_normal_form(out);
  const std::size_t z = n - so.rank;
  const IntMatrix kernel = so.v.column_block(so.rank, n);
  const IntMatrix coords = (so.v_inv * in).row_block(so.rank, n);
  const SmithForm si = smith_normal_form(coords);
  const IntMatrix gens = kernel * si.u_inv;
  for (std::size_t i = 0; i < z; ++i) {
    if (i < si.rank) {
      const mpz_class& d = si.d.at(i, i);
      if (d == 1 || rank_only) continue;
      h.torsion.push_back(d);
      h.representatives.push_back(gens.column(i));
    }
  }
  for (std::size_t i = si.rank; i < z; ++i) {
    ++h.free_rank;
    h.representatives.push_back(gens.column(i));
  }
  return h;
}

HomologySummary homology_modular(const IntMatrix& out, const IntMatrix& in, std::size_t n, const mpz_class& m, int degree) {
  HomologySummary h;
  h.degree = degree;
  if (n == 0) return h;
  const IntMatrix bnd = IntMatrix::hconcat(in, IntMatrix::diagonal(IntVector(n, m)));
  // cycle lattice L = projection of ker [out | m I]; basis = U^-1 diag(d), coordinates = diag(1/d) U y
  IntMatrix basis = IntMatrix::identity(n);
  IntMatrix coords = bnd;
  if (out.rows() > 0) {
    const IntMatrix aug = IntMatrix::hconcat(out, IntMatrix::diagonal(IntVector(out.rows(), m)));
    const SmithForm sk = smith_normal_form(integer_kernel(aug).row_block(0, n));
    if (sk.rank != n) throw DomainError("cycle lattice mod m is not full rank");
    IntVector d = sk.diagonal();
    d.resize(n);
    basis = sk.u_inv * IntMatrix::diagonal(d);
    coords = sk.u * bnd;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < coords.cols(); ++j) {
        mpz_class v = coords.at(i, j);
        if (!mpz_divisible_p(v.get_mpz_t(), d[i].get_mpz_t())) throw DomainError("boundary not inside the cycle lattice");
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d[i].get_mpz_t());
        coords.set(i, j, v);
      }
  }
  const SmithForm sc = smith_normal_form(coords);
  const IntMatrix gens = basis * sc.u_inv;
  std::vector<IntVector> free_reps;
  for (std::size_t i = 0; i < n; ++i) {
    const mpz_class& d = sc.d.at(i, i);
    if (d == 1) continue;
    IntVector rep = gens.column(i);
    for (auto& v : rep) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (d == m) {
      ++h.free_rank;
      free_reps.push_back(std::move(rep));
    } else {
      h.torsion.push_back(d);
      h.representatives.push_back(std::move(rep));
    }
  }
  for (auto& r : free_reps) h.representatives.push_back(std::move(r));
  return h;
}

}  // namespace

HomologySummary homology_at(const FreeComplex& c, int degree) {
  const std::size_t n = c.rank(degree);
  const IntMatrix out = c.differential(degree).lifted();
  const IntMatrix in = c.differential(degree - c.step()).lifted();
  switch (c.ring().kind()) {
    case RingKind::Integers: return homology_integral(out, in, n, degree, false);
    case RingKind::Rationals: return homology_integral(out, in, n, degree, true);
    case RingKind::IntegersMod: return homology_modular(out, in, n, c.ring().modulus(), degree);
  }
  return {};
}

FreeComplex tensor_total_complex(const FreeComplex& a, const FreeComplex& b) {
  require_same_ring(a.ring(), b.ring());
  if (a.step() != b.step()) throw DomainError("cannot tensor a chain complex with a cochain complex");
  const int lo = a.lowest() + b.lowest();
  const int hi = a.highest() + b.highest();
  // summand offsets per total degree, first-factor degree descending
  auto blocks = [&](int total) {
    std::vector<std::pair<int, std::size_t>> out;  // (p, offset)
    std::size_t off = 0;
    for (int p = a.highest(); p >= a.lowest(); --p) {
      const int q = total - p;
      if (q < b.lowest() || q > b.highest()) continue;
      out.emplace_back(p, off);
      off += a.rank(p) * b.rank(q);
    }
    return std::make_pair(out, off);
  };
  std::vector<std::size_t> ranks;
  for (int k = lo; k <= hi; ++k) ranks.push_back(blocks(k).second);
  FreeComplex t(a.ring(), lo, ranks, a.step());
  const int s = a.step();
  for (int k = lo; k <= hi; ++k) {
    const int target = k + s;
    if (target < lo || target > hi) continue;
    const auto [src, nsrc] = blocks(k);
    const auto [dst, ndst] = blocks(target);
    IntMatrix d(ndst, nsrc, a.ring());
    auto offset_of = [&](int p) -> std::optional<std::size_t> {
      for (const auto& [pp, off] : dst)
        if (pp == p) return off;
      return std::nullopt;
    };
    for (const auto& [p, off] : src) {
      const int q = k - p;
      const std::size_t ra = a.rank(p), rb = b.rank(q);
      // dx ⊗ y
      if (auto to = offset_of(p + s); to && a.has_differential(p)) {
        const IntMatrix da = a.differential(p);
        const std::size_t rb_t = b.rank(q);
        for (std::size_t ia = 0; ia < ra; ++ia)
          for (std::size_t ja = 0; ja < da.rows(); ++ja) {
            if (da.at(ja, ia) == 0) continue;
            for (std::size_t ib = 0; ib < rb; ++ib) d.add_to(*to + ja * rb_t + ib, off + ia * rb + ib, da.at(ja, ia));
          }
      }
      // (-1)^p x ⊗ dy
      if (auto to = offset_of(p); to && b.has_differential(q)) {
        const IntMatrix db = b.differential(q);
        const std::size_t rb_t = b.rank(q + s);
        for (std::size_t ia = 0; ia < ra; ++ia)
          for (std::size_t ib = 0; ib < rb; ++ib)
            for (std::size_t jb = 0; jb < db.rows(); ++jb) {
              if (db.at(jb, ib) == 0) continue;
              mpz_class v = db.at(jb, ib);
              if (p % 2 != 0) v = -v;
              d.add_to(*to + ia * rb_t + jb, off + ia * rb + ib, v);
            }
      }
    }
    t.set_differential(k, std::move(d));
  }
  t.validate();
  return t;
}

IntMatrix cyclic_multiplication_matrix(long n, const IntVector& coeffs, const CoeffRingTag& ring) {
  IntMatrix m(static_cast<std::size_t>(n), static_cast<std::size_t>(n), ring);
  for (long j = 0; j < n; ++j)
    for (std::size_t i = 0; i < coeffs.size(); ++i)
      if (coeffs[i] != 0) m.add_to(static_cast<std::size_t>((static_cast<long>(i) + j) % n), static_cast<std::size_t>(j), coeffs[i]);
  return m;
}

namespace {

IntMatrix norm_element_matrix(long n, const CoeffRingTag& ring) {
  // n s^{n-1}
  IntVector coeffs(static_cast<std::size_t>(n));
  coeffs[static_cast<std::size_t>(n - 1)] = n;
  return cyclic_multiplication_matrix(n, coeffs, ring);
}

FreeComplex two_term(long n) {
  FreeComplex c(CoeffRingTag::integers(), 0, {static_cast<std::size_t>(n), static_cast<std::size_t>(n)}, -1);
  c.set_differential(1, norm_element_matrix(n, CoeffRingTag::integers()));
  return c;
}

}  // namespace

FreeComplex periodic_cochain_complex(long n, int top, const CoeffRingTag& ring) {
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 1), static_cast<std::size_t>(n));
  FreeComplex c(ring, 0, ranks, 1);
  for (int k = 0; k < top; ++k)
    if ((k + 1) % 2 == 0) c.set_differential(k, norm_element_matrix(n, ring));
  c.validate();
  return c;
}

HomologySummary tor_one(long n, long m) {
  if (n < 1 || m < 1) throw DomainError("tor_one needs positive orders");
  return homology_at(tensor_total_complex(two_term(n), two_term(m)), 1);
}

IntVector cokernel_invariants(const IntMatrix& m) {
  const SmithForm s = smith_normal_form(m.lifted());
  IntVector out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i < s.rank) {
      if (s.d.at(i, i) != 1) out.push_back(s.d.at(i, i));
    } else {
      out.push_back(0);
    }
  }
  return out;
}

IntVector invariant_factor_form(const IntVector& orders) {
  IntVector out = cokernel_invariants(IntMatrix::diagonal(orders));
  // zeros (free) last, torsion ascending by divisibility
  std::stable_partition(out.begin(), out.end(), [](const mpz_class& v) { return v != 0; });
  return out;
}

}  // namespace hhbv
