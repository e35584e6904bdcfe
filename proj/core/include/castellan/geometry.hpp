#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "castellan/integers.hpp"

namespace castellan::geometry {

/// The projective correction P is undefined on a 1-dimensional algebra.
class SingularDimension : public Error {
 public:
  explicit SingularDimension(const std::string& what) : Error(what) {}
};

/// The two-sided normalization of the J tensor divides by (l^2 - 4) l.
class SingularL : public Error {
 public:
  explicit SingularL(const std::string& what) : Error(what) {}
};

/// Dense matrix of exact rationals.
class RatMatrix {
 public:
  RatMatrix() = default;
  RatMatrix(std::size_t rows, std::size_t cols);
  static RatMatrix identity(std::size_t n);
  /// Matrix unit: 1 in row r, column c, zero elsewhere.
  static RatMatrix unit(std::size_t n, std::size_t r, std::size_t c);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rat& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const Rat& operator()(std::size_t r, std::size_t c) const {
    return a_[r * cols_ + c];
  }

  RatMatrix operator+(const RatMatrix& o) const;
  RatMatrix operator-(const RatMatrix& o) const;
  RatMatrix operator*(const RatMatrix& o) const;
  RatMatrix operator*(const Rat& s) const;
  bool operator==(const RatMatrix& o) const = default;

  Rat trace() const;
  RatMatrix transpose() const;
  bool is_zero() const;

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rat> a_;
};

inline RatMatrix commutator(const RatMatrix& a, const RatMatrix& b) {
  return a * b - b * a;
}

/// Entrywise pairing tr(a^T b) = sum a_ij b_ij.
Rat dot(const RatMatrix& a, const RatMatrix& b);

/// The projection of gl(m) onto its trace-free part: M - (tr M / m) I.
RatMatrix trace_free(const RatMatrix& m);

/// Basis of the trace-free m x m matrices (n = m^2 - 1 elements):
/// the diagonal differences E_i^i - E_{m-1}^{m-1} for i < m - 1 first,
/// then the off-diagonal units E_a^b (a != b) in row-major order.
struct MatrixBasis {
  int m = 0;
  std::vector<RatMatrix> elems;

  static MatrixBasis sl(int m);

  std::size_t dim() const { return elems.size(); }
  std::size_t diag_index(int i) const;             // i < m - 1
  std::size_t offdiag_index(int a, int b) const;   // a != b
  /// Coordinates of a trace-free matrix in this basis.
  std::vector<Rat> coords(const RatMatrix& matrix) const;
};

template <int Arity>
class Tensor {
 public:
  Tensor() = default;
  explicit Tensor(std::size_t n) : n_(n) {
    std::size_t size = 1;
    for (int i = 0; i < Arity; ++i) size *= n;
    a_.assign(size, Rat(0));
  }

  std::size_t dim() const { return n_; }

  template <typename... Ix>
  Rat& operator()(Ix... ix) {
    static_assert(sizeof...(Ix) == Arity);
    return a_[flatten(ix...)];
  }
  template <typename... Ix>
  const Rat& operator()(Ix... ix) const {
    static_assert(sizeof...(Ix) == Arity);
    return a_[flatten(ix...)];
  }

  bool is_zero() const {
    for (const Rat& v : a_) {
      if (v != 0) return false;
    }
    return true;
  }

  /// Flat index and value of the first nonzero component, if any.
  std::optional<std::pair<std::vector<std::size_t>, Rat>> first_nonzero() const {
    for (std::size_t i = 0; i < a_.size(); ++i) {
      if (a_[i] != 0) {
        std::vector<std::size_t> ix(Arity);
        std::size_t rest = i;
        for (int d = Arity - 1; d >= 0; --d) {
          ix[static_cast<std::size_t>(d)] = rest % n_;
          rest /= n_;
        }
        return std::make_pair(ix, a_[i]);
      }
    }
    return std::nullopt;
  }

  bool operator==(const Tensor& o) const = default;

 private:
  template <typename... Ix>
  std::size_t flatten(Ix... ix) const {
    std::size_t flat = 0;
    ((flat = flat * n_ + static_cast<std::size_t>(ix)), ...);
    return flat;
  }

  std::size_t n_ = 0;
  std::vector<Rat> a_;
};

using Tensor2 = Tensor<2>;
using Tensor3 = Tensor<3>;
using Tensor4 = Tensor<4>;

/// Left-invariant connection given by its coefficients on a Lie algebra
/// basis: gamma(a, b, c) is the e_c coordinate of nabla_{e_a} e_b, and
/// bracket holds the structure constants. blocks records the direct-sum
/// factor dimensions (abelian factors and sl(m) factors alike).
struct InvariantConnection {
  std::size_t dim = 0;
  std::vector<std::size_t> blocks;
  Tensor3 gamma;
  Tensor3 bracket;
};

/// The canonical left-invariant connection on the trace-free matrices:
/// nabla_Y Z = trace_free(Y Z). Torsion-free and projectively flat, but
/// not Ricci-flat.
InvariantConnection canonical_connection(int m);

/// Flat abelian factor of dimension d (gamma and brackets vanish).
InvariantConnection abelian_connection(std::size_t d);

/// Block-diagonal product of two connections on the direct-sum basis.
InvariantConnection product_connection(const InvariantConnection& a,
                                       const InvariantConnection& b);

struct TensorSet {
  std::size_t dim = 0;
  Tensor3 torsion;    // T(e_a, e_b) = nabla_a e_b - nabla_b e_a - [e_a, e_b]
  Tensor4 curvature;  // R(e_a, e_b) e_c = sum_d R(a,b,c,d) e_d
  Tensor2 ricci;      // Ric(X, Y) = trace of Z -> R(Z, X) Y
  Tensor2 p;          // P(X, Y) = (n Ric(X,Y) + Ric(Y,X)) / (n^2 - 1)
  Tensor4 weyl;       // W = R + (P(X,Y)-P(Y,X)) Z - (P(Y,Z) X - P(X,Z) Y)
};

/// All five tensors, exact. Throws SingularDimension when dim = 1.
TensorSet tensors(const InvariantConnection& conn);

/// P from a Ricci array alone (n = array dimension).
Tensor2 p_tensor(const Tensor2& ricci);

/// The (0,2) tensor of the normal-connection construction on an (n*m)-
/// dimensional space indexed by pairs (u, i) flattened as u*m + i:
///   J(e_ui)_vj = [ (2-l^2) Ric(ui, vj) - l Ric(vi, uj)
///                  - l Ric(uj, vi) - 2 Ric(vj, ui) ] / ((l^2 - 4) l)
/// Requires l = n + m >= 3; throws SingularL when l = 2.
Tensor2 j_tensor(const Tensor2& ricci, long l, long n, long m);

/// Graded pieces of the left-multiplication homomorphism f(X) = X (x) I_m
/// acting on gl(m) = <I> + sl(m):
///   X (c I + Y) = c X + trace_free(X Y) + (tr(X Y)/m) I.
/// The optional shift xi (a trace-free matrix, viewed as a degree +1
/// element through the pairing <xi, Y> = tr(xi^T Y)) deforms the top piece.
struct GradedHom {
  int m = 0;
  RatMatrix xi;  // zero when unshifted

  RatMatrix minus1(const RatMatrix& x) const;                     // = X
  RatMatrix zero(const RatMatrix& x, const RatMatrix& y) const;   // bar(XY)
  Rat one(const RatMatrix& x, const RatMatrix& y) const;          // tr(XY)/m
};

GradedHom graded_components(int m);

/// Full left-multiplication representation of X on gl(m) in the basis
/// {I, sl-basis}, as an (m^2) x (m^2) matrix. Exposed so the graded
/// bracket identities can be checked as honest matrix commutators.
RatMatrix left_mult_rep(int m, const RatMatrix& x);
/// Grade projections of such a representation matrix.
RatMatrix grade_part(const RatMatrix& rep, int m, int grade);
/// Embedding of a trace-free xi as a degree +1 block matrix.
RatMatrix embed_degree_one(int m, const RatMatrix& xi);

/// f1'(X)Y for the shifted homomorphism, computed through the block
/// commutators f1 + [xi, f0] + (1/2)[xi, [xi, f-1]].
Rat f1_shifted(const GradedHom& hom, const RatMatrix& x, const RatMatrix& y);
/// Closed form of the same value: tr(XY)/m + tr(xi^T X Y)
/// - tr(xi^T X) tr(xi^T Y).
Rat f1_shifted_closed(const GradedHom& hom, const RatMatrix& x,
                      const RatMatrix& y);

struct GeometryReport {
  int m = 0;
  std::size_t abelian_dim = 2;
  bool torsion_zero = false;
  bool weyl_zero = false;
  bool ricci_zero = true;
  bool product_weyl_zero = true;
  bool f_table_ok = false;
  std::optional<std::pair<std::vector<std::size_t>, Rat>> ricci_witness;
  std::optional<std::pair<std::vector<std::size_t>, Rat>> product_weyl_witness;
};

/// Runs the full battery for one m: tensors of the canonical connection,
/// the product with a flat abelian factor, and the shifted-homomorphism
/// table over `trials` deterministic pseudo-random shifts.
GeometryReport geometry_report(int m, std::size_t abelian_dim = 2,
                               int trials = 25, unsigned seed = 1);

std::string report_json(const GeometryReport& report);

}  // namespace castellan::geometry
