#include "castellan/geometry.hpp"

#include <json.hpp>

#include <array>
#include <random>
#include <utility>

namespace castellan::geometry {

RatMatrix::RatMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

RatMatrix RatMatrix::identity(std::size_t n) {
  RatMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RatMatrix RatMatrix::unit(std::size_t n, std::size_t r, std::size_t c) {
  RatMatrix m(n, n);
  m(r, c) = 1;
  return m;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
  RatMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] + o.a_[i];
  return out;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
  RatMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] - o.a_[i];
  return out;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
  RatMatrix out(rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Rat& v = (*this)(r, k);
      if (v == 0) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) {
        out(r, c) += v * o(k, c);
      }
    }
  }
  return out;
}

RatMatrix RatMatrix::operator*(const Rat& s) const {
  RatMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = a_[i] * s;
  return out;
}

Rat RatMatrix::trace() const {
  Rat t(0);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

RatMatrix RatMatrix::transpose() const {
  RatMatrix out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

bool RatMatrix::is_zero() const {
  for (const Rat& v : a_) {
    if (v != 0) return false;
  }
  return true;
}

Rat dot(const RatMatrix& a, const RatMatrix& b) {
  Rat t(0);
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) t += a(r, c) * b(r, c);
  }
  return t;
}

RatMatrix trace_free(const RatMatrix& m) {
  const std::size_t n = m.rows();
  const Rat mean = m.trace() / Rat(static_cast<long>(n));
  RatMatrix out = m;
  for (std::size_t i = 0; i < n; ++i) out(i, i) -= mean;
  return out;
}

MatrixBasis MatrixBasis::sl(int m) {
  MatrixBasis basis;
  basis.m = m;
  const auto mm = static_cast<std::size_t>(m);
  for (std::size_t i = 0; i + 1 < mm; ++i) {
    basis.elems.push_back(RatMatrix::unit(mm, i, i) -
                          RatMatrix::unit(mm, mm - 1, mm - 1));
  }
  for (std::size_t a = 0; a < mm; ++a) {
    for (std::size_t b = 0; b < mm; ++b) {
      if (a != b) basis.elems.push_back(RatMatrix::unit(mm, a, b));
    }
  }
  return basis;
}

std::size_t MatrixBasis::diag_index(int i) const {
  return static_cast<std::size_t>(i);
}

std::size_t MatrixBasis::offdiag_index(int a, int b) const {
  const auto au = static_cast<std::size_t>(a);
  const auto bu = static_cast<std::size_t>(b);
  return static_cast<std::size_t>(m - 1) + au * static_cast<std::size_t>(m - 1) +
         bu - (bu > au ? 1 : 0);
}

std::vector<Rat> MatrixBasis::coords(const RatMatrix& matrix) const {
  std::vector<Rat> c(dim(), Rat(0));
  const auto mm = static_cast<std::size_t>(m);
  for (std::size_t i = 0; i + 1 < mm; ++i) c[i] = matrix(i, i);
  for (std::size_t a = 0; a < mm; ++a) {
    for (std::size_t b = 0; b < mm; ++b) {
      if (a != b) {
        c[offdiag_index(static_cast<int>(a), static_cast<int>(b))] =
            matrix(a, b);
      }
    }
  }
  return c;
}

InvariantConnection canonical_connection(int m) {
  if (m < 2) throw std::invalid_argument("canonical connection needs m >= 2");
  const MatrixBasis basis = MatrixBasis::sl(m);
  const std::size_t n = basis.dim();
  InvariantConnection conn{n, {n}, Tensor3(n), Tensor3(n)};
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const RatMatrix product = basis.elems[a] * basis.elems[b];
      const std::vector<Rat> nabla = basis.coords(trace_free(product));
      const std::vector<Rat> lie =
          basis.coords(product - basis.elems[b] * basis.elems[a]);
      for (std::size_t c = 0; c < n; ++c) {
        conn.gamma(a, b, c) = nabla[c];
        conn.bracket(a, b, c) = lie[c];
      }
    }
  }
  return conn;
}

InvariantConnection abelian_connection(std::size_t d) {
  if (d < 1) throw std::invalid_argument("abelian factor needs d >= 1");
  return InvariantConnection{d, {d}, Tensor3(d), Tensor3(d)};
}

InvariantConnection product_connection(const InvariantConnection& a,
                                       const InvariantConnection& b) {
  const std::size_t n = a.dim + b.dim;
  InvariantConnection conn{n, {}, Tensor3(n), Tensor3(n)};
  conn.blocks = a.blocks;
  conn.blocks.insert(conn.blocks.end(), b.blocks.begin(), b.blocks.end());
  for (std::size_t x = 0; x < a.dim; ++x) {
    for (std::size_t y = 0; y < a.dim; ++y) {
      for (std::size_t z = 0; z < a.dim; ++z) {
        conn.gamma(x, y, z) = a.gamma(x, y, z);
        conn.bracket(x, y, z) = a.bracket(x, y, z);
      }
    }
  }
  const std::size_t off = a.dim;
  for (std::size_t x = 0; x < b.dim; ++x) {
    for (std::size_t y = 0; y < b.dim; ++y) {
      for (std::size_t z = 0; z < b.dim; ++z) {
        conn.gamma(off + x, off + y, off + z) = b.gamma(x, y, z);
        conn.bracket(off + x, off + y, off + z) = b.bracket(x, y, z);
      }
    }
  }
  return conn;
}

Tensor2 p_tensor(const Tensor2& ricci) {
  const std::size_t n = ricci.dim();
  if (n == 1) {
    throw SingularDimension("P is undefined on a 1-dimensional algebra");
  }
  const Rat denom(static_cast<long>(n) * static_cast<long>(n) - 1);
  const Rat nn(static_cast<long>(n));
  Tensor2 p(n);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      p(x, y) = (nn * ricci(x, y) + ricci(y, x)) / denom;
    }
  }
  return p;
}

TensorSet tensors(const InvariantConnection& conn) {
  const std::size_t n = conn.dim;
  if (n == 1) {
    throw SingularDimension("tensor set undefined on a 1-dimensional algebra");
  }
  TensorSet ts{n, Tensor3(n), Tensor4(n), Tensor2(n), Tensor2(n), Tensor4(n)};

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        ts.torsion(a, b, c) =
            conn.gamma(a, b, c) - conn.gamma(b, a, c) - conn.bracket(a, b, c);
      }
    }
  }

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t e = 0; e < n; ++e) {
          const Rat& down = conn.gamma(b, c, e);
          if (down != 0) {
            for (std::size_t d = 0; d < n; ++d) {
              const Rat& up = conn.gamma(a, e, d);
              if (up != 0) ts.curvature(a, b, c, d) += down * up;
            }
          }
          const Rat& swapped = conn.gamma(a, c, e);
          if (swapped != 0) {
            for (std::size_t d = 0; d < n; ++d) {
              const Rat& up = conn.gamma(b, e, d);
              if (up != 0) ts.curvature(a, b, c, d) -= swapped * up;
            }
          }
          const Rat& lie = conn.bracket(a, b, e);
          if (lie != 0) {
            for (std::size_t d = 0; d < n; ++d) {
              const Rat& down2 = conn.gamma(e, c, d);
              if (down2 != 0) ts.curvature(a, b, c, d) -= lie * down2;
            }
          }
        }
      }
    }
  }

  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      Rat sum(0);
      for (std::size_t z = 0; z < n; ++z) sum += ts.curvature(z, x, y, z);
      ts.ricci(x, y) = sum;
    }
  }

  ts.p = p_tensor(ts.ricci);

  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      const Rat skew = ts.p(a, b) - ts.p(b, a);
      for (std::size_t c = 0; c < n; ++c) {
        for (std::size_t d = 0; d < n; ++d) {
          Rat w = ts.curvature(a, b, c, d);
          if (c == d) w += skew;
          if (a == d) w -= ts.p(b, c);
          if (b == d) w += ts.p(a, c);
          ts.weyl(a, b, c, d) = std::move(w);
        }
      }
    }
  }
  return ts;
}

Tensor2 j_tensor(const Tensor2& ricci, long l, long n, long m) {
  if (l == 2) throw SingularL("J is undefined at l = 2");
  if (l != n + m || l < 3 || n < 1 || m < 1) {
    throw std::invalid_argument("j_tensor needs l = n + m >= 3");
  }
  const auto dim = static_cast<std::size_t>(n * m);
  if (ricci.dim() != dim) {
    throw std::invalid_argument("ricci array must be (n*m) x (n*m)");
  }
  const auto idx = [m](long u, long i) {
    return static_cast<std::size_t>(u * m + i);
  };
  const Rat denom(Rat(l * l - 4) * Rat(l));
  Tensor2 j(dim);
  for (long u = 0; u < n; ++u) {
    for (long i = 0; i < m; ++i) {
      for (long v = 0; v < n; ++v) {
        for (long k = 0; k < m; ++k) {
          Rat numer = Rat(2 - l * l) * ricci(idx(u, i), idx(v, k)) -
                      Rat(l) * ricci(idx(v, i), idx(u, k)) -
                      Rat(l) * ricci(idx(u, k), idx(v, i)) -
                      Rat(2) * ricci(idx(v, k), idx(u, i));
          j(idx(u, i), idx(v, k)) = numer / denom;
        }
      }
    }
  }
  return j;
}

RatMatrix GradedHom::minus1(const RatMatrix& x) const { return x; }

RatMatrix GradedHom::zero(const RatMatrix& x, const RatMatrix& y) const {
  return trace_free(x * y);
}

Rat GradedHom::one(const RatMatrix& x, const RatMatrix& y) const {
  return (x * y).trace() / Rat(m);
}

GradedHom graded_components(int m) {
  if (m < 2) throw std::invalid_argument("graded components need m >= 2");
  GradedHom hom;
  hom.m = m;
  hom.xi = RatMatrix(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
  return hom;
}

RatMatrix left_mult_rep(int m, const RatMatrix& x) {
  const MatrixBasis basis = MatrixBasis::sl(m);
  const auto mm = static_cast<std::size_t>(m);
  const std::size_t dim = mm * mm;
  RatMatrix rep(dim, dim);
  // Basis of gl(m): the identity, then the trace-free basis.
  std::vector<RatMatrix> glm{RatMatrix::identity(mm)};
  glm.insert(glm.end(), basis.elems.begin(), basis.elems.end());
  for (std::size_t k = 0; k < dim; ++k) {
    const RatMatrix image = x * glm[k];
    rep(0, k) = image.trace() / Rat(m);
    const std::vector<Rat> sl_coords = basis.coords(trace_free(image));
    for (std::size_t r = 0; r + 1 < dim; ++r) rep(r + 1, k) = sl_coords[r];
  }
  return rep;
}

RatMatrix grade_part(const RatMatrix& rep, int m, int grade) {
  const auto dim = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  RatMatrix out(dim, dim);
  for (std::size_t r = 0; r < dim; ++r) {
    for (std::size_t c = 0; c < dim; ++c) {
      const bool keep = (grade == -1 && r >= 1 && c == 0) ||
                        (grade == 0 && ((r == 0 && c == 0) || (r >= 1 && c >= 1))) ||
                        (grade == 1 && r == 0 && c >= 1);
      if (keep) out(r, c) = rep(r, c);
    }
  }
  return out;
}

RatMatrix embed_degree_one(int m, const RatMatrix& xi) {
  const MatrixBasis basis = MatrixBasis::sl(m);
  const auto dim = static_cast<std::size_t>(m) * static_cast<std::size_t>(m);
  RatMatrix out(dim, dim);
  for (std::size_t k = 0; k + 1 < dim; ++k) {
    out(0, k + 1) = dot(xi, basis.elems[k]);
  }
  return out;
}

Rat f1_shifted(const GradedHom& hom, const RatMatrix& x, const RatMatrix& y) {
  const int m = hom.m;
  const RatMatrix rep = left_mult_rep(m, x);
  const RatMatrix xi = embed_degree_one(m, hom.xi);
  const RatMatrix shifted =
      grade_part(rep, m, 1) + commutator(xi, grade_part(rep, m, 0)) +
      commutator(xi, commutator(xi, grade_part(rep, m, -1))) * Rat(1, 2);
  const std::vector<Rat> y_coords = MatrixBasis::sl(m).coords(y);
  Rat value(0);
  for (std::size_t k = 0; k < y_coords.size(); ++k) {
    value += shifted(0, k + 1) * y_coords[k];
  }
  return value;
}

Rat f1_shifted_closed(const GradedHom& hom, const RatMatrix& x,
                      const RatMatrix& y) {
  const RatMatrix xy = x * y;
  return xy.trace() / Rat(hom.m) + dot(hom.xi, xy) -
         dot(hom.xi, x) * dot(hom.xi, y);
}

namespace {

Rat random_rational(std::mt19937& rng) {
  std::uniform_int_distribution<int> numer(-6, 6);
  std::uniform_int_distribution<int> denom(1, 4);
  Rat r(numer(rng), denom(rng));
  r.canonicalize();
  return r;
}

RatMatrix random_trace_free(int m, std::mt19937& rng) {
  const auto mm = static_cast<std::size_t>(m);
  RatMatrix out(mm, mm);
  for (std::size_t r = 0; r < mm; ++r) {
    for (std::size_t c = 0; c < mm; ++c) out(r, c) = random_rational(rng);
  }
  return trace_free(out);
}

/// The four closed forms of the shifted top piece on the distinguished
/// basis pairs, written with xi = (a^i_j): for i < m,
///  (1) X = E_i^i - E_m^m, Y = E_i^m:  a^i_m (1 - (a^i_i - a^m_m))
///  (2) X = E_i^i - E_m^m, Y = E_m^i: -a^m_i (1 + (a^i_i - a^m_m))
///  (3) X = E_i^m, Y = E_m^i:  1/m + a^i_i - a^i_m a^m_i
///  (4) X = E_m^i, Y = E_i^m:  1/m + a^m_m - a^m_i a^i_m
bool check_f1_table(int m, const RatMatrix& xi) {
  GradedHom hom = graded_components(m);
  hom.xi = xi;
  const auto mm = static_cast<std::size_t>(m);
  const std::size_t last = mm - 1;
  bool any_nonzero = false;
  for (std::size_t i = 0; i + 1 < mm; ++i) {
    const RatMatrix diag =
        RatMatrix::unit(mm, i, i) - RatMatrix::unit(mm, last, last);
    const RatMatrix up = RatMatrix::unit(mm, i, last);
    const RatMatrix down = RatMatrix::unit(mm, last, i);
    const Rat shift = xi(i, i) - xi(last, last);

    const std::array<std::pair<const RatMatrix*, const RatMatrix*>, 4> args = {
        {{&diag, &up}, {&diag, &down}, {&up, &down}, {&down, &up}}};
    const std::array<Rat, 4> expected = {
        xi(i, last) * (Rat(1) - shift),
        Rat(-1) * xi(last, i) * (Rat(1) + shift),
        Rat(1, m) + xi(i, i) - xi(i, last) * xi(last, i),
        Rat(1, m) + xi(last, last) - xi(last, i) * xi(i, last)};
    for (std::size_t r = 0; r < 4; ++r) {
      const Rat value = f1_shifted(hom, *args[r].first, *args[r].second);
      if (value != expected[r]) return false;
      if (value != f1_shifted_closed(hom, *args[r].first, *args[r].second)) {
        return false;
      }
      if (value != 0) any_nonzero = true;
    }
  }
  return any_nonzero;
}

}  // namespace

GeometryReport geometry_report(int m, std::size_t abelian_dim, int trials,
                               unsigned seed) {
  GeometryReport report;
  report.m = m;
  report.abelian_dim = abelian_dim;

  const InvariantConnection conn = canonical_connection(m);
  const TensorSet ts = tensors(conn);
  report.torsion_zero = ts.torsion.is_zero();
  report.weyl_zero = ts.weyl.is_zero();
  report.ricci_zero = ts.ricci.is_zero();
  report.ricci_witness = ts.ricci.first_nonzero();

  const TensorSet product =
      tensors(product_connection(abelian_connection(abelian_dim), conn));
  report.product_weyl_zero = product.weyl.is_zero();
  report.product_weyl_witness = product.weyl.first_nonzero();

  std::mt19937 rng(seed);
  report.f_table_ok = true;
  for (int t = 0; t < trials; ++t) {
    if (!check_f1_table(m, random_trace_free(m, rng))) {
      report.f_table_ok = false;
      break;
    }
  }
  return report;
}

std::string report_json(const GeometryReport& report) {
  nlohmann::json doc;
  doc["m"] = report.m;
  doc["abelian_dim"] = report.abelian_dim;
  doc["torsion_zero"] = report.torsion_zero;
  doc["weyl_zero"] = report.weyl_zero;
  doc["ricci_zero"] = report.ricci_zero;
  doc["product_weyl_zero"] = report.product_weyl_zero;
  doc["f_table_ok"] = report.f_table_ok;
  const auto witness_json = [](const auto& witness) -> nlohmann::json {
    if (!witness) return nullptr;
    nlohmann::json w;
    w["index"] = witness->first;
    w["value"] = witness->second.get_str();
    return w;
  };
  nlohmann::json witness;
  witness["ricci"] = witness_json(report.ricci_witness);
  witness["product_weyl"] = witness_json(report.product_weyl_witness);
  doc["witness"] = std::move(witness);
  return doc.dump(2) + "\n";
}

}  // namespace castellan::geometry
