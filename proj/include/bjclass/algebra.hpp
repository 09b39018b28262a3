#pragma once

#include <cctype>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "bjclass/kmatrix.hpp"

namespace bjclass {

/// One matrix block M_n(K).
struct BlockSpec {
  int n = 1;
  ScalarKind kind = ScalarKind::Real;
  [[nodiscard]] bool operator==(const BlockSpec&) const = default;
};

/// The shape of a finite-dimensional C*-algebra: base field plus an ordered
/// list of matrix blocks. Complex algebras admit complex blocks only.
class AlgebraDescriptor {
 public:
  AlgebraDescriptor(FieldTag field, std::vector<BlockSpec> blocks)
      : field_(field), blocks_(std::move(blocks)) {
    if (blocks_.empty()) throw Error("algebra needs at least one block");
    for (const BlockSpec& b : blocks_) {
      if (b.n < 1) throw Error("block size must be at least 1");
      if (field_ == FieldTag::Complex && b.kind != ScalarKind::Complex)
        throw Error("complex algebras admit complex blocks only");
    }
  }

  [[nodiscard]] FieldTag field() const noexcept { return field_; }
  [[nodiscard]] const std::vector<BlockSpec>& blocks() const noexcept {
    return blocks_;
  }
  [[nodiscard]] int block_count() const noexcept {
    return static_cast<int>(blocks_.size());
  }

  /// Dimension of the algebra as a real vector space, sum of d_k n_k^2.
  [[nodiscard]] int real_dimension() const noexcept {
    int d = 0;
    for (const BlockSpec& b : blocks_) d += real_dim(b.kind) * b.n * b.n;
    return d;
  }

  /// Real dimension of the module the algebra acts on, sum of d_k n_k.
  [[nodiscard]] int vector_real_dimension() const noexcept {
    int d = 0;
    for (const BlockSpec& b : blocks_) d += real_dim(b.kind) * b.n;
    return d;
  }

  [[nodiscard]] bool is_pseudo_abelian() const noexcept {
    for (const BlockSpec& b : blocks_)
      if (b.n != 1) return false;
    return true;
  }

  [[nodiscard]] bool operator==(const AlgebraDescriptor& o) const {
    return field_ == o.field_ && blocks_ == o.blocks_;
  }

 private:
  FieldTag field_;
  std::vector<BlockSpec> blocks_;
};

using AlgebraPtr = std::shared_ptr<const AlgebraDescriptor>;

[[nodiscard]] inline AlgebraPtr make_algebra(FieldTag field,
                                             std::vector<BlockSpec> blocks) {
  return std::make_shared<AlgebraDescriptor>(field, std::move(blocks));
}

/// A vector in the module the algebra acts on: one column per block.
struct BlockVector {
  std::vector<KMatrix> blocks;

  [[nodiscard]] static BlockVector zero(const AlgebraDescriptor& alg) {
    BlockVector v;
    v.blocks.reserve(alg.blocks().size());
    for (const BlockSpec& b : alg.blocks())
      v.blocks.emplace_back(b.kind, b.n, 1);
    return v;
  }

  [[nodiscard]] double norm2() const noexcept {
    double s = 0.0;
    for (const KMatrix& b : blocks) s += b.frobenius2();
    return s;
  }
  [[nodiscard]] double norm() const noexcept { return std::sqrt(norm2()); }

  [[nodiscard]] bool conforms(const AlgebraDescriptor& alg) const {
    if (blocks.size() != alg.blocks().size()) return false;
    for (std::size_t k = 0; k < blocks.size(); ++k)
      if (blocks[k].kind() != alg.blocks()[k].kind ||
          blocks[k].rows() != alg.blocks()[k].n || blocks[k].cols() != 1)
        return false;
    return true;
  }
};

/// An algebra element: one matrix per block, tied to its descriptor.
struct Element {
  AlgebraPtr alg;
  std::vector<KMatrix> blocks;

  Element() = default;
  explicit Element(AlgebraPtr a) : alg(std::move(a)) {
    blocks.reserve(alg->blocks().size());
    for (const BlockSpec& b : alg->blocks())
      blocks.emplace_back(b.kind, b.n, b.n);
  }

  [[nodiscard]] static Element zero(const AlgebraPtr& a) { return Element(a); }
  [[nodiscard]] static Element identity(const AlgebraPtr& a) {
    Element e(a);
    for (std::size_t k = 0; k < e.blocks.size(); ++k)
      e.blocks[k] = KMatrix::identity(a->blocks()[k].kind, a->blocks()[k].n);
    return e;
  }

  /// Element supported in a single block.
  [[nodiscard]] static Element single_block(const AlgebraPtr& a, int block,
                                            const KMatrix& m) {
    Element e(a);
    if (m.kind() != a->blocks()[static_cast<std::size_t>(block)].kind ||
        m.rows() != a->blocks()[static_cast<std::size_t>(block)].n ||
        m.rows() != m.cols())
      throw Error("single_block: matrix does not fit the block");
    e.blocks[static_cast<std::size_t>(block)] = m;
    return e;
  }

  [[nodiscard]] Element adjoint() const {
    Element e = *this;
    for (KMatrix& b : e.blocks) b = b.adjoint();
    return e;
  }

  [[nodiscard]] double frobenius() const noexcept {
    double s = 0.0;
    for (const KMatrix& b : blocks) s += b.frobenius2();
    return std::sqrt(s);
  }

  [[nodiscard]] bool is_zero(double tol = 0.0) const noexcept {
    return frobenius() <= tol;
  }

  [[nodiscard]] BlockVector apply(const BlockVector& x) const {
    BlockVector y;
    y.blocks.reserve(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k)
      y.blocks.push_back(blocks[k] * x.blocks[k]);
    return y;
  }

  Element& operator+=(const Element& o) {
    for (std::size_t k = 0; k < blocks.size(); ++k) blocks[k] += o.blocks[k];
    return *this;
  }
  Element& operator-=(const Element& o) {
    for (std::size_t k = 0; k < blocks.size(); ++k) blocks[k] -= o.blocks[k];
    return *this;
  }
  Element& operator*=(double s) {
    for (KMatrix& b : blocks) b *= s;
    return *this;
  }
};

[[nodiscard]] inline Element operator+(Element a, const Element& b) {
  a += b;
  return a;
}
[[nodiscard]] inline Element operator-(Element a, const Element& b) {
  a -= b;
  return a;
}
[[nodiscard]] inline Element operator*(Element a, double s) {
  a *= s;
  return a;
}
[[nodiscard]] inline Element operator*(double s, Element a) {
  a *= s;
  return a;
}

/// Blockwise product A B.
[[nodiscard]] inline Element operator*(const Element& a, const Element& b) {
  Element e = a;
  for (std::size_t k = 0; k < e.blocks.size(); ++k)
    e.blocks[k] = a.blocks[k] * b.blocks[k];
  return e;
}

/// Scales by a base-field scalar: real, or complex on complex algebras.
[[nodiscard]] inline Element scale_field(const Element& a, const Scalar& s) {
  Element e = a;
  for (KMatrix& b : e.blocks) {
    if (s.kind == ScalarKind::Real) {
      b *= s.w;
    } else if (s.kind == ScalarKind::Complex) {
      if (b.kind() != ScalarKind::Complex)
        throw Error("scale_field: complex scalar on non-complex block");
      b = b.scale_left(s);
    } else {
      throw Error("scale_field: scalar must lie in the base field");
    }
  }
  return e;
}

/// The F-valued inner product of two block vectors: sum over blocks of
/// Re(y_k^* x_k) when F = R, of y_k^* x_k when F = C.
[[nodiscard]] inline Scalar inner_product_F(const BlockVector& x,
                                            const BlockVector& y,
                                            const AlgebraDescriptor& alg) {
  if (!x.conforms(alg) || !y.conforms(alg))
    throw Error("inner_product_F: vectors do not conform to the algebra");
  if (alg.field() == FieldTag::Real) {
    double s = 0.0;
    for (std::size_t k = 0; k < x.blocks.size(); ++k)
      s += inner(x.blocks[k], y.blocks[k]).re();
    return Scalar::real(s);
  }
  Scalar s = Scalar::zero(ScalarKind::Complex);
  for (std::size_t k = 0; k < x.blocks.size(); ++k) {
    if (x.blocks[k].kind() != ScalarKind::Complex)
      throw Error("inner_product_F: complex field on non-complex block");
    s = s + inner(x.blocks[k], y.blocks[k]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// Algebra spec grammar: `field=R; R + C + H + M2(C) + M3(H)`.
// `R|C|H` denote 1-by-1 blocks, `Mn(K)` a general block. Whitespace is
// ignored everywhere.
// ---------------------------------------------------------------------------

namespace detail {

class SpecParser {
 public:
  explicit SpecParser(std::string text) : text_(std::move(text)) {}

  [[nodiscard]] AlgebraPtr parse() {
    skip_ws();
    expect_word("field", "expected 'field='");
    expect_char('=');
    const FieldTag field = parse_field();
    skip_ws();
    expect_char(';');
    std::vector<BlockSpec> blocks;
    blocks.push_back(parse_block());
    skip_ws();
    while (pos_ < text_.size() && text_[pos_] == '+') {
      ++pos_;
      blocks.push_back(parse_block());
      skip_ws();
    }
    if (pos_ != text_.size()) fail("trailing input");
    try {
      return make_algebra(field, std::move(blocks));
    } catch (const Error& e) {
      fail(e.what());
    }
    return nullptr;  // unreachable
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    std::ostringstream os;
    os << "algebra spec parse error at position " << pos_ << ": " << msg;
    throw Error(os.str());
  }

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  void expect_char(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c)
      fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  void expect_word(const std::string& w, const std::string& msg) {
    skip_ws();
    if (text_.compare(pos_, w.size(), w) != 0) fail(msg);
    pos_ += w.size();
  }

  [[nodiscard]] FieldTag parse_field() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected field tag R or C");
    const char c = text_[pos_++];
    if (c == 'R') return FieldTag::Real;
    if (c == 'C') return FieldTag::Complex;
    fail("expected field tag R or C");
  }

  [[nodiscard]] ScalarKind parse_kind() {
    skip_ws();
    if (pos_ >= text_.size()) fail("expected block kind R, C or H");
    const char c = text_[pos_++];
    if (c == 'R') return ScalarKind::Real;
    if (c == 'C') return ScalarKind::Complex;
    if (c == 'H') return ScalarKind::Quaternion;
    fail("expected block kind R, C or H");
  }

  [[nodiscard]] BlockSpec parse_block() {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == 'M') {
      ++pos_;
      skip_ws();
      int n = 0;
      bool any = false;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        n = n * 10 + (text_[pos_++] - '0');
        any = true;
      }
      if (!any || n < 1) fail("expected positive block size after 'M'");
      expect_char('(');
      const ScalarKind kind = parse_kind();
      expect_char(')');
      return BlockSpec{n, kind};
    }
    return BlockSpec{1, parse_kind()};
  }

  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace detail

[[nodiscard]] inline AlgebraPtr parse_algebra_text(const std::string& text) {
  return detail::SpecParser(text).parse();
}

[[nodiscard]] inline std::string format_algebra(const AlgebraDescriptor& alg) {
  std::ostringstream os;
  os << "field=" << to_string(alg.field()) << "; ";
  bool first = true;
  for (const BlockSpec& b : alg.blocks()) {
    if (!first) os << " + ";
    first = false;
    if (b.n == 1)
      os << to_string(b.kind);
    else
      os << "M" << b.n << "(" << to_string(b.kind) << ")";
  }
  return os.str();
}

}  // namespace bjclass
