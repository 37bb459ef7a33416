#pragma once

// Word-problem oracles for quotients G = F_m/R. Every element has a
// canonical fixed-width byte encoding, so equality in G is byte equality.
//
// Layouts (all integers are int64 little-endian):
//   free_abelian       m coordinates
//   finite_perm        degree bytes, byte i = image of point i (0-based)
//   subdirect          phi value, then the finite_perm layout
//   nilpotent_class2   e_1..e_m, then c_ij for i<j in row-major order
//   direct_product     left layout, then right layout

#include <cstdint>
#include <cstring>
#include <memory>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "growthkit/detail/checked.hpp"
#include "growthkit/errors.hpp"
#include "growthkit/words.hpp"

namespace growthkit {

enum class OracleKind { free_abelian, finite_perm, subdirect_phi_finite, nilpotent_class2, direct_product };

inline const char* kind_name(OracleKind k) {
  switch (k) {
    case OracleKind::free_abelian: return "free_abelian";
    case OracleKind::finite_perm: return "finite_perm";
    case OracleKind::subdirect_phi_finite: return "subdirect";
    case OracleKind::nilpotent_class2: return "nilpotent_class2";
    case OracleKind::direct_product: return "direct_product";
  }
  return "?";
}

/// A group element in its oracle's canonical encoding.
struct Element {
  std::vector<std::uint8_t> bytes;

  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

namespace detail {

class OracleImpl {
 public:
  virtual ~OracleImpl() = default;
  virtual OracleKind kind() const = 0;
  virtual int rank() const = 0;
  virtual std::size_t width() const = 0;
  virtual void identity(std::uint8_t* dst) const = 0;
  /// e <- e * x, in place.
  virtual void step(std::uint8_t* e, Letter x) const = 0;
  /// dst <- a * b; dst must not alias a or b.
  virtual void multiply(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst) const = 0;
  /// dst <- a^-1; dst must not alias a.
  virtual void invert(const std::uint8_t* a, std::uint8_t* dst) const = 0;
  virtual std::string format(const std::uint8_t* e) const = 0;
};

class FreeAbelianImpl final : public OracleImpl {
 public:
  explicit FreeAbelianImpl(int m) : m_(m) {}
  OracleKind kind() const override { return OracleKind::free_abelian; }
  int rank() const override { return m_; }
  std::size_t width() const override { return 8 * static_cast<std::size_t>(m_); }
  void identity(std::uint8_t* dst) const override { std::memset(dst, 0, width()); }
  void step(std::uint8_t* e, Letter x) const override {
    std::uint8_t* p = e + 8 * (x.index - 1);
    store_i64(p, load_i64(p) + x.sign);
  }
  void multiply(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst) const override {
    for (int i = 0; i < m_; ++i) store_i64(dst + 8 * i, load_i64(a + 8 * i) + load_i64(b + 8 * i));
  }
  void invert(const std::uint8_t* a, std::uint8_t* dst) const override {
    for (int i = 0; i < m_; ++i) store_i64(dst + 8 * i, -load_i64(a + 8 * i));
  }
  std::string format(const std::uint8_t* e) const override {
    std::string s = "(";
    for (int i = 0; i < m_; ++i) {
      if (i) s += ',';
      s += std::to_string(load_i64(e + 8 * i));
    }
    return s + ")";
  }

 private:
  int m_;
};

/// Z via a homomorphism phi; only used as a factor of subdirect products.
class PhiLineImpl final : public OracleImpl {
 public:
  explicit PhiLineImpl(PhiSpec phi) : phi_(std::move(phi)) {}
  OracleKind kind() const override { return OracleKind::free_abelian; }
  int rank() const override { return phi_.rank(); }
  std::size_t width() const override { return 8; }
  void identity(std::uint8_t* dst) const override { std::memset(dst, 0, 8); }
  void step(std::uint8_t* e, Letter x) const override { store_i64(e, load_i64(e) + phi_(x)); }
  void multiply(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst) const override {
    store_i64(dst, load_i64(a) + load_i64(b));
  }
  void invert(const std::uint8_t* a, std::uint8_t* dst) const override { store_i64(dst, -load_i64(a)); }
  std::string format(const std::uint8_t* e) const override { return std::to_string(load_i64(e)); }
  const PhiSpec& phi() const { return phi_; }

 private:
  PhiSpec phi_;
};

class PermImpl final : public OracleImpl {
 public:
  PermImpl(int m, std::size_t degree, std::vector<std::vector<std::uint8_t>> gens)
      : m_(m), degree_(degree), gens_(std::move(gens)) {
    invs_.resize(gens_.size());
    for (std::size_t g = 0; g < gens_.size(); ++g) {
      invs_[g].resize(degree_);
      for (std::size_t i = 0; i < degree_; ++i) invs_[g][gens_[g][i]] = static_cast<std::uint8_t>(i);
    }
  }
  OracleKind kind() const override { return OracleKind::finite_perm; }
  int rank() const override { return m_; }
  std::size_t width() const override { return degree_; }
  void identity(std::uint8_t* dst) const override {
    for (std::size_t i = 0; i < degree_; ++i) dst[i] = static_cast<std::uint8_t>(i);
  }
  // Permutations act on the right: (g*h)(i) = h(g(i)).
  void step(std::uint8_t* e, Letter x) const override {
    const auto& t = x.sign > 0 ? gens_[x.index - 1] : invs_[x.index - 1];
    for (std::size_t i = 0; i < degree_; ++i) e[i] = t[e[i]];
  }
  void multiply(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst) const override {
    for (std::size_t i = 0; i < degree_; ++i) dst[i] = b[a[i]];
  }
  void invert(const std::uint8_t* a, std::uint8_t* dst) const override {
    for (std::size_t i = 0; i < degree_; ++i) dst[a[i]] = static_cast<std::uint8_t>(i);
  }
  std::string format(const std::uint8_t* e) const override {
    std::string s = "[";
    for (std::size_t i = 0; i < degree_; ++i) {
      if (i) s += ',';
      s += std::to_string(e[i] + 1);
    }
    return s + "]";
  }
  std::size_t degree() const { return degree_; }
  /// 1-based image tuple of generator `g` (0-based generator index).
  std::vector<int> generator_images(int g) const {
    std::vector<int> r(degree_);
    for (std::size_t i = 0; i < degree_; ++i) r[i] = gens_[static_cast<std::size_t>(g)][i] + 1;
    return r;
  }

 private:
  int m_;
  std::size_t degree_;
  std::vector<std::vector<std::uint8_t>> gens_;
  std::vector<std::vector<std::uint8_t>> invs_;
};

// Normal form (e, c) with product (e,c)(e',c') = (e+e', c + c' - e'_i e_j) on i<j.
class NilpotentClass2Impl final : public OracleImpl {
 public:
  explicit NilpotentClass2Impl(int m) : m_(m) {}
  OracleKind kind() const override { return OracleKind::nilpotent_class2; }
  int rank() const override { return m_; }
  std::size_t width() const override { return 8 * static_cast<std::size_t>(m_ + pairs()); }
  void identity(std::uint8_t* dst) const override { std::memset(dst, 0, width()); }
  void step(std::uint8_t* e, Letter x) const override {
    const int k = x.index - 1;
    for (int j = k + 1; j < m_; ++j) {
      std::uint8_t* c = comm(e, k, j);
      store_i64(c, load_i64(c) - x.sign * load_i64(e + 8 * j));
    }
    store_i64(e + 8 * k, load_i64(e + 8 * k) + x.sign);
  }
  void multiply(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst) const override {
    for (int i = 0; i < m_; ++i) store_i64(dst + 8 * i, load_i64(a + 8 * i) + load_i64(b + 8 * i));
    for (int i = 0; i < m_; ++i)
      for (int j = i + 1; j < m_; ++j) {
        const std::int64_t v = load_i64(comm(a, i, j)) + load_i64(comm(b, i, j)) -
                               load_i64(b + 8 * i) * load_i64(a + 8 * j);
        store_i64(comm(dst, i, j), v);
      }
  }
  // (e,c)^-1 = (-e, -c - e_i e_j)
  void invert(const std::uint8_t* a, std::uint8_t* dst) const override {
    for (int i = 0; i < m_; ++i) store_i64(dst + 8 * i, -load_i64(a + 8 * i));
    for (int i = 0; i < m_; ++i)
      for (int j = i + 1; j < m_; ++j)
        store_i64(comm(dst, i, j), -load_i64(comm(a, i, j)) - load_i64(a + 8 * i) * load_i64(a + 8 * j));
  }
  std::string format(const std::uint8_t* e) const override {
    std::string s = "e=(";
    for (int i = 0; i < m_; ++i) {
      if (i) s += ',';
      s += std::to_string(load_i64(e + 8 * i));
    }
    s += ");c=(";
    bool first = true;
    for (int i = 0; i < m_; ++i)
      for (int j = i + 1; j < m_; ++j) {
        if (!first) s += ',';
        first = false;
        s += std::to_string(load_i64(comm(e, i, j)));
      }
    return s + ")";
  }

 private:
  int pairs() const { return m_ * (m_ - 1) / 2; }
  // Offset of c_ij (0-based, i<j) in row-major upper-triangular order.
  std::size_t comm_offset(int i, int j) const {
    const int before = i * m_ - i * (i + 1) / 2;
    return 8 * static_cast<std::size_t>(m_ + before + (j - i - 1));
  }
  std::uint8_t* comm(std::uint8_t* e, int i, int j) const { return e + comm_offset(i, j); }
  const std::uint8_t* comm(const std::uint8_t* e, int i, int j) const { return e + comm_offset(i, j); }

  int m_;
};

class ProductImpl final : public OracleImpl {
 public:
  ProductImpl(OracleKind kind, std::shared_ptr<const OracleImpl> left, std::shared_ptr<const OracleImpl> right)
      : kind_(kind), left_(std::move(left)), right_(std::move(right)) {}
  OracleKind kind() const override { return kind_; }
  int rank() const override { return left_->rank(); }
  std::size_t width() const override { return left_->width() + right_->width(); }
  void identity(std::uint8_t* dst) const override {
    left_->identity(dst);
    right_->identity(dst + left_->width());
  }
  void step(std::uint8_t* e, Letter x) const override {
    left_->step(e, x);
    right_->step(e + left_->width(), x);
  }
  void multiply(const std::uint8_t* a, const std::uint8_t* b, std::uint8_t* dst) const override {
    const std::size_t w = left_->width();
    left_->multiply(a, b, dst);
    right_->multiply(a + w, b + w, dst + w);
  }
  void invert(const std::uint8_t* a, std::uint8_t* dst) const override {
    const std::size_t w = left_->width();
    left_->invert(a, dst);
    right_->invert(a + w, dst + w);
  }
  std::string format(const std::uint8_t* e) const override {
    return "(" + left_->format(e) + "|" + right_->format(e + left_->width()) + ")";
  }
  const OracleImpl& left() const { return *left_; }
  const OracleImpl& right() const { return *right_; }

 private:
  OracleKind kind_;
  std::shared_ptr<const OracleImpl> left_, right_;
};

}  // namespace detail

/// Handle to an immutable quotient G = F_m/R with decidable word problem.
/// Copies share the same underlying oracle.
class GroupOracle {
 public:
  explicit GroupOracle(std::shared_ptr<const detail::OracleImpl> impl) : impl_(std::move(impl)) {}

  OracleKind kind() const { return impl_->kind(); }
  int rank() const { return impl_->rank(); }
  std::size_t width() const { return impl_->width(); }
  const detail::OracleImpl& impl() const { return *impl_; }
  const std::shared_ptr<const detail::OracleImpl>& impl_ptr() const { return impl_; }
  bool same_as(const GroupOracle& o) const { return impl_ == o.impl_; }

  Element identity() const {
    Element e{std::vector<std::uint8_t>(width())};
    impl_->identity(e.bytes.data());
    return e;
  }

  void step(std::uint8_t* e, Letter x) const { impl_->step(e, x); }

  void check_letter(const Letter& x) const {
    if (x.index < 1 || x.index > rank())
      throw rank_mismatch("oracle of rank " + std::to_string(rank()) + " given generator " +
                          std::to_string(x.index));
  }

  Element eval(std::span<const Letter> w) const {
    Element e = identity();
    for (const Letter& x : w) {
      check_letter(x);
      impl_->step(e.bytes.data(), x);
    }
    return e;
  }
  Element eval(const Word& w) const { return eval(w.letters()); }

  Element multiply(const Element& a, const Element& b) const {
    Element r{std::vector<std::uint8_t>(width())};
    impl_->multiply(a.bytes.data(), b.bytes.data(), r.bytes.data());
    return r;
  }

  Element inverse(const Element& a) const {
    Element r{std::vector<std::uint8_t>(width())};
    impl_->invert(a.bytes.data(), r.bytes.data());
    return r;
  }

  bool is_identity(const Element& a) const { return a == identity(); }

  std::string format(const Element& e) const { return impl_->format(e.bytes.data()); }

 private:
  std::shared_ptr<const detail::OracleImpl> impl_;
};

inline GroupOracle make_free_abelian(int m) {
  if (m < 1) throw std::invalid_argument("make_free_abelian: rank must be at least 1");
  return GroupOracle(std::make_shared<detail::FreeAbelianImpl>(m));
}

/// Free nilpotent group of class 2 with basic commutators [a_i,a_j] = a_i^-1 a_j^-1 a_i a_j central.
inline GroupOracle make_nilpotent_class2(int m) {
  if (m < 2) throw std::invalid_argument("make_nilpotent_class2: rank must be at least 2");
  return GroupOracle(std::make_shared<detail::NilpotentClass2Impl>(m));
}

/// Subgroup of Sym(degree) generated by the images of a_1..a_m.
/// Permutations are 1-based image tuples.
inline GroupOracle make_finite_perm(int m, const std::vector<std::vector<int>>& generator_permutations,
                                    std::size_t degree) {
  if (m < 1) throw std::invalid_argument("make_finite_perm: rank must be at least 1");
  if (degree < 1 || degree > 256) throw std::invalid_argument("make_finite_perm: degree must be in [1,256]");
  if (generator_permutations.size() != static_cast<std::size_t>(m))
    throw rank_mismatch("make_finite_perm: expected " + std::to_string(m) + " generator images, got " +
                        std::to_string(generator_permutations.size()));
  std::vector<std::vector<std::uint8_t>> gens;
  for (const auto& p : generator_permutations) {
    if (p.size() != degree) throw std::invalid_argument("make_finite_perm: image tuple has wrong length");
    std::vector<bool> seen(degree, false);
    std::vector<std::uint8_t> g(degree);
    for (std::size_t i = 0; i < degree; ++i) {
      const int v = p[i];
      if (v < 1 || static_cast<std::size_t>(v) > degree || seen[static_cast<std::size_t>(v - 1)])
        throw std::invalid_argument("make_finite_perm: image tuple is not a permutation of [1.." +
                                    std::to_string(degree) + "]");
      seen[static_cast<std::size_t>(v - 1)] = true;
      g[i] = static_cast<std::uint8_t>(v - 1);
    }
    gens.push_back(std::move(g));
  }
  return GroupOracle(std::make_shared<detail::PermImpl>(m, degree, std::move(gens)));
}

/// Image of F_m in Z x finite under (phi, finite.eval). Its kernel lies in ker phi.
inline GroupOracle make_subdirect(const PhiSpec& phi, const GroupOracle& finite) {
  if (finite.kind() != OracleKind::finite_perm)
    throw std::invalid_argument("make_subdirect: finite factor must be a finite_perm oracle");
  if (finite.rank() != phi.rank())
    throw rank_mismatch("make_subdirect: phi has rank " + std::to_string(phi.rank()) + ", finite factor rank " +
                        std::to_string(finite.rank()));
  auto line = std::make_shared<detail::PhiLineImpl>(phi);
  return GroupOracle(
      std::make_shared<detail::ProductImpl>(OracleKind::subdirect_phi_finite, line, finite.impl_ptr()));
}

/// Image of F_m in left x right (the diagonal map).
inline GroupOracle make_direct_product(const GroupOracle& left, const GroupOracle& right) {
  if (left.rank() != right.rank())
    throw rank_mismatch("make_direct_product: factor ranks differ");
  return GroupOracle(
      std::make_shared<detail::ProductImpl>(OracleKind::direct_product, left.impl_ptr(), right.impl_ptr()));
}

inline Element eval_word(const GroupOracle& o, const Word& w) {
  if (w.max_index() > o.rank())
    throw rank_mismatch("eval_word: word uses generator " + std::to_string(w.max_index()) + " but oracle has rank " +
                        std::to_string(o.rank()));
  return o.eval(w);
}

}  // namespace growthkit
