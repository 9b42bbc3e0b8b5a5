#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "modframe/mra.hpp"

namespace modframe {

/// Finite subgroup H of GL_n(Z), closure and inverses checked exactly.
class PointGroup {
 public:
  explicit PointGroup(std::vector<IntMatrix> elements) : elements_(std::move(elements)) {
    require(!elements_.empty(), ErrorCode::InvalidGroup, "point group must be nonempty");
    const std::size_t n = elements_.front().size();
    for (const auto& h : elements_) {
      require(h.size() == n, ErrorCode::DimensionMismatch, "group elements have different sizes");
      long det = h.determinant();
      if (det != 1 && det != -1) fail(ErrorCode::InvalidGroup, "element " + h.to_string() + " is not invertible over Z");
    }
    std::sort(elements_.begin(), elements_.end(), less);
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    require(contains(IntMatrix::identity(n)), ErrorCode::InvalidGroup, "group must contain the identity");
    for (const auto& a : elements_) {
      // |det| = 1 so the adjugate is the inverse up to sign
      IntMatrix inv = a.determinant() == 1 ? a.adjugate() : -a.adjugate();
      require(contains(inv), ErrorCode::InvalidGroup, "group is not closed under inverses");
      for (const auto& b : elements_)
        require(contains(a * b), ErrorCode::InvalidGroup, "group is not closed under products");
    }
  }

  /// Closure of the generators; fails if it exceeds max_order elements.
  static PointGroup generated_by(const std::vector<IntMatrix>& gens, std::size_t max_order = 1024) {
    require(!gens.empty(), ErrorCode::InvalidGroup, "need at least one generator");
    std::vector<IntMatrix> all{IntMatrix::identity(gens.front().size())};
    for (std::size_t i = 0; i < all.size(); ++i)
      for (const auto& g : gens) {
        IntMatrix p = all[i] * g;
        if (std::find(all.begin(), all.end(), p) == all.end()) {
          all.push_back(p);
          require(all.size() <= max_order, ErrorCode::InvalidGroup, "generated group is not finite");
        }
      }
    return PointGroup(std::move(all));
  }

  static PointGroup sign_group(std::size_t n) { return PointGroup({IntMatrix::identity(n), -IntMatrix::identity(n)}); }

  const std::vector<IntMatrix>& elements() const { return elements_; }
  std::size_t order() const { return elements_.size(); }
  std::size_t dim() const { return elements_.front().size(); }
  bool contains(const IntMatrix& h) const { return std::binary_search(elements_.begin(), elements_.end(), h, less); }
  friend bool operator==(const PointGroup& a, const PointGroup& b) = default;

 private:
  static bool less(const IntMatrix& a, const IntMatrix& b) { return a.rows() < b.rows(); }
  std::vector<IntMatrix> elements_;
};

struct AffiliationCheck {
  IntMatrix h;
  bool commutes;  // h A = A h
  bool coset;     // (h - I) Z^n inside A Z^n
};

struct AffiliationReport {
  std::vector<AffiliationCheck> checks;
  bool holds() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.commutes && c.coset; });
  }
  explicit operator bool() const { return holds(); }
};

inline AffiliationReport verify_affiliated(const PointGroup& group, const Dilation& d) {
  require(group.dim() == d.dim(), ErrorCode::DimensionMismatch, "group and dilation dimensions differ");
  const IntMatrix& a = d.matrix();
  const std::size_t n = a.size();
  AffiliationReport r;
  for (const auto& h : group.elements()) {
    IntMatrix hm = h - IntMatrix::identity(n);
    bool coset = true;
    for (std::size_t j = 0; j < n && coset; ++j) {
      Exponent col(n);
      for (std::size_t i = 0; i < n; ++i) col[i] = hm(i, j);
      coset = a.contains_in_lattice(col);
    }
    r.checks.push_back({h, h * a == a * h, coset});
  }
  return r;
}

/// True iff S is unimodular and S A S^-1 = B.
inline bool conjugates_to(const IntMatrix& s, const IntMatrix& a, const IntMatrix& b) {
  long det = s.determinant();
  if (det != 1 && det != -1) return false;
  IntMatrix inv = det == 1 ? s.adjugate() : -s.adjugate();
  return s * a * inv == b;
}

struct CanonicalForm {
  std::string group;  // "Z/2" or "Z/4"
  PointGroup h;
  Dilation a;
};

/// Dilations of the plane with q = 2 and a nontrivial affiliated group, up to similarity.
inline std::vector<CanonicalForm> canonical_forms_2d() {
  const PointGroup z2 = PointGroup::sign_group(2);
  const PointGroup z4 = PointGroup::generated_by({IntMatrix{{0, 1}, {-1, 0}}});
  const IntMatrix quincunx{{1, -1}, {1, 1}};
  const IntMatrix shear{{0, 2}, {-1, 1}};
  std::vector<CanonicalForm> t;
  for (const auto& a : {IntMatrix{{0, 2}, {1, 0}}, IntMatrix{{0, 2}, {-1, 0}}, shear, -shear, quincunx, -quincunx})
    t.push_back({"Z/2", z2, Dilation(a)});
  for (const auto& a : {quincunx, -quincunx}) t.push_back({"Z/4", z4, Dilation(a)});
  return t;
}

namespace detail {

inline void require_affiliated(const PointGroup& group, const Dilation& d) {
  require(verify_affiliated(group, d).holds(), ErrorCode::NotAffiliated, "group is not affiliated to the dilation");
}

}  // namespace detail

/// Mask form of phi(h (x - c) + c) = phi(x): m_{h k + (I - h)(A - I) c} = m_k for all h, k.
inline bool mask_symmetry_check(const Mask& m, const PointGroup& group, const std::vector<Rational>& center) {
  const std::size_t n = m.dim();
  require(center.size() == n, ErrorCode::DimensionMismatch, "center dimension differs from the mask");
  detail::require_affiliated(group, m.dilation);
  const IntMatrix& a = m.dilation.matrix();
  std::vector<Rational> cp(n);  // c' = (A - I) c
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) cp[i] += Rational(a(i, j) - (i == j ? 1 : 0)) * center[j];
  for (const auto& h : group.elements()) {
    Exponent off(n);
    for (std::size_t i = 0; i < n; ++i) {
      Rational o = 0;
      for (std::size_t j = 0; j < n; ++j) o += Rational((i == j ? 1 : 0) - h(i, j)) * cp[j];
      if (o.get_den() != 1)
        fail(ErrorCode::IncompatibleCenter, "center gives a non-integer offset for h = " + h.to_string());
      off[i] = o.get_num().get_si();
    }
    for (const auto& [k, c] : m.coeffs.entries())
      if (m.coeffs.at(h * k + off) != c) return false;
  }
  return true;
}

/// Mask form of psi(h x + A^-1 g1) = psi(x + A^-1 g1): w_{h k + g1} = w_{k + g1}.
inline bool symmetric_wavelet_verify(const Mask& w, const PointGroup& group, const Exponent& g1) {
  require(g1.size() == w.dim() && group.dim() == w.dim(), ErrorCode::DimensionMismatch, "dimensions differ");
  // running over the support for every h covers the complement as well, H being a group
  for (const auto& h : group.elements())
    for (const auto& [s, c] : w.coeffs.entries())
      if (w.coeffs.at(h * (s - g1) + g1) != c) return false;
  return true;
}

}  // namespace modframe
