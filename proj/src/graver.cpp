#include "forge/graver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <limits>
#include <set>

#include "forge/error.hpp"
#include "forge/field.hpp"
#include "forge/linalg.hpp"
#include "forge/matroid.hpp"

namespace forge {
namespace {

using Vec = std::vector<long>;

constexpr long kEntryLimit = 1'000'000'000'000L;

Vec to_long(const IntVector& v) {
  Vec out;
  out.reserve(v.size());
  for (const auto& x : v) {
    if (!x.fits_slong_p() || std::labs(x.get_si()) > kEntryLimit)
      throw Error(ErrorCode::kTooLarge, "kernel vector entry too large");
    out.push_back(x.get_si());
  }
  return out;
}

IntVector to_int(const Vec& v) {
  IntVector out;
  out.reserve(v.size());
  for (long x : v) out.emplace_back(x);
  return out;
}

bool leq(const Vec& x, const Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    if (x[i] > 0 ? (y[i] < x[i]) : (y[i] > x[i])) return false;
  }
  return true;
}

bool sign_compatible(const Vec& x, const Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if ((x[i] > 0 && y[i] < 0) || (x[i] < 0 && y[i] > 0)) return false;
  return true;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](long x) { return x == 0; });
}

long l1(const Vec& v) {
  long s = 0;
  for (long x : v) s += std::labs(x);
  return s;
}

Vec negated(Vec v) {
  for (auto& x : v) x = -x;
  return v;
}

/// First nonzero entry positive.
Vec canonical(Vec v) {
  for (long x : v) {
    if (x == 0) continue;
    return x < 0 ? negated(std::move(v)) : v;
  }
  return v;
}

/// Rows scaled to coprime integers.
DenseMatrix<Integer> integral_rows(const RatMatrix& a) {
  DenseMatrix<Integer> out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto row = integral_primitive(std::vector<Rational>(a.row(i).begin(), a.row(i).end()));
    for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = row[j];
  }
  return out;
}

/// Minimal elements of `pts` (canonical, no duplicates): scanning by l1 norm,
/// a point is minimal unless a minimal point found earlier lies below it or
/// its negation.
std::vector<Vec> minimal_of(std::vector<Vec> pts) {
  std::sort(pts.begin(), pts.end(), [](const Vec& x, const Vec& y) {
    const long a = l1(x), b = l1(y);
    return a != b ? a < b : x < y;
  });
  std::vector<Vec> mins;
  for (auto& x : pts) {
    const Vec nx = negated(x);
    bool minimal = true;
    for (const auto& m : mins) {
      if (leq(m, x) || leq(m, nx)) {
        minimal = false;
        break;
      }
    }
    if (minimal) mins.push_back(std::move(x));
  }
  return mins;
}

std::vector<IntVector> sorted_output(std::vector<Vec> vs) {
  std::sort(vs.begin(), vs.end(), [](const Vec& x, const Vec& y) {
    const long a = l1(x), b = l1(y);
    return a != b ? a < b : x > y;
  });
  std::vector<IntVector> out;
  for (const auto& v : vs) out.push_back(to_int(v));
  return out;
}

/// Canonical kernel points with 0 < |x|_inf <= box.  Returns nullopt when
/// the enumeration would exceed `max_points`.
std::optional<std::vector<Vec>> box_points(const RatMatrix& a, long box, double max_points) {
  const auto e = rref(a);
  const std::size_t n = a.cols();
  std::vector<bool> is_pivot(n, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) free_cols.push_back(j);
  if (std::pow(2.0 * box + 1, static_cast<double>(free_cols.size())) > max_points) return std::nullopt;
  // x_pivot(r) = -(sum_f num(r, f) x_f) / den(r)
  const std::size_t r = e.pivots.size();
  std::vector<Vec> num(r, Vec(free_cols.size()));
  Vec den(r);
  for (std::size_t i = 0; i < r; ++i) {
    Integer d = 1;
    for (auto f : free_cols) d = lcm(d, e.matrix(i, f).get_den());
    den[i] = to_long({d})[0];
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
      const Rational q = e.matrix(i, free_cols[k]) * d;
      num[i][k] = to_long({q.get_num()})[0];
    }
  }
  std::vector<Vec> out;
  Vec t(free_cols.size(), -box);
  Vec x(n, 0);
  if (free_cols.empty()) return out;
  while (true) {
    bool ok = true;
    for (std::size_t k = 0; k < free_cols.size(); ++k) x[free_cols[k]] = t[k];
    for (std::size_t i = 0; i < r && ok; ++i) {
      long s = 0;
      for (std::size_t k = 0; k < free_cols.size(); ++k) s += num[i][k] * t[k];
      if (s % den[i] != 0) {
        ok = false;
        break;
      }
      const long v = -s / den[i];
      if (std::labs(v) > box) ok = false;
      x[e.pivots[i]] = v;
    }
    // Canonical means the first nonzero free coordinate is positive, since a
    // kernel vector vanishing on all free columns is zero.
    if (ok && !is_zero(x)) {
      const auto first = std::find_if(t.begin(), t.end(), [](long v) { return v != 0; });
      if (*first > 0) out.push_back(canonical(x));
    }
    std::size_t k = 0;
    while (k < t.size() && t[k] == box) t[k++] = -box;
    if (k == t.size()) break;
    ++t[k];
  }
  return out;
}

/// Shortens basis vectors by adding or subtracting one another while the l1
/// norm drops.
void reduce_basis(std::vector<Vec>& basis) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      for (std::size_t j = 0; j < basis.size(); ++j) {
        if (i == j) continue;
        for (int sign : {1, -1}) {
          Vec c = basis[i];
          for (std::size_t k = 0; k < c.size(); ++k) c[k] += sign * basis[j][k];
          if (l1(c) < l1(basis[i])) {
            basis[i] = std::move(c);
            changed = true;
          }
        }
      }
    }
  }
}

}  // namespace

Integer norm1(const IntVector& v) {
  Integer s = 0;
  for (const auto& x : v) s += abs(x);
  return s;
}

Integer norm_inf(const IntVector& v) {
  Integer s = 0;
  for (const auto& x : v) s = std::max<Integer>(s, abs(x));
  return s;
}

bool conformal_leq(const IntVector& x, const IntVector& y) {
  if (x.size() != y.size()) throw Error(ErrorCode::kDimensionMismatch, "conformal_leq lengths");
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    if (x[i] > 0 ? (y[i] < x[i]) : (y[i] > x[i])) return false;
  }
  return true;
}

CircuitSet matrix_circuits(const RatMatrix& a) {
  CircuitSet out;
  const auto m = matroid_of(a, FieldSpec::rationals());
  for (const auto& c : matroid_circuits(m)) {
    RatMatrix sub(a.rows(), c.size());
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < c.size(); ++j) sub(i, j) = a(i, c[j]);
    const auto ker = kernel_basis(sub);
    if (ker.size() != 1) throw Error(ErrorCode::kVerificationFailed, "circuit kernel not a line");
    IntVector v(a.cols(), Integer(0));
    for (std::size_t j = 0; j < c.size(); ++j) v[c[j]] = ker[0][j];
    out.vectors.push_back(canonical_primitive(std::move(v)));
  }
  std::sort(out.vectors.begin(), out.vectors.end(), [](const IntVector& x, const IntVector& y) {
    const Integer a = norm1(x), b = norm1(y);
    return a != b ? a < b : x > y;
  });
  for (const auto& v : out.vectors) {
    const Integer n1 = norm1(v), ninf = norm_inf(v);
    if (!out.c1 || n1 > *out.c1) out.c1 = n1;
    if (!out.c_inf || ninf > *out.c_inf) out.c_inf = ninf;
    for (const auto& x : v)
      if (x != 0) out.kappa_dot = lcm(out.kappa_dot.value_or(Integer(1)), abs(x));
  }
  return out;
}

std::vector<IntVector> kernel_lattice_basis(const RatMatrix& a) {
  auto m = integral_rows(a);
  const std::size_t n = a.cols();
  DenseMatrix<Integer> u(n, n);
  for (std::size_t j = 0; j < n; ++j) u(j, j) = 1;
  auto col_op = [&](std::size_t dst, std::size_t src, const Integer& f) {  // col dst -= f * col src
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, dst) -= f * m(i, src);
    for (std::size_t i = 0; i < n; ++i) u(i, dst) -= f * u(i, src);
  };
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m(i, x), m(i, y));
    for (std::size_t i = 0; i < n; ++i) std::swap(u(i, x), u(i, y));
  };
  std::size_t k = 0;
  for (std::size_t row = 0; row < m.rows() && k < n; ++row) {
    // Euclid on the row entries in columns k.. until one nonzero remains.
    while (true) {
      std::size_t best = n;
      for (std::size_t j = k; j < n; ++j)
        if (m(row, j) != 0 && (best == n || abs(m(row, j)) < abs(m(row, best)))) best = j;
      if (best == n) break;
      bool done = true;
      for (std::size_t j = k; j < n; ++j) {
        if (j == best || m(row, j) == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), m(row, j).get_mpz_t(), m(row, best).get_mpz_t());
        col_op(j, best, q);
        if (m(row, j) != 0) done = false;
      }
      if (done) {
        col_swap(k, best);
        ++k;
        break;
      }
    }
  }
  std::vector<Vec> basis;
  for (std::size_t j = k; j < n; ++j) {
    IntVector v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = u(i, j);
    basis.push_back(to_long(v));
  }
  reduce_basis(basis);
  std::vector<IntVector> out;
  for (auto& v : basis) out.push_back(to_int(canonical(v)));
  return out;
}

std::vector<IntVector> graver_by_box(const RatMatrix& a, long box) {
  if (box < 1) throw Error(ErrorCode::kBadParams, "box must be positive");
  auto pts = box_points(a, box, std::numeric_limits<double>::infinity());
  auto mins = minimal_of(std::move(*pts));
  for (const auto& v : mins) {
    for (long x : v)
      if (std::labs(x) == box)
        throw Error(ErrorCode::kBoxTooSmall, "minimal element on the box boundary");
  }
  return sorted_output(std::move(mins));
}

GraverSet graver_basis(const RatMatrix& a, const GraverOptions& opt) {
  GraverSet out;
  std::vector<Vec> gens;
  for (const auto& v : kernel_lattice_basis(a)) gens.push_back(to_long(v));
  if (gens.empty()) {
    out.certified = true;  // trivial kernel
    return out;
  }
  if (a.cols() <= 16) {
    for (const auto& v : matrix_circuits(a).vectors) gens.push_back(to_long(v));
  }

  // Completion: add the normal form of every critical sum until closed.
  std::vector<Vec> g;
  std::set<Vec> in_g;
  std::deque<Vec> pending;
  auto normal_form = [&](Vec s) {
    bool reduced = true;
    while (reduced && !is_zero(s)) {
      reduced = false;
      for (const auto& h : g) {
        if (leq(h, s)) {
          for (std::size_t i = 0; i < s.size(); ++i) s[i] -= h[i];
          reduced = true;
          break;
        }
      }
    }
    return s;
  };
  auto add = [&](Vec f) {
    for (const auto& h : g) {
      if (sign_compatible(f, h)) continue;
      Vec s = f;
      for (std::size_t i = 0; i < s.size(); ++i) s[i] += h[i];
      pending.push_back(std::move(s));
    }
    in_g.insert(f);
    g.push_back(std::move(f));
    if (g.size() > opt.max_vectors) throw Error(ErrorCode::kBudgetExceeded, "Graver completion too large");
  };
  for (auto& v : gens) {
    for (Vec w : {v, negated(v)}) {
      Vec r = normal_form(w);
      if (!is_zero(r) && !in_g.count(r)) {
        add(negated(r));
        add(std::move(r));
      }
    }
  }
  while (!pending.empty()) {
    Vec s = normal_form(std::move(pending.front()));
    pending.pop_front();
    if (is_zero(s) || in_g.count(s)) continue;
    for (long x : s)
      if (std::labs(x) > kEntryLimit) throw Error(ErrorCode::kTooLarge, "Graver entry too large");
    add(negated(s));
    add(std::move(s));
  }

  std::set<Vec> canon;
  for (const auto& v : g) canon.insert(canonical(v));
  auto mins = minimal_of(std::vector<Vec>(canon.begin(), canon.end()));
  out.vectors = sorted_output(mins);
  for (const auto& v : out.vectors) {
    const Integer n1 = norm1(v), ninf = norm_inf(v);
    if (!out.g1 || n1 > *out.g1) out.g1 = n1;
    if (!out.g_inf || ninf > *out.g_inf) out.g_inf = ninf;
  }
  if (out.vectors.empty()) return out;

  out.box = std::max<long>(out.g_inf->get_si(), opt.box_bound.value_or(0));
  auto pts = box_points(a, out.box, opt.max_box_points);
  if (!pts) return out;
  const auto brute = minimal_of(std::move(*pts));
  const std::set<Vec> a_set(mins.begin(), mins.end()), b_set(brute.begin(), brute.end());
  if (a_set != b_set) {
    throw Error(ErrorCode::kVerificationFailed,
                "completion found " + std::to_string(a_set.size()) + " elements, box enumeration " +
                    std::to_string(b_set.size()));
  }
  out.certified = true;
  return out;
}

namespace {

nlohmann::json vectors_json(const std::vector<IntVector>& vs) {
  auto arr = nlohmann::json::array();
  for (const auto& v : vs) {
    auto row = nlohmann::json::array();
    for (const auto& x : v) {
      if (x.fits_slong_p()) {
        row.push_back(x.get_si());
      } else {
        row.push_back(x.get_str());
      }
    }
    arr.push_back(std::move(row));
  }
  return arr;
}

nlohmann::json opt_int(const std::optional<Integer>& x) {
  if (!x) return nullptr;
  if (x->fits_slong_p()) return x->get_si();
  return x->get_str();
}

}  // namespace

nlohmann::json CircuitSet::to_json() const {
  return {{"count", vectors.size()},
          {"vectors", vectors_json(vectors)},
          {"c1", opt_int(c1)},
          {"c_inf", opt_int(c_inf)},
          {"kappa_dot", opt_int(kappa_dot)}};
}

nlohmann::json GraverSet::to_json() const {
  return {{"count", vectors.size()},
          {"vectors", vectors_json(vectors)},
          {"g1", opt_int(g1)},
          {"g_inf", opt_int(g_inf)},
          {"certified", certified},
          {"box", box}};
}

}  // namespace forge
