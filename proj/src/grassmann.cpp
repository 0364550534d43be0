#include "glh/grassmann.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cmath>
#include <sstream>
#include <unordered_map>

#include "glh/error.hpp"

namespace glh {

namespace {

std::atomic<double> g_canon_eps{1e-12};
std::atomic<double> g_compare_eps{1e-9};

// Dense accumulation is cheaper than hashing up to this many generators.
constexpr int kDenseAccumulatorLimit = 12;
// Product signs are tabulated for every monomial pair up to this many generators.
constexpr int kSignTableLimit = 8;

const std::vector<double>& sign_table() {
  static const std::vector<double> table = [] {
    constexpr std::size_t size = std::size_t{1} << kSignTableLimit;
    std::vector<double> t(size * size);
    for (std::size_t a = 0; a < size; ++a) {
      for (std::size_t b = 0; b < size; ++b) {
        t[a * size + b] = double(monomial::product_sign(a, b));
      }
    }
    return t;
  }();
  return table;
}

void require_same_n(const GrassmannElement& a, const GrassmannElement& b, const char* op) {
  if (a.n() != b.n()) {
    throw DomainError(std::string(op) + ": generator count mismatch (" + std::to_string(a.n()) +
                      " vs " + std::to_string(b.n()) + ")");
  }
}

void require_generator(int n, int i, const char* op) {
  if (i < 1 || i > n) {
    throw DomainError(std::string(op) + ": generator index " + std::to_string(i) +
                      " outside 1.." + std::to_string(n));
  }
}

// Sign of the permutation sorting `idx` (all entries distinct).
int sort_sign(std::vector<int> idx) {
  int sign = 1;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (idx[i] == idx[j]) return 0;
      if (idx[i] > idx[j]) sign = -sign;
    }
  }
  return sign;
}

std::string format_complex(Complex c) {
  std::ostringstream os;
  os.precision(6);
  if (c.imag() == 0.0) {
    os << c.real();
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

}  // namespace

const char* to_string(Parity p) {
  switch (p) {
    case Parity::Even: return "even";
    case Parity::Odd: return "odd";
    case Parity::Mixed: return "mixed";
  }
  return "mixed";
}

double canonicalization_threshold() { return g_canon_eps.load(std::memory_order_relaxed); }
void set_canonicalization_threshold(double eps) { g_canon_eps.store(eps, std::memory_order_relaxed); }
double comparison_tolerance() { return g_compare_eps.load(std::memory_order_relaxed); }
void set_comparison_tolerance(double eps) { g_compare_eps.store(eps, std::memory_order_relaxed); }

namespace monomial {

Monomial from_indices(const std::vector<int>& sorted_indices) {
  Monomial m = 0;
  for (int i : sorted_indices) {
    if (i < 1 || i > kMaxGenerators) throw DomainError("monomial index out of range");
    const Monomial bit = Monomial{1} << (i - 1);
    if (m & bit) throw DomainError("monomial repeats generator " + std::to_string(i));
    m |= bit;
  }
  return m;
}

std::vector<int> indices(Monomial m) {
  std::vector<int> out;
  while (m) {
    const int b = std::countr_zero(m);
    out.push_back(b + 1);
    m &= m - 1;
  }
  return out;
}

int degree(Monomial m) { return std::popcount(m); }

int product_sign(Monomial a, Monomial b) {
  if (a & b) return 0;
  int swaps = 0;
  while (b) {
    const int bit = std::countr_zero(b);
    swaps += std::popcount(bit >= 63 ? Monomial{0} : (a >> (bit + 1)));
    b &= b - 1;
  }
  return (swaps & 1) ? -1 : 1;
}

}  // namespace monomial

// ---------------------------------------------------------------------------
// ConjugationTable

ConjugationTable::ConjugationTable(std::vector<int> pairing) : pairing_(std::move(pairing)) {
  const int n = size();
  for (int i = 1; i <= n; ++i) {
    const int p = pairing_[i - 1];
    if (p < 1 || p > n) throw DomainError("conjugation table: partner out of range");
    if (pairing_[p - 1] != i) throw DomainError("conjugation table is not an involution");
  }
}

ConjugationTable ConjugationTable::halves(int n) {
  if (n <= 0 || n % 2 != 0) throw DomainError("halves pairing needs an even generator count");
  std::vector<int> p(n);
  for (int i = 1; i <= n / 2; ++i) {
    p[i - 1] = i + n / 2;
    p[i + n / 2 - 1] = i;
  }
  return ConjugationTable(std::move(p));
}

ConjugationTable ConjugationTable::self_conjugate(int n) {
  std::vector<int> p(n);
  for (int i = 1; i <= n; ++i) p[i - 1] = i;
  return ConjugationTable(std::move(p));
}

int ConjugationTable::partner(int i) const {
  require_generator(size(), i, "conjugation table");
  return pairing_[i - 1];
}

// ---------------------------------------------------------------------------
// GrassmannElement

GrassmannElement::GrassmannElement(int n) : n_(n) {
  if (n < 1 || n > kMaxGenerators) {
    throw DomainError("generator count must be in 1.." + std::to_string(kMaxGenerators));
  }
}

GrassmannElement::GrassmannElement(int n, std::vector<Term> terms) : GrassmannElement(n) {
  const Monomial allowed = n == 64 ? ~Monomial{0} : ((Monomial{1} << n) - 1);
  for (const auto& t : terms) {
    if (t.first & ~allowed) throw DomainError("monomial uses a generator beyond N");
  }
  terms_ = std::move(terms);
  std::sort(terms_.begin(), terms_.end(),
            [](const Term& a, const Term& b) { return a.first < b.first; });
  std::vector<Term> merged;
  merged.reserve(terms_.size());
  for (const auto& t : terms_) {
    if (!merged.empty() && merged.back().first == t.first) {
      merged.back().second += t.second;
    } else {
      merged.push_back(t);
    }
  }
  terms_ = std::move(merged);
  canonicalize();
}

GrassmannElement GrassmannElement::scalar(int n, Complex c) {
  return GrassmannElement(n, {{Monomial{0}, c}});
}

GrassmannElement GrassmannElement::generator(int n, int i) {
  require_generator(n, i, "generator");
  return GrassmannElement(n, {{Monomial{1} << (i - 1), 1.0}});
}

GrassmannElement GrassmannElement::product_of(int n, const std::vector<int>& indices, Complex c) {
  for (int i : indices) require_generator(n, i, "product_of");
  const int sign = sort_sign(indices);
  if (sign == 0) return zero(n);
  std::vector<int> sorted = indices;
  std::sort(sorted.begin(), sorted.end());
  return GrassmannElement(n, {{monomial::from_indices(sorted), c * double(sign)}});
}

void GrassmannElement::canonicalize() {
  const double eps = canonicalization_threshold();
  const double eps2 = eps * eps;
  std::erase_if(terms_, [eps2](const Term& t) { return std::norm(t.second) < eps2; });
}

Complex GrassmannElement::coefficient(Monomial m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, Monomial key) { return t.first < key; });
  return (it != terms_.end() && it->first == m) ? it->second : Complex{};
}

Parity GrassmannElement::parity() const {
  bool even = false, odd = false;
  for (const auto& t : terms_) {
    (monomial::degree(t.first) % 2 == 0 ? even : odd) = true;
  }
  if (even && odd) return Parity::Mixed;
  return odd ? Parity::Odd : Parity::Even;
}

bool GrassmannElement::is_even() const { return parity() == Parity::Even; }
bool GrassmannElement::is_odd() const { return is_zero() || parity() == Parity::Odd; }

GrassmannElement GrassmannElement::even_part() const {
  GrassmannElement r(n_);
  for (const auto& t : terms_) {
    if (monomial::degree(t.first) % 2 == 0) r.terms_.push_back(t);
  }
  return r;
}

GrassmannElement GrassmannElement::odd_part() const {
  GrassmannElement r(n_);
  for (const auto& t : terms_) {
    if (monomial::degree(t.first) % 2 == 1) r.terms_.push_back(t);
  }
  return r;
}

GrassmannElement GrassmannElement::soul() const {
  GrassmannElement r(n_);
  for (const auto& t : terms_) {
    if (t.first != 0) r.terms_.push_back(t);
  }
  return r;
}

double GrassmannElement::max_abs() const {
  double m = 0.0;
  for (const auto& t : terms_) m = std::max(m, std::abs(t.second));
  return m;
}

bool GrassmannElement::approx_equal(const GrassmannElement& other, double tol) const {
  return (*this - other).max_abs() <= tol;
}

GrassmannElement GrassmannElement::operator-() const {
  GrassmannElement r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

GrassmannElement& GrassmannElement::operator+=(const GrassmannElement& o) {
  require_same_n(*this, o, "add");
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->first < b->first)) {
      out.push_back(*a++);
    } else if (a == terms_.end() || b->first < a->first) {
      out.push_back(*b++);
    } else {
      out.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  canonicalize();
  return *this;
}

GrassmannElement& GrassmannElement::operator-=(const GrassmannElement& o) { return *this += -o; }

GrassmannElement& GrassmannElement::operator*=(Complex c) {
  for (auto& t : terms_) t.second *= c;
  canonicalize();
  return *this;
}

GrassmannElement operator*(const GrassmannElement& a, const GrassmannElement& b) {
  require_same_n(a, b, "mul");
  GrassmannElement r(a.n_);
  if (a.is_zero() || b.is_zero()) return r;
  if (a.n_ <= kSignTableLimit) {
    // Enumerate, for each monomial of a, the disjoint submasks present in b.
    constexpr std::size_t size = std::size_t{1} << kSignTableLimit;
    const std::vector<double>& signs = sign_table();
    const Monomial full = (Monomial{1} << a.n_) - 1;
    std::array<double, size> acc_re{};
    std::array<double, size> acc_im{};
    std::size_t submasks = 0;
    for (const auto& t : a.terms_) submasks += std::size_t{1} << (a.n_ - monomial::degree(t.first));
    if (submasks < a.terms_.size() * b.terms_.size()) {
      std::array<double, size> b_re{};
      std::array<double, size> b_im{};
      for (const auto& [mb, cb] : b.terms_) {
        b_re[mb] = cb.real();
        b_im[mb] = cb.imag();
      }
      for (const auto& [ma, ca] : a.terms_) {
        const Monomial free = full & ~ma;
        const double* row = &signs[ma * size];
        const double ar = ca.real(), ai = ca.imag();
        for (Monomial mb = free;; mb = (mb - 1) & free) {
          const double br = row[mb] * b_re[mb], bi = row[mb] * b_im[mb];
          acc_re[ma | mb] += ar * br - ai * bi;
          acc_im[ma | mb] += ar * bi + ai * br;
          if (mb == 0) break;
        }
      }
    } else {
      for (const auto& [ma, ca] : a.terms_) {
        const double* row = &signs[ma * size];
        for (const auto& [mb, cb] : b.terms_) {
          if (ma & mb) continue;
          const Complex p = row[mb] * (ca * cb);
          acc_re[ma | mb] += p.real();
          acc_im[ma | mb] += p.imag();
        }
      }
    }
    const double eps = canonicalization_threshold();
    r.terms_.reserve(full + 1);
    for (std::size_t m = 0; m <= full; ++m) {
      const Complex c{acc_re[m], acc_im[m]};
      if (std::norm(c) >= eps * eps) r.terms_.emplace_back(Monomial(m), c);
    }
    return r;
  } else if (a.n_ <= kDenseAccumulatorLimit) {
    std::vector<Complex> acc(std::size_t{1} << a.n_);
    std::vector<char> touched(acc.size(), 0);
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        const int s = monomial::product_sign(ma, mb);
        if (s == 0) continue;
        acc[ma | mb] += double(s) * ca * cb;
        touched[ma | mb] = 1;
      }
    }
    for (std::size_t m = 0; m < acc.size(); ++m) {
      if (touched[m]) r.terms_.emplace_back(Monomial(m), acc[m]);
    }
  } else {
    std::unordered_map<Monomial, Complex> acc;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        const int s = monomial::product_sign(ma, mb);
        if (s == 0) continue;
        acc[ma | mb] += double(s) * ca * cb;
      }
    }
    r.terms_.assign(acc.begin(), acc.end());
    std::sort(r.terms_.begin(), r.terms_.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
  }
  r.canonicalize();
  return r;
}

bool operator==(const GrassmannElement& a, const GrassmannElement& b) {
  return a.n_ == b.n_ && a.terms_ == b.terms_;
}

std::string GrassmannElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << format_complex(c);
    for (int i : monomial::indices(m)) os << "*t" << i;
  }
  return os.str();
}

GrassmannElement add(const GrassmannElement& x, const GrassmannElement& y) { return x + y; }
GrassmannElement mul(const GrassmannElement& x, const GrassmannElement& y) { return x * y; }

GrassmannElement exp_even(const GrassmannElement& x) {
  if (!x.is_even()) throw ParityError("exp_even: argument is not even");
  const int n = x.n();
  const GrassmannElement s = x.soul();
  GrassmannElement sum = GrassmannElement::one(n);
  GrassmannElement term = GrassmannElement::one(n);
  for (int k = 1; k <= n / 2 + 1; ++k) {
    term = term * s * (1.0 / k);
    if (term.is_zero()) break;
    sum += term;
  }
  return sum * std::exp(x.body());
}

GrassmannElement log_even(const GrassmannElement& x) {
  if (!x.is_even()) throw ParityError("log_even: argument is not even");
  const Complex b = x.body();
  if (b == Complex{}) throw NotInvertibleError("log_even: zero body");
  const int n = x.n();
  const GrassmannElement r = x.soul() * (1.0 / b);
  GrassmannElement sum = GrassmannElement::scalar(n, std::log(b));
  GrassmannElement power = GrassmannElement::one(n);
  for (int k = 1; k <= n / 2 + 1; ++k) {
    power = power * r;
    if (power.is_zero()) break;
    sum += power * ((k % 2 == 1 ? 1.0 : -1.0) / k);
  }
  return sum;
}

GrassmannElement inv(const GrassmannElement& x) {
  if (!x.is_even()) throw ParityError("inv: argument is not even");
  const Complex b = x.body();
  if (b == Complex{}) throw NotInvertibleError("inv: element is not invertible (zero body)");
  const int n = x.n();
  const GrassmannElement r = x.soul() * (-1.0 / b);
  GrassmannElement sum = GrassmannElement::one(n);
  GrassmannElement power = GrassmannElement::one(n);
  for (int k = 1; k <= n / 2 + 1; ++k) {
    power = power * r;
    if (power.is_zero()) break;
    sum += power;
  }
  return sum * (1.0 / b);
}

GrassmannElement conjugate(const GrassmannElement& x, const ConjugationTable& table) {
  if (table.size() != x.n()) throw DomainError("conjugate: table size differs from N");
  std::vector<GrassmannElement::Term> out;
  out.reserve(x.size());
  for (const auto& [m, c] : x.terms()) {
    std::vector<int> idx = monomial::indices(m);
    std::reverse(idx.begin(), idx.end());
    for (int& i : idx) i = table.partner(i);
    const int sign = sort_sign(idx);
    std::sort(idx.begin(), idx.end());
    out.emplace_back(monomial::from_indices(idx), double(sign) * std::conj(c));
  }
  return GrassmannElement(x.n(), std::move(out));
}

GrassmannElement left_derivative(const GrassmannElement& x, int i) {
  require_generator(x.n(), i, "left_derivative");
  const Monomial bit = Monomial{1} << (i - 1);
  std::vector<GrassmannElement::Term> out;
  for (const auto& [m, c] : x.terms()) {
    if (!(m & bit)) continue;
    const int before = std::popcount(m & (bit - 1));
    out.emplace_back(m & ~bit, (before % 2 ? -1.0 : 1.0) * c);
  }
  return GrassmannElement(x.n(), std::move(out));
}

}  // namespace glh
