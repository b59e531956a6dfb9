#include "psl2lab/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_set>

#include "psl2lab/error.hpp"

namespace psl2lab::quadform {

namespace {

std::int64_t isqrt(std::int64_t n) {
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

void require_valid(std::int64_t D) {
  if (!is_valid_discriminant(D)) {
    throw precondition_error(std::to_string(D) + " is not a valid discriminant");
  }
}

// Primes up to 2^16, enough to factor anything below 2^32.
const std::vector<std::int64_t>& small_primes() {
  static const std::vector<std::int64_t> primes = [] {
    constexpr int limit = 1 << 16;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::int64_t> out;
    for (int p = 2; p <= limit; ++p) {
      if (composite[p]) continue;
      out.push_back(p);
      for (long q = static_cast<long>(p) * p; q <= limit; q += p) composite[q] = true;
    }
    return out;
  }();
  return primes;
}

// Positive divisors d of m with lo < 2d < hi (bounds exclusive, doubled to
// stay in integers).
void divisors_in_window(std::int64_t m, std::int64_t lo2, std::int64_t hi2,
                        std::vector<std::int64_t>& out) {
  out.clear();
  std::vector<std::pair<std::int64_t, int>> factors;
  std::int64_t rest = m;
  for (std::int64_t p : small_primes()) {
    if (p * p > rest) break;
    if (rest % p != 0) continue;
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    factors.emplace_back(p, e);
  }
  if (rest > 1) factors.emplace_back(rest, 1);

  std::vector<std::int64_t> divs{1};
  for (auto [p, e] : factors) {
    const std::size_t n = divs.size();
    std::int64_t pk = 1;
    for (int i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < n; ++j) divs.push_back(divs[j] * pk);
    }
  }
  for (std::int64_t d : divs) {
    if (2 * d > lo2 && 2 * d < hi2) out.push_back(d);
  }
}

struct FormHash {
  std::size_t operator()(const QuadraticForm& f) const noexcept {
    return std::hash<std::int64_t>{}(f.a * 0x9E3779B97F4A7C15LL ^ f.b);
  }
};

// Continued fraction of omega = (P0 + sqrt D)/2 with P0 the largest integer
// below sqrt D of the parity of D. omega is reduced, so its expansion is
// purely periodic; with period l the fundamental unit is q_{l-1} omega +
// q_{l-2} and has norm (-1)^l.
struct CfUnit {
  mpz_class x;  // eps0 = (x + y sqrt D)/2
  mpz_class y;
  int norm;
};

std::optional<CfUnit> unit_from_continued_fraction(std::int64_t D,
                                                   std::optional<double> max_log_q) {
  const std::int64_t r = isqrt(D);
  const std::int64_t p0 = ((r - D) % 2 == 0) ? r : r - 1;
  const std::int64_t q0 = 2;

  std::int64_t P = p0;
  std::int64_t Q = q0;
  mpz_class q_prev = 0;  // q_{k-1}
  mpz_class q_curr = 1;  // q_k, starts at q_0 = 1
  int period = 0;
  for (;;) {
    const std::int64_t a = (P + r) / Q;
    const std::int64_t P_next = a * Q - P;
    const std::int64_t Q_next = (D - P_next * P_next) / Q;
    ++period;
    P = P_next;
    Q = Q_next;
    if (P == p0 && Q == q0) break;
    // advance convergent denominators: q_{k+1} = a_{k+1} q_k + q_{k-1}
    const std::int64_t a_next = (P + r) / Q;
    mpz_class q_next = q_curr * a_next + q_prev;
    q_prev = std::move(q_curr);
    q_curr = std::move(q_next);
    if (max_log_q && log_big(q_curr) > *max_log_q) return std::nullopt;
  }
  // q_curr = q_{l-1}, q_prev = q_{l-2}
  CfUnit u;
  u.y = q_curr;
  u.x = q_curr * p0 + 2 * q_prev;
  u.norm = (period % 2 == 0) ? 1 : -1;
  return u;
}

PellSolution square_unit(const mpz_class& x, const mpz_class& y, std::int64_t D) {
  // ((x + y sqrt D)/2)^2 = ((x^2 + D y^2)/2 + x y sqrt D)/2
  PellSolution s;
  s.x = (x * x + mpz_class(static_cast<long>(D)) * y * y) / 2;
  s.y = x * y;
  return s;
}

}  // namespace

bool QuadraticForm::is_primitive() const {
  return std::gcd(std::gcd(a, b), c) == 1;
}

bool QuadraticForm::is_reduced() const {
  const std::int64_t D = discriminant();
  if (D <= 0 || b <= 0) return false;
  if (b * b >= D) return false;
  const std::int64_t two_a = 2 * (a < 0 ? -a : a);
  // sqrt(D) < 2|a| + b
  if ((two_a + b) * (two_a + b) <= D) return false;
  // 2|a| - b < sqrt(D)
  const std::int64_t lower = two_a - b;
  return lower <= 0 || lower * lower < D;
}

bool is_valid_discriminant(std::int64_t D) {
  if (D <= 0) return false;
  if (D % 4 != 0 && D % 4 != 1) return false;
  const std::int64_t r = isqrt(D);
  return r * r != D;
}

std::vector<std::int64_t> valid_discriminants(std::int64_t lo, std::int64_t hi) {
  if (lo <= 0 || lo > hi) throw precondition_error("valid_discriminants requires 0 < lo <= hi");
  std::vector<std::int64_t> out;
  for (std::int64_t D = lo; D <= hi; ++D) {
    if (is_valid_discriminant(D)) out.push_back(D);
  }
  return out;
}

std::vector<QuadraticForm> reduced_forms(std::int64_t D) {
  require_valid(D);
  const std::int64_t r = isqrt(D);
  std::vector<QuadraticForm> forms;
  std::vector<std::int64_t> divs;
  for (std::int64_t b = (D % 2 == 0) ? 2 : 1; b <= r; b += 2) {
    const std::int64_t m = (D - b * b) / 4;  // a c = -m
    // sqrt(D) - b < 2|a| < sqrt(D) + b; widen by one and let is_reduced decide
    divisors_in_window(m, r - b - 1, r + b + 2, divs);
    for (std::int64_t d : divs) {
      for (QuadraticForm f : {QuadraticForm{d, b, -m / d}, QuadraticForm{-d, b, m / d}}) {
        if (f.is_reduced() && f.is_primitive()) forms.push_back(f);
      }
    }
  }
  std::sort(forms.begin(), forms.end());
  return forms;
}

QuadraticForm reduction_step(const QuadraticForm& f) {
  const std::int64_t D = f.discriminant();
  if (f.c == 0 || D <= 0) throw precondition_error("reduction_step needs an indefinite form with c != 0");
  const std::int64_t r = isqrt(D);
  const std::int64_t two_c = 2 * (f.c < 0 ? -f.c : f.c);
  std::int64_t residue = (r + f.b) % two_c;
  if (residue < 0) residue += two_c;
  const std::int64_t b_next = r - residue;
  return QuadraticForm{f.c, b_next, (b_next * b_next - D) / (4 * f.c)};
}

int narrow_class_number(std::int64_t D) {
  const auto forms = reduced_forms(D);
  std::unordered_set<QuadraticForm, FormHash> unvisited(forms.begin(), forms.end());
  int cycles = 0;
  for (const auto& start : forms) {
    if (!unvisited.count(start)) continue;
    ++cycles;
    QuadraticForm f = start;
    do {
      unvisited.erase(f);
      f = reduction_step(f);
    } while (f != start);
  }
  return cycles;
}

int oracle_class_count(std::int64_t D, std::int64_t oracle_bound) {
  require_valid(D);
  if (D > oracle_bound) {
    throw precondition_error("oracle_class_count: D = " + std::to_string(D) +
                             " exceeds oracle bound " + std::to_string(oracle_bound));
  }
  const std::int64_t box = D;
  // Nodes are (a, b); c is implied by the discriminant. |b| <= 2 box + 1 for
  // any form in the box, so packing into one 64-bit key is safe.
  const std::int64_t b_span = 4 * box + 8;
  auto key = [&](std::int64_t a, std::int64_t b) {
    return static_cast<std::uint64_t>((a + box) * b_span + (b + 2 * box + 4));
  };

  // Open-addressing visited set.
  std::vector<std::uint64_t> slots(1 << 12, ~0ULL);
  std::size_t used = 0;
  auto insert = [&](std::uint64_t k) {
    if (4 * (used + 1) > 3 * slots.size()) {
      std::vector<std::uint64_t> old(slots.size() * 2, ~0ULL);
      old.swap(slots);
      for (std::uint64_t v : old) {
        if (v == ~0ULL) continue;
        std::size_t i = (v * 0x9E3779B97F4A7C15ULL) >> 20 & (slots.size() - 1);
        while (slots[i] != ~0ULL) i = (i + 1) & (slots.size() - 1);
        slots[i] = v;
      }
    }
    std::size_t i = (k * 0x9E3779B97F4A7C15ULL) >> 20 & (slots.size() - 1);
    while (slots[i] != ~0ULL) {
      if (slots[i] == k) return false;
      i = (i + 1) & (slots.size() - 1);
    }
    slots[i] = k;
    ++used;
    return true;
  };

  struct Node {
    std::int64_t a, b, c;
  };
  auto in_box = [&](const Node& n) {
    return n.a != 0 && n.c != 0 && std::abs(n.a) <= box && std::abs(n.c) <= box;
  };

  // Every class properly represents its minimum m with |m| < sqrt(D), hence
  // contains a form (m, b, c) with -|m| < b <= |m|. Those are the seeds.
  std::int64_t root = 0;
  while ((root + 1) * (root + 1) <= D) ++root;

  int classes = 0;
  std::vector<Node> queue;
  for (std::int64_t a = -root; a <= root; ++a) {
    if (a == 0) continue;
    const std::int64_t abs_a = std::abs(a);
    for (std::int64_t b = -abs_a + 1; b <= abs_a; ++b) {
      const std::int64_t num = b * b - D;
      if (num % (4 * a) != 0) continue;
      const Node seed{a, b, num / (4 * a)};
      if (std::gcd(std::gcd(seed.a, seed.b), seed.c) != 1) continue;
      if (!insert(key(seed.a, seed.b))) continue;
      ++classes;
      queue.assign(1, seed);
      while (!queue.empty()) {
        const Node n = queue.back();
        queue.pop_back();
        const Node next[3] = {
            {n.a, n.b + 2 * n.a, n.a + n.b + n.c},  // x -> x + y
            {n.a, n.b - 2 * n.a, n.a - n.b + n.c},  // x -> x - y
            {n.c, -n.b, n.a},                       // (x, y) -> (-y, x)
        };
        for (const Node& m : next) {
          if (in_box(m) && insert(key(m.a, m.b))) queue.push_back(m);
        }
      }
    }
  }
  return classes;
}

double log_big(const mpz_class& n) {
  if (sgn(n) <= 0) throw precondition_error("log_big needs a positive integer");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());  // n = mant * 2^exp2
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

double log_quadratic_unit(const mpz_class& x, int norm) {
  // eps = (x + sqrt(x^2 - 4 norm))/2, so log eps = log x + log((1 + sqrt(1 - u))/2)
  // with u = 4 norm / x^2.
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, x.get_mpz_t());
  double u = 0.0;
  if (exp2 < 500) {
    const double xd = std::ldexp(mant, static_cast<int>(exp2));
    u = 4.0 * norm / (xd * xd);
  }
  const double root = std::sqrt(1.0 - u);
  const double correction = std::log1p(-u / (1.0 + root) / 2.0);
  return log_big(x) + correction;
}

PellSolution pell4_fundamental(std::int64_t D) {
  require_valid(D);
  auto unit = *unit_from_continued_fraction(D, std::nullopt);
  if (unit.norm == 1) return {unit.x, unit.y};
  return square_unit(unit.x, unit.y, D);
}

std::optional<PellSolution> pell4_fundamental_bounded(std::int64_t D, double max_log) {
  require_valid(D);
  // eps+ >= eps0 > q_{l-1}; eps+ = eps0^2 when the norm is -1.
  auto unit = unit_from_continued_fraction(D, max_log);
  if (!unit) return std::nullopt;
  PellSolution s = unit->norm == 1 ? PellSolution{unit->x, unit->y}
                                   : square_unit(unit->x, unit->y, D);
  if (log_quadratic_unit(s.x, 1) > max_log) return std::nullopt;
  return s;
}

UnitInfo fundamental_unit(std::int64_t D) {
  require_valid(D);
  const auto unit = *unit_from_continued_fraction(D, std::nullopt);
  return UnitInfo{log_quadratic_unit(unit.x, unit.norm), unit.norm};
}

DiscriminantRecord make_record(std::int64_t D, int h_narrow, const PellSolution& pell4) {
  require_valid(D);
  DiscriminantRecord rec;
  rec.D = D;
  rec.pell_x = pell4.x;
  rec.pell_y = pell4.y;
  // eps+ is the square of a norm -1 unit (x0 + y0 sqrt D)/2 exactly when
  // x - 2 = x0^2 and x + 2 = D y0^2.
  const mpz_class x_minus = pell4.x - 2;
  const mpz_class x_plus = pell4.x + 2;
  const mpz_class d(static_cast<long>(D));
  bool negative = false;
  if (mpz_perfect_square_p(x_minus.get_mpz_t()) && mpz_divisible_p(x_plus.get_mpz_t(), d.get_mpz_t())) {
    const mpz_class q = x_plus / d;
    negative = mpz_perfect_square_p(q.get_mpz_t()) != 0;
  }
  rec.unit_norm = negative ? -1 : 1;
  rec.h_narrow = h_narrow;
  if (negative) {
    rec.h_wide = h_narrow;
    mpz_class x0;
    mpz_sqrt(x0.get_mpz_t(), x_minus.get_mpz_t());
    rec.log_eps_fund = log_quadratic_unit(x0, -1);
    rec.log_eps_plus = 2.0 * rec.log_eps_fund;
  } else {
    rec.h_wide = h_narrow / 2;
    rec.log_eps_fund = log_quadratic_unit(pell4.x, 1);
    rec.log_eps_plus = rec.log_eps_fund;
  }
  return rec;
}

DiscriminantRecord make_record(std::int64_t D) {
  return make_record(D, narrow_class_number(D), pell4_fundamental(D));
}

}  // namespace psl2lab::quadform
