#include "motzkinlab/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mpfr.h>

#include <Eigen/Dense>

#include "motzkinlab/errors.hpp"
#include "motzkinlab/hamiltonian.hpp"

namespace motzkin {

namespace {

constexpr mpfr_prec_t kWorkingBits = 160;

class BigFloat {
 public:
  BigFloat() { mpfr_init2(v_, kWorkingBits); mpfr_set_zero(v_, 1); }
  ~BigFloat() { mpfr_clear(v_); }
  BigFloat(const BigFloat&) = delete;
  BigFloat& operator=(const BigFloat&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

 private:
  mpfr_t v_;
};

// Calls visit(m, |C_{0,m}(half)|) for m = 0..half in order, using the
// trinomial recurrence with a three-term sliding window.
void for_each_half_class_size(unsigned half, const std::function<void(unsigned, const CountInt&)>& visit) {
  if (half == 0) {
    visit(0, CountInt(1));
    return;
  }
  const unsigned N = half;
  // a_j = [x^j] (1 + x + x^2)^N; the class size for excess m is a_{N+m} - a_{N+m+2}.
  CountInt tmp, size;
  // a_{N+m}, a_{N+m+1} wait here until a_{N+m+2} is known
  std::vector<CountInt> pending;
  auto offer = [&](unsigned j, const CountInt& a_j) {
    if (j < N) return;
    pending.push_back(a_j);
    if (pending.size() == 3) {
      const unsigned m = j - N - 2;
      size = pending[0] - pending[2];
      visit(m, size);
      pending.erase(pending.begin());
    }
  };
  CountInt a_prev = 1;  // a_{j-1}
  CountInt a_cur = N;   // a_j, j = 1
  offer(0, a_prev);
  offer(1, a_cur);
  for (unsigned j = 1; j < 2 * N; ++j) {
    tmp = a_prev * (2 * N - j + 1);
    if (j <= N) {
      tmp += a_cur * (N - j);
    } else {
      tmp -= a_cur * (j - N);
    }
    mpz_divexact_ui(tmp.get_mpz_t(), tmp.get_mpz_t(), j + 1);
    a_prev.swap(a_cur);
    a_cur.swap(tmp);
    offer(j + 1, a_cur);
  }
  // a_j = 0 beyond 2N: flush the last two classes.
  const CountInt zero = 0;
  offer(2 * N + 1, zero);
  offer(2 * N + 2, zero);
}

void require_even(unsigned n, const char* who) {
  if (n < 2 || n % 2 != 0) throw InputError(std::string(who) + ": n must be even and at least 2");
}

}  // namespace

std::size_t SchmidtSpectrum::schmidt_rank() const {
  return static_cast<std::size_t>(std::count_if(p.begin(), p.end(), [](const Rational& x) { return sgn(x) > 0; }));
}

bool SchmidtSpectrum::sums_to_one() const {
  Rational s = 0;
  for (const auto& x : p) s += x;
  return s == 1;
}

std::vector<double> SchmidtSpectrum::as_doubles() const {
  std::vector<double> out;
  out.reserve(p.size());
  for (const auto& x : p) out.push_back(x.get_d());
  return out;
}

SchmidtSpectrum schmidt_spectrum(unsigned n) {
  require_even(n, "schmidt_spectrum");
  SchmidtSpectrum s;
  s.n = n;
  s.motzkin = motzkin_number(n);
  s.half_class_sizes = class_size_row(n / 2);
  for (const auto& c : s.half_class_sizes) {
    Rational q(c * c, s.motzkin);
    q.canonicalize();
    s.p.push_back(std::move(q));
  }
  return s;
}

EntropyPoint entropy(unsigned n) {
  require_even(n, "entropy");
  EntropyPoint e;
  e.n = n;
  const CountInt motzkin = motzkin_number(n);
  BigFloat log2_total, acc, p, lp, term;
  mpfr_set_z(log2_total.get(), motzkin.get_mpz_t(), MPFR_RNDN);
  mpfr_log2(log2_total.get(), log2_total.get(), MPFR_RNDN);

  CountInt sum_sq = 0, sq;
  double max_p = 0.0;
  mpfr_set_zero(acc.get(), 1);
  for_each_half_class_size(n / 2, [&](unsigned, const CountInt& c) {
    if (sgn(c) > 0) ++e.schmidt_rank;
    sq = c * c;
    sum_sq += sq;
    // log2 p = log2(c^2) - log2(M_n); p = 2^{log2 p}
    mpfr_set_z(lp.get(), sq.get_mpz_t(), MPFR_RNDN);
    mpfr_log2(lp.get(), lp.get(), MPFR_RNDN);
    mpfr_sub(lp.get(), lp.get(), log2_total.get(), MPFR_RNDN);
    mpfr_ui_pow(p.get(), 2, lp.get(), MPFR_RNDN);
    mpfr_mul(term.get(), p.get(), lp.get(), MPFR_RNDN);
    mpfr_sub(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    max_p = std::max(max_p, p.to_double());
  });
  e.normalization_exact = (sum_sq == motzkin);
  e.entropy_bits = acc.to_double();
  e.c_n = e.entropy_bits - 0.5 * std::log2(static_cast<double>(n));
  e.max_pm_sqrt_n = max_p * std::sqrt(static_cast<double>(n));
  return e;
}

PmAsymptotics pm_asymptotic_check(unsigned n) {
  require_even(n, "pm_asymptotic_check");
  if (n < 100) throw InputError("pm_asymptotic_check: n must be at least 100");
  const unsigned half = n / 2;
  const double log_total = log_count(motzkin_number(n));
  std::vector<double> exact(half + 1);
  for_each_half_class_size(half, [&](unsigned m, const CountInt& c) {
    exact[m] = std::exp(2.0 * log_count(c) - log_total);
  });
  std::vector<double> approx(half + 1);
  double z = 0.0;
  for (unsigned m = 0; m <= half; ++m) {
    approx[m] = static_cast<double>(m) * m * std::exp(-3.0 * m * m / static_cast<double>(n));
    z += approx[m];
  }
  PmAsymptotics out;
  out.n = n;
  const double rn = std::sqrt(static_cast<double>(n));
  const auto lo = static_cast<unsigned>(std::ceil(rn / 2));
  const auto hi = std::min(half, static_cast<unsigned>(std::floor(2 * rn)));
  for (unsigned m = lo; m <= hi; ++m) {
    const double dev = std::abs(approx[m] / z - exact[m]) / exact[m];
    out.max_relative_deviation = std::max(out.max_relative_deviation, dev);
  }
  out.argmax = static_cast<unsigned>(std::max_element(exact.begin(), exact.end()) - exact.begin());
  out.argmax_ratio = out.argmax / std::sqrt(n / 3.0);
  out.max_pm_sqrt_n = exact[out.argmax] * rn;
  return out;
}

std::vector<double> reduced_density_spectrum(unsigned n) {
  require_even(n, "reduced_density_spectrum");
  if (n > 12) throw ResourceError("reduced_density_spectrum: n <= 12");
  const auto psi = motzkin_state_full(n);
  Eigen::Index side = 1;
  for (unsigned i = 0; i < n / 2; ++i) side *= 3;
  // Full index = a * 3^{n/2} + b with a the left-half index.
  const Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> m(psi.data(), side, side);
  const Eigen::MatrixXd rho = m * m.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rho, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + side);
  std::sort(out.rbegin(), out.rend());
  return out;
}

double schmidt_reconstruction_error(unsigned n) {
  require_even(n, "schmidt_reconstruction_error");
  if (n > 12) throw ResourceError("schmidt_reconstruction_error: n <= 12");
  const unsigned half = n / 2;
  const auto spectrum = schmidt_spectrum(n);
  std::size_t side = 1;
  for (unsigned i = 0; i < half; ++i) side *= 3;
  std::vector<double> rebuilt(side * side, 0.0);
  for (unsigned m = 0; m <= half; ++m) {
    const auto left = class_state_full(half, {0, static_cast<int>(m)});
    const auto right = class_state_full(half, {static_cast<int>(m), 0});
    const double w = std::sqrt(spectrum.p[m].get_d());
    for (std::size_t a = 0; a < side; ++a) {
      if (left[a] == 0.0) continue;
      for (std::size_t b = 0; b < side; ++b) rebuilt[a * side + b] += w * left[a] * right[b];
    }
  }
  const auto psi = motzkin_state_full(n);
  double err = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) err = std::max(err, std::abs(psi[i] - rebuilt[i]));
  return err;
}

TwistedState twisted_state_energy(unsigned n) {
  require_even(n, "twisted_state_energy");
  if (n > kFullSpaceCap) throw ResourceError("twisted_state_energy: n <= 14");
  const unsigned half = n / 2;
  const auto spectrum = schmidt_spectrum(n);

  // Twist after the index whose partial sum is nearest 1/2.
  TwistedState t;
  t.n = n;
  Rational partial = 0, best_dist = 2;
  for (unsigned m = 0; m < half; ++m) {
    partial += spectrum.p[m];
    Rational dist = abs(partial - Rational(1, 2));
    if (dist < best_dist) {
      best_dist = dist;
      t.k = m;
    }
  }
  Rational overlap = 0;
  for (unsigned m = 0; m <= half; ++m) overlap += (m <= t.k ? 1 : -1) * spectrum.p[m];
  t.overlap = overlap.get_d();

  const ClassRanker ranker(n, {0, 0});
  const double amp = 1.0 / std::sqrt(static_cast<double>(ranker.size()));
  std::vector<double> phi(ranker.size());
  std::vector<Letter> s(n);
  for (std::uint64_t r = 0; r < ranker.size(); ++r) {
    ranker.unrank_into(r, s);
    const auto m = static_cast<unsigned>(classify(std::span<const Letter>(s).first(half)).q);
    phi[r] = (m <= t.k ? amp : -amp) - t.overlap * amp;
  }
  const double nrm = norm(phi);
  double proj = 0.0;
  for (double& x : phi) {
    x /= nrm;
    proj += x * amp;
  }
  t.orthogonality = std::abs(proj);
  t.energy = sector_block(n, {0, 0}).expectation(phi);
  return t;
}

}  // namespace motzkin
