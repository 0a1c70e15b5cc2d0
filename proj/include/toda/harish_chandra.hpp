#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "toda/report.hpp"
#include "toda/special_functions.hpp"

namespace toda {

// Root e_i - e_j, 0-based indices.
struct Root {
  int i = 0, j = 0;
  bool positive() const { return i < j; }
  friend bool operator<(const Root& a, const Root& b) { return std::pair(a.i, a.j) < std::pair(b.i, b.j); }
  friend bool operator==(const Root& a, const Root& b) { return a.i == b.i && a.j == b.j; }
};

struct RootSystemA {
  int N = 1;
  std::vector<Root> positive_roots() const {
    std::vector<Root> r;
    for (int i = 0; i < N; ++i)
      for (int j = i + 1; j < N; ++j) r.push_back({i, j});
    return r;
  }
  Root simple(int k) const { return {k - 1, k}; }  // k = 1..N-1
  static int pairing(const Root& a, const Root& b) {
    return (a.i == b.i) - (a.i == b.j) - (a.j == b.i) + (a.j == b.j);
  }
  // half-sum of positive roots; unused by the Gamma-product formulas
  std::vector<double> rho() const {
    std::vector<double> r(N);
    for (int k = 0; k < N; ++k) r[k] = 0.5 * (N - 1 - 2 * k);
    return r;
  }
};

// perm[k] = s(k), 0-based. The action on vectors is (s.lambda)_{s(k)} = lambda_k.
using Permutation = std::vector<int>;
// s = s_{k_1} ... s_{k_l}, entries are simple-root indices 1..N-1
using ReducedWord = std::vector<int>;

struct Character {
  std::vector<double> c;  // f(e_alpha) per simple root
  static Character unit(int N) { return {std::vector<double>(std::size_t(std::max(N - 1, 0)), 1.0)}; }
  bool nondegenerate() const {
    return std::all_of(c.begin(), c.end(), [](double v) { return v != 0.0; });
  }
};

inline Permutation identity_permutation(int N) {
  Permutation p(N);
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Permutation longest_element(int N) {
  Permutation p(N);
  for (int k = 0; k < N; ++k) p[k] = N - 1 - k;
  return p;
}

inline Permutation simple_reflection(int N, int k) {
  if (k < 1 || k >= N) throw std::out_of_range("simple reflection index");
  Permutation p = identity_permutation(N);
  std::swap(p[k - 1], p[k]);
  return p;
}

inline void validate_permutation(const Permutation& s) {
  std::vector<int> sorted = s;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != int(k)) throw std::invalid_argument("not a permutation of 0..N-1");
}

inline Permutation compose(const Permutation& a, const Permutation& b) {
  Permutation r(a.size());
  for (std::size_t k = 0; k < a.size(); ++k) r[k] = a[b[k]];
  return r;
}

inline Permutation inverse(const Permutation& s) {
  Permutation r(s.size());
  for (std::size_t k = 0; k < s.size(); ++k) r[s[k]] = int(k);
  return r;
}

inline int length(const Permutation& s) {
  int l = 0;
  for (std::size_t a = 0; a < s.size(); ++a)
    for (std::size_t b = a + 1; b < s.size(); ++b) l += s[a] > s[b];
  return l;
}

template <class T>
std::vector<T> act(const Permutation& s, const std::vector<T>& v) {
  if (s.size() != v.size()) throw std::invalid_argument("permutation/vector size mismatch");
  std::vector<T> r(v.size());
  for (std::size_t k = 0; k < v.size(); ++k) r[s[k]] = v[k];
  return r;
}

inline Root act(const Permutation& s, const Root& a) { return {s[a.i], s[a.j]}; }

inline Permutation from_word(int N, const ReducedWord& w) {
  Permutation p = identity_permutation(N);
  for (int k : w) p = compose(p, simple_reflection(N, k));
  return p;
}

inline ReducedWord reduced_word(const Permutation& s) {
  validate_permutation(s);
  Permutation p = s;
  ReducedWord rev;
  for (bool more = true; more;) {
    more = false;
    for (std::size_t k = 0; k + 1 < p.size(); ++k)
      if (p[k] > p[k + 1]) {  // right descent: p = p' s_{k+1}
        std::swap(p[k], p[k + 1]);
        rev.push_back(int(k) + 1);
        more = true;
        break;
      }
  }
  return {rev.rbegin(), rev.rend()};
}

inline void all_reduced_words_rec(Permutation p, ReducedWord& suffix, std::vector<ReducedWord>& out) {
  bool any = false;
  for (std::size_t k = 0; k + 1 < p.size(); ++k)
    if (p[k] > p[k + 1]) {
      any = true;
      std::swap(p[k], p[k + 1]);
      suffix.push_back(int(k) + 1);
      all_reduced_words_rec(p, suffix, out);
      suffix.pop_back();
      std::swap(p[k], p[k + 1]);
    }
  if (!any) out.emplace_back(suffix.rbegin(), suffix.rend());
}

inline std::vector<ReducedWord> all_reduced_words(const Permutation& s) {
  validate_permutation(s);
  std::vector<ReducedWord> out;
  ReducedWord suffix;
  all_reduced_words_rec(s, suffix, out);
  std::sort(out.begin(), out.end());
  return out;
}

// Delta(s) = Delta_+ cap s Delta_- = {(i,j): i<j, s^{-1}(i) > s^{-1}(j)}
inline std::vector<Root> delta_set(const Permutation& s) {
  validate_permutation(s);
  const Permutation inv = inverse(s);
  std::vector<Root> r;
  for (int i = 0; i < int(s.size()); ++i)
    for (int j = i + 1; j < int(s.size()); ++j)
      if (inv[i] > inv[j]) r.push_back({i, j});
  return r;
}

// Roots s_{k1}...s_{k(r-1)} alpha_{kr} in word order.
inline std::vector<Root> word_roots(int N, const ReducedWord& w) {
  std::vector<Root> r;
  Permutation prefix = identity_permutation(N);
  for (int k : w) {
    r.push_back(act(prefix, Root{k - 1, k}));
    prefix = compose(prefix, simple_reflection(N, k));
  }
  return r;
}

// lambda_alpha = <lambda, alpha>/<alpha, alpha>
inline cplx lambda_alpha(const std::vector<cplx>& lambda, const Root& a) { return (lambda[a.i] - lambda[a.j]) / 2.0; }

inline cplx log_c_alpha_factor(const std::vector<cplx>& lambda, const Root& a) {
  const cplx x = lambda_alpha(lambda, a);
  return log_gamma(x) + 0.5 * std::log(std::numbers::pi) - log_gamma(x + 0.5);
}

inline cplx c_alpha_factor(const std::vector<cplx>& lambda, const Root& a) {
  return std::exp(log_c_alpha_factor(lambda, a));
}

inline cplx c_s(const std::vector<cplx>& lambda, const Permutation& s) {
  cplx l = 0.0;
  for (const auto& a : delta_set(s)) l += log_c_alpha_factor(lambda, a);
  return std::exp(l);
}

inline cplx c_s_by_word(const std::vector<cplx>& lambda, const ReducedWord& w) {
  cplx l = 0.0;
  for (const auto& a : word_roots(int(lambda.size()), w)) l += log_c_alpha_factor(lambda, a);
  return std::exp(l);
}

inline cplx c_function(const std::vector<cplx>& lambda) { return c_s(lambda, longest_element(int(lambda.size()))); }

inline cplx log_m_elementary(const std::vector<cplx>& lambda, int k, const Character& f) {
  if (k < 1 || k >= int(lambda.size())) throw std::out_of_range("m_elementary: simple root index");
  if (int(f.c.size()) != int(lambda.size()) - 1) throw std::invalid_argument("m_elementary: character size");
  const double fa = std::abs(f.c[k - 1]);
  if (fa == 0.0) throw std::domain_error("m_elementary: character degenerate on this root");
  const cplx x = lambda_alpha(lambda, Root{k - 1, k});
  // e(x)/e(-x) with e(x) = 2^{1-x} sqrt(pi) Gamma(x + 1/2); bracket |f|/(2 sqrt(2<a,a>)) = |f|/4
  return -2.0 * x * std::numbers::ln2 + log_gamma(x + 0.5) - log_gamma(0.5 - x) + 2.0 * x * std::log(fa / 4.0);
}

inline cplx m_elementary(const std::vector<cplx>& lambda, int k, const Character& f) {
  return std::exp(log_m_elementary(lambda, k, f));
}

// M(s_{k1}...s_{kl}, lambda): cocycle product, rightmost letter first.
inline cplx m_function_word(const ReducedWord& w, const std::vector<cplx>& lambda, const Character& f) {
  const int N = int(lambda.size());
  cplx l = 0.0;
  std::vector<cplx> mu = lambda;
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    l += log_m_elementary(mu, *it, f);
    mu = act(simple_reflection(N, *it), mu);
  }
  return std::exp(l);
}

inline cplx m_function(const Permutation& s, const std::vector<cplx>& lambda, const Character& f) {
  return m_function_word(reduced_word(s), lambda, f);
}

struct ScatteringMatrices {
  cplx S, S0;
};

inline ScatteringMatrices scattering_matrices(const std::vector<cplx>& lambda, const Character& f) {
  const Permutation w0 = longest_element(int(lambda.size()));
  const cplx s0 = c_function(lambda) / c_function(act(w0, lambda));
  return {s0 * m_function(w0, lambda, f), s0};
}

inline cplx b_denominator(const std::vector<cplx>& lambda) {
  cplx l = 0.0;
  for (std::size_t i = 0; i < lambda.size(); ++i)
    for (std::size_t j = i + 1; j < lambda.size(); ++j) l += log_gamma((lambda[i] - lambda[j]) / cplx(0, 1) + 0.5);
  return std::exp(l);
}

inline double plancherel_density(const std::vector<cplx>& lambda) {
  try {
    cplx l = 0.0;
    for (const auto& a : RootSystemA{int(lambda.size())}.positive_roots()) l += log_c_alpha_factor(lambda, a);
    return std::exp(-2.0 * l.real());
  } catch (const PoleError&) {
    return 0.0;  // c has a pole
  }
}

// M(s_k, nu) b(lambda)/b(s_k lambda). Literal reading: nu = lambda. The
// paired reading nu = 2i lambda is the one where the Gamma factors cancel.
enum class NormalizerPairing { literal, paired };

inline cplx normalizer_ratio(const std::vector<cplx>& lambda, int k, const Character& f,
                             NormalizerPairing pairing = NormalizerPairing::literal) {
  const int N = int(lambda.size());
  std::vector<cplx> nu = lambda;
  if (pairing == NormalizerPairing::paired)
    for (auto& v : nu) v *= cplx(0, 2);
  return m_elementary(nu, k, f) * b_denominator(lambda) / b_denominator(act(simple_reflection(N, k), lambda));
}

namespace detail {

inline double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

inline Permutation random_permutation(SeededRng& rng, int N) {
  Permutation p = identity_permutation(N);
  for (int k = N - 1; k > 0; --k) std::swap(p[k], p[rng.integer(0, k)]);
  return p;
}

inline std::vector<cplx> random_lambda(SeededRng& rng, int N, double re, double im) {
  std::vector<cplx> l(N);
  for (auto& v : l) v = cplx(rng.uniform(-re, re), rng.uniform(-im, im));
  return l;
}

inline std::string perm_str(const Permutation& s) {
  std::string r = "[";
  for (std::size_t k = 0; k < s.size(); ++k) r += (k ? "," : "") + std::to_string(s[k] + 1);
  return r + "]";
}

}  // namespace detail

// Max variation |R(t)/R(0) - 1| of the normalizer ratio along random lines.
inline std::pair<double, cplx> normalizer_variation(int N, int lines, std::uint64_t seed, const Character& f,
                                                    NormalizerPairing pairing) {
  SeededRng rng(seed);
  double worst = 0.0;
  cplx first = 0.0;
  for (int line = 0; line < lines; ++line) {
    const auto l0 = detail::random_lambda(rng, N, 1.0, 0.5);
    const auto d = detail::random_lambda(rng, N, 1.0, 0.5);
    const int k = int(rng.integer(1, N - 1));
    const cplx r0 = normalizer_ratio(l0, k, f, pairing);
    if (line == 0) first = r0;
    for (int t = 1; t <= 10; ++t) {
      std::vector<cplx> l = l0;
      for (int a = 0; a < N; ++a) l[a] += 0.1 * t * d[a];
      worst = std::max(worst, std::abs(normalizer_ratio(l, k, f, pairing) / r0 - 1.0));
    }
  }
  return {worst, first};
}

inline VerificationReport verify_harish_chandra(int N, int trials, std::uint64_t seed) {
  if (N < 2) throw std::out_of_range("verify hc: N must be at least 2");
  VerificationReport rep;
  rep.suite = "hc";
  rep.n = N;
  rep.seed = seed;
  SeededRng rng(seed);
  const Character f1 = Character::unit(N);

  double mult = 0.0;
  bool sets_agree = true;
  for (int t = 0; t < trials; ++t) {
    const Permutation s = detail::random_permutation(rng, N);
    const auto lam = detail::random_lambda(rng, N, 2.0, 2.0);
    const ReducedWord w = reduced_word(s);
    auto from_word = word_roots(N, w);
    auto from_set = delta_set(s);
    std::sort(from_word.begin(), from_word.end());
    sets_agree = sets_agree && from_word == from_set && int(w.size()) == length(s);
    mult = std::max(mult, detail::rel_err(c_s_by_word(lam, w), c_s(lam, s)));
  }
  rep.add("Gindikin-Karpelevich multiplicativity", sets_agree && mult <= 1e-11, mult, 1e-11);

  double coc = 0.0;
  std::string coc_w;
  for (int t = 0; t < trials; ++t) {
    const Permutation s1 = detail::random_permutation(rng, N), s2 = detail::random_permutation(rng, N);
    const auto lam = detail::random_lambda(rng, N, 2.0, 2.0);
    const double e = detail::rel_err(m_function(compose(s1, s2), lam, f1),
                                     m_function(s2, lam, f1) * m_function(s1, act(s2, lam), f1));
    if (e > coc) {
      coc = e;
      coc_w = "s1=" + detail::perm_str(s1) + " s2=" + detail::perm_str(s2);
    }
  }
  rep.add("M-function cocycle", coc <= 1e-10, coc, 1e-10, coc <= 1e-10 ? "" : coc_w);

  double words = 0.0;
  const auto all = all_reduced_words(longest_element(N));
  for (int t = 0; t < trials; ++t) {
    const auto lam = detail::random_lambda(rng, N, 2.0, 2.0);
    const cplx ref = m_function_word(all.front(), lam, f1);
    for (const auto& w : all) words = std::max(words, detail::rel_err(m_function_word(w, lam, f1), ref));
  }
  rep.add("reduced-word independence of M(w0)", words <= 1e-10, words, 1e-10);

  // 1/|c|^2 is Weyl invariant on the unitary axis lambda in i R^N
  double planch = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto lam = detail::random_lambda(rng, N, 0.0, 2.0);
    const Permutation s = detail::random_permutation(rng, N);
    planch = std::max(planch, std::abs(plancherel_density(act(s, lam)) / plancherel_density(lam) - 1.0));
  }
  rep.add("Plancherel density Weyl invariance", planch <= 1e-11, planch, 1e-11);

  const auto [var, value] = normalizer_variation(N, trials, seed, f1, NormalizerPairing::literal);
  std::ostringstream wit;
  wit << "R(first line start)=" << format_double(value.real()) << (value.imag() < 0 ? "" : "+")
      << format_double(value.imag()) << "i";
  rep.add("normalizer M(s_a)b(l)/b(s_a l) constancy", var <= 1e-8, var, 1e-8, wit.str());
  return rep;
}

}  // namespace toda
