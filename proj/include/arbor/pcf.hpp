#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arbor/families.hpp"
#include "arbor/poly.hpp"
#include "arbor/rational.hpp"

namespace arbor {

// Forward critical orbit of f. When every critical point is rational the
// orbit table is explicit; otherwise each step is encoded as the monic
// squarefree polynomial whose root set is f^k(C_f), advanced by the
// resultant pushforward P_k(y) ~ Res_z(P_{k-1}(z), y - f(z)).
struct CriticalOrbit {
  Poly f;
  bool rational = false;
  std::vector<Rat> points;             // distinct critical points (rational case)
  std::vector<int> mults;              // multiplicity of each as a root of f'
  std::vector<std::vector<Rat>> orbit; // orbit[k][i] = f^k(points[i])
  std::vector<Poly> set_polys;         // set encodings, index k = 0..steps
  int steps = 0;                       // largest k computed
};

struct PcfProfile {
  bool is_pcf = false;
  std::string reason;  // set when not PCF within bound
  int tail = -1;       // L
  int period = -1;     // O
  int degree = 0;
  bool degree_odd = false;
  bool leading_coeff_square = false;
  // Lemma case law: (case_id, n_star, m_star) with disc(f^{n_star} - alpha)
  // a perfect square in K_f^{m_star}(alpha).
  int case_id = 0;
  int n_star = 0;
  int m_star = 0;
  Family target;  // E^{2O} when degree odd and L <= 1, else F^(n_star, m_star)
};

struct DiscReport {
  int n = 0;
  Rat disc_value;          // recursion output; equals the direct resultant oracle
  int a_parity_sign = 1;   // (-1)^{A(d,n)}
  Int b_exponent;          // B(d,n) = d^{2n-1} - 1
  Rat nonsquare_part;
  Rat square_quotient;     // disc / nonsquare_part
  bool quotient_is_square = false;
  std::optional<int> predicted_square_field;  // m_star when PCF and n == n_star
  std::optional<bool> square_verified;        // exact check when m_star == 0
};

struct SquareVerification {
  int case_id = 0;
  int n_star = 0;
  int m_star = 0;
  std::string mode;  // "exact" (m_star == 0) or "structural"
  bool ok = false;
};

CriticalOrbit critical_orbit(const Poly& f, int max_iters = 64);
PcfProfile pcf_classify(const Poly& f, int max_iters = 64);

// Product over critical points (with f'-multiplicity) of f^k(c) - alpha,
// evaluated exactly as Res(f', f^k - alpha) / lc(f')^{d^k}.
Rat critical_product(const Poly& f, const Rat& alpha, int k);

// (-1)^{A(d,n)} with A(d,n) = d^n (d^n - 1)/2 + d * d^{n-1}(d^{n-1} - 1)/2.
int disc_parity_sign(int d, int n);
Int disc_b_exponent(int d, int n);

DiscReport disc_iterate(const Poly& f, const Rat& alpha, int n);
Rat nonsquare_part(const Poly& f, const Rat& alpha, int n);

PcfProfile square_prediction(const Poly& f);  // throws if not PCF within bound
SquareVerification verify_square_prediction(const Poly& f, const Rat& alpha);
Family embedding_target(const Poly& f);

}  // namespace arbor
