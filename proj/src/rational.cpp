#include "arbor/rational.hpp"

#include <stdexcept>

namespace arbor {

Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rat pow_rat(const Rat& base, const Int& e) {
  if (!e.fits_slong_p()) throw std::overflow_error("pow_rat: exponent out of range");
  long k = e.get_si();
  if (k == 0) return Rat(1);
  if (base == 0 && k < 0) throw std::domain_error("pow_rat: 0 to a negative power");
  unsigned long a = static_cast<unsigned long>(k < 0 ? -k : k);
  Int num = pow_int(Int(base.get_num()), a);
  Int den = pow_int(Int(base.get_den()), a);
  Rat r = k < 0 ? Rat(den, num) : Rat(num, den);
  r.canonicalize();
  return r;
}

bool is_square_int(const Int& n, Int* root) {
  if (sgn(n) < 0) return false;
  if (mpz_perfect_square_p(n.get_mpz_t()) == 0) return false;
  if (root) mpz_sqrt(root->get_mpz_t(), n.get_mpz_t());
  return true;
}

bool is_square_rat(const Rat& q, Rat* root) {
  Int rn, rd;
  if (!is_square_int(Int(q.get_num()), &rn)) return false;
  if (!is_square_int(Int(q.get_den()), &rd)) return false;
  if (root) {
    *root = Rat(rn, rd);
    root->canonicalize();
  }
  return true;
}

Rat parse_rat(const std::string& text) {
  Rat q;
  if (q.set_str(text, 10) != 0) throw std::invalid_argument("bad rational: '" + text + "'");
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  q.canonicalize();
  return q;
}

std::string rat_to_string(const Rat& q) { return q.get_str(); }

}  // namespace arbor
