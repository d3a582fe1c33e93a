#include "uvflow/rational.hpp"

#include <ostream>

namespace uvflow {

Rat Rat::parse(const std::string& text) {
    if (text.empty()) fail(ErrorKind::BadInput, "empty rational literal");
    mpq_class q;
    if (q.set_str(text, 10) != 0)
        fail(ErrorKind::BadInput, "malformed rational literal '" + text + "'");
    if (q.get_den() == 0)
        fail(ErrorKind::BadInput, "zero denominator in '" + text + "'");
    q.canonicalize();
    return Rat(q);
}

Rat Rat::nth_root(int m) const {
    if (m <= 0) fail(ErrorKind::BadInput, "root order must be positive");
    if (m == 1) return *this;
    if (is_zero()) return Rat(0);
    if (sign() < 0 && m % 2 == 0)
        fail(ErrorKind::LeadingNotPerfectPower,
             "even root of negative rational " + str());
    mpz_class num = q_.get_num();
    mpz_class den = q_.get_den();
    mpz_class rnum, rden;
    bool neg = num < 0;
    mpz_class anum = neg ? mpz_class(-num) : num;
    if (mpz_root(rnum.get_mpz_t(), anum.get_mpz_t(), m) == 0 ||
        mpz_root(rden.get_mpz_t(), den.get_mpz_t(), m) == 0)
        fail(ErrorKind::LeadingNotPerfectPower,
             str() + " is not an exact degree-" + std::to_string(m) + " power");
    if (neg) rnum = -rnum;
    return Rat(mpq_class(rnum, rden));
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

} // namespace uvflow
