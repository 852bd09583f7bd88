#include "heeg/heegner/forms.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "heeg/errors.hpp"

namespace heeg {

QuadForm reduce_form(const QuadForm& f) {
  Integer a = f[0], b = f[1], c = f[2];
  if (a <= 0 || b * b - 4 * a * c >= 0) throw std::invalid_argument("reduce_form needs a positive definite form");
  for (;;) {
    // b into (-a, a]
    if (b > a || b <= -a) {
      Integer twoA = 2 * a;
      Integer k;
      mpz_fdiv_q(k.get_mpz_t(), Integer(a - b).get_mpz_t(), twoA.get_mpz_t());
      // b + 2ak in (-a, a]
      Integer nb = b + twoA * k;
      c = (nb * nb - (b * b - 4 * a * c)) / (4 * a);
      b = nb;
    }
    if (a > c) {
      std::swap(a, c);
      b = -b;
      continue;
    }
    if (a == c && b < 0) b = -b;
    return {a, b, c};
  }
}

std::vector<QuadForm> reduced_forms(long D) {
  if (D >= 0 || ((D % 4) + 4) % 4 > 1) throw std::invalid_argument("reduced_forms needs D < 0, D = 0 or 1 mod 4");
  std::vector<QuadForm> out;
  const long absD = -D;
  for (long a = 1; 3 * a * a <= absD; ++a) {
    for (long b = -a + 1; b <= a; ++b) {
      if (((b - D) % 2) != 0) continue;
      long num = b * b - D;
      if (num % (4 * a) != 0) continue;
      long c = num / (4 * a);
      if (c < a) continue;
      if ((a == c || b == -a) && b < 0) continue;
      if (std::gcd(std::gcd(a, std::labs(b)), c) != 1) continue;
      out.push_back({Integer(a), Integer(b), Integer(c)});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

long class_number(long D) { return static_cast<long>(reduced_forms(D).size()); }

std::vector<HeegnerTau> heegner_tau_list(const Integer& N, long dK) {
  const Integer fourN = 4 * N;
  const Integer D(dK);
  // least nonnegative beta with beta^2 = D mod 4N
  Integer beta = -1;
  for (Integer b = 0; b < 2 * N; ++b) {
    Integer r = (b * b - D) % fourN;
    if (r == 0) {
      beta = b;
      break;
    }
  }
  if (beta < 0) throw NoSquareRoot("no B with B^2 = " + std::to_string(dK) + " mod " + fourN.get_str());
  const std::vector<QuadForm> classes = reduced_forms(dK);
  std::map<QuadForm, QuadForm> found;
  const Integer twoN = 2 * N;
  for (long a = 1; found.size() < classes.size(); ++a) {
    if (a > 100000) throw std::runtime_error("heegner_tau_list: class search did not terminate");
    const Integer A = N * a;
    // B = beta + 2N k, one representative per class mod 2A, taken in (-A, A]
    for (long k = 0; k < a; ++k) {
      Integer B = beta + twoN * k;
      Integer twoA = 2 * A;
      B %= twoA;
      if (B > A) B -= twoA;
      Integer num = B * B - D;
      if (num % (4 * A) != 0) continue;
      Integer C = num / (4 * A);
      Integer g = gcd(gcd(A, B), C);
      if (g != 1) continue;
      QuadForm f{A, B, C};
      QuadForm r = reduce_form(f);
      if (!found.count(r)) found.emplace(r, f);
    }
  }
  std::vector<HeegnerTau> out;
  for (const auto& cls : classes) out.push_back({found.at(cls), dK});
  return out;
}

}  // namespace heeg
