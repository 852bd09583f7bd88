# Offline oracle: the twist family N for (E, dK) with |d| < X, via PARI.
# Usage: twist_family.py a1,a2,a3,a4,a6 dK X  > golden.csv
import sys
from itertools import combinations

import cypari

pari = cypari.pari


def s_primes(ainvs, dK, X):
    E = pari.ellinit(ainvs)
    N = int(pari.ellglobalred(E)[0])
    b2, b4, b6 = (int(E[i]) for i in (5, 6, 7))
    cubic = pari(f"4*x^3 + {b2}*x^2 + {2 * b4}*x + {b6}")
    out = []
    for ell in pari.primes([3, X]):
        ell = int(ell)
        if N % ell == 0 or pari.kronecker(dK, ell) != 1:
            continue
        if pari.polisirreducible(cubic * pari.Mod(1, ell)):
            out.append(ell if ell % 4 == 1 else -ell)
    return out


def family(ainvs, dK, X):
    ps = s_primes(ainvs, dK, X)
    ds = []

    def rec(start, prod, factors):
        for i in range(start, len(ps)):
            q = prod * ps[i]
            if abs(q) >= X:
                break
            ds.append((q, factors + [ps[i]]))
            rec(i + 1, q, factors + [ps[i]])

    ps.sort(key=abs)
    rec(0, 1, [])
    ds.sort(key=lambda t: (abs(t[0]), t[0]))
    return ds


if __name__ == "__main__":
    ainvs = [int(a) for a in sys.argv[1].split(",")]
    dK, X = int(sys.argv[2]), int(sys.argv[3])
    print("d,factors")
    for d, f in family(ainvs, dK, X):
        print(f"{d},{' '.join(map(str, f))}")
