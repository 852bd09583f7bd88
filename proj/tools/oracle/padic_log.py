# Offline oracle: 2-adic formal logs of points over Q(sqrt D) via PARI.
# Prints log(nP)/n under sigma1 (sqrt D = 1 mod 4) and sigma2.
import cypari

pari = cypari.pari


def log_point(ainvs, D, xu, xv, yu, yv, n, prec=40):
    E = pari.ellinit(ainvs)
    L = pari.ellformallog(E, 4 * prec)
    r = pari(f"sqrt({D}+O(2^{prec + 20}))")
    if pari(f"lift({r})%4") != 1:
        r = -r
    out = []
    for s in (r, -r):
        P = [pari(xu) + pari(xv) * s, pari(yu) + pari(yv) * s]
        Q = pari.ellmul(E, P, n)
        t = -Q[0] / Q[1]
        out.append(pari(f"subst(truncate({L}), x, {t})") / n)
    return out


if __name__ == "__main__":
    for v in log_point([0, -1, 1, -10, -20], -7, "1/2", "-1/2", "-2", "-2", 5):
        print(v)
    for v in log_point([0, 0, 1, -1, 0], -7, "0", "0", "0", "0", 5):
        print(v)
    print(pari.ellformallog(pari.ellinit([0, 0, 1, -1, 0]), 10))
    print(pari.ellformallog(pari.ellinit([0, -1, 1, -10, -20]), 10))
