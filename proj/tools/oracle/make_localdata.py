"""Offline oracle: local reduction data for a fixed pseudo-random set of
curves, computed with PARI/GP. Output is a fixture for the C++ unit tests;
PARI is never linked into the library."""
import random
import sys

from cypari import pari

random.seed(20240601)
out = sys.stdout
print("# ainvs | minimal model | conductor | p:f:kod:c ...  (PARI kodaira codes)", file=out)
count = 0
while count < 260:
    if count < 40:
        a = [random.randint(-1, 1), random.randint(-1, 1), random.randint(-1, 1),
             random.randint(-200, 200), random.randint(-2000, 2000)]
    elif count < 120:
        a = [random.randint(-5, 5) for _ in range(3)] + [random.randint(-10**4, 10**4), random.randint(-10**6, 10**6)]
    elif count >= 160:
        # additive reduction at small primes
        q = random.choice([2, 3, 5, 7])
        a = [random.choice([0, 0, q]), random.choice([0, q]), random.choice([0, q, q * q]),
             random.randint(-3, 3) * q ** random.randint(1, 4), random.randint(-5, 5) * q ** random.randint(1, 7)]
    else:
        # non-minimal scalings of small curves
        b = [random.randint(-1, 1), random.randint(-1, 1), random.randint(-1, 1),
             random.randint(-50, 50), random.randint(-200, 200)]
        u = random.choice([2, 3, 6, 5])
        a = [b[0] * u, b[1] * u**2, b[2] * u**3, b[3] * u**4, b[4] * u**6]
    E = pari("ellinit(%s)" % a)
    if E.disc() == 0 if hasattr(E, "disc") else pari("ellinit(%s).disc" % a) == 0:
        continue
    disc = pari("ellinit(%s).disc" % a)
    if disc == 0:
        continue
    mm = pari("ellminimalmodel(ellinit(%s))" % a)
    mlist = [int(mm[i]) for i in range(5)]
    N = pari("ellglobalred(ellinit(%s))[1]" % a)
    locs = []
    for p in pari("factor(abs(%s))[,1]" % pari("ellinit(%s).disc" % mlist)):
        lr = pari("elllocalred(ellinit(%s), %s)" % (mlist, p))
        locs.append("%s:%s:%s:%s" % (p, lr[0], lr[1], lr[3]))
    print("%s | %s | %s | %s" % (",".join(map(str, a)), ",".join(map(str, mlist)), N, " ".join(locs)), file=out)
    count += 1
