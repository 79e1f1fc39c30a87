"""Independent reference computations shared by several test modules."""

import itertools
import random
from math import factorial, prod


def monomial_ideal_count(n, dims=3):
    """Number of colength-n monomial ideals in k[x_1..x_dims], by enumeration of order ideals."""
    found = {frozenset()}
    for _ in range(n):
        grown = set()
        for s in found:
            for cell in _addable(s, dims):
                grown.add(s | {cell})
        found = grown
    return len(found)


def _addable(s, dims):
    cands = {(0,) * dims}
    for c in s:
        for i in range(dims):
            cands.add(c[:i] + (c[i] + 1,) + c[i + 1 :])
    out = []
    for c in cands - s:
        below = [c[:i] + (c[i] - 1,) + c[i + 1 :] for i in range(dims) if c[i]]
        if all(b in s for b in below):
            out.append(c)
    return out


def _partitions(n, largest=None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def stratified_hilbert_euler(n, chi):
    """e(Hilb^n) as a sum over multiplicity types of distinct support points."""
    punctual = {j: monomial_ideal_count(j) for j in range(1, n + 1)}
    total = 0
    for part in _partitions(n):
        k = len(part)
        falling = prod(chi - i for i in range(k))
        sym = prod(factorial(part.count(j)) for j in set(part))
        total += falling * prod(punctual[j] for j in part) // sym
    return total


VALID_PROGRAMS = [
    "variety X = divisor(P 4, 5h); print chi(O on X);",
    "print bezout(4,4,4);",
    "variety Y = projbundle(-1,0,0,1); print integrate(Y, omega1*t^3);",
    "print d(2, 4, 3);\nprint chi(O on K3quartic);",
    "sheaf E on K3quartic { rank 2, chern 1 - h + 3/4*h^2 };\n"
    "k3lattice L { gram [[4]], omega [1] };\nprint mukai(E, L);",
    "print ledger(2, 1, 4, [(1,1),(1,2)]);",
    "variety Z = P 1 * P 1 * P 2; print integrate(Z, a*b*c^2);",
    "print hilb(2, 4); print odp(1, 2); print admissible(2, -4, 4, 3);",
]

_JUNK = list("(){}[],;=+-*/^#@$%!~`'\"\\|<>?.:&") + ["\n", "\t", "é", "\x00", "P", "on", "print", "variety", "99999"]


def malformed_candidates(seed=0):
    """Endless stream of mutated programs: deletions, insertions, swaps, truncation, noise."""
    rng = random.Random(seed)
    while True:
        src = rng.choice(VALID_PROGRAMS)
        op = rng.randrange(6)
        if op == 0:
            i = rng.randrange(len(src))
            j = min(len(src), i + rng.randint(1, 4))
            src = src[:i] + src[j:]
        elif op == 1:
            i = rng.randrange(len(src) + 1)
            src = src[:i] + rng.choice(_JUNK) + src[i:]
        elif op == 2:
            i, j = sorted(rng.sample(range(len(src)), 2))
            src = src[:i] + src[j] + src[i + 1 : j] + src[i] + src[j + 1 :]
        elif op == 3:
            src = src[: rng.randrange(len(src))]
        elif op == 4:
            src = "".join(rng.choice(_JUNK + list("abcdhtP0123456789 ")) for _ in range(rng.randint(1, 40)))
        else:
            depth = rng.randint(50, 400)
            src = "print integrate(P3, " + "(" * depth + "h" + ")" * rng.randint(0, depth) + ");"
        yield src


def fuzz_corpus(size=1000, seed=0, parse=None):
    """First ``size`` candidates that the given parser rejects, plus the accepted ones seen on the way."""
    rejected, accepted = [], []
    for src in malformed_candidates(seed):
        try:
            parse(src)
        except Exception as exc:  # the caller checks the exception type
            rejected.append((src, exc))
            if len(rejected) == size:
                return rejected, accepted
        else:
            accepted.append(src)
