"""Independent brute-force oracles used by the test suite.

These deliberately avoid the library's closed-form shortcuts: the closure
oracle below builds the actual V-span of iterated operator images and reads
the constants off an echelon basis.
"""

from itertools import product
from math import comb

from mixedchar.scalars import padic_valuation


def monomial_box(n, cap):
    """Exponents with total degree <= cap, constants last."""
    monos = [e for e in product(range(cap + 1), repeat=n) if sum(e) <= cap]
    monos.sort(key=lambda e: (sum(e), e), reverse=True)
    return monos


class _Echelon:
    """Echelon basis of a Z_(p)-submodule of Z^N, integer vectors only.

    Rows are keyed by pivot coordinate; pivot entries have minimal p-adic
    valuation among reachable vectors at that coordinate.  Multiplying a row
    by an integer coprime to p is a unit operation and keeps spans equal.
    """

    def __init__(self, p, length):
        self.p = p
        self.length = length
        self.rows = {}

    def insert(self, vec):
        vec = list(vec)
        grew = False
        while True:
            idx = next((i for i, v in enumerate(vec) if v), None)
            if idx is None:
                return grew
            if idx not in self.rows:
                self.rows[idx] = vec
                return True
            row = self.rows[idx]
            va = padic_valuation(row[idx], self.p)
            vb = padic_valuation(vec[idx], self.p)
            if vb < va:
                self.rows[idx] = vec
                vec = row
                grew = True
                continue
            ua = row[idx] // self.p**va
            f = vec[idx] // self.p**va
            vec = [ua * x - f * y for x, y in zip(vec, row)]

    def constant_valuation(self):
        row = self.rows.get(self.length - 1)
        if row is None:
            return None
        return padic_valuation(row[-1], self.p)


def d_closure_constant_valuation(gens_terms, n, p):
    """Min valuation of the pure constants in the differential closure.

    gens_terms: list of dicts exponent -> int coefficient.  Applies every
    d_i^[t] and every multiplication by a variable inside a fixed degree
    box until the V-span stabilizes, then reads the constants row.
    """
    cap = max((sum(e) for g in gens_terms for e in g), default=0)
    monos = monomial_box(n, cap)
    pos = {e: i for i, e in enumerate(monos)}

    def to_vec(terms):
        v = [0] * len(monos)
        for e, c in terms.items():
            v[pos[e]] += c
        return v

    def to_terms(vec):
        return {monos[i]: c for i, c in enumerate(vec) if c}

    def images(terms):
        out = []
        for i in range(n):
            for t in range(1, cap + 1):
                img = {}
                for e, c in terms.items():
                    if e[i] >= t:
                        ne = e[:i] + (e[i] - t,) + e[i + 1 :]
                        img[ne] = img.get(ne, 0) + comb(e[i], t) * c
                if img:
                    out.append(img)
            shifted = {}
            for e, c in terms.items():
                if sum(e) + 1 <= cap:
                    ne = e[:i] + (e[i] + 1,) + e[i + 1 :]
                    shifted[ne] = shifted.get(ne, 0) + c
            if shifted:
                out.append(shifted)
        return out

    ech = _Echelon(p, len(monos))
    for g in gens_terms:
        if g:
            ech.insert(to_vec(g))
    while True:
        grew = False
        for row in list(ech.rows.values()):
            for img in images(to_terms(row)):
                if ech.insert(to_vec(img)):
                    grew = True
        if not grew:
            break
    return ech.constant_valuation()


def term_ideal_min_dividing_valuation(gens, e):
    """Min coefficient valuation among generators dividing x^e; None if none.

    gens: list of (exponent, valuation) pairs describing terms c*x^exp with
    nu(c) = valuation.  A term c*x^e lies in the ideal iff nu(c) is at least
    this minimum, since the coefficient ideal at x^e is generated by the
    dividing generators' coefficients.
    """
    vals = [v for (g, v) in gens if all(a <= b for a, b in zip(g, e))]
    return min(vals) if vals else None
