"""Divided-power differential operators on V[x0..x(n-1)], V = Z_(p).

The operator d_i^[t] acts on monomials by d_i^[t](x_i^b) = C(b, t) x_i^(b-t)
with an integer binomial, so it is defined over V even when t! is not
invertible.  Operators here are finite sums of polynomial coefficients times
divided-power monomials d^[t]; that is enough for every computation in this
package (power series inputs are out of scope, only polynomials are handled).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Optional

from .monomials import MonomialIdeal
from .polynomials import MultiIndex, Polynomial, exp_sub
from .scalars import DVR, PrimeField


class DividedPowerOp:
    """Sum of terms (coefficient polynomial) * d^[order].

    >>> from mixedchar.scalars import DVR
    >>> V = DVR(2)
    >>> op = DividedPowerOp.single(V, 1, (2,))
    >>> f = Polynomial.monomial(V, 1, (5,))
    >>> apply_op(op, f).terms[(3,)].to_fraction()
    Fraction(10, 1)
    """

    __slots__ = ("ring", "n", "terms")

    def __init__(self, ring, n: int, terms):
        # terms: list of (Polynomial coefficient, order multi-index)
        self.ring = ring
        self.n = n
        cleaned = []
        for coeff, order in terms:
            order = tuple(order)
            if len(order) != n or any(t < 0 for t in order):
                raise ValueError(f"bad operator order {order}")
            if coeff.n != n or coeff.ring != ring:
                raise ValueError("coefficient polynomial in the wrong ring")
            if not coeff.is_zero():
                cleaned.append((coeff, order))
        self.terms = tuple(cleaned)

    @classmethod
    def single(cls, ring, n: int, order: MultiIndex, coeff: Optional[Polynomial] = None):
        if coeff is None:
            coeff = Polynomial.constant(ring, n, ring.one())
        return cls(ring, n, [(coeff, order)])

    @classmethod
    def partial(cls, ring, n: int, i: int, t: int = 1):
        """d_i^[t] as an operator."""
        order = [0] * n
        order[i] = t
        return cls.single(ring, n, tuple(order))

    def map_coefficients(self, ring, fn) -> "DividedPowerOp":
        return DividedPowerOp(
            ring, self.n, [(c.map_coefficients(ring, fn), o) for c, o in self.terms]
        )

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for coeff, order in self.terms:
            d = "*".join(f"d{i}^[{t}]" for i, t in enumerate(order) if t)
            bits.append(f"({coeff})*{d}" if d else f"({coeff})")
        return " + ".join(bits)


def divided_power_on_monomial(ring, n: int, order: MultiIndex, e: MultiIndex, c):
    """d^[order] applied to c * x^e: binomial product times the shifted monomial."""
    mult = 1
    for b, t in zip(e, order):
        if t > b:
            return None
        mult *= comb(b, t)
    return exp_sub(e, order), ring.mul(c, ring.from_int(mult))


def apply_op(op: DividedPowerOp, f: Polynomial) -> Polynomial:
    """Apply the operator term by term; exact in every coefficient ring."""
    if f.ring != op.ring or f.n != op.n:
        raise ValueError("operator and polynomial rings differ")
    ring = op.ring
    out = Polynomial.zero(ring, op.n)
    for coeff, order in op.terms:
        part: dict = {}
        for e, c in f.terms.items():
            hit = divided_power_on_monomial(ring, op.n, order, e, c)
            if hit is None:
                continue
            ne, nc = hit
            s = ring.add(part.get(ne, ring.zero()), nc)
            if ring.is_zero(s):
                part.pop(ne, None)
            else:
                part[ne] = s
        out = out + coeff * Polynomial(ring, op.n, part)
    return out


def compose_divided_powers(ring, n: int, i: int, s: int, t: int) -> DividedPowerOp:
    """d_i^[s] after d_i^[t] equals C(s+t, s) * d_i^[s+t]."""
    if s < 0 or t < 0:
        raise ValueError("negative divided-power order")
    order = [0] * n
    order[i] = s + t
    coeff = Polynomial.constant(ring, n, ring.from_int(comb(s + t, s)))
    return DividedPowerOp.single(ring, n, tuple(order), coeff)


@dataclass(frozen=True)
class DSubmoduleVerdict:
    """Classification of the differential submodule generated by polynomials.

    Every nonzero differentially stable ideal of V[x] is pi^ell * V[x]; ell
    is the minimum pi-adic valuation over all coefficients of the generators.
    ell == 0 means the whole ring.
    """

    p: int
    ell: int

    def is_unit(self) -> bool:
        return self.ell == 0

    def ideal_tag(self) -> str:
        if self.ell == 0:
            return "(1)"
        if self.ell == 1:
            return f"({self.p})"
        return f"({self.p}^{self.ell})"


def classify_d_submodule(gens: list) -> DSubmoduleVerdict:
    """Identify the differential closure of V[x]-generators as pi^ell V[x].

    The closure's coefficients all lie in the V-span of the generators'
    coefficients, so no valuation below the minimum can appear; divided
    powers extract a coefficient of minimal valuation as a constant, so the
    minimum is attained.
    """
    ell = None
    p = None
    for g in gens:
        if not isinstance(g.ring, DVR):
            raise ValueError("generators must have DVR coefficients")
        p = g.ring.p if p is None else p
        if g.ring.p != p:
            raise ValueError("mixed primes")
        for c in g.terms.values():
            v = c.valuation()
            if ell is None or v < ell:
                ell = v
    if ell is None:
        raise ValueError("all generators are zero: the closure is the zero ideal")
    return DSubmoduleVerdict(p, ell)


def pi_saturate(gens: list) -> MonomialIdeal:
    """(I : pi^infinity) for an ideal generated by terms c * x^e.

    Stripping the pi-power from each coefficient computes the saturation on
    this class; the result is the monomial ideal of the stripped terms (unit
    coefficients are dropped since they do not change the ideal).  Non-term
    input is rejected: general saturation needs Groebner bases over V.
    """
    n = None
    exps = []
    for g in gens:
        if not isinstance(g.ring, DVR):
            raise ValueError("generators must have DVR coefficients")
        n = g.n if n is None else n
        if g.is_zero():
            continue
        if len(g.terms) != 1:
            raise ValueError(f"not a term: {g}")
        (e, _), = g.terms.items()
        exps.append(e)
    if n is None:
        raise ValueError("no generators given")
    return MonomialIdeal(n, exps)


def reduce_mod_pi(f: Polynomial) -> Polynomial:
    """Image of a V[x] polynomial in F_p[x]."""
    if not isinstance(f.ring, DVR):
        raise ValueError("expected DVR coefficients")
    F = PrimeField(f.ring.p)
    return f.map_coefficients(F, lambda c: c.residue())


def op_mod_pi(op: DividedPowerOp) -> DividedPowerOp:
    """Reduce an operator's polynomial coefficients mod pi."""
    if not isinstance(op.ring, DVR):
        raise ValueError("expected DVR coefficients")
    F = PrimeField(op.ring.p)
    return op.map_coefficients(F, lambda c: c.residue())


@dataclass(frozen=True)
class AnnihilatorEvidence:
    """Facts a computation established about a module M over V[x].

    nonzero: M has a nonzero element.
    kill_exponent: least ell with pi^ell M = 0 seen in the computation, or
    None when no pi-power killed M.
    infinite_type_witness: a filtration certified that no pi-power can kill M.
    """

    p: int
    nonzero: bool
    kill_exponent: Optional[int] = None
    infinite_type_witness: bool = False


@dataclass(frozen=True)
class Annihilator:
    kind: str  # unit | pi_power | zero | inconclusive
    p: int
    exponent: Optional[int] = None

    def tag(self) -> str:
        if self.kind == "unit":
            return "(1)"
        if self.kind == "pi_power":
            if self.exponent == 1:
                return f"({self.p})"
            return f"({self.p}^{self.exponent})"
        if self.kind == "zero":
            return "(0)"
        return "undetermined"


def infer_annihilator(ev: AnnihilatorEvidence) -> Annihilator:
    """Annihilator of a differentially stable module from the evidence.

    Such an annihilator is differentially stable, hence (1), (pi^ell), or
    (0); the evidence picks the branch.  A zero annihilator claim needs an
    infinite-type witness, otherwise the outcome stays inconclusive.
    """
    if not ev.nonzero:
        return Annihilator("unit", ev.p)
    if ev.kill_exponent is not None:
        if ev.kill_exponent < 1:
            raise ValueError("a nonzero module cannot be killed by pi^0")
        if ev.infinite_type_witness:
            raise ValueError("contradictory evidence: killed and infinite type")
        return Annihilator("pi_power", ev.p, ev.kill_exponent)
    if ev.infinite_type_witness:
        return Annihilator("zero", ev.p)
    return Annihilator("inconclusive", ev.p)
