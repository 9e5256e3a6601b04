"""Buchberger's algorithm over field coefficients, with radical membership.

Pairs are processed smallest lcm first; pairs with coprime leading
terms are discarded up front.  The returned basis is reduced: monic,
no leading term divides another, and every element is in normal form
with respect to the rest, so it is canonical for the ideal and order.

Radical membership adjoins an inverse variable for the candidate and
asks whether the enlarged ideal becomes the unit ideal.
"""

from __future__ import annotations

import heapq
import time
from typing import Iterable, Optional, Sequence

from .monomials import MonomialIdeal
from .polynomials import ORDER_KEYS, Polynomial, exp_add, exp_leq, exp_max, exp_sub
from .scalars import PrimeField, RationalField
from .textio import reisner_ideal, schmitt_vogel_generators


def _require_field(ring) -> None:
    if not isinstance(ring, (RationalField, PrimeField)):
        raise ValueError(f"need field coefficients, got {ring!r}")


def _monic(f: Polynomial, order: str) -> Polynomial:
    _, c = f.leading_term(order)
    return f.scale(f.ring.divide(f.ring.one(), c))


def spoly(f: Polynomial, g: Polynomial, order: str = "grlex") -> Polynomial:
    """The S-polynomial: both leading terms lifted to their lcm and cancelled."""
    ring = f.ring
    fe, fc = f.leading_term(order)
    ge, gc = g.leading_term(order)
    lcm = exp_max(fe, ge)
    left = f.mul_monomial(exp_sub(lcm, fe), ring.divide(ring.one(), fc))
    right = g.mul_monomial(exp_sub(lcm, ge), ring.divide(ring.one(), gc))
    return left - right


def normal_form(f: Polynomial, basis: Sequence[Polynomial], order: str = "grlex") -> Polynomial:
    """Remainder of f under full division by the basis, in listed order."""
    ring = f.ring
    remainder = Polynomial.zero(ring, f.n)
    p = f
    lts = [g.leading_term(order) for g in basis]
    while not p.is_zero():
        e, c = p.leading_term(order)
        for g, (ge, gc) in zip(basis, lts):
            if exp_leq(ge, e):
                p = p - g.mul_monomial(exp_sub(e, ge), ring.divide(c, gc))
                break
        else:
            t = Polynomial.monomial(ring, f.n, e, c)
            remainder = remainder + t
            p = p - t
    return remainder


def _coprime(a, b) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _push_pairs(heap, key, basis, lts, j: int) -> None:
    for i in range(j):
        if _coprime(lts[i], lts[j]):
            continue
        lcm = exp_max(lts[i], lts[j])
        heapq.heappush(heap, (key(lcm), i, j))


def buchberger(
    gens: Iterable[Polynomial], order: str = "grlex", deadline: Optional[float] = None
) -> list:
    """A (not yet reduced) basis closed under S-polynomial remainders.

    Stops early with the unit ideal as soon as a constant shows up;
    raises TimeoutError when the deadline passes.
    """
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    ring = basis[0].ring
    _require_field(ring)
    n = basis[0].n
    unit = [Polynomial.constant(ring, n, ring.one())]
    basis = [_monic(g, order) for g in basis]
    if any(g.is_constant() for g in basis):
        return unit
    key = ORDER_KEYS[order]
    lts = [g.leading_term(order)[0] for g in basis]
    heap: list = []
    for j in range(1, len(basis)):
        _push_pairs(heap, key, basis, lts, j)
    while heap:
        if deadline is not None and time.monotonic() > deadline:
            raise TimeoutError("basis computation passed its deadline")
        _, i, j = heapq.heappop(heap)
        h = normal_form(spoly(basis[i], basis[j], order), basis, order)
        if h.is_zero():
            continue
        if h.is_constant():
            return unit
        basis.append(_monic(h, order))
        lts.append(h.leading_term(order)[0])
        _push_pairs(heap, key, basis, lts, len(basis) - 1)
    return basis


def reduce_basis(basis: Sequence[Polynomial], order: str = "grlex") -> tuple:
    """The reduced basis: minimal leading terms, each element fully reduced."""
    if not basis:
        return ()
    key = ORDER_KEYS[order]
    ordered = sorted(basis, key=lambda g: key(g.leading_term(order)[0]))
    minimal: list = []
    for g in ordered:
        e = g.leading_term(order)[0]
        if not any(exp_leq(h.leading_term(order)[0], e) for h in minimal):
            minimal.append(g)
    reduced = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1 :]
        reduced.append(_monic(normal_form(g, others, order), order))
    return tuple(reduced)


def groebner_basis(
    gens: Iterable[Polynomial], order: str = "grlex", deadline: Optional[float] = None
) -> tuple:
    return reduce_basis(buchberger(gens, order, deadline), order)


def ideal_member(f: Polynomial, basis: Sequence[Polynomial], order: str = "grlex") -> bool:
    """Membership against a basis already closed under S-remainders."""
    return normal_form(f, basis, order).is_zero()


def radical_member(
    f: Polynomial,
    gens: Sequence[Polynomial],
    order: str = "grlex",
    timeout_secs: Optional[float] = None,
) -> bool:
    """Whether some power of f lands in the ideal the generators span.

    Inverts f with one extra variable: the enlarged ideal is the unit
    ideal exactly when f vanishes on the zero set of the generators.
    """
    if f.is_zero():
        return True
    ring = f.ring
    _require_field(ring)
    n = f.n
    ext = [g.extend_variables(n + 1) for g in gens if not g.is_zero()]
    inverse = Polynomial.variable(ring, n + 1, n)
    one = Polynomial.constant(ring, n + 1, ring.one())
    ext.append(one - inverse * f.extend_variables(n + 1))
    deadline = None if timeout_secs is None else time.monotonic() + timeout_secs
    gb = groebner_basis(ext, order, deadline)
    return any(g.is_constant() for g in gb)


def monomial_ideal_member(f: Polynomial, ideal: MonomialIdeal) -> bool:
    """Term inspection: every term must sit under some generator."""
    if f.n != ideal.n:
        raise ValueError("variable count mismatch")
    return all(ideal.contains_monomial(e) for e in f.terms)


def sv_containment_check(
    ring, order: str = "grlex", timeout_secs: Optional[float] = None
) -> dict:
    """Both halves of the four-element containment certificate.

    The four structured cubic sums sit inside the ten-generator ideal
    termwise; each of the ten squarefree cubics has a power inside the
    ideal the four elements span.
    """
    _require_field(ring)
    ideal = reisner_ideal()
    four = schmitt_vogel_generators(ring)
    in_ideal = [monomial_ideal_member(g, ideal) for g in four]
    radical = []
    for e in ideal.gens:
        cubic = Polynomial.monomial(ring, ideal.n, e)
        radical.append(radical_member(cubic, four, order=order, timeout_secs=timeout_secs))
    return {
        "field": ring.name,
        "generators_in_ideal": in_ideal,
        "radical_members": radical,
        "all_ok": all(in_ideal) and all(radical),
    }
