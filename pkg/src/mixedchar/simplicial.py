"""Simplicial complexes, squarefree ideals, and graded local cohomology
of the associated quotients via links.

Faces are vertex bitmasks and complexes are downward closed by
construction.  Two degenerate complexes are kept distinct: the void
complex has no faces at all, while the complex {empty set} has exactly
one face of cardinality zero.  Cochain matrices reuse the shared sign
combinatorics, with vertices in sorted order and sign the position
parity of the inserted vertex.
"""

from __future__ import annotations

from .intlinalg import (
    FinAbGroup,
    IntMatrix,
    complex_cohomology,
    matrix_rank,
    matrix_rank_mod_p,
)
from .monomials import MonomialIdeal
from .subsets import bits_to_subsets, coboundary_sign_entries

MAX_VERTICES = 16


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class SimplicialComplex:
    """Downward-closed family of subsets of {0..n-1}.

    >>> cx = SimplicialComplex(3, [(0, 1), (2,)])
    >>> cx.has_face((0, 1)), cx.has_face((1, 2))
    (True, False)
    >>> cx.face_counts()
    [1, 3, 1]
    """

    __slots__ = ("n", "facets", "_faces", "_card_masks")

    def __init__(self, n: int, facets):
        if not 1 <= n <= MAX_VERTICES:
            raise ValueError(f"vertex count {n} outside 1..{MAX_VERTICES}")
        self.n = n
        faces = set()
        for facet in facets:
            fm = _mask(facet)
            if fm >> n:
                raise ValueError(f"facet {tuple(facet)} has a vertex outside 0..{n - 1}")
            sub = fm
            while True:
                faces.add(sub)
                if sub == 0:
                    break
                sub = (sub - 1) & fm
        self._faces = frozenset(faces)
        maximal = [
            F
            for F in faces
            if not any(F != G and F & G == F for G in faces)
        ]
        self.facets = tuple(
            sorted(tuple(bits_to_subsets(F)) for F in maximal)
        )
        top = max((F.bit_count() for F in faces), default=-1)
        cards = [0] * (top + 1)
        for F in faces:
            cards[F.bit_count()] |= 1 << F
        self._card_masks = cards

    def is_void(self) -> bool:
        return not self._faces

    def dim(self):
        """Largest face dimension; -1 for {empty set}, None when void."""
        if not self._faces:
            return None
        return len(self._card_masks) - 2

    def has_face(self, vertices) -> bool:
        return _mask(vertices) in self._faces

    def faces_of_cardinality(self, c: int) -> list:
        if not 0 <= c < len(self._card_masks):
            return []
        return [tuple(bits_to_subsets(F)) for F in bits_to_subsets(self._card_masks[c])]

    def face_counts(self) -> list:
        """Number of faces per cardinality, starting at the empty face."""
        return [bits.bit_count() for bits in self._card_masks]

    def link(self, vertices) -> "SimplicialComplex":
        W = _mask(vertices)
        if W not in self._faces:
            return SimplicialComplex(self.n, [])
        members = [G ^ W for G in self._faces if G & W == W]
        maximal = [
            F for F in members if not any(F != G and F & G == F for G in members)
        ]
        return SimplicialComplex(
            self.n, [tuple(bits_to_subsets(F)) for F in maximal]
        )

    def coboundaries(self) -> list:
        """Dense sign matrices, cardinality c to c+1 for each c below top."""
        out = []
        for c in range(len(self._card_masks) - 1):
            entries, nrows, ncols = coboundary_sign_entries(
                self._card_masks[c], self._card_masks[c + 1]
            )
            M = IntMatrix(nrows, ncols)
            for (i, j), s in entries.items():
                M.rows[i][j] = s
            out.append(M)
        return out

    def reduced_euler_characteristic(self) -> int:
        return sum(
            (k if c & 1 else -k) for c, k in enumerate(self.face_counts())
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SimplicialComplex)
            and self.n == other.n
            and self._faces == other._faces
        )

    def __hash__(self):
        return hash((self.n, self._faces))

    def __repr__(self):
        if self.is_void():
            return f"SimplicialComplex({self.n}, void)"
        return f"SimplicialComplex({self.n}, facets={self.facets})"


def reduced_cohomology(cx: SimplicialComplex, coeff="Z") -> dict:
    """Reduced cohomology table, spots -1 .. dim.

    coeff "Z" gives FinAbGroup values; "Q" or a prime p gives dimensions
    over that field.  The void complex yields an empty table, and any
    spot outside the table is zero.
    """
    if cx.is_void():
        return {}
    deltas = cx.coboundaries()
    top = len(deltas)
    if coeff == "Z":
        if not deltas:
            return {-1: FinAbGroup(1)}
        return {
            i: complex_cohomology(deltas, i + 1) for i in range(-1, top)
        }
    if coeff == "Q":
        rank = matrix_rank
    else:
        p = coeff
        rank = lambda M: matrix_rank_mod_p(M, p)
    counts = cx.face_counts()
    ranks = [rank(M) for M in deltas]
    table = {}
    for i in range(-1, top):
        c = i + 1
        r_in = ranks[c - 1] if c >= 1 else 0
        r_out = ranks[c] if c < len(ranks) else 0
        table[i] = counts[c] - r_in - r_out
    return table


def stanley_reisner_complex(I: MonomialIdeal) -> SimplicialComplex:
    """Complex whose faces are the squarefree monomials outside I."""
    if I.n > MAX_VERTICES:
        raise ValueError(f"too many variables for face enumeration: {I.n}")
    gen_masks = []
    for e in I.gens:
        if any(v > 1 for v in e):
            raise ValueError(f"generator {e} is not squarefree")
        gen_masks.append(_mask(i for i, v in enumerate(e) if v))
    members = [
        S
        for S in range(1 << I.n)
        if not any(g & S == g for g in gen_masks)
    ]
    maximal = [
        F for F in members if not any(F != G and F & G == F for G in members)
    ]
    return SimplicialComplex(I.n, [tuple(bits_to_subsets(F)) for F in maximal])


def stanley_reisner_ideal(cx: SimplicialComplex) -> MonomialIdeal:
    """Ideal of minimal nonfaces; inverse of stanley_reisner_complex."""
    nonfaces = [
        S for S in range(1 << cx.n) if S not in cx._faces
    ]
    rows = [
        tuple(1 if S >> i & 1 else 0 for i in range(cx.n)) for S in nonfaces
    ]
    return MonomialIdeal(cx.n, rows)


def hochster_local_cohomology_piece(cx: SimplicialComplex, i: int, a, p) -> int:
    """Dimension over F_p (or Q) of the degree-a piece at spot i.

    For a <= 0 with support W the piece is the reduced link cohomology
    of W one spot below i - |W|; it vanishes unless W is a face.
    """
    a = tuple(a)
    if len(a) != cx.n:
        raise ValueError(f"degree has {len(a)} entries, complex has {cx.n} vertices")
    if any(v > 0 for v in a):
        raise ValueError(f"degree {a} has a positive entry")
    W = [i_ for i_, v in enumerate(a) if v]
    if not cx.has_face(W):
        return 0
    table = reduced_cohomology(cx.link(W), coeff=p)
    return table.get(i - len(W) - 1, 0)


def hochster_nonzero_levels(cx: SimplicialComplex, p) -> tuple:
    """Spots i where some graded piece of the quotient's local cohomology
    survives, by exhaustive scan over face supports."""
    levels = set()
    for c, count in enumerate(cx.face_counts()):
        if not count:
            continue
        for W in cx.faces_of_cardinality(c):
            for spot, d in reduced_cohomology(cx.link(W), coeff=p).items():
                if d:
                    levels.add(spot + len(W) + 1)
    return tuple(sorted(levels))
