"""Degree-one abelianization model for IA automorphisms.

The first homology of the IA family is modelled on the basis
``e_a* (x) (e_b ^ e_c)`` with ``b < c``; coordinates are rationals keyed by
triples ``(a, b, c)``.  The map ``tau`` reads the degree-2 leading term of
``phi(x_i) x_i^-1`` off the Magnus series, and unimodular integer matrices
act by inverse-transpose on the dual slot and by the wedge square of the
standard action on the wedge slot.

``tilt_search`` replaces a density existence argument with an honest bounded
breadth-first search over words in elementary matrices: it either exhibits a
matrix whose pullback functional restricts nontrivially to every chosen
coordinate subspace, or reports exhaustion.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .autom import AutWitness, FreeEndo, IAWord, abelianized_matrix, ia_check
from .magnus import magnus_embed
from .words import Word, concat

__all__ = [
    "H1Vector",
    "H1Functional",
    "h1_dimension",
    "h1_basis_keys",
    "h1_vector",
    "h1_functional",
    "h1_add",
    "pairing",
    "tau",
    "IntMatrix",
    "mat_identity",
    "mat_mul",
    "elementary_matrix",
    "mat_inverse_unimodular",
    "glnz_action",
    "equivariance_check",
    "subspace_image_basis",
    "TiltResult",
    "tilt_search",
    "rational_rank",
    "format_h1",
    "parse_h1",
]

Key = tuple[int, int, int]  # (a, b, c) with b < c
Coords = tuple[tuple[Key, Fraction], ...]


def h1_dimension(n: int) -> int:
    return n * n * (n - 1) // 2


def h1_basis_keys(n: int) -> list[Key]:
    return [
        (a, b, c)
        for a in range(1, n + 1)
        for b in range(1, n + 1)
        for c in range(b + 1, n + 1)
    ]


def _normalize(n: int, coords: Mapping[Key, Fraction | int]) -> Coords:
    out = {}
    for (a, b, c), v in coords.items():
        if not (1 <= a <= n and 1 <= b < c <= n):
            raise ValueError(f"bad basis key {(a, b, c)} for rank {n}")
        f = Fraction(v)
        if f:
            out[(a, b, c)] = f
    return tuple(sorted(out.items()))


@dataclass(frozen=True)
class H1Vector:
    """Finitely supported rational coordinates over the (a, b<c) basis."""

    n: int
    coords: Coords = ()

    def as_dict(self) -> dict[Key, Fraction]:
        return dict(self.coords)

    def is_zero(self) -> bool:
        return not self.coords

    def dense(self) -> list[Fraction]:
        d = self.as_dict()
        return [d.get(k, Fraction(0)) for k in h1_basis_keys(self.n)]


@dataclass(frozen=True)
class H1Functional:
    """Dual-side coordinates against the same basis; pairing is the
    coordinatewise sum of products."""

    n: int
    coords: Coords = ()

    def as_dict(self) -> dict[Key, Fraction]:
        return dict(self.coords)

    def is_zero(self) -> bool:
        return not self.coords


def h1_vector(n: int, coords: Mapping[Key, Fraction | int]) -> H1Vector:
    return H1Vector(n, _normalize(n, coords))


def h1_functional(n: int, coords: Mapping[Key, Fraction | int]) -> H1Functional:
    return H1Functional(n, _normalize(n, coords))


def h1_add(u: H1Vector, v: H1Vector) -> H1Vector:
    if u.n != v.n:
        raise ValueError("rank mismatch")
    out = u.as_dict()
    for k, val in v.coords:
        out[k] = out.get(k, Fraction(0)) + val
    return h1_vector(u.n, out)


def pairing(lam: H1Functional, v: H1Vector) -> Fraction:
    if lam.n != v.n:
        raise ValueError("rank mismatch")
    vd = v.as_dict()
    return sum((val * vd[k] for k, val in lam.coords if k in vd), Fraction(0))


def tau(phi: FreeEndo) -> H1Vector:
    """Degree-2 leading data of an IA endomorphism: the coefficient of
    e_a* (x) (e_b ^ e_c) is the antisymmetrized X_b X_c coefficient of the
    Magnus series of phi(x_a) x_a^-1, so the conjugation move K[a,b]
    maps to e_a* (x) (e_b ^ e_a).  Additive under composition."""
    if not ia_check(phi):
        raise ValueError("tau needs an IA endomorphism")
    coords: dict[Key, Fraction] = {}
    for a in phi.moved_indices():
        displaced = concat(phi.image(a), Word((-a,)))
        series = magnus_embed(displaced, 3).as_dict()
        for b in range(1, phi.rank + 1):
            for c in range(b + 1, phi.rank + 1):
                half = Fraction(series.get((b, c), 0) - series.get((c, b), 0), 2)
                if half:
                    coords[(a, b, c)] = half
    return h1_vector(phi.rank, coords)


# ---------------------------------------------------------------------------
# Integer matrices and the action on the homology model

IntMatrix = tuple[tuple[int, ...], ...]


def mat_identity(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    n = len(a)
    bt = tuple(zip(*b))
    return tuple(
        tuple(sum(ra[k] * cb[k] for k in range(n)) for cb in bt) for ra in a
    )


def elementary_matrix(n: int, i: int, j: int, sign: int = 1) -> IntMatrix:
    """Identity plus ``sign`` in entry (i, j); 1-based, i != j."""
    if i == j or not (1 <= i <= n and 1 <= j <= n) or sign not in (1, -1):
        raise ValueError(f"bad elementary data ({i},{j},{sign})")
    return tuple(
        tuple(
            (1 if r == c else 0) + (sign if (r, c) == (i - 1, j - 1) else 0)
            for c in range(n)
        )
        for r in range(n)
    )


def mat_inverse_unimodular(m: IntMatrix) -> IntMatrix:
    """Exact inverse of a matrix of determinant +-1 (integer entries)."""
    n = len(m)
    a = [[Fraction(v) for v in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(m)]
    det = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            raise ValueError("matrix is singular")
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = 1 / a[col][col]
        a[col] = [v * inv for v in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    if det not in (1, -1):
        raise ValueError(f"matrix is not unimodular (det {det})")
    out = tuple(tuple(int(v) for v in row[n:]) for row in a)
    return out


def glnz_action(m: IntMatrix, v: H1Vector, m_inv: IntMatrix | None = None) -> H1Vector:
    """Representation on the dual-tensor-wedge model: inverse transpose on the
    starred slot, wedge square of the standard column action on the other."""
    n = v.n
    if len(m) != n:
        raise ValueError("matrix size does not match vector rank")
    minv = m_inv if m_inv is not None else mat_inverse_unimodular(m)
    out: dict[Key, Fraction] = {}
    for (a, b, c), val in v.coords:
        for ap in range(1, n + 1):
            dual = minv[a - 1][ap - 1]
            if not dual:
                continue
            for i in range(1, n + 1):
                for j in range(i + 1, n + 1):
                    wedge = (
                        m[i - 1][b - 1] * m[j - 1][c - 1]
                        - m[j - 1][b - 1] * m[i - 1][c - 1]
                    )
                    if not wedge:
                        continue
                    k = (ap, i, j)
                    nv = out.get(k, Fraction(0)) + val * dual * wedge
                    if nv:
                        out[k] = nv
                    elif k in out:
                        del out[k]
    return h1_vector(n, out)


def equivariance_check(m: IntMatrix, lift: AutWitness, phi: FreeEndo | IAWord) -> bool:
    """tau(lift . phi . lift^-1) == action of m on tau(phi); raises when the
    lift does not abelianize to m."""
    endo = phi.realized if isinstance(phi, IAWord) else phi
    if abelianized_matrix(lift.fwd) != m:
        raise ValueError("lift does not abelianize to the given matrix")
    lhs = tau(lift.conj_endo(endo))
    rhs = glnz_action(m, tau(endo))
    return lhs == rhs


def subspace_image_basis(index_set: Iterable[int], n: int) -> list[H1Vector]:
    """Basis vectors e_a* (x) (e_b ^ e_c) with a, b, c all in the index set;
    empty below size 2."""
    idx = sorted(set(index_set))
    if any(not 1 <= i <= n for i in idx):
        raise ValueError(f"index set {idx} outside rank {n}")
    return [
        h1_vector(n, {(a, b, c): 1})
        for a in idx
        for b in idx
        for c in idx
        if b < c
    ]


# ---------------------------------------------------------------------------
# Character tilting by bounded search over elementary-matrix words

Move = tuple[int, int, int]  # (i, j, sign)


@dataclass(frozen=True)
class TiltResult:
    found: bool
    moves: tuple[Move, ...] = ()
    matrix: IntMatrix | None = None
    examined: int = 0

    def move_tokens(self) -> list[str]:
        return [f"E[{i},{j},{'+' if s > 0 else '-'}]" for i, j, s in self.moves]


def _pullback_coord(
    key: Key,
    lam_int: dict[Key, int],
    m: IntMatrix,
    minv: IntMatrix,
) -> int:
    """(gamma* lam)(basis key) = lam(gamma . basis key), integer-scaled."""
    a, b, c = key
    total = 0
    for (ap, i, j), val in lam_int.items():
        dual = minv[a - 1][ap - 1]
        if not dual:
            continue
        wedge = (
            m[i - 1][b - 1] * m[j - 1][c - 1] - m[j - 1][b - 1] * m[i - 1][c - 1]
        )
        if wedge:
            total += val * dual * wedge
    return total


def _restrictions_all_nonzero(
    lam_int: dict[Key, int],
    m: IntMatrix,
    minv: IntMatrix,
    subset_keys: Sequence[Sequence[Key]],
) -> bool:
    memo: dict[Key, int] = {}
    for keys in subset_keys:
        ok = False
        for key in keys:
            v = memo.get(key)
            if v is None:
                v = _pullback_coord(key, lam_int, m, minv)
                memo[key] = v
            if v:
                ok = True
                break
        if not ok:
            return False
    return True


def _mul_elementary_right(m: IntMatrix, i: int, j: int, sign: int) -> IntMatrix:
    """m . E_ij(sign): adds sign * (column i) to column j."""
    return tuple(
        tuple(
            row[c] + (sign * row[i - 1] if c == j - 1 else 0)
            for c in range(len(row))
        )
        for row in m
    )


def _mul_elementary_inv_left(m: IntMatrix, i: int, j: int, sign: int) -> IntMatrix:
    """E_ij(-sign) . m: subtracts sign * (row j) from row i."""
    return tuple(
        tuple(
            v - (sign * m[j - 1][c] if r == i - 1 else 0)
            for c, v in enumerate(row)
        )
        for r, row in enumerate(m)
    )


def tilt_search(
    lam: H1Functional, n: int, subset_size: int, budget: int
) -> TiltResult:
    """Breadth-first search over words of length <= budget in the elementary
    matrices E_ij(+-1), for the first matrix (in move order, identity first)
    whose pullback of lam is nonzero on every coordinate subspace of the given
    subset size.  Exhaustion is reported, never papered over."""
    if lam.is_zero():
        raise ValueError("tilt_search needs a nonzero functional")
    if not 2 <= subset_size <= n:
        raise ValueError(f"subset size {subset_size} outside 2..{n}")
    if lam.n != n:
        raise ValueError("functional rank mismatch")

    denom_lcm = 1
    for _, val in lam.coords:
        denom_lcm = denom_lcm * val.denominator // math.gcd(
            denom_lcm, val.denominator
        )
    lam_int = {k: int(v * denom_lcm) for k, v in lam.coords}

    subset_keys = [
        [(a, b, c) for a in idx for b in idx for c in idx if b < c]
        for idx in combinations(range(1, n + 1), subset_size)
    ]
    moves = [
        (i, j, s)
        for i in range(1, n + 1)
        for j in range(1, n + 1)
        if i != j
        for s in (1, -1)
    ]

    ident = mat_identity(n)
    frontier: list[tuple[IntMatrix, IntMatrix, tuple[Move, ...]]] = [
        (ident, ident, ())
    ]
    visited = {ident}
    examined = 0
    for depth in range(budget + 1):
        nxt: list[tuple[IntMatrix, IntMatrix, tuple[Move, ...]]] = []
        for m, minv, path in frontier:
            examined += 1
            if _restrictions_all_nonzero(lam_int, m, minv, subset_keys):
                return TiltResult(True, path, m, examined)
            if depth == budget:
                continue
            for i, j, s in moves:
                m2 = _mul_elementary_right(m, i, j, s)
                if m2 in visited:
                    continue
                visited.add(m2)
                nxt.append((m2, _mul_elementary_inv_left(minv, i, j, s), path + ((i, j, s),)))
        frontier = nxt
        if not frontier:
            break
    return TiltResult(False, (), None, examined)


# ---------------------------------------------------------------------------
# Exact rank over the rationals


def rational_rank(rows: Iterable[Sequence[Fraction | int]]) -> int:
    """Row-echelon rank with exact fraction arithmetic."""
    work = [[Fraction(v) for v in row] for row in rows]
    rank = 0
    col = 0
    width = len(work[0]) if work else 0
    while rank < len(work) and col < width:
        piv = next((r for r in range(rank, len(work)) if work[r][col]), None)
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        inv = 1 / work[rank][col]
        work[rank] = [v * inv for v in work[rank]]
        for r in range(len(work)):
            if r != rank and work[r][col]:
                f = work[r][col]
                work[r] = [x - f * y for x, y in zip(work[r], work[rank])]
        rank += 1
        col += 1
    return rank


def format_h1(v: H1Vector | H1Functional) -> dict[str, str]:
    """Sparse `a|b|c -> coeff` records, JSON-friendly."""
    return {f"{a}|{b}|{c}": str(val) for (a, b, c), val in v.coords}


def parse_h1(n: int, records: Mapping[str, str], dual: bool = False):
    coords = {}
    for key, val in records.items():
        a, b, c = (int(p) for p in key.split("|"))
        coords[(a, b, c)] = Fraction(val)
    return h1_functional(n, coords) if dual else h1_vector(n, coords)
