"""Endomorphisms of free groups by generator images, and IA automorphisms.

An endomorphism stores only its non-fixed generator images; indices outside
the stored map act as the identity, so enlarging the ambient rank is literal
inclusion.  Invertibility is handled exclusively through witnesses: an
``IAWord`` is a word in the Magnus generators, inverted by reversing and
flipping signs, and an ``AutWitness`` is a general automorphism packaged with
an explicit inverse.

Magnus generator conventions (fixed once for the whole artifact):

* ``K[a,b]``  (conjugation move): ``x_a -> x_b x_a x_b^-1``
* ``M[a,b,c]`` (commutator move, ``b < c``): ``x_a -> x_a [x_b, x_c]``
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping

from .words import Word, concat, invert, support, word

__all__ = [
    "FreeEndo",
    "free_endo",
    "identity_endo",
    "apply",
    "compose",
    "is_identity",
    "abelianized_matrix",
    "ia_check",
    "IAGenerator",
    "conj",
    "comm_move",
    "realize_generator",
    "IAWord",
    "ia_word",
    "identity_ia",
    "invert_ia",
    "concat_ia",
    "conjugate",
    "commute",
    "format_ia_word",
    "parse_ia_word",
    "AutWitness",
    "inner_lift",
    "transvection_lift",
    "signed_permutation_lift",
]


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True)
class FreeEndo:
    """Endomorphism of the rank-n free group; images lists only moved
    generators, sorted by index."""

    rank: int
    images: tuple[tuple[int, Word], ...] = ()

    def __post_init__(self) -> None:
        seen = set()
        for i, img in self.images:
            if not 1 <= i <= self.rank:
                raise ValueError(f"image index {i} outside rank {self.rank}")
            if i in seen:
                raise ValueError(f"duplicate image for index {i}")
            seen.add(i)
            bad = [j for j in support(img) if j > self.rank]
            if bad:
                raise ValueError(f"image of x{i} uses indices {bad} beyond rank")
            if img.letters == (i,):
                raise ValueError("fixed images must be omitted; use free_endo()")

    @cached_property
    def _imap(self) -> dict[int, tuple[int, ...]]:
        return {i: img.letters for i, img in self.images}

    def image(self, i: int) -> Word:
        if not 1 <= i <= self.rank:
            raise ValueError(f"index {i} outside rank {self.rank}")
        letters = self._imap.get(i)
        return Word(letters) if letters is not None else Word((i,))

    def moved_indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.images)


def free_endo(rank: int, images: Mapping[int, Word]) -> FreeEndo:
    """Build an endomorphism, dropping entries that fix their generator."""
    kept = tuple(
        (i, img) for i, img in sorted(images.items()) if img.letters != (i,)
    )
    return FreeEndo(rank, kept)


def identity_endo(rank: int) -> FreeEndo:
    return FreeEndo(rank)


def apply(phi: FreeEndo, w: Word) -> Word:
    """Substitute generator images through w and reduce."""
    imap = phi._imap
    out: list[int] = []
    for v in w.letters:
        i = abs(v)
        if i > phi.rank:
            raise ValueError(f"letter x{i} outside rank {phi.rank}")
        img = imap.get(i)
        if img is None:
            seq = (v,)
        elif v > 0:
            seq = img
        else:
            seq = tuple(-u for u in reversed(img))
        for u in seq:
            if out and out[-1] == -u:
                out.pop()
            else:
                out.append(u)
    return Word(tuple(out))


def compose(phi: FreeEndo, psi: FreeEndo) -> FreeEndo:
    """(phi . psi)(x) = phi(psi(x))."""
    if phi.rank != psi.rank:
        raise RankMismatch(f"ranks differ: {phi.rank} vs {psi.rank}")
    touched = set(psi._imap) | set(phi._imap)
    images = {i: apply(phi, psi.image(i)) for i in touched}
    return free_endo(phi.rank, images)


def is_identity(phi: FreeEndo) -> bool:
    return not phi.images


def abelianized_matrix(phi: FreeEndo) -> tuple[tuple[int, ...], ...]:
    """Exponent-sum matrix M with M[i][j] = (exponent sum of x_{i+1} in the
    image of x_{j+1}); columns are abelianized images, so the matrix of a
    composition is the matrix product."""
    n = phi.rank
    cols = []
    for j in range(1, n + 1):
        col = [0] * n
        for v in phi.image(j).letters:
            col[abs(v) - 1] += 1 if v > 0 else -1
        cols.append(col)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def ia_check(phi: FreeEndo) -> bool:
    """True iff phi acts trivially on the abelianization."""
    n = phi.rank
    ident = tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
    return abelianized_matrix(phi) == ident


# ---------------------------------------------------------------------------
# Magnus generators and IA words


@dataclass(frozen=True)
class IAGenerator:
    """A signed Magnus generator: kind 'conj' is K[a,b], kind 'comm' is
    M[a,b,c] with b < c; sign -1 denotes the inverse move."""

    kind: str
    a: int
    b: int
    c: int | None = None
    sign: int = 1

    def __post_init__(self) -> None:
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.kind == "conj":
            if self.c is not None:
                raise ValueError("conj takes two indices")
            if self.a == self.b or min(self.a, self.b) < 1:
                raise ValueError(f"bad conj indices ({self.a},{self.b})")
        elif self.kind == "comm":
            if self.c is None:
                raise ValueError("comm takes three indices")
            if len({self.a, self.b, self.c}) != 3 or min(self.a, self.b, self.c) < 1:
                raise ValueError(f"bad comm indices ({self.a},{self.b},{self.c})")
            if not self.b < self.c:
                raise ValueError("comm requires b < c")
        else:
            raise ValueError(f"unknown generator kind {self.kind!r}")

    @property
    def indices(self) -> frozenset[int]:
        if self.kind == "conj":
            return frozenset((self.a, self.b))
        return frozenset((self.a, self.b, self.c))

    def inverse(self) -> "IAGenerator":
        return IAGenerator(self.kind, self.a, self.b, self.c, -self.sign)

    def token(self) -> str:
        body = (
            f"K[{self.a},{self.b}]"
            if self.kind == "conj"
            else f"M[{self.a},{self.b},{self.c}]"
        )
        return body + ("'" if self.sign < 0 else "")


def conj(a: int, b: int, sign: int = 1) -> IAGenerator:
    return IAGenerator("conj", a, b, sign=sign)


def comm_move(a: int, b: int, c: int, sign: int = 1) -> IAGenerator:
    return IAGenerator("comm", a, b, c, sign=sign)


def realize_generator(g: IAGenerator, rank: int) -> FreeEndo:
    """The endomorphism of the rank-n free group a signed Magnus generator
    performs; the sign -1 form is the explicit two-sided inverse."""
    if any(i > rank for i in g.indices):
        raise ValueError(f"generator {g.token()} exceeds rank {rank}")
    if g.kind == "conj":
        if g.sign > 0:
            img = word([g.b, g.a, -g.b])
        else:
            img = word([-g.b, g.a, g.b])
    else:
        if g.sign > 0:
            img = word([g.a, g.b, g.c, -g.b, -g.c])
        else:
            img = word([g.a, g.c, g.b, -g.c, -g.b])
    return free_endo(rank, {g.a: img})


@dataclass(frozen=True)
class IAWord:
    """A word in signed Magnus generators with its realized endomorphism as
    the invertibility witness."""

    rank: int
    gens: tuple[IAGenerator, ...] = ()

    def __post_init__(self) -> None:
        for g in self.gens:
            if any(i > self.rank for i in g.indices):
                raise ValueError(f"generator {g.token()} exceeds rank {self.rank}")

    @cached_property
    def realized(self) -> FreeEndo:
        out = identity_endo(self.rank)
        # left-to-right product acts by composition: (g1 g2)(x) = g1(g2(x))
        for g in self.gens:
            out = compose(out, realize_generator(g, self.rank))
        return out

    def ia_support(self) -> frozenset[int]:
        out: frozenset[int] = frozenset()
        for g in self.gens:
            out |= g.indices
        return out

    def __repr__(self) -> str:
        return f"IAWord({format_ia_word(self)!r})"


def ia_word(rank: int, gens: Iterable[IAGenerator]) -> IAWord:
    return IAWord(rank, tuple(gens))


def identity_ia(rank: int) -> IAWord:
    return IAWord(rank)


def invert_ia(u: IAWord) -> IAWord:
    return IAWord(u.rank, tuple(g.inverse() for g in reversed(u.gens)))


def concat_ia(*ws: IAWord) -> IAWord:
    ranks = {w.rank for w in ws}
    if len(ranks) > 1:
        raise RankMismatch(f"ranks differ: {sorted(ranks)}")
    gens: tuple[IAGenerator, ...] = ()
    for w in ws:
        gens += w.gens
    return IAWord(ws[0].rank, gens)


def conjugate(phi: IAWord, alpha: IAWord) -> IAWord:
    """alpha^-1 phi alpha, as a generator word."""
    if phi.rank != alpha.rank:
        raise RankMismatch(f"ranks differ: {phi.rank} vs {alpha.rank}")
    return concat_ia(invert_ia(alpha), phi, alpha)


def commute(u: IAWord, v: IAWord) -> bool:
    """Whether the realized automorphisms commute, decided by realizing the
    commutator word u v u^-1 v^-1 through the generator-word witnesses."""
    if not isinstance(u, IAWord) or not isinstance(v, IAWord):
        raise TypeError(
            "commute needs IAWord witnesses; a bare FreeEndo has no "
            "invertibility witness"
        )
    if u.rank != v.rank:
        raise RankMismatch(f"ranks differ: {u.rank} vs {v.rank}")
    comm = concat_ia(u, v, invert_ia(u), invert_ia(v))
    return is_identity(comm.realized)


def format_ia_word(u: IAWord) -> str:
    return f"n={u.rank}:" + ";".join(g.token() for g in u.gens)


_GEN_RE = re.compile(r"^([KM])\[(\d+),(\d+)(?:,(\d+))?\](')?$")


def parse_ia_word(text: str) -> IAWord:
    head, _, body = text.partition(":")
    if not head.startswith("n="):
        raise ValueError(f"missing rank header in {text!r}")
    rank = int(head[2:])
    gens = []
    for tok in filter(None, body.split(";")):
        m = _GEN_RE.match(tok.strip())
        if not m:
            raise ValueError(f"bad generator token {tok!r}")
        kind, a, b, c, inv = m.groups()
        sign = -1 if inv else 1
        if kind == "K":
            if c is not None:
                raise ValueError(f"bad generator token {tok!r}")
            gens.append(conj(int(a), int(b), sign))
        else:
            if c is None:
                raise ValueError(f"bad generator token {tok!r}")
            gens.append(comm_move(int(a), int(b), int(c), sign))
    return IAWord(rank, tuple(gens))


# ---------------------------------------------------------------------------
# General automorphisms with explicit inverses (lifts of matrix-group elements)


@dataclass(frozen=True)
class AutWitness:
    """An automorphism bundled with its inverse; both directions are checked
    on construction."""

    fwd: FreeEndo
    inv: FreeEndo

    def __post_init__(self) -> None:
        if self.fwd.rank != self.inv.rank:
            raise RankMismatch("witness halves have different ranks")
        if not is_identity(compose(self.fwd, self.inv)) or not is_identity(
            compose(self.inv, self.fwd)
        ):
            raise ValueError("inverse witness does not invert the automorphism")

    def conj_endo(self, phi: FreeEndo) -> FreeEndo:
        """fwd . phi . fwd^-1."""
        return compose(self.fwd, compose(phi, self.inv))


def inner_lift(rank: int, w: Word) -> AutWitness:
    """Conjugation by w: x_i -> w x_i w^-1."""
    wi = invert(w)
    fwd = free_endo(rank, {i: concat(w, Word((i,)), wi) for i in range(1, rank + 1)})
    inv = free_endo(rank, {i: concat(wi, Word((i,)), w) for i in range(1, rank + 1)})
    return AutWitness(fwd, inv)


def transvection_lift(rank: int, a: int, b: int, sign: int = 1) -> AutWitness:
    """x_a -> x_a x_b^sign, everything else fixed."""
    if a == b:
        raise ValueError("transvection needs distinct indices")
    fwd = free_endo(rank, {a: word([a, sign * b])})
    inv = free_endo(rank, {a: word([a, -sign * b])})
    return AutWitness(fwd, inv)


def signed_permutation_lift(
    rank: int, perm: Iterable[int], signs: Iterable[int] | None = None
) -> AutWitness:
    """x_i -> x_{perm[i-1]} ^ signs[i-1]; perm is a permutation of 1..rank."""
    p = tuple(perm)
    s = tuple(signs) if signs is not None else (1,) * rank
    if sorted(p) != list(range(1, rank + 1)):
        raise ValueError(f"not a permutation of 1..{rank}: {p}")
    if len(s) != rank or any(e not in (1, -1) for e in s):
        raise ValueError("signs must be a +1/-1 vector of length rank")
    fwd = free_endo(rank, {i: word([s[i - 1] * p[i - 1]]) for i in range(1, rank + 1)})
    pinv = {p[i - 1]: i for i in range(1, rank + 1)}
    inv = free_endo(
        rank,
        {j: word([s[pinv[j] - 1] * pinv[j]]) for j in range(1, rank + 1)},
    )
    return AutWitness(fwd, inv)
