import random
from itertools import product

import pytest

from lcsforge.autom import (
    comm_move,
    compose,
    conj,
    free_endo,
    ia_word,
    identity_endo,
    invert_ia,
    realize_generator,
)
from lcsforge.magnus import (
    TruncatedSeries,
    expand_bracket,
    format_series,
    hall_basis,
    johnson_level,
    lcs_depth,
    leaf,
    bracket,
    magnus_embed,
    series_mul,
    series_one,
    witt_dimension,
)
from lcsforge.words import EPSILON, commutator, concat, invert, word


def naive_mul(a: dict, b: dict, cutoff: int) -> dict:
    """Independent oracle: quadratic truncated product on plain dicts."""
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            if len(ma) + len(mb) > cutoff:
                continue
            key = ma + mb
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


def letter_series(v: int, cutoff: int) -> dict:
    i = abs(v)
    if v > 0:
        return {(): 1, (i,): 1}
    out = {(): 1}
    sign = 1
    for j in range(1, cutoff + 1):
        sign = -sign
        out[(i,) * j] = sign
    return out


def oracle_embed(w, cutoff: int) -> dict:
    out = {(): 1}
    for v in w.letters:
        out = naive_mul(out, letter_series(v, cutoff), cutoff)
    return out


def random_word(rng, max_len=12, alphabet=3):
    return word(
        rng.choice([1, -1]) * rng.randint(1, alphabet)
        for _ in range(rng.randint(0, max_len))
    )


def test_embed_identity():
    assert magnus_embed(EPSILON, 3) == series_one(3)


def test_embed_commutator_golden():
    # frozen from the independent four-factor multiplication below
    got = magnus_embed(commutator(word([1]), word([2])), 3)
    expected = {
        (): 1,
        (1, 2): 1,
        (2, 1): -1,
        (2, 1, 1): 1,
        (2, 1, 2): 1,
        (1, 2, 2): -1,
        (1, 2, 1): -1,
    }
    assert got.as_dict() == expected
    assert got.as_dict() == oracle_embed(commutator(word([1]), word([2])), 3)


def test_embed_matches_oracle():
    rng = random.Random(30)
    for _ in range(60):
        w = random_word(rng)
        assert magnus_embed(w, 4).as_dict() == oracle_embed(w, 4)


def test_embed_multiplicative():
    rng = random.Random(31)
    for _ in range(60):
        u, v = random_word(rng), random_word(rng)
        lhs = magnus_embed(concat(u, v), 4)
        rhs = series_mul(magnus_embed(u, 4), magnus_embed(v, 4))
        assert lhs == rhs


def test_embed_inverse_gives_one():
    rng = random.Random(32)
    for _ in range(60):
        w = random_word(rng)
        prod = series_mul(magnus_embed(w, 4), magnus_embed(invert(w), 4))
        assert prod == series_one(4)


def test_series_validation():
    with pytest.raises(ValueError):
        TruncatedSeries(2, (((1, 2, 3), 1),))
    with pytest.raises(ValueError):
        TruncatedSeries(2, (((1,), 0),))
    with pytest.raises(ValueError):
        series_one(0)


def test_depth_examples():
    assert lcs_depth(word([1]), 4) == 1
    assert lcs_depth(commutator(word([1]), word([2])), 4) == 2
    nested = commutator(commutator(word([1]), word([2])), word([1]))
    assert lcs_depth(nested, 4) == 3
    assert lcs_depth(EPSILON, 4) is None


def test_depth_filtration_property():
    short = [word([1]), word([2]), commutator(word([1]), word([2]))]
    for u, v in product(short, short):
        c = commutator(u, v)
        du, dv = lcs_depth(u, 5), lcs_depth(v, 5)
        dc = lcs_depth(c, 5)
        if du is not None and dv is not None and du + dv <= 5:
            assert dc is None or dc >= du + dv


def test_johnson_level_examples():
    assert johnson_level(identity_endo(3), 4) is None
    k12 = realize_generator(conj(1, 2), 2)
    assert johnson_level(k12, 4) == 1
    with pytest.raises(ValueError):
        johnson_level(free_endo(2, {1: word([1, 2])}), 4)


def all_magnus_endos(n):
    from itertools import combinations

    toks = [conj(a, b) for a in range(1, n + 1) for b in range(1, n + 1) if a != b]
    toks += [
        comm_move(a, b, c)
        for a in range(1, n + 1)
        for b, c in combinations([i for i in range(1, n + 1) if i != a], 2)
    ]
    return [ia_word(n, [t]) for t in toks]


def test_level2_commutators_at_n4():
    gens = all_magnus_endos(4)
    for u in gens:
        for v in gens:
            comm = compose(
                compose(u.realized, v.realized),
                compose(invert_ia(u).realized, invert_ia(v).realized),
            )
            lvl = johnson_level(comm, 4)
            assert lvl is None or lvl >= 2


def test_level_of_composition_bounded_below():
    # level(uv) >= min(level(u), level(v)), with None standing in for the cutoff
    rng = random.Random(33)
    cutoff = 4
    gens = all_magnus_endos(3)
    for _ in range(60):
        u = rng.choice(gens).realized
        v = rng.choice(gens).realized
        lu = johnson_level(u, cutoff)
        lv = johnson_level(v, cutoff)
        lc = johnson_level(compose(u, v), cutoff)
        eff = lambda x: cutoff if x is None else x
        assert eff(lc) >= min(eff(lu), eff(lv))


def test_witt_goldens():
    assert witt_dimension(2, 2) == 1
    assert witt_dimension(2, 3) == 2
    assert witt_dimension(3, 2) == 3


def test_hall_counts_match_witt():
    for n in range(1, 5):
        for k in range(1, 7):
            assert len(hall_basis(n, k)) == witt_dimension(n, k), (n, k)


def test_hall_weight2_is_single_bracket():
    basis = hall_basis(2, 2)
    assert len(basis) == 1
    assert str(basis[0]) == "[x1,x2]"


def test_expand_bracket_depths_exact():
    for k in range(1, 5):
        for t in hall_basis(3, k):
            w = expand_bracket(t)
            assert lcs_depth(w, k + 1) == k, str(t)


def test_hall_tree_validation():
    from lcsforge.magnus import HallTree

    with pytest.raises(ValueError):
        HallTree(index=1, left=leaf(1), right=leaf(2))
    with pytest.raises(ValueError):
        HallTree(index=None, left=leaf(1), right=None)
    assert bracket(leaf(1), leaf(2)).weight == 2


def test_format_series():
    s = magnus_embed(word([1]), 2)
    assert format_series(s) == "1 + 1*X1"
