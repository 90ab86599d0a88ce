import itertools
import random
from fractions import Fraction

import pytest

from sumlab import (
    Direction,
    Hyperplane,
    PointSet,
    affine_dimension,
    hyperplane_slices,
    line_partition,
    major_hyperplane,
    min_line_cover,
    stan_doubling_tight,
    stanchescu_dk,
    supporting_hyperplanes,
    translate,
)
from sumlab.incidence import project_along
from conftest import pset

E1 = Direction.of((1, 0))
E2 = Direction.of((0, 1))


def test_direction_canonicalization():
    assert Direction.of((2, -4)).vec == (1, -2)
    assert Direction.of((-1, 2)).vec == (1, -2)
    assert Direction.of((Fraction(1, 2), Fraction(1, 3))).vec == (3, 2)
    with pytest.raises(ValueError):
        Direction.of((0, 0))


def test_hyperplane_canonicalization():
    h = Hyperplane.of((0, -2), -4)
    assert h.normal == (0, 1) and h.offset == 2
    assert h == Hyperplane.of((0, 1), 2)
    assert h.to_json() == {"normal": ["0", "1"], "offset": "2"}


def test_line_partition_examples():
    part = line_partition(pset(2, [(0, 0), (1, 0), (0, 1)]), E1)
    assert part.count == 2 and sorted(part.class_sizes()) == [1, 2]
    assert line_partition(pset(1, [(0,), (1,), (2,)]), Direction.of((1,))).count == 1
    assert line_partition(stanchescu_dk(2, 3), E1).class_sizes() == (3, 3)


def test_line_partition_counts_bounds():
    rng = random.Random(3)
    for _ in range(30):
        d = rng.choice((2, 3))
        a = pset(d, {tuple(rng.randint(0, 4) for _ in range(d)) for _ in range(rng.randint(1, 10))})
        vec = tuple(rng.randint(-2, 2) for _ in range(d))
        if not any(vec):
            vec = (1,) + (0,) * (d - 1)
        part = line_partition(a, Direction.of(vec))
        assert 1 <= part.count <= len(a)
        assert sum(part.class_sizes()) == len(a)
        # a full-dimensional set cannot be covered by fewer than d parallel lines
        if affine_dimension(a) == d:
            assert part.count >= d


def test_partition_class_sizes_translation_invariant():
    rng = random.Random(4)
    for _ in range(20):
        a = pset(2, {tuple(rng.randint(0, 5) for _ in range(2)) for _ in range(rng.randint(2, 9))})
        moved = translate(a, (rng.randint(-4, 4), rng.randint(-4, 4)))
        assert sorted(line_partition(a, E1).class_sizes()) == sorted(
            line_partition(moved, E1).class_sizes()
        )


def test_min_line_cover_grid_and_collinear():
    grid = pset(2, [(i, j) for i in range(3) for j in range(3)])
    direction, count = min_line_cover(grid)
    assert count == 3
    assert direction.vec in ((1, 0), (0, 1))
    collinear = pset(2, [(0, 0), (1, 1), (2, 2)])
    assert min_line_cover(collinear) == (Direction.of((1, 1)), 1)


def test_min_line_cover_exhaustiveness_small():
    # cross-check against every direction in a bounded integer window
    a = stan_doubling_tight(3, 4)
    _, count = min_line_cover(a)
    assert count == 4
    window = [
        Direction.of(v)
        for v in itertools.product(range(-3, 4), repeat=3)
        if any(v)
    ]
    assert min(line_partition(a, d).count for d in set(window)) == 4


def test_supporting_hyperplanes_examples():
    grid = pset(2, [(i, j) for i in range(3) for j in range(3)])
    hs = supporting_hyperplanes(grid, E1)
    assert hs == [Hyperplane.of((0, 1), 0), Hyperplane.of((0, 1), 2)]

    tri = pset(2, [(0, 0), (1, 0), (0, 1)])
    assert supporting_hyperplanes(tri, E2) == [
        Hyperplane.of((1, 0), 0),
        Hyperplane.of((1, 0), 1),
    ]

    s32 = stanchescu_dk(3, 2)
    hs3 = supporting_hyperplanes(s32, Direction.of((0, 1, 0)))
    plane_of_top_block = Hyperplane.of((0, 0, 1), 0)
    assert plane_of_top_block in hs3


def test_supporting_hyperplanes_projection_degenerate():
    column = pset(2, [(0, 0), (0, 1), (0, 5)])
    with pytest.raises(ValueError):
        supporting_hyperplanes(column, E2)


def test_supporting_hyperplanes_one_closed_side():
    rng = random.Random(14)
    for _ in range(25):
        d = rng.choice((2, 3, 4))
        a = pset(d, {tuple(rng.randint(0, 4) for _ in range(d)) for _ in range(rng.randint(3, 10))})
        vec = tuple(rng.randint(-2, 2) for _ in range(d))
        if not any(vec):
            vec = (0,) * (d - 1) + (1,)
        l = Direction.of(vec)
        if len({project_along(p, l) for p in a.points}) < 2:
            continue
        for h in supporting_hyperplanes(a, l):
            assert sum(n * v for n, v in zip(h.normal, l.vec)) == 0
            values = [h.value(p) for p in a.points]
            assert all(v <= h.offset for v in values) or all(v >= h.offset for v in values)
            assert any(v == h.offset for v in values)


def test_specialized_vs_general_hull_paths():
    # the planar monotone-chain hull must agree with brute-force facet checks
    rng = random.Random(15)
    e3 = Direction.of((0, 0, 1))
    for _ in range(15):
        a = pset(3, {tuple(rng.randint(0, 4) for _ in range(3)) for _ in range(rng.randint(4, 12))})
        shadow = sorted({project_along(p, e3) for p in a.points})
        if len(shadow) < 3:
            continue
        got = supporting_hyperplanes(a, e3)
        brute = set()
        for qa, qb in itertools.combinations(shadow, 2):
            delta = tuple(x - y for x, y in zip(qb, qa))
            normal = (-delta[1], delta[0], Fraction(0))
            if not any(normal):
                continue
            c0 = sum(n * c for n, c in zip(normal, qa))
            values = [sum(n * c for n, c in zip(normal, q)) for q in shadow]
            if all(v <= c0 for v in values) or all(v >= c0 for v in values):
                brute.add(Hyperplane.of(normal, c0))
        if affine_dimension(PointSet.of(3, shadow)) == 2:
            assert set(got) == brute


def test_supporting_hyperplanes_4d_against_oracle():
    # the k >= 3 facet-enumeration path vs a direct ambient-kernel oracle
    from sumlab.incidence import _shadow_basis
    from sumlab.linalg import affine_rank as arank, kernel_vector

    rng = random.Random(91)
    e4 = Direction.of((0, 0, 0, 1))
    checked = 0
    for _ in range(12):
        pts = set()
        while len(pts) < rng.randint(6, 12):
            pts.add(tuple(rng.randint(0, 3) for _ in range(4)))
        a = pset(4, pts)
        shadow = sorted({project_along(p, e4) for p in a.points})
        if len(_shadow_basis(shadow)) != 3:
            continue
        got = set(supporting_hyperplanes(a, e4))
        brute = set()
        for sub in itertools.combinations(shadow, 3):
            if arank(sub) != 2:
                continue
            d1 = tuple(x - y for x, y in zip(sub[1], sub[0]))
            d2 = tuple(x - y for x, y in zip(sub[2], sub[0]))
            normal = kernel_vector([d1, d2, (0, 0, 0, 1)], 4)
            if normal is None or not any(normal):
                continue
            c0 = sum(x * y for x, y in zip(normal, sub[0]))
            values = [sum(x * y for x, y in zip(normal, q)) for q in shadow]
            if all(v <= c0 for v in values) or all(v >= c0 for v in values):
                brute.add(Hyperplane.of(normal, c0))
        assert got == brute
        checked += 1
    assert checked >= 5


def test_hyperplane_slices_interior_offset_ascends():
    grid = pset(2, [(i, j) for i in range(3) for j in range(3)])
    slices = hyperplane_slices(grid, Hyperplane.of((0, 1), 1))
    assert [s[0].offset for s in slices] == [0, 1, 2]


def test_major_hyperplane_tiebreak():
    slab = pset(2, [(i, j) for i in range(3) for j in range(2)])
    h = major_hyperplane(slab, E1)
    assert h == Hyperplane.of((0, 1), 0)
    a = pset(2, [(0, 0), (1, 0), (2, 0), (0, 1)])
    assert major_hyperplane(a, E1) == Hyperplane.of((0, 1), 0)
    s24 = stanchescu_dk(2, 4)
    h2 = major_hyperplane(s24, E1)
    assert sum(1 for p in s24.points if h2.contains(p)) == 4


def test_major_slice_at_least_last_slice():
    rng = random.Random(16)
    for _ in range(25):
        d = rng.choice((2, 3))
        a = pset(d, {tuple(rng.randint(0, 4) for _ in range(d)) for _ in range(rng.randint(3, 10))})
        vec = tuple(rng.randint(-2, 2) for _ in range(d))
        if not any(vec):
            vec = (1,) + (0,) * (d - 1)
        l = Direction.of(vec)
        if len({project_along(p, l) for p in a.points}) < 2:
            continue
        h = major_hyperplane(a, l)
        slices = hyperplane_slices(a, h)
        assert len(slices[0][1]) >= len(slices[-1][1])
        assert sum(len(s) for _, s in slices) == len(a)


def test_hyperplane_slices_grid_and_order():
    grid = pset(2, [(i, j) for i in range(3) for j in range(3)])
    slices = hyperplane_slices(grid, Hyperplane.of((0, 1), 0))
    assert [(s[0].offset, len(s[1])) for s in slices] == [(0, 3), (1, 3), (2, 3)]
    # supporting from above: order proceeds downward into the set
    upper = hyperplane_slices(grid, Hyperplane.of((0, 1), 2))
    assert [s[0].offset for s in upper] == [2, 1, 0]


def test_hyperplane_slices_whole_set_on_plane():
    flat = pset(2, [(0, 1), (3, 1)])
    slices = hyperplane_slices(flat, Hyperplane.of((0, 1), 1))
    assert len(slices) == 1 and len(slices[0][1]) == 2


def test_stanchescu_32_slices():
    a = stanchescu_dk(3, 2)
    h = major_hyperplane(a, Direction.of((0, 1, 0)))
    slices = hyperplane_slices(a, h)
    assert [len(s) for _, s in slices] == [4, 4]
