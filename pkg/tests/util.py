"""Shared helpers for the test suite: builders and branch-specific germ generators."""

from fractions import Fraction
from random import Random

from germclass.docparse import parse_poly
from germclass.fuzz import FuzzConfig, act, random_source_diffeo, random_target_diffeo
from germclass.jets import Jet2, MapJet
from germclass.oracle import HNormalCoeffs, SBNormalCoeffs


def jet(table, order=6):
    return Jet2(order, {k: Fraction(v) for k, v in table.items()})


def uni(table, order=6):
    return Jet2(order, {(0, j): Fraction(v) for j, v in table.items()})


def germ(f1, f2, f3, order=6):
    return MapJet.germ(parse_poly(f1, order), parse_poly(f2, order), parse_poly(f3, order))


def rational(rng: Random, bound=5, den=3, nonzero=False) -> Fraction:
    while True:
        num = rng.randint(-bound, bound)
        if nonzero and num == 0:
            continue
        return Fraction(num, rng.randint(1, den))


def random_jet(rng: Random, order=6, max_degree=4, density=0.4) -> Jet2:
    table = {}
    for i in range(max_degree + 1):
        for j in range(max_degree + 1 - i):
            if rng.random() < density:
                table[(i, j)] = rational(rng)
    return Jet2(order, table)


def scramble(f: MapJet, rng: Random, max_degree=3, order=6) -> MapJet:
    """Act with a random A-equivalence (source and target diffeos)."""
    cfg = FuzzConfig(seed=0, bound=5, degree=max_degree, order=order)
    degree = rng.randint(1, max_degree)
    phi_s = random_source_diffeo(cfg, rng, degree)
    phi_t = random_target_diffeo(cfg, rng, degree)
    return act(f, phi_s, phi_t)


def random_sb_coeffs(rng: Random, branch: str) -> SBNormalCoeffs:
    """Random SB-shape coefficients constrained to land in a given branch.

    branch: 'S1' (a21,a03 nonzero), 'S' (a21=0, a03!=0), 'S2' (also a31!=0),
    'B' (a03=0, a21!=0), 'B2' (also disc!=0, b=0), 'SB' (unconstrained).
    """
    a = {(i, j): rational(rng) for i in range(6) for j in range(1, 6)
         if 3 <= i + j <= 5 and rng.random() < 0.6}
    b = {i: rational(rng) for i in (3, 4, 5) if rng.random() < 0.5}
    if branch in ("S", "S2"):
        a.pop((2, 1), None)
        a[(0, 3)] = rational(rng, nonzero=True)
        if branch == "S2":
            a[(3, 1)] = rational(rng, nonzero=True)
    elif branch in ("B", "B2"):
        a.pop((0, 3), None)
        a[(2, 1)] = rational(rng, nonzero=True)
        if branch == "B2":
            b = {}
            while 3 * a.get((0, 5), 0) * a[(2, 1)] - 5 * a.get((1, 3), 0) ** 2 == 0:
                a[(0, 5)] = rational(rng)
                a[(1, 3)] = rational(rng)
    elif branch == "S1":
        a[(2, 1)] = rational(rng, nonzero=True)
        a[(0, 3)] = rational(rng, nonzero=True)
    return SBNormalCoeffs(a, b)


def random_h_coeffs(rng: Random, branch: str) -> HNormalCoeffs:
    """branch: 'HP2' (b03 free), 'H' (b03 != 0), 'H2' (also quintic nonzero)."""
    from germclass.oracle import h2_discriminant

    while True:
        a = {(i, j): rational(rng) for i in range(6) for j in range(6)
             if 3 <= i + j <= 5 and rng.random() < 0.4}
        b = {(i, j): rational(rng) for i in range(6) for j in range(6)
             if 3 <= i + j <= 5 and rng.random() < 0.4}
        if branch in ("H", "H2"):
            b[(0, 3)] = rational(rng, nonzero=True)
        coeffs = HNormalCoeffs(a, b)
        if branch == "H2" and h2_discriminant(coeffs) == 0:
            continue
        return coeffs


def random_branch_germ(rng: Random, branch: str, order=6, scrambled=True) -> MapJet:
    """A random germ provably in the given branch, optionally diffeo-scrambled."""
    if branch in ("S1", "S", "S2", "B", "B2", "SB"):
        f = random_sb_coeffs(rng, branch).to_map_jet(order)
    elif branch in ("HP2", "H", "H2"):
        f = random_h_coeffs(rng, branch).to_map_jet(order)
    elif branch == "WU":
        f = germ("u", "v^2", "u*v", order)
    else:
        raise ValueError(branch)
    return scramble(f, rng, order=order) if scrambled else f
