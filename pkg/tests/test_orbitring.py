import random
from fractions import Fraction

from dualalg.orbitring import InvariantElement, OrbitCache, contract_from_e, expand_to_e, multiply
from dualalg.rootdata import FrobeniusData, build_standard, dominant_representative, weyl_group


def test_orbit_examples():
    sl2 = build_standard("SL", 2)
    c = OrbitCache(sl2)
    assert c.orbit((1,)) == frozenset({(1,), (-1,)})
    assert c.orbit((0,)) == frozenset({(0,)})
    so8 = build_standard("SO", 8)
    c = OrbitCache(so8)
    orb = c.orbit((1, 0, 0, 0))
    assert len(orb) == 8  # 2n short vectors
    assert (0, -1, 0, 0) in orb


def test_orbit_size_divides_weyl_order():
    rd = build_standard("Sp", 4)
    cache = OrbitCache(rd)
    weyl_order = len(weyl_group(rd))
    rng = random.Random(3)
    for _ in range(30):
        lam = tuple(rng.randint(-3, 3) for _ in range(rd.rank))
        assert weyl_order % len(cache.orbit(lam)) == 0


def test_multiply_sl2_hand_expansions():
    rd = build_standard("SL", 2)
    cache = OrbitCache(rd)
    r = InvariantElement.r
    # (e(1)+e(-1))^2 = e(2) + 2 e(0) + e(-2)
    assert multiply(cache, r((1,)), r((1,))) == InvariantElement({(2,): 1, (0,): 2})
    assert multiply(cache, r((0,)), r((3,))) == r((3,))
    # (e(1)+e(-1)) (e(3)+e(-3)) = e(4)+e(2)+e(-2)+e(-4)
    assert multiply(cache, r((1,)), r((3,))) == InvariantElement({(4,): 1, (2,): 1})


def test_multiply_commutative_associative():
    rd = build_standard("GL", 2)
    cache = OrbitCache(rd)
    rng = random.Random(11)
    for _ in range(12):
        xs = []
        for _ in range(3):
            lam = dominant_representative(rd, (rng.randint(-3, 3), rng.randint(-3, 3)))[0]
            xs.append(InvariantElement.r(lam, rng.randint(1, 2)))
        a, b, c = xs
        assert multiply(cache, a, b) == multiply(cache, b, a)
        left = multiply(cache, multiply(cache, a, b), c)
        right = multiply(cache, a, multiply(cache, b, c))
        assert left == right


def test_e_r_round_trip():
    rd = build_standard("Sp", 4)
    cache = OrbitCache(rd)
    x = InvariantElement({(2, 1): 3, (1, 1): -2, (0, 0): 7})
    assert contract_from_e(cache, expand_to_e(cache, x)) == x


def test_height_examples():
    sl2 = build_standard("SL", 2)
    c = OrbitCache(sl2)
    assert c.height((1,)) == Fraction(1, 2)
    assert c.height((2,)) == 1
    gl2 = build_standard("GL", 2)
    c = OrbitCache(gl2)
    assert c.height((1, 1)) == 0  # central weights are killed by the projection
    assert c.height((1, -1)) == 1


def test_height_descent_property():
    for fam, n in [("SL", 3), ("Sp", 4), ("SO", 8)]:
        rd = build_standard(fam, n)
        cache = OrbitCache(rd)
        weyl = weyl_group(rd)
        rng = random.Random(5)
        for _ in range(100):
            lam = dominant_representative(
                rd, tuple(rng.randint(-4, 4) for _ in range(rd.rank))
            )[0]
            h = cache.height(lam)
            if h == 0:
                continue
            assert h > 0
            w = rng.choice(weyl)
            img = w.apply(lam)
            if img != lam:
                assert cache.height(img) < h


def test_leading_coefficient_one():
    # the reduction relies on the top term of r(lam') r(q w_a) having coefficient 1
    rd = build_standard("Sp", 4)
    cache = OrbitCache(rd)
    frob = FrobeniusData(rd, 2, 1)
    lifts = rd.fundamental_weight_lifts()
    rng = random.Random(13)
    for _ in range(20):
        lam_p = dominant_representative(
            rd, tuple(rng.randint(-3, 3) for _ in range(rd.rank))
        )[0]
        for w in lifts:
            for mu in (tuple(frob.q * y for y in w), w):
                prod = multiply(cache, InvariantElement.r(lam_p), InvariantElement.r(mu))
                top = tuple(a + b for a, b in zip(lam_p, mu))
                assert prod.coeffs.get(top) == 1
