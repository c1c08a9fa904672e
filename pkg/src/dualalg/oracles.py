"""Independent counting oracles: twisted-torus fixed-point counts, the
class-count average, explicit fixed-point enumeration with evaluation in a
prime field, and Weyl-orbit fusion across twist sectors.

For a twist w the fixed points of w∘F on the dual torus form a finite abelian
group isomorphic to the cokernel of (F*w - id) on the character lattice; its
order is |det(F*w - id)|.  Averaging those orders over W counts the W-orbits
of the union of all sectors, which is the point count of the fixed-point
scheme and the target of every rank cross-check in this package.

Points are realized concretely: a prime ell with ell = 1 mod every elementary
divisor makes all required roots of unity live in F_ell, so a point is just
the tuple of its values on the standard basis of the character lattice.
"""

from __future__ import annotations

from math import gcd

from .errors import BadPrime, NonIntegral, PrimeMismatch
from .intlinalg import IntMatrix, snf
from .orbitring import OrbitCache
from .rootdata import FrobeniusData, RootDatum, weyl_group


def sector_matrix(frob: FrobeniusData, w):
    """Matrix of (F o w - id) on the character lattice."""
    m = frob.f_matrix * w.matrix
    return m - IntMatrix.identity(m.rows)


def torus_fixed_count(rd: RootDatum, frob: FrobeniusData, w):
    """|T^{wF}| = |det(F*w - id)|."""
    from .intlinalg import det

    return abs(det(sector_matrix(frob, w)))


def class_count(rd: RootDatum, frob: FrobeniusData, weyl=None):
    """(1/|W|) * sum over w of |det(F*w - id)|, asserted integral."""
    if weyl is None:
        weyl = weyl_group(rd)
    total = sum(torus_fixed_count(rd, frob, w) for w in weyl)
    if total % len(weyl) != 0:
        raise NonIntegral(f"sector sum {total} not divisible by |W| = {len(weyl)}")
    return total // len(weyl)


class TorusPoint:
    """A character-lattice homomorphism into F_ell^x.

    ``values[j]`` is the image of the j-th standard basis weight; ``w_index``
    records the sector the representative was first found in.
    """

    __slots__ = ("values", "ell", "w_index")

    def __init__(self, values, ell, w_index):
        self.values = tuple(values)
        self.ell = ell
        self.w_index = w_index

    def eval_weight(self, lam):
        v = 1
        ell = self.ell
        for base, e in zip(self.values, lam):
            v = v * pow(base, e % (ell - 1), ell) % ell
        return v

    def __repr__(self):
        return f"TorusPoint({self.values}, ell={self.ell})"


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _primitive_root(ell):
    fac = _factorize(ell - 1)
    for g in range(2, ell):
        if all(pow(g, (ell - 1) // f, ell) != 1 for f in fac):
            return g
    raise RuntimeError(f"no primitive root mod {ell}")


def sector_divisors(rd: RootDatum, frob: FrobeniusData, weyl=None):
    """All elementary divisors of the matrices (F*w - id), with SNF data.

    Returns (divisors_lcm, per_sector) where per_sector[i] = (w, U, diag).
    """
    if weyl is None:
        weyl = weyl_group(rd)
    per_sector = []
    l = 1
    for w in weyl:
        a = sector_matrix(frob, w)
        d, u, _ = snf(a)
        diag = tuple(d[i, i] for i in range(rd.rank))
        if any(x == 0 for x in diag):
            raise NonIntegral("sector matrix is singular; q >= 2 should prevent this")
        per_sector.append((w, u, diag))
        for x in diag:
            l = l * x // gcd(l, x)
    return l, per_sector


def choose_ell(rd: RootDatum, frob: FrobeniusData, weyl=None):
    """Smallest prime ell = 1 mod lcm of all elementary divisors, ell != p."""
    l, _ = sector_divisors(rd, frob, weyl)
    ell = l + 1
    while not (_is_prime(ell) and ell != frob.p):
        ell += l
    return ell


def validate_ell(rd, frob, ell, weyl=None):
    l, per = sector_divisors(rd, frob, weyl)
    if not _is_prime(ell):
        raise BadPrime(f"{ell} is not prime")
    if ell == frob.p:
        raise BadPrime("ell must differ from p")
    if (ell - 1) % l != 0:
        raise BadPrime(f"ell = {ell} is not 1 mod {l}")
    return per


def enumerate_points(rd: RootDatum, frob: FrobeniusData, ell=None, weyl=None):
    """One representative per W-orbit of the union of all sector fixed groups.

    Fusion across sectors works on the value vectors themselves: the W-action
    on a point t is t o w^{-1}, which on value vectors is multiplicative with
    integer exponents, so each orbit is closed out by BFS over the simple
    reflections and deduplicated in a global set.  The number of orbits is
    asserted to equal class_count.
    """
    if weyl is None:
        weyl = weyl_group(rd)
    if ell is None:
        ell = choose_ell(rd, frob, weyl)
    per_sector = validate_ell(rd, frob, ell, weyl)
    n = rd.rank
    gen = _primitive_root(ell)
    reps = []
    seen = set()
    refl = [rd.reflection(i) for i in range(rd.nroots)]
    for w_index, (w, u, diag) in enumerate(per_sector):
        # points of this sector: tuples a with a_i in [0, d_i); the value of a
        # weight lam is prod_i zeta_i^{(u*lam)_i} with zeta_i of order d_i
        zetas = [pow(gen, (ell - 1) // d, ell) for d in diag]
        urows = u.entries
        # value on basis weight e_j uses column j of u
        ucols = [tuple(urows[i][j] for i in range(n)) for j in range(n)]
        total = 1
        for d in diag:
            total *= d
        counter = [0] * n
        for _ in range(total):
            vals = []
            for j in range(n):
                v = 1
                for i in range(n):
                    e = (ucols[j][i] * counter[i]) % diag[i]
                    if e:
                        v = v * pow(zetas[i], e, ell) % ell
                vals.append(v)
            key = tuple(vals)
            if key not in seen:
                reps.append(TorusPoint(key, ell, w_index))
                frontier = [key]
                seen.add(key)
                while frontier:
                    cur = frontier.pop()
                    for s in refl:
                        # (s.t)(e_j) = t(s^{-1} e_j); reflections are involutions
                        nv = []
                        for j in range(n):
                            v = 1
                            for k in range(n):
                                e = s[k, j]
                                if e:
                                    v = v * pow(cur[k], e % (ell - 1), ell) % ell
                            nv.append(v)
                        nk = tuple(nv)
                        if nk not in seen:
                            seen.add(nk)
                            frontier.append(nk)
            # increment mixed-radix counter
            for i in range(n):
                counter[i] += 1
                if counter[i] < diag[i]:
                    break
                counter[i] = 0
    expected = class_count(rd, frob, weyl)
    assert len(reps) == expected, (
        f"orbit fusion found {len(reps)} orbits, class_count = {expected}"
    )
    reps.sort(key=lambda pt: pt.values)
    return reps


def evaluate(cache, x, pt: TorusPoint, ell=None):
    """Value of an invariant element at a torus point, in F_ell.

    Accepts an OrbitCache or a bare RootDatum."""
    if isinstance(cache, RootDatum):
        cache = OrbitCache(cache)
    if ell is not None and pt.ell != ell:
        raise PrimeMismatch(f"point has ell={pt.ell}, expected {ell}")
    total = 0
    for lam, c in x.coeffs.items():
        s = 0
        for mu in cache.orbit(lam):
            s += pt.eval_weight(mu)
        total += c * s
    return total % pt.ell
