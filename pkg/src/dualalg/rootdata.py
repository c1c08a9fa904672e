"""Root data on the dual-torus character lattice, Weyl groups as lattice
automorphisms, and Frobenius twisting data.

A :class:`RootDatum` stores the character lattice X of a (dual) maximal torus
in fixed integer coordinates, the simple roots as vectors of X, and the simple
coroots as vectors of the dual lattice Y; the canonical pairing is the
standard dot product in these coordinates.  All downstream arithmetic (orbit
sums, quotient rings, point counts) consumes exactly this data.

:class:`FrobeniusData` packages a prime power q = p^r together with a finite
order lattice automorphism tau normalizing the simple roots; the induced
endomorphism on X is ``F = q * tau^{-1}``, so tau*F = F*tau = q.
"""

from __future__ import annotations

import os
from fractions import Fraction

from .errors import CapExceeded, DimensionMismatch, InvalidCartan, NotDominant
from .intlinalg import IntMatrix, in_image, kernel_basis, reduce_mod_lattice

DEFAULT_WEYL_CAP = 10 ** 6

UNAVAILABLE = "unavailable"


class RootDatum:
    def __init__(self, rank, simple_roots, simple_coroots, label=""):
        self.rank = rank
        self.simple_roots = tuple(tuple(int(x) for x in a) for a in simple_roots)
        self.simple_coroots = tuple(tuple(int(x) for x in a) for a in simple_coroots)
        self.label = label
        if len(self.simple_roots) != len(self.simple_coroots):
            raise DimensionMismatch("need as many coroots as roots")
        for a in self.simple_roots + self.simple_coroots:
            if len(a) != rank:
                raise DimensionMismatch("root/coroot length != rank")
        self.nroots = len(self.simple_roots)
        self.cartan = tuple(
            tuple(pairing(a, bv) for bv in self.simple_coroots) for a in self.simple_roots
        )
        self._reflections = tuple(
            reflection_matrix(rank, a, av)
            for a, av in zip(self.simple_roots, self.simple_coroots)
        )
        self.all_roots = self._root_closure()
        self.validate()

    # -- structure -----------------------------------------------------

    def _root_closure(self, cap=100000):
        roots = set(self.simple_roots)
        frontier = list(self.simple_roots)
        while frontier:
            lam = frontier.pop()
            for s in self._reflections:
                img = s.apply(lam)
                if img not in roots:
                    roots.add(img)
                    frontier.append(img)
                    if len(roots) > cap:
                        raise InvalidCartan("root closure does not terminate")
        return tuple(sorted(roots))

    def validate(self):
        for i, (a, av) in enumerate(zip(self.simple_roots, self.simple_coroots)):
            if pairing(a, av) != 2:
                raise InvalidCartan(f"<alpha_{i}, alpha_{i}^vee> != 2")
        for i in range(self.nroots):
            for j in range(self.nroots):
                if i != j and self.cartan[i][j] > 0:
                    raise InvalidCartan("positive off-diagonal Cartan entry")
                if i != j and (self.cartan[i][j] == 0) != (self.cartan[j][i] == 0):
                    raise InvalidCartan("asymmetric zero pattern")
        rootset = set(self.all_roots)
        for s in self._reflections:
            for b in self.all_roots:
                if s.apply(b) not in rootset:
                    raise InvalidCartan("reflection does not permute roots")

    def reflection(self, i):
        return self._reflections[i]

    def pair(self, lam, i):
        """<lam, alpha_i^vee>."""
        return pairing(lam, self.simple_coroots[i])

    def is_dominant(self, lam):
        return all(self.pair(lam, i) >= 0 for i in range(self.nroots))

    # -- derived data ----------------------------------------------------

    def central_lattice(self):
        """Z-basis (rows) of {lam : <lam, alpha^vee> = 0 for all simple alpha}."""
        if self.nroots == 0:
            return [tuple(r) for r in IntMatrix.identity(self.rank).entries]
        p = IntMatrix(self.simple_coroots)
        return [tuple(v) for v in kernel_basis(p)]

    def fundamental_weight_lifts(self):
        """Weights with <w_i, alpha_j^vee> = delta_ij, or UNAVAILABLE.

        Exists exactly when the derived datum is simply-connected.  The choice
        is pinned to the representative reduced against the HNF of the central
        lattice, so output is deterministic; only the defining pairings are
        contractual.
        """
        if self.nroots == 0:
            return []
        p = IntMatrix(self.simple_coroots)
        central = self.central_lattice()
        lifts = []
        for i in range(self.nroots):
            target = tuple(1 if j == i else 0 for j in range(self.nroots))
            ok, x = in_image(p, target)
            if not ok:
                return UNAVAILABLE
            lifts.append(reduce_mod_lattice(x, central))
        return lifts

    def cartan_solve(self, pairings):
        """Rational coefficients m with sum m_i * C_i = given pairing vector.

        Solves ``C^T m = pairings`` where C is the Cartan matrix, used by the
        height function.  Returns a tuple of Fractions.
        """
        n = self.nroots
        a = [[Fraction(self.cartan[j][i]) for j in range(n)] for i in range(n)]
        b = [Fraction(x) for x in pairings]
        for col in range(n):
            piv = next(r for r in range(col, n) if a[r][col] != 0)
            a[col], a[piv] = a[piv], a[col]
            b[col], b[piv] = b[piv], b[col]
            inv = 1 / a[col][col]
            a[col] = [x * inv for x in a[col]]
            b[col] *= inv
            for r in range(n):
                if r != col and a[r][col]:
                    f = a[r][col]
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
                    b[r] -= f * b[col]
        return tuple(b)


class WeylElement:
    """A Weyl group element as its matrix action on the character lattice."""

    __slots__ = ("matrix", "_length")

    def __init__(self, matrix: IntMatrix):
        self.matrix = matrix
        self._length = None

    def apply(self, lam):
        return self.matrix.apply(lam)

    def __mul__(self, other):
        return WeylElement(self.matrix * other.matrix)

    def __eq__(self, other):
        return isinstance(other, WeylElement) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"WeylElement({self.matrix.entries})"


def pairing(lam, covec):
    if len(lam) != len(covec):
        raise DimensionMismatch("pairing length")
    return sum(x * y for x, y in zip(lam, covec))


def reflection_matrix(rank, alpha, alphavee):
    cols = []
    for j in range(rank):
        e = tuple(1 if k == j else 0 for k in range(rank))
        c = pairing(e, alphavee)
        cols.append(tuple(e[k] - c * alpha[k] for k in range(rank)))
    return IntMatrix([[cols[j][i] for j in range(rank)] for i in range(rank)])


def weyl_group(rd: RootDatum, cap=None):
    """Full Weyl group by closure of the simple reflections; identity first.

    Raises CapExceeded before materializing more than ``cap`` elements
    (default DUALALG_WEYL_CAP env var or 10^6).
    """
    if cap is None:
        cap = int(os.environ.get("DUALALG_WEYL_CAP", DEFAULT_WEYL_CAP))
    ident = WeylElement(IntMatrix.identity(rd.rank))
    elems = [ident]
    seen = {ident.matrix.entries}
    gens = [WeylElement(rd.reflection(i)) for i in range(rd.nroots)]
    frontier = [ident]
    while frontier:
        new_frontier = []
        for w in frontier:
            for g in gens:
                nxt = WeylElement(g.matrix * w.matrix)
                if nxt.matrix.entries not in seen:
                    seen.add(nxt.matrix.entries)
                    elems.append(nxt)
                    new_frontier.append(nxt)
                    if len(elems) > cap:
                        raise CapExceeded(f"Weyl group exceeds cap {cap}")
        frontier = new_frontier
    return elems


def dominant_representative(rd: RootDatum, lam):
    """The dominant weight in the W-orbit of ``lam`` and a witness w with
    w(lam) dominant."""
    cur = tuple(lam)
    w = IntMatrix.identity(rd.rank)
    guard = 0
    while True:
        for i in range(rd.nroots):
            if rd.pair(cur, i) < 0:
                s = rd.reflection(i)
                cur = s.apply(cur)
                w = s * w
                break
        else:
            return cur, WeylElement(w)
        guard += 1
        if guard > 10 ** 7:
            raise CapExceeded("dominant reduction did not terminate")


def is_q_restricted(rd: RootDatum, frob, lam):
    if not rd.is_dominant(lam):
        raise NotDominant(str(lam))
    return all(rd.pair(lam, i) < frob.q for i in range(rd.nroots))


class FrobeniusData:
    """(p, r, tau) with q = p^r and F = q * tau^{-1} on the character lattice."""

    def __init__(self, rd: RootDatum, p, r, tau=None):
        if not _is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if r < 1:
            raise ValueError("r must be >= 1")
        self.rd = rd
        self.p = p
        self.r = r
        self.q = p ** r
        if tau is None:
            tau = IntMatrix.identity(rd.rank)
        elif not isinstance(tau, IntMatrix):
            tau = IntMatrix(tau)
        self.tau = tau
        tau_inv = _unimodular_inverse(tau)
        self.tau_inv = tau_inv
        self.f_matrix = tau_inv.scale(self.q)
        self._validate()

    def _validate(self):
        rd = self.rd
        q_id = IntMatrix.identity(rd.rank).scale(self.q)
        if self.tau * self.f_matrix != q_id or self.f_matrix * self.tau != q_id:
            raise ValueError("tau*F = F*tau = q fails")
        simple = {a: i for i, a in enumerate(rd.simple_roots)}
        perm = {}
        for i, a in enumerate(rd.simple_roots):
            img = self.tau.apply(a)
            if img not in simple:
                raise ValueError("tau does not permute the simple roots")
            perm[i] = simple[img]
        # the contragredient of tau must induce the same permutation on coroots
        tau_ct = self.tau_inv.transpose()
        for i, av in enumerate(rd.simple_coroots):
            if tau_ct.apply(av) != rd.simple_coroots[perm[i]]:
                raise ValueError("tau is not compatible with the coroot set")
        # finite order
        acc = self.tau
        ident = IntMatrix.identity(rd.rank)
        for _ in range(1000):
            if acc == ident:
                break
            acc = acc * self.tau
        else:
            raise ValueError("tau does not have small finite order")
        self.simple_permutation = perm

    def f_apply(self, lam):
        return self.f_matrix.apply(lam)

    def tau_apply(self, lam):
        return self.tau.apply(lam)


def _is_prime(n):
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power_split(q):
    """Return (p, r) with q = p^r, or raise ValueError."""
    if q < 2:
        raise ValueError(f"q = {q} is not a prime power")
    p = None
    n = q
    i = 2
    while i * i <= n:
        if n % i == 0:
            p = i
            break
        i += 1
    if p is None:
        p = q
    r = 0
    while n > 1:
        if n % p != 0:
            raise ValueError(f"q = {q} is not a prime power")
        n //= p
        r += 1
    return p, r


def _unimodular_inverse(m: IntMatrix):
    from .intlinalg import det as _det

    d = _det(m)
    if d not in (1, -1):
        raise ValueError("matrix is not unimodular")
    # adjugate via solving m*x = e_i exactly (SNF-based)
    n = m.rows
    cols = []
    for i in range(n):
        e = tuple(1 if k == i else 0 for k in range(n))
        ok, x = in_image(m, e)
        assert ok
        cols.append(x)
    return IntMatrix([[cols[j][i] for j in range(n)] for i in range(n)])


# -- standard constructions ------------------------------------------------


def build_standard(family, n=None, cartan=None, label=None):
    """Standard root data.

    family in {"Torus", "GL", "SL", "PGL", "Sp", "SO", "FromCartan"}; n is the
    defining integer (SO and Sp take the matrix size 2n).  FromCartan builds
    the simply-connected datum of a finite-type generalized Cartan matrix.
    """
    if family == "FromCartan":
        return _from_cartan(cartan, label or "FromCartan")
    if n is None or n < 1:
        raise ValueError("n >= 1 required")
    if family == "Torus":
        return RootDatum(n, [], [], label or f"Torus({n})")
    if family == "GL":
        roots = [_eps(n, i, i + 1) for i in range(n - 1)]
        return RootDatum(n, roots, roots, label or f"GL({n})")
    if family == "SL":
        if n < 2:
            raise ValueError("SL needs n >= 2")
        return _from_cartan(_cartan_a(n - 1), label or f"SL({n})")
    if family == "PGL":
        if n < 2:
            raise ValueError("PGL needs n >= 2")
        c = _cartan_a(n - 1)
        rank = n - 1
        roots = [tuple(1 if j == i else 0 for j in range(rank)) for i in range(rank)]
        coroots = [tuple(c[k][i] for k in range(rank)) for i in range(rank)]
        return RootDatum(rank, roots, coroots, label or f"PGL({n})")
    if family == "Sp":
        if n % 2 != 0 or n < 2:
            raise ValueError("Sp takes an even matrix size 2n")
        m = n // 2
        roots = [_eps(m, i, i + 1) for i in range(m - 1)]
        roots.append(tuple(2 if j == m - 1 else 0 for j in range(m)))
        coroots = [_eps(m, i, i + 1) for i in range(m - 1)]
        coroots.append(tuple(1 if j == m - 1 else 0 for j in range(m)))
        return RootDatum(m, roots, coroots, label or f"Sp({n})")
    if family == "SO":
        if n % 2 != 0 or n < 4:
            raise ValueError("SO takes an even matrix size 2n with n >= 2")
        m = n // 2
        roots = [_eps(m, i, i + 1) for i in range(m - 1)]
        roots.append(tuple(1 if j in (m - 2, m - 1) else 0 for j in range(m)))
        return RootDatum(m, roots, list(roots), label or f"SO({n})")
    raise ValueError(f"unknown family {family!r}")


def _eps(n, i, j):
    """epsilon_i - epsilon_j (0-based)."""
    v = [0] * n
    v[i] = 1
    v[j] = -1
    return tuple(v)


def _cartan_a(l):
    return tuple(
        tuple(2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(l))
        for i in range(l)
    )


def _from_cartan(c, label):
    if c is None:
        raise InvalidCartan("missing Cartan matrix")
    c = tuple(tuple(int(x) for x in row) for row in c)
    l = len(c)
    for row in c:
        if len(row) != l:
            raise InvalidCartan("Cartan matrix must be square")
    for i in range(l):
        if c[i][i] != 2:
            raise InvalidCartan("diagonal entries must be 2")
        for j in range(l):
            if i != j and c[i][j] > 0:
                raise InvalidCartan("off-diagonal entries must be <= 0")
            if i != j and (c[i][j] == 0) != (c[j][i] == 0):
                raise InvalidCartan("zero pattern must be symmetric")
    # finite type: all leading principal minors positive
    from .intlinalg import det as _det

    for k in range(1, l + 1):
        minor = IntMatrix([row[:k] for row in c[:k]])
        if _det(minor) <= 0:
            raise InvalidCartan("not of finite type (nonpositive principal minor)")
    roots = [tuple(c[i][j] for j in range(l)) for i in range(l)]
    coroots = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    return RootDatum(l, roots, coroots, label)


def datum_from_json(doc):
    """Root datum plus optional tau matrix from the JSON schema.

    Schema: {"rank": n, "simple_roots": [[...]], "simple_coroots": [[...]],
    "tau": [[...]] (optional), "label": "..."}.
    """
    rd = RootDatum(
        int(doc["rank"]),
        doc.get("simple_roots", []),
        doc.get("simple_coroots", []),
        doc.get("label", "custom"),
    )
    tau = doc.get("tau")
    return rd, (IntMatrix(tau) if tau is not None else None)
