"""Simple root systems and their Chevalley bases over exact rationals.

A root is an integer coefficient tuple over the simple roots alpha_1..alpha_l.
Simple roots are numbered as in Bourbaki; for G2 the convention here takes
alpha_1 long and alpha_2 short, so the highest root is 2*alpha_1 + 3*alpha_2.

The Chevalley basis of the algebra is indexed
    0 .. n-1            x_beta for the n positive roots in (height, lex) order,
    n .. n+l-1          h_1 .. h_l (simple coroots),
    n+l .. 2n+l-1       x_{-beta} in the same root order,
so dim = 2n + l. Structure constant signs are fixed by the extraspecial-pair
convention over that root order, which makes every table reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .linalg import SparseCols

Root = tuple[int, ...]

_FAMILY_BOUNDS = {
    "A": (1, None),
    "B": (2, None),
    "C": (3, None),
    "D": (4, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}


@dataclass(frozen=True)
class SimpleType:
    """A simple Lie type: family letter A..G plus the rank."""

    family: str
    rank: int

    def __post_init__(self) -> None:
        if self.family not in _FAMILY_BOUNDS:
            raise ValueError(f"unknown family {self.family!r}")
        lo, hi = _FAMILY_BOUNDS[self.family]
        if self.rank < lo or (hi is not None and self.rank > hi):
            raise ValueError(f"rank {self.rank} out of range for family {self.family}")

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _cartan_and_symmetrizer(t: SimpleType) -> tuple[list[list[int]], list[int]]:
    l = t.rank
    C = [[2 if i == j else 0 for j in range(l)] for i in range(l)]
    if t.family == "E":
        edges = [(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)]
        edges += [(i, i + 1) for i in range(5, l - 1)]
    elif t.family == "D":
        edges = [(i, i + 1) for i in range(l - 2)] + [(l - 3, l - 1)]
    else:
        edges = [(i, i + 1) for i in range(l - 1)]
    for i, j in edges:
        C[i][j] = C[j][i] = -1
    d = [1] * l
    if t.family == "B":
        C[l - 2][l - 1] = -2  # <alpha_{l-1}, alpha_l^v>, alpha_l short
        d = [2] * (l - 1) + [1]
    elif t.family == "C":
        C[l - 1][l - 2] = -2  # alpha_l long
        d = [1] * (l - 1) + [2]
    elif t.family == "F":
        C[1][2] = -2  # alpha_1, alpha_2 long
        d = [2, 2, 1, 1]
    elif t.family == "G":
        C[0][1] = -3  # alpha_1 long
        d = [3, 1]
    return C, d


class RootSystem:
    """Immutable root and Chevalley tables for one simple type.

    Construction fills the root list eagerly; structure constants, coroots
    and Killing values are memoized on first use. Instances are shared via
    :func:`build_root_system`, so hold no mutable public state.
    """

    def __init__(self, stype: SimpleType):
        self.type = stype
        self.rank = stype.rank
        self.cartan, self.symmetrizer = _cartan_and_symmetrizer(stype)
        # bilinear form on the root lattice: (alpha_i, alpha_j) = d_j * C[i][j]
        self.bilinear = [
            [self.symmetrizer[j] * self.cartan[i][j] for j in range(self.rank)]
            for i in range(self.rank)
        ]
        for i in range(self.rank):
            for j in range(self.rank):
                assert self.bilinear[i][j] == self.bilinear[j][i]
        self.positive_roots: tuple[Root, ...] = self._generate_positive()
        self.n_pos = len(self.positive_roots)
        self.dim = 2 * self.n_pos + self.rank
        self.pos_index = {r: i for i, r in enumerate(self.positive_roots)}
        self._pos_set = frozenset(self.positive_roots)
        self._npp: dict[tuple[Root, Root], int] | None = None
        self._bracket_cache: dict[tuple[int, int], tuple[tuple[int, Fraction], ...]] = {}
        self._killing_cache: dict[tuple[int, int], Fraction] = {}
        self._coroot_cache: dict[Root, tuple[int, ...]] = {}
        self._subsys_cache: dict[frozenset[int], tuple[Root, ...]] = {}
        self._cascade_cache: dict = {}

    # -- root-level queries -------------------------------------------------

    def simple_root(self, i: int) -> Root:
        """The simple root alpha_i, 1-based."""
        if not 1 <= i <= self.rank:
            raise ValueError(f"simple root index {i} out of range")
        return tuple(1 if j == i - 1 else 0 for j in range(self.rank))

    def is_root(self, v: Root) -> bool:
        if v in self._pos_set:
            return True
        return tuple(-c for c in v) in self._pos_set

    def is_positive(self, v: Root) -> bool:
        return v in self._pos_set

    def negative(self, v: Root) -> Root:
        return tuple(-c for c in v)

    @staticmethod
    def height(v: Root) -> int:
        return sum(v)

    def norm2(self, v: Root) -> int:
        B = self.bilinear
        tot = 0
        for i, a in enumerate(v):
            if a:
                for j, b in enumerate(v):
                    if b:
                        tot += a * b * B[i][j]
        return tot

    def bilinear_value(self, u: Root, v: Root) -> int:
        B = self.bilinear
        tot = 0
        for i, a in enumerate(u):
            if a:
                for j, b in enumerate(v):
                    if b:
                        tot += a * b * B[i][j]
        return tot

    def pairing(self, lam: Root, alpha: Root) -> int:
        """The integer <lam, alpha^v> = lam(h_alpha)."""
        if not self.is_root(alpha):
            raise ValueError(f"{alpha} is not a root")
        val = Fraction(2 * self.bilinear_value(lam, alpha), self.norm2(alpha))
        assert val.denominator == 1
        return int(val)

    def root_sum(self, a: Root, b: Root) -> Root | None:
        s = tuple(x + y for x, y in zip(a, b))
        return s if self.is_root(s) else None

    def coroot_coeffs(self, a: Root) -> tuple[int, ...]:
        """h_a expanded over the simple coroots h_1..h_l; h_{-a} = -h_a."""
        key = a
        got = self._coroot_cache.get(key)
        if got is not None:
            return got
        da2 = self.norm2(a)  # = 2 d_a, sign-independent
        out = []
        for i, m in enumerate(a):
            c = Fraction(2 * m * self.symmetrizer[i], da2)
            assert c.denominator == 1
            out.append(int(c))
        res = tuple(out)
        self._coroot_cache[key] = res
        return res

    # -- subsets of simple roots ---------------------------------------------

    def full_subset(self) -> frozenset[int]:
        return frozenset(range(1, self.rank + 1))

    def support(self, a: Root) -> frozenset[int]:
        return frozenset(i + 1 for i, c in enumerate(a) if c)

    def components(self, subset) -> tuple[frozenset[int], ...]:
        """Connected components of a subset of simple roots, by least index."""
        left = set(subset)
        comps = []
        while left:
            seed = min(left)
            comp = {seed}
            frontier = [seed]
            while frontier:
                i = frontier.pop()
                for j in list(left):
                    if j not in comp and self.cartan[i - 1][j - 1] != 0:
                        comp.add(j)
                        frontier.append(j)
            comps.append(frozenset(comp))
            left -= comp
        comps.sort(key=min)
        return tuple(comps)

    def is_connected(self, subset) -> bool:
        return len(self.components(subset)) == 1

    def subsystem_positive(self, subset) -> tuple[Root, ...]:
        """Positive roots supported on the given simple roots."""
        key = frozenset(subset)
        got = self._subsys_cache.get(key)
        if got is None:
            got = tuple(r for r in self.positive_roots if self.support(r) <= key)
            self._subsys_cache[key] = got
        return got

    def highest_root(self, subset) -> Root:
        """The highest root of the subsystem generated by a connected subset."""
        sub = frozenset(subset)
        if not sub:
            raise ValueError("empty subset has no highest root")
        if not sub <= self.full_subset():
            raise ValueError(f"subset {sorted(sub)} not within 1..{self.rank}")
        if not self.is_connected(sub):
            raise ValueError(f"subset {sorted(sub)} is not connected")
        roots = self.subsystem_positive(sub)
        top = max(self.height(r) for r in roots)
        tops = [r for r in roots if self.height(r) == top]
        assert len(tops) == 1
        return tops[0]

    # -- root generation ------------------------------------------------------

    def _generate_positive(self) -> tuple[Root, ...]:
        l = self.rank
        C = self.cartan
        simple = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
        known: set[Root] = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for b in layer:
                for i in range(l):
                    p = 0
                    cur = tuple(c - (1 if j == i else 0) for j, c in enumerate(b))
                    while cur in known:
                        p += 1
                        cur = tuple(c - (1 if j == i else 0) for j, c in enumerate(cur))
                    q = p - sum(b[j] * C[j][i] for j in range(l))
                    if q > 0:
                        g = tuple(c + (1 if j == i else 0) for j, c in enumerate(b))
                        if g not in known:
                            known.add(g)
                            nxt.append(g)
            layer = nxt
        return tuple(sorted(known, key=lambda r: (sum(r), r)))

    # -- structure constants --------------------------------------------------

    def _string_p(self, a: Root, b: Root) -> int:
        p = 0
        cur = tuple(x - y for x, y in zip(b, a))
        while self.is_root(cur):
            p += 1
            cur = tuple(x - y for x, y in zip(cur, a))
        return p

    def _ensure_struct(self) -> None:
        if self._npp is not None:
            return
        npp: dict[tuple[Root, Root], int] = {}
        self._npp = npp
        order = self.pos_index
        for g in self.positive_roots:
            if self.height(g) == 1:
                continue
            pairs = []
            for a in self.positive_roots:
                if order[a] >= order[g]:
                    break
                b = tuple(x - y for x, y in zip(g, a))
                if b in self._pos_set and order[a] < order[b]:
                    pairs.append((a, b))
            pairs.sort(key=lambda ab: order[ab[0]])
            a0, b0 = pairs[0]
            npp[(a0, b0)] = self._string_p(a0, b0) + 1
            for al, be in pairs[1:]:
                npp[(al, be)] = self._special_const(al, be, a0, b0, g)

    def _npp_signed(self, x: Root, y: Root) -> int:
        npp = self._npp
        v = npp.get((x, y))
        if v is not None:
            return v
        return -npp[(y, x)]

    def _mixed(self, x: Root, y: Root) -> Fraction:
        """N for the bracket [x_x, x_{-y}] with x, y positive and x - y a root."""
        d = tuple(a - b for a, b in zip(x, y))
        if d in self._pos_set:
            return -Fraction(self.norm2(d), self.norm2(x)) * self._npp_signed(y, d)
        z = tuple(-c for c in d)
        return -Fraction(self.norm2(z), self.norm2(y)) * self._npp_signed(x, z)

    def _special_const(self, al: Root, be: Root, a: Root, b: Root, g: Root) -> int:
        # derived from the Jacobi relation on the quadruple (a, b, -al, -be)
        t = Fraction(0)
        d1 = tuple(x - y for x, y in zip(b, al))
        if self.is_root(d1):
            t += self._mixed(b, al) * self._mixed(a, be) / self.norm2(d1)
        d2 = tuple(x - y for x, y in zip(a, al))
        if self.is_root(d2):
            t -= self._mixed(a, al) * self._mixed(b, be) / self.norm2(d2)
        val = self.norm2(g) * t / self._npp[(a, b)]
        assert val.denominator == 1 and val != 0
        return int(val)

    def struct_const(self, a: Root, b: Root) -> int:
        """N_{a,b} for roots a, b with a + b a root: [x_a, x_b] = N x_{a+b}."""
        s = tuple(x + y for x, y in zip(a, b))
        if not any(s) or not self.is_root(s):
            raise ValueError(f"{a} + {b} is not a root")
        self._ensure_struct()
        apos = a in self._pos_set
        bpos = b in self._pos_set
        if apos and bpos:
            return self._npp_signed(a, b)
        if not apos and not bpos:
            return -self.struct_const(self.negative(a), self.negative(b))
        if not apos:
            return -self.struct_const(b, a)
        v = self._mixed(a, self.negative(b))
        assert v.denominator == 1
        return int(v)

    # -- Chevalley basis indexing ----------------------------------------------

    def idx_x(self, a: Root) -> int:
        if a in self._pos_set:
            return self.pos_index[a]
        na = self.negative(a)
        if na in self._pos_set:
            return self.n_pos + self.rank + self.pos_index[na]
        raise ValueError(f"{a} is not a root")

    def idx_h(self, i: int) -> int:
        if not 1 <= i <= self.rank:
            raise ValueError(f"coroot index {i} out of range")
        return self.n_pos + i - 1

    def index_root(self, idx: int) -> Root | None:
        """The root carried by a basis index, or None for a Cartan index."""
        if idx < self.n_pos:
            return self.positive_roots[idx]
        if idx < self.n_pos + self.rank:
            return None
        return self.negative(self.positive_roots[idx - self.n_pos - self.rank])

    def basis_weight(self, idx: int) -> Root:
        """Weight of a basis vector under the Cartan (zero tuple on h)."""
        r = self.index_root(idx)
        return r if r is not None else (0,) * self.rank

    def bracket_basis(self, i: int, j: int) -> tuple[tuple[int, Fraction], ...]:
        """Sparse bracket of two basis vectors."""
        got = self._bracket_cache.get((i, j))
        if got is not None:
            return got
        ri, rj = self.index_root(i), self.index_root(j)
        out: tuple[tuple[int, Fraction], ...]
        if ri is None and rj is None:
            out = ()
        elif ri is None:
            s = i - self.n_pos + 1
            c = self.pairing(rj, self.simple_root(s))
            out = ((j, Fraction(c)),) if c else ()
        elif rj is None:
            s = j - self.n_pos + 1
            c = self.pairing(ri, self.simple_root(s))
            out = ((i, Fraction(-c)),) if c else ()
        else:
            s = tuple(x + y for x, y in zip(ri, rj))
            if not any(s):
                co = self.coroot_coeffs(ri)
                out = tuple(
                    (self.idx_h(k + 1), Fraction(c)) for k, c in enumerate(co) if c
                )
            elif self.is_root(s):
                out = ((self.idx_x(s), Fraction(self.struct_const(ri, rj))),)
            else:
                out = ()
        self._bracket_cache[(i, j)] = out
        return out

    def killing_basis(self, i: int, j: int) -> Fraction:
        """kappa(e_i, e_j), nonzero only on opposite root pairs and on h x h."""
        ri, rj = self.index_root(i), self.index_root(j)
        if (ri is None) != (rj is None):
            return Fraction(0)
        if ri is not None and any(x + y for x, y in zip(ri, rj)):
            return Fraction(0)
        key = (i, j) if i <= j else (j, i)
        got = self._killing_cache.get(key)
        if got is None:
            tot = Fraction(0)
            for k in range(self.dim):
                for m, c1 in self.bracket_basis(key[1], k):
                    for q, c2 in self.bracket_basis(key[0], m):
                        if q == k:
                            tot += c1 * c2
            self._killing_cache[key] = got = tot
        return got


@lru_cache(maxsize=None)
def _shared_system(family: str, rank: int) -> RootSystem:
    return RootSystem(SimpleType(family, rank))


def build_root_system(t: SimpleType) -> RootSystem:
    """Shared immutable root system for a simple type."""
    return _shared_system(t.family, t.rank)


# ---------------------------------------------------------------------------
# elements of the Lie algebra


class AlgebraElement:
    """Sparse exact-rational vector over the Chevalley basis."""

    __slots__ = ("system", "coords")

    def __init__(self, system: RootSystem, coords=()):
        items = coords.items() if isinstance(coords, dict) else coords
        acc: dict[int, Fraction] = {}
        for i, c in items:
            c = Fraction(c)
            if c:
                v = acc.get(i, Fraction(0)) + c
                if v:
                    acc[i] = v
                elif i in acc:
                    del acc[i]
        self.system = system
        self.coords = acc

    def __bool__(self) -> bool:
        return bool(self.coords)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AlgebraElement)
            and self.system is other.system
            and self.coords == other.coords
        )

    def __hash__(self):
        return hash((id(self.system), tuple(sorted(self.coords.items()))))

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.system is not other.system:
            raise ValueError("elements live over different root systems")
        out = dict(self.coords)
        for i, c in other.coords.items():
            v = out.get(i, Fraction(0)) + c
            if v:
                out[i] = v
            elif i in out:
                del out[i]
        return AlgebraElement(self.system, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.system, {i: -c for i, c in self.coords.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, scalar) -> "AlgebraElement":
        s = Fraction(scalar)
        return AlgebraElement(self.system, {i: c * s for i, c in self.coords.items()})

    __rmul__ = __mul__

    def get(self, i: int) -> Fraction:
        return self.coords.get(i, Fraction(0))

    def dense(self) -> list[Fraction]:
        v = [Fraction(0)] * self.system.dim
        for i, c in self.coords.items():
            v[i] = c
        return v

    def __repr__(self) -> str:
        rs = self.system
        parts = []
        for i in sorted(self.coords):
            c = self.coords[i]
            r = rs.index_root(i)
            if r is None:
                parts.append(f"{c}*h{i - rs.n_pos + 1}")
            else:
                parts.append(f"{c}*x{r}")
        return " + ".join(parts) if parts else "0"


def x_vector(r: RootSystem, a: Root) -> AlgebraElement:
    """The Chevalley generator x_a."""
    return AlgebraElement(r, [(r.idx_x(a), Fraction(1))])


def h_vector(r: RootSystem, i: int) -> AlgebraElement:
    """The simple coroot h_i."""
    return AlgebraElement(r, [(r.idx_h(i), Fraction(1))])


def h_of_root(r: RootSystem, a: Root) -> AlgebraElement:
    """The coroot h_a = [x_a, x_{-a}] as an element."""
    return AlgebraElement(
        r,
        [(r.idx_h(k + 1), Fraction(c)) for k, c in enumerate(r.coroot_coeffs(a))],
    )


def cartan_element(r: RootSystem, coeffs) -> AlgebraElement:
    return AlgebraElement(
        r, [(r.idx_h(i + 1), Fraction(c)) for i, c in enumerate(coeffs)]
    )


# ---------------------------------------------------------------------------
# spec-level operations


def root_sum(r: RootSystem, a: Root, b: Root) -> Root | None:
    """a + b when that is again a root, else None."""
    if not (r.is_root(a) and r.is_root(b)):
        raise ValueError("arguments must be roots")
    return r.root_sum(a, b)


def pairing(r: RootSystem, lam: Root, alpha: Root) -> int:
    return r.pairing(lam, alpha)


def bracket(r: RootSystem, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    """Lie bracket, extended bilinearly from the Chevalley basis table."""
    if x.system is not r or y.system is not r:
        raise ValueError("elements do not belong to the given root system")
    acc: dict[int, Fraction] = {}
    for i, ci in x.coords.items():
        for j, cj in y.coords.items():
            cij = ci * cj
            for k, c in r.bracket_basis(i, j):
                v = acc.get(k, Fraction(0)) + cij * c
                if v:
                    acc[k] = v
                elif k in acc:
                    del acc[k]
    return AlgebraElement(r, acc)


def killing(r: RootSystem, x: AlgebraElement, y: AlgebraElement) -> Fraction:
    """Killing form kappa(x, y) = tr(ad x ad y), exactly."""
    if x.system is not r or y.system is not r:
        raise ValueError("elements do not belong to the given root system")
    tot = Fraction(0)
    h_lo, h_hi = r.n_pos, r.n_pos + r.rank
    for i, ci in x.coords.items():
        root = r.index_root(i)
        if root is None:
            for j in range(h_lo, h_hi):
                cj = y.coords.get(j)
                if cj:
                    tot += ci * cj * r.killing_basis(i, j)
        else:
            j = r.idx_x(r.negative(root))
            cj = y.coords.get(j)
            if cj:
                tot += ci * cj * r.killing_basis(i, j)
    return tot


def ad_matrix(r: RootSystem, x: AlgebraElement) -> list[list[Fraction]]:
    """Dense matrix of ad x in the Chevalley basis."""
    n = r.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for j in range(n):
        for i, ci in x.coords.items():
            for k, c in r.bracket_basis(i, j):
                M[k][j] += ci * c
    return M


def ad_columns(r: RootSystem, x: AlgebraElement) -> SparseCols:
    """Sparse column map of ad x."""
    cols: SparseCols = {}
    for j in range(r.dim):
        acc: dict[int, Fraction] = {}
        for i, ci in x.coords.items():
            for k, c in r.bracket_basis(i, j):
                acc[k] = acc.get(k, Fraction(0)) + ci * c
        ent = [(k, v) for k, v in sorted(acc.items()) if v]
        if ent:
            cols[j] = ent
    return cols


def highest_root(r: RootSystem, subset) -> Root:
    return r.highest_root(subset)
