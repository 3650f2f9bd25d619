"""Standard biparabolic (seaweed) subalgebras and their special elements.

The standard biparabolic of a pair (pi1, pi2) of subsets of simple roots is
spanned by the positive root vectors of pi2, the whole Cartan, and the
negative root vectors of pi1; the parabolic attached to a subset pi' is the
case (pi1, pi2) = (pi', full). Its index is evaluated from the exact rank of
the stacked cascade eps vectors.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .cascade import Cascade, Subset, half_difference_roots, kostant_cascade, tilde_pi
from .rootsys import (
    AlgebraElement,
    Root,
    RootSystem,
    SimpleType,
    build_root_system,
    x_vector,
)


@dataclass(frozen=True)
class BiparabolicSpec:
    """A standard biparabolic q(pi1, pi2) inside a fixed simple type."""

    ambient: SimpleType
    pi1: Subset
    pi2: Subset

    def __post_init__(self) -> None:
        full = frozenset(range(1, self.ambient.rank + 1))
        if not (frozenset(self.pi1) <= full and frozenset(self.pi2) <= full):
            raise ValueError("pi1 and pi2 must be subsets of the simple roots")
        object.__setattr__(self, "pi1", frozenset(self.pi1))
        object.__setattr__(self, "pi2", frozenset(self.pi2))

    @property
    def is_parabolic(self) -> bool:
        return self.pi2 == frozenset(range(1, self.ambient.rank + 1))

    def system(self) -> RootSystem:
        return build_root_system(self.ambient)

    def transpose(self) -> "BiparabolicSpec":
        return BiparabolicSpec(self.ambient, self.pi2, self.pi1)


def parabolic(ambient: SimpleType, subset) -> BiparabolicSpec:
    """The standard parabolic attached to a subset of simple roots."""
    return BiparabolicSpec(
        ambient, frozenset(subset), frozenset(range(1, ambient.rank + 1))
    )


@dataclass(frozen=True)
class SubalgebraBasis:
    """Ordered basis of a biparabolic: n+ of pi2, the Cartan, n- of pi1."""

    spec: BiparabolicSpec
    elements: tuple[AlgebraElement, ...]

    @property
    def dim(self) -> int:
        return len(self.elements)


def biparabolic_basis(spec: BiparabolicSpec) -> SubalgebraBasis:
    r = spec.system()
    elems = [x_vector(r, a) for a in r.subsystem_positive(spec.pi2)]
    elems += [AlgebraElement(r, [(r.idx_h(i), 1)]) for i in range(1, r.rank + 1)]
    elems += [
        x_vector(r, r.negative(a)) for a in r.subsystem_positive(spec.pi1)
    ]
    return SubalgebraBasis(spec, tuple(elems))


def seaweed_dim(spec: BiparabolicSpec) -> int:
    r = spec.system()
    return (
        len(r.subsystem_positive(spec.pi2))
        + r.rank
        + len(r.subsystem_positive(spec.pi1))
    )


def _eps_vectors(c: Cascade) -> list[list[int]]:
    return [list(n.eps) for n in c.nodes]


def seaweed_index(spec: BiparabolicSpec) -> int:
    """Index of the biparabolic: (rk - dim E) + (k1 + k2 - dim E), where E is
    the span of the eps vectors of both cascades."""
    r = spec.system()
    c1 = kostant_cascade(r, spec.pi1)
    c2 = kostant_cascade(r, spec.pi2)
    joint = _eps_vectors(c1) + _eps_vectors(c2)
    dim_e = linalg.rank(joint) if joint else 0
    return (r.rank - dim_e) + (len(c1) + len(c2) - dim_e)


@dataclass(frozen=True)
class CoefficientVector:
    """Nonzero coefficients keyed by cascade node supports: a for the pi2
    cascade, b for the pi1 cascade."""

    a: tuple[tuple[Subset, Fraction], ...]
    b: tuple[tuple[Subset, Fraction], ...]

    @staticmethod
    def from_maps(a: dict, b: dict) -> "CoefficientVector":
        mk = lambda m: tuple(
            sorted(
                ((frozenset(k), Fraction(v)) for k, v in m.items()),
                key=lambda kv: sorted(kv[0]),
            )
        )
        return CoefficientVector(mk(a), mk(b))

    def a_map(self) -> dict[Subset, Fraction]:
        return dict(self.a)

    def b_map(self) -> dict[Subset, Fraction]:
        return dict(self.b)


def sample_cv(spec: BiparabolicSpec, rng: random.Random) -> CoefficientVector:
    """Random integer coefficients in [-50, 50] without 0, one per node."""
    r = spec.system()

    def draw():
        v = 0
        while v == 0:
            v = rng.randint(-50, 50)
        return Fraction(v)

    a = {n.support: draw() for n in kostant_cascade(r, spec.pi2).nodes}
    b = {n.support: draw() for n in kostant_cascade(r, spec.pi1).nodes}
    return CoefficientVector.from_maps(a, b)


def _checked_maps(spec: BiparabolicSpec, cv: CoefficientVector):
    r = spec.system()
    c1 = kostant_cascade(r, spec.pi1)
    c2 = kostant_cascade(r, spec.pi2)
    am, bm = cv.a_map(), cv.b_map()
    if set(am) != set(n.support for n in c2.nodes):
        raise ValueError("coefficient keys for a must match the pi2 cascade")
    if set(bm) != set(n.support for n in c1.nodes):
        raise ValueError("coefficient keys for b must match the pi1 cascade")
    for m in (am, bm):
        for k, v in m.items():
            if v == 0:
                raise ValueError(f"zero coefficient at node {sorted(k)}")
    return r, c1, c2, am, bm


def build_u(spec: BiparabolicSpec, cv: CoefficientVector) -> AlgebraElement:
    """The element sum(a_K x_{-eps_K}, K in pi2 cascade) +
    sum(b_L x_{eps_L}, L in pi1 cascade)."""
    r, c1, c2, am, bm = _checked_maps(spec, cv)
    out = AlgebraElement(r)
    for n in c2.nodes:
        out = out + am[n.support] * x_vector(r, r.negative(n.eps))
    for n in c1.nodes:
        out = out + bm[n.support] * x_vector(r, n.eps)
    return out


def build_u_minus(spec: BiparabolicSpec) -> AlgebraElement:
    """Sum of x_{-eps} over the pi2 cascade eps not lying in the positive
    subsystem of pi1."""
    r = spec.system()
    out = AlgebraElement(r)
    pos1 = set(r.subsystem_positive(spec.pi1))
    for n in kostant_cascade(r, spec.pi2).nodes:
        if n.eps not in pos1:
            out = out + x_vector(r, r.negative(n.eps))
    return out


# ---------------------------------------------------------------------------
# explicit stabilizer elements for well-interlaced cascades


def _coroot_ratio(r: RootSystem, mid: Root, up: Root, lo: Root) -> Fraction:
    """The scalar c with h_mid = c*(h_up - h_lo), solved exactly."""
    hm = r.coroot_coeffs(mid)
    hu = r.coroot_coeffs(up)
    hl = r.coroot_coeffs(lo)
    c = None
    for m, u, l in zip(hm, hu, hl):
        if u - l:
            cand = Fraction(m, u - l)
            if c is None:
                c = cand
            elif c != cand:
                raise ValueError("coroot is not proportional to the difference")
        elif m:
            raise ValueError("coroot is not proportional to the difference")
    assert c is not None and c != 0
    return c


def interlaced_torus_elements(
    spec: BiparabolicSpec, cv: CoefficientVector
) -> list[AlgebraElement]:
    """Commuting semisimple stabilizer elements of the form attached to cv.

    One element per shared cascade node (a two-term x_eps + rho x_{-eps}),
    plus one per node of either cascade whose eps is a half-difference root
    of the other cascade, with the correcting coefficients solved from the
    structure constants so that the bracket with u(a, b) drops into the
    nilpotent radical.
    """
    r, c1, c2, am, bm = _checked_maps(spec, cv)
    out: list[AlgebraElement] = []
    shared = c1.supports() & c2.supports()
    for n in c1.nodes:
        if n.support in shared:
            rho = am[n.support] / bm[n.support]
            out.append(x_vector(r, n.eps) + rho * x_vector(r, r.negative(n.eps)))
    half2 = {h: (up, lo) for h, up, lo in half_difference_roots(c2)}
    half1 = {h: (up, lo) for h, up, lo in half_difference_roots(c1)}
    for m in c1.nodes:
        if m.eps in half2:
            up, lo = half2[m.eps]
            out.append(_raising_half_element(r, m.eps, up, lo, am, bm[m.support]))
    for n in c2.nodes:
        if n.eps in half1:
            up, lo = half1[n.eps]
            out.append(_lowering_half_element(r, n.eps, up, lo, bm, am[n.support]))
    return out


def _raising_half_element(r, eps_m, up, lo, am, b_m) -> AlgebraElement:
    bar = tuple((u + l) // 2 for u, l in zip(up.eps, lo.eps))
    tau1 = r.struct_const(eps_m, r.negative(up.eps))
    tau2 = r.struct_const(r.negative(eps_m), r.negative(lo.eps))
    c = _coroot_ratio(r, eps_m, up.eps, lo.eps)
    lam = -Fraction(tau1) * am[up.support] / (Fraction(tau2) * am[lo.support])
    mu = c * lam * b_m / am[up.support]
    nu = -c * lam * b_m / am[lo.support]
    assert r.is_root(bar)
    return (
        x_vector(r, eps_m)
        + lam * x_vector(r, r.negative(eps_m))
        + mu * x_vector(r, up.eps)
        + nu * x_vector(r, lo.eps)
    )


def _lowering_half_element(r, eps_n, up, lo, bm, a_n) -> AlgebraElement:
    sigma1 = r.struct_const(r.negative(eps_n), up.eps)
    sigma2 = r.struct_const(eps_n, lo.eps)
    c = _coroot_ratio(r, eps_n, up.eps, lo.eps)
    lam = -Fraction(sigma1) * bm[up.support] / (Fraction(sigma2) * bm[lo.support])
    mu = c * lam * a_n / bm[up.support]
    nu = -c * lam * a_n / bm[lo.support]
    return (
        x_vector(r, r.negative(eps_n))
        + lam * x_vector(r, eps_n)
        + mu * x_vector(r, r.negative(up.eps))
        + nu * x_vector(r, r.negative(lo.eps))
    )


# ---------------------------------------------------------------------------
# the rank-two stabilizer element of the exceptional reduction step


@dataclass(frozen=True)
class RankTwoData:
    """Cascade bookkeeping for a connected rank-two subset containing the
    simple root attached to the lowest root: the subset's highest-root coroot
    decomposes over four full-cascade nodes j0..j3, with alpha_i1 = eps_{j1}
    and 2*alpha_i2 = eps_{j0} - eps_{j1} - eps_{j2} - eps_{j3}."""

    i1: int
    i2: int
    nodes: tuple[int, int, int, int]  # indexes into the full cascade
    c: tuple[Fraction, Fraction, Fraction, Fraction]


def rank2_data(r: RootSystem, subset) -> RankTwoData:
    sub = frozenset(subset)
    if r.type.family not in ("F", "E"):
        raise ValueError("rank-two reduction applies to types F4 and E6..E8 only")
    if len(sub) != 2 or not r.is_connected(sub):
        raise ValueError("subset must be a connected pair of simple roots")
    _, attach = tilde_pi(r, r.full_subset())
    if attach not in sub:
        raise ValueError("subset must contain the simple root attached to the lowest root")
    i2 = attach
    (i1,) = sub - {i2}
    full = kostant_cascade(r, r.full_subset())
    eps = full.eps_set
    a1 = r.simple_root(i1)
    a2 = r.simple_root(i2)
    try:
        j1 = eps.index(a1)
    except ValueError:
        raise ValueError(f"alpha_{i1} is not a cascade highest root") from None
    twice = tuple(2 * x for x in a2)
    found = None
    for j0 in range(len(eps)):
        if j0 == j1:
            continue
        for j2 in range(len(eps)):
            if j2 in (j0, j1):
                continue
            for j3 in range(j2 + 1, len(eps)):
                if j3 in (j0, j1):
                    continue
                cand = tuple(
                    eps[j0][t] - eps[j1][t] - eps[j2][t] - eps[j3][t]
                    for t in range(r.rank)
                )
                if cand == twice:
                    found = (j0, j1, j2, j3)
                    break
            if found:
                break
        if found:
            break
    if not found:
        raise ValueError("no four-node eps decomposition exists for this pair")
    # solve h_{eps(subset)} = sum c_k h_{eps_{j_k}}
    top = r.highest_root(sub)
    rows = [[Fraction(r.coroot_coeffs(eps[j])[t]) for j in found] for t in range(r.rank)]
    target = [Fraction(v) for v in r.coroot_coeffs(top)]
    sol = _solve_exact(rows, target)
    return RankTwoData(i1, i2, found, tuple(sol))


def _solve_exact(rows, target):
    ncols = len(rows[0])
    aug = [row + [t] for row, t in zip(rows, target)]
    red, pivots = linalg.rref(aug)
    sol = [Fraction(0)] * ncols
    for row, p in zip(red, pivots):
        if p == ncols:
            raise ValueError("inconsistent linear system")
        sol[p] = row[ncols]
    # verify (the system is overdetermined)
    for row, t in zip(rows, target):
        assert sum(c * s for c, s in zip(row, sol)) == t
    return sol


def rank2_stabilizer_element(
    r: RootSystem, subset, cv: CoefficientVector
) -> AlgebraElement:
    """Semisimple stabilizer element for the parabolic of a connected rank-two
    subset containing the attachment root, built from the four-node eps
    decomposition with all coefficients solved exactly."""
    data = rank2_data(r, subset)
    spec = parabolic(r.type, subset)
    _, c1, c2, am, bm = _checked_maps(spec, cv)
    full = kostant_cascade(r, r.full_subset())
    eps = full.eps_set
    j0, j1, j2, j3 = data.nodes
    a_of = lambda j: am[full.nodes[j].support]
    top = r.highest_root(frozenset(subset))
    b = bm[frozenset(subset)]
    head = tuple(x - y for x, y in zip(eps[j0], top))  # eps_j0 - eps_subset
    beta2 = tuple(x - y for x, y in zip(head, eps[j2]))
    beta3 = tuple(x - y for x, y in zip(head, eps[j3]))
    assert r.is_positive(beta2) and r.is_positive(beta3)
    tau1 = r.struct_const(beta2, r.negative(eps[j0]))
    tau2 = r.struct_const(r.negative(top), r.negative(eps[j2]))
    tau3 = r.struct_const(beta3, r.negative(eps[j0]))
    tau4 = r.struct_const(r.negative(top), r.negative(eps[j3]))
    tau5 = r.struct_const(beta2, r.negative(eps[j3]))
    tau6 = r.struct_const(beta3, r.negative(eps[j2]))
    tau0 = r.struct_const(r.negative(eps[j1]), top)
    cond = Fraction(tau2 * tau5, tau1) + Fraction(tau4 * tau6, tau3)
    assert cond != 0, "degenerate structure constant configuration"
    mus = [b * ck / a_of(j) for ck, j in zip(data.c, data.nodes)]
    lam2 = -a_of(j2) * Fraction(tau2) / (a_of(j0) * Fraction(tau1))
    lam3 = -a_of(j3) * Fraction(tau4) / (a_of(j0) * Fraction(tau3))
    nu = -(lam2 * a_of(j3) * tau5 + lam3 * a_of(j2) * tau6) / (b * tau0)
    assert nu != 0
    out = x_vector(r, r.negative(top))
    out = out + lam2 * x_vector(r, beta2) + lam3 * x_vector(r, beta3)
    for mu, j in zip(mus, data.nodes):
        out = out + mu * x_vector(r, eps[j])
    out = out + nu * x_vector(r, r.negative(eps[j1]))
    return out
