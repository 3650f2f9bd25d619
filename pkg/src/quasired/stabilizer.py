"""Stabilizers of linear forms and machine-checkable torus certificates.

The stabilizer of the form kappa(u, .) restricted to a subalgebra P is the
kernel of the matrix kappa(u, [P_i, P_j]); everything is computed over exact
rationals. A torus certificate packages a coefficient draw whose stabilizer
has the right dimension, is abelian, carries a nondegenerate Killing
restriction and consists of semisimple elements; such a stabilizer witnesses
quasi-reductivity, while exhausted draws prove nothing by themselves.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .rootsys import (
    AlgebraElement,
    RootSystem,
    SimpleType,
    ad_columns,
    bracket,
    build_root_system,
    killing,
)
from .seaweed import (
    BiparabolicSpec,
    CoefficientVector,
    SubalgebraBasis,
    biparabolic_basis,
    build_u,
    sample_cv,
    seaweed_index,
)


@dataclass(frozen=True)
class Subspace:
    """A subspace of the ambient algebra, rows in reduced echelon form."""

    system: RootSystem
    rows: tuple[tuple[Fraction, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.rows)

    def elements(self) -> tuple[AlgebraElement, ...]:
        return tuple(
            AlgebraElement(self.system, list(enumerate(row))) for row in self.rows
        )

    def contains(self, x: AlgebraElement) -> bool:
        red = [list(r) for r in self.rows]
        piv = [next(i for i, v in enumerate(r) if v) for r in self.rows]
        return linalg.in_rowspace(red, piv, x.dense())


def subspace_from_vectors(r: RootSystem, vectors) -> Subspace:
    rows, _ = linalg.rref([list(v) for v in vectors])
    return Subspace(r, tuple(tuple(row) for row in rows))


def _killing_functional(r: RootSystem, u: AlgebraElement) -> list[Fraction]:
    """Dense vector w with w[k] = kappa(u, e_k)."""
    w = [Fraction(0)] * r.dim
    h_lo, h_hi = r.n_pos, r.n_pos + r.rank
    for i, ci in u.coords.items():
        root = r.index_root(i)
        if root is None:
            for j in range(h_lo, h_hi):
                w[j] += ci * r.killing_basis(i, j)
        else:
            j = r.idx_x(r.negative(root))
            w[j] += ci * r.killing_basis(i, j)
    return w


def form_stabilizer(P: SubalgebraBasis, u: AlgebraElement) -> Subspace:
    """Stabilizer of the restricted form: all x in span(P) with
    kappa(u, [x, p]) = 0 for every p in P."""
    r = P.spec.system()
    if u.system is not r:
        raise ValueError("form element lives over a different root system")
    w = _killing_functional(r, u)
    n = P.dim
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        xi = P.elements[i]
        for j in range(i + 1, n):
            z = bracket(r, xi, P.elements[j])
            val = Fraction(0)
            for k, c in z.coords.items():
                if w[k]:
                    val += c * w[k]
            if val:
                M[i][j] = val
                M[j][i] = -val
    kernel = linalg.nullspace(M, n)
    vecs = []
    for c in kernel:
        acc: dict[int, Fraction] = {}
        for cj, pj in zip(c, P.elements):
            if cj:
                for k, v in pj.coords.items():
                    acc[k] = acc.get(k, Fraction(0)) + cj * v
        dense = [Fraction(0)] * r.dim
        for k, v in acc.items():
            dense[k] = v
        vecs.append(dense)
    return subspace_from_vectors(r, vecs)


def killing_radical_on(S: Subspace) -> Subspace:
    """The radical of the Killing form restricted to S, i.e. S intersected
    with its Killing orthogonal; zero exactly when the restriction is
    nondegenerate."""
    r = S.system
    els = S.elements()
    n = len(els)
    gram = [[killing(r, els[i], els[j]) for j in range(n)] for i in range(n)]
    kernel = linalg.nullspace(gram, n)
    vecs = []
    for c in kernel:
        dense = [Fraction(0)] * r.dim
        for cj, row in zip(c, S.rows):
            if cj:
                for k, v in enumerate(row):
                    if v:
                        dense[k] += cj * v
        vecs.append(dense)
    return subspace_from_vectors(r, vecs)


def is_abelian(S: Subspace) -> bool:
    els = S.elements()
    r = S.system
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            if bracket(r, els[i], els[j]):
                return False
    return True


def is_semisimple_element(x: AlgebraElement) -> bool:
    """Whether x is a semisimple element of its algebra.

    Uses the exact kernel criterion: ad x is semisimple iff
    ker(ad x) = ker((ad x)^2). Equivalent to the minimal polynomial of ad x
    being squarefree, but much cheaper on large types; the two routes are
    cross-checked in the test suite.
    """
    if not x:
        return True
    r = x.system
    return linalg.kernel_stabilizes(ad_columns(r, x), r.dim)


def minimal_polynomial_of(x: AlgebraElement) -> list[Fraction]:
    """Monic minimal polynomial of ad x (exact, Krylov based)."""
    r = x.system
    if not x:
        return [Fraction(0), Fraction(1)]
    return linalg.minimal_polynomial(ad_columns(r, x), r.dim)


@dataclass(frozen=True)
class CertChecks:
    dim_equals_index: bool
    abelian: bool
    killing_nondegenerate: bool
    basis_semisimple: bool

    @property
    def all_true(self) -> bool:
        return (
            self.dim_equals_index
            and self.abelian
            and self.killing_nondegenerate
            and self.basis_semisimple
        )


@dataclass(frozen=True)
class TorusCertificate:
    """Self-contained witness of quasi-reductivity for one coefficient draw."""

    spec: BiparabolicSpec
    cv: CoefficientVector
    stab: Subspace
    checks: CertChecks
    trial: int


def _attempt(spec: BiparabolicSpec, cv: CoefficientVector, trial: int):
    u = build_u(spec, cv)
    P = biparabolic_basis(spec)
    S = form_stabilizer(P, u)
    dim_ok = S.dim == seaweed_index(spec)
    if not dim_ok:
        return None, CertChecks(False, False, False, False)
    ab = is_abelian(S)
    if not ab:
        return None, CertChecks(True, False, False, False)
    nondeg = killing_radical_on(S).dim == 0
    if not nondeg:
        return None, CertChecks(True, True, False, False)
    semis = all(is_semisimple_element(e) for e in S.elements())
    checks = CertChecks(True, True, True, semis)
    if not semis:
        return None, checks
    return TorusCertificate(spec, cv, S, checks, trial), checks


def certify_quasi_reductive(
    spec: BiparabolicSpec, trials: int = 20, seed: int = 0
) -> TorusCertificate | None:
    """Search seeded random coefficient draws for a torus certificate.

    A returned certificate proves quasi-reductivity; exhausting the trials
    proves nothing and is reported as None.
    """
    if trials < 1:
        raise ValueError("at least one trial is required")
    rng = random.Random(seed)
    for t in range(trials):
        cv = sample_cv(spec, rng)
        cert, _ = _attempt(spec, cv, t)
        if cert is not None:
            return cert
    return None


def reverify_certificate(cert: TorusCertificate) -> bool:
    """Recompute the stabilizer from (spec, cv) and re-run all four checks."""
    fresh, checks = _attempt(cert.spec, cert.cv, cert.trial)
    return (
        fresh is not None
        and checks.all_true
        and fresh.stab.rows == cert.stab.rows
    )


# ---------------------------------------------------------------------------
# canonical text serialization


def _subset_text(s) -> str:
    return ",".join(str(i) for i in sorted(s)) if s else "-"


def _parse_subset(txt: str) -> frozenset[int]:
    txt = txt.strip()
    if txt in ("", "-"):
        return frozenset()
    return frozenset(int(p) for p in txt.split(","))


def certificate_to_text(cert: TorusCertificate) -> str:
    lines = ["quasired certificate v1"]
    lines.append(f"type: {cert.spec.ambient.family}{cert.spec.ambient.rank}")
    lines.append(f"pi1: {_subset_text(cert.spec.pi1)}")
    lines.append(f"pi2: {_subset_text(cert.spec.pi2)}")
    for name, entries in (("a", cert.cv.a), ("b", cert.cv.b)):
        parts = [
            f"{'+'.join(str(i) for i in sorted(k))}={v.numerator}/{v.denominator}"
            for k, v in entries
        ]
        lines.append(f"{name}: " + "; ".join(parts))
    lines.append(f"stabilizer-dim: {cert.stab.dim}")
    lines.append(f"trial: {cert.trial}")
    for row in cert.stab.rows:
        parts = [
            f"{k}={v.numerator}/{v.denominator}" for k, v in enumerate(row) if v
        ]
        lines.append("row: " + ",".join(parts))
    return "\n".join(lines) + "\n"


def certificate_from_text(text: str) -> TorusCertificate:
    lines = [l for l in text.splitlines() if l.strip()]
    if lines[0].strip() != "quasired certificate v1":
        raise ValueError("unrecognized certificate header")
    fields = {}
    rows = []
    for line in lines[1:]:
        key, _, val = line.partition(":")
        key = key.strip()
        if key == "row":
            rows.append(val.strip())
        else:
            fields[key] = val.strip()
    m = re.fullmatch(r"([A-G])(\d+)", fields["type"])
    if not m:
        raise ValueError(f"bad type field {fields['type']!r}")
    stype = SimpleType(m.group(1), int(m.group(2)))
    spec = BiparabolicSpec(
        stype, _parse_subset(fields["pi1"]), _parse_subset(fields["pi2"])
    )

    def parse_coeffs(txt):
        out = {}
        if not txt:
            return out
        for part in txt.split(";"):
            part = part.strip()
            if not part:
                continue
            key, _, val = part.partition("=")
            sup = frozenset(int(p) for p in key.split("+"))
            num, _, den = val.partition("/")
            out[sup] = Fraction(int(num), int(den))
        return out

    cv = CoefficientVector.from_maps(
        parse_coeffs(fields.get("a", "")), parse_coeffs(fields.get("b", ""))
    )
    r = build_root_system(stype)
    dense_rows = []
    for row in rows:
        dense = [Fraction(0)] * r.dim
        for part in row.split(","):
            key, _, val = part.partition("=")
            num, _, den = val.partition("/")
            dense[int(key)] = Fraction(int(num), int(den))
        dense_rows.append(tuple(dense))
    stab = Subspace(r, tuple(dense_rows))
    checks = CertChecks(True, True, True, True)
    return TorusCertificate(spec, cv, stab, checks, int(fields.get("trial", 0)))
