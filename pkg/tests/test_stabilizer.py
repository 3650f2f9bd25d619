import random
from fractions import Fraction

import pytest

from conftest import system
from quasired import linalg
from quasired.cascade import kostant_cascade
from quasired.rootsys import (
    AlgebraElement,
    SimpleType,
    h_vector,
    killing,
    x_vector,
)
from quasired.seaweed import (
    BiparabolicSpec,
    CoefficientVector,
    biparabolic_basis,
    build_u,
    build_u_minus,
    parabolic,
    sample_cv,
    seaweed_index,
)
from quasired.stabilizer import (
    SubalgebraBasis,
    Subspace,
    certificate_from_text,
    certificate_to_text,
    certify_quasi_reductive,
    form_stabilizer,
    is_abelian,
    is_semisimple_element,
    killing_radical_on,
    minimal_polynomial_of,
    reverify_certificate,
    subspace_from_vectors,
)


@pytest.mark.parametrize("family,rank", [("A", 3), ("B", 4), ("G", 2), ("F", 4), ("E", 6)])
def test_borel_stabilizer_is_eps_kernel_in_cartan(family, rank):
    rs = system(family, rank)
    st = SimpleType(family, rank)
    spec = parabolic(st, frozenset())
    S = form_stabilizer(biparabolic_basis(spec), build_u_minus(spec))
    c = kostant_cascade(rs, rs.full_subset())
    assert S.dim == rank - len(c)
    for e in S.elements():
        # inside the Cartan and killed by every cascade eps functional
        assert all(rs.index_root(i) is None for i in e.coords)
        coeffs = [e.get(rs.idx_h(i)) for i in range(1, rank + 1)]
        for n in c.nodes:
            val = sum(
                ci * rs.pairing(n.eps, rs.simple_root(i + 1))
                for i, ci in enumerate(coeffs)
            )
            assert val == 0


def test_zero_form_gives_whole_subalgebra():
    st = SimpleType("B", 3)
    rs = system("B", 3)
    spec = BiparabolicSpec(st, {1}, {2, 3})
    P = biparabolic_basis(spec)
    S = form_stabilizer(P, AlgebraElement(rs))
    assert S.dim == P.dim


def test_form_stabilizer_dim_at_least_index_random():
    rng = random.Random(19)
    st = SimpleType("F", 4)
    for _ in range(15):
        p1 = frozenset(i for i in range(1, 5) if rng.random() < 0.6)
        p2 = frozenset(i for i in range(1, 5) if rng.random() < 0.6)
        spec = BiparabolicSpec(st, p1, p2)
        cv = sample_cv(spec, rng)
        S = form_stabilizer(biparabolic_basis(spec), build_u(spec, cv))
        assert S.dim >= seaweed_index(spec)


def test_form_stabilizer_basis_invariance():
    st = SimpleType("C", 3)
    rs = system("C", 3)
    spec = parabolic(st, {1, 3})
    P = biparabolic_basis(spec)
    rng = random.Random(31)
    cv = sample_cv(spec, rng)
    u = build_u(spec, cv)
    S1 = form_stabilizer(P, u)
    # random invertible triangular recombination of the basis
    els = list(P.elements)
    n = len(els)
    for _ in range(60):
        i, j = rng.randrange(n), rng.randrange(n)
        if i != j:
            els[i] = els[i] + Fraction(rng.randint(-3, 3)) * els[j]
    S2 = form_stabilizer(SubalgebraBasis(spec, tuple(els)), u)
    assert S1.rows == S2.rows


def test_e7_rank5_parabolic_stabilizer_fixed_coefficients():
    st = SimpleType("E", 7)
    rs = system("E", 7)
    spec = parabolic(st, {1, 2, 3, 4, 5})
    cpi = kostant_cascade(rs, rs.full_subset())
    cp1 = kostant_cascade(rs, spec.pi1)
    cv = CoefficientVector.from_maps(
        {n.support: v for n, v in zip(cpi.nodes, [-3, 5, 7, 11, 13, -17, 19])},
        {n.support: v for n, v in zip(cp1.nodes, [23, -29, 31, 37])},
    )
    P = biparabolic_basis(spec)
    assert P.dim == 90
    S = form_stabilizer(P, build_u(spec, cv))
    assert S.dim == 4 == seaweed_index(spec)
    assert is_abelian(S)
    assert killing_radical_on(S).dim == 0
    assert all(is_semisimple_element(e) for e in S.elements())


def test_killing_radical_cases():
    rs = system("B", 3)
    h = subspace_from_vectors(rs, [h_vector(rs, 1).dense(), h_vector(rs, 3).dense()])
    assert killing_radical_on(h).dim == 0
    a = rs.positive_roots[0]
    iso = subspace_from_vectors(rs, [x_vector(rs, a).dense()])
    assert killing_radical_on(iso).dim == 1


def test_is_abelian():
    rs = system("A", 2)
    a = rs.simple_root(1)
    cart = subspace_from_vectors(rs, [h_vector(rs, 1).dense(), h_vector(rs, 2).dense()])
    assert is_abelian(cart)
    sl2ish = subspace_from_vectors(
        rs, [x_vector(rs, a).dense(), h_vector(rs, 1).dense()]
    )
    assert not is_abelian(sl2ish)


def test_semisimplicity_routes_agree():
    rs = system("F", 4)
    rng = random.Random(8)
    picks = []
    for _ in range(8):
        coords = [(rng.randrange(rs.dim), rng.randint(-2, 2)) for _ in range(3)]
        picks.append(AlgebraElement(rs, coords))
    a = rs.simple_root(2)
    picks.append(x_vector(rs, a))
    picks.append(x_vector(rs, a) + x_vector(rs, rs.negative(a)))
    picks.append(h_vector(rs, 1))
    for x in picks:
        mp = minimal_polynomial_of(x)
        assert is_semisimple_element(x) == linalg.is_squarefree(mp)


def test_semisimple_examples():
    rs = system("G", 2)
    a = rs.simple_root(1)
    assert is_semisimple_element(h_vector(rs, 1))
    assert not is_semisimple_element(x_vector(rs, a))
    assert is_semisimple_element(x_vector(rs, a) + x_vector(rs, rs.negative(a)))
    # a nilpotent part commuting with a semisimple part is detected
    h_perp = 3 * h_vector(rs, 1) + 2 * h_vector(rs, 2)
    assert not is_semisimple_element(h_perp + x_vector(rs, a))


def test_certify_borel_always_works():
    for family, rank in [("A", 2), ("B", 3), ("G", 2), ("F", 4)]:
        st = SimpleType(family, rank)
        cert = certify_quasi_reductive(parabolic(st, frozenset()), trials=5, seed=4)
        assert cert is not None and cert.checks.all_true
        # empty pi1 must survive the text round trip too
        back = certificate_from_text(certificate_to_text(cert))
        assert back.spec.pi1 == frozenset() and reverify_certificate(back)


def test_certify_types_a_and_c_random_biparabolics():
    rng = random.Random(77)
    for st in (SimpleType("A", 4), SimpleType("C", 4)):
        for _ in range(4):
            p1 = frozenset(i for i in range(1, 5) if rng.random() < 0.5)
            p2 = frozenset(i for i in range(1, 5) if rng.random() < 0.5)
            cert = certify_quasi_reductive(BiparabolicSpec(st, p1, p2), trials=20, seed=5)
            assert cert is not None, (st, p1, p2)


def test_certify_f4_alpha1_finds_nothing():
    cert = certify_quasi_reductive(parabolic(SimpleType("F", 4), {1}), trials=20, seed=9)
    assert cert is None


def test_certificate_sampled_combinations_semisimple():
    # every element of the span of a certified torus is semisimple
    cert = certify_quasi_reductive(parabolic(SimpleType("F", 4), {2, 3}), trials=20, seed=12)
    assert cert is not None
    els = cert.stab.elements()
    rng = random.Random(1)
    rs = els[0].system
    for _ in range(5):
        combo = AlgebraElement(rs)
        for e in els:
            combo = combo + Fraction(rng.randint(-4, 4)) * e
        assert is_semisimple_element(combo)


def test_certificate_determinism_and_roundtrip():
    spec = parabolic(SimpleType("E", 6), {1, 2, 4, 6})
    c1 = certify_quasi_reductive(spec, trials=20, seed=42)
    c2 = certify_quasi_reductive(spec, trials=20, seed=42)
    assert c1 is not None and c1.cv == c2.cv and c1.stab.rows == c2.stab.rows
    text = certificate_to_text(c1)
    back = certificate_from_text(text)
    assert back.spec == c1.spec and back.cv == c1.cv and back.stab.rows == c1.stab.rows
    assert certificate_to_text(back) == text
    assert reverify_certificate(back)


def test_reverify_rejects_tampered_certificate():
    spec = parabolic(SimpleType("G", 2), {2})
    cert = certify_quasi_reductive(spec, trials=10, seed=2)
    assert cert is not None
    rs = cert.stab.system
    wrong = Subspace(rs, cert.stab.rows[:-1] + ((tuple([Fraction(1)] * rs.dim)),))
    from quasired.stabilizer import TorusCertificate

    tampered = TorusCertificate(cert.spec, cert.cv, wrong, cert.checks, cert.trial)
    assert not reverify_certificate(tampered)


def test_certify_trials_validation():
    with pytest.raises(ValueError):
        certify_quasi_reductive(parabolic(SimpleType("A", 1), frozenset()), trials=0, seed=1)


def test_certificate_parser_rejects_garbage():
    with pytest.raises(ValueError):
        certificate_from_text("not a certificate\n")
    with pytest.raises(ValueError):
        certificate_from_text(
            "quasired certificate v1\ntype: Z9\npi1: -\npi2: 1\na: \nb: \n"
        )


def test_killing_form_on_certified_stabilizer_matches_gram():
    cert = certify_quasi_reductive(parabolic(SimpleType("B", 3), {3}), trials=20, seed=6)
    assert cert is not None
    els = cert.stab.elements()
    rs = els[0].system
    gram = [[killing(rs, a, b) for b in els] for a in els]
    assert linalg.rank(gram) == len(els)
