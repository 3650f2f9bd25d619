from fractions import Fraction

from quasired.rootsys import RootSystem, SimpleType, build_root_system


def system(family: str, rank: int) -> RootSystem:
    return build_root_system(SimpleType(family, rank))


def reflection_closure(cartan) -> set[tuple[int, ...]]:
    """Independent oracle: close the simple roots under all simple
    reflections s_i(b) = b - <b, alpha_i^v> alpha_i."""
    l = len(cartan)
    simples = [tuple(1 if j == i else 0 for j in range(l)) for i in range(l)]
    roots = set(simples)
    frontier = list(simples)
    while frontier:
        new = []
        for b in frontier:
            for i in range(l):
                pair = sum(b[j] * cartan[j][i] for j in range(l))
                img = list(b)
                img[i] -= pair
                t = tuple(img)
                if any(t) and t not in roots:
                    roots.add(t)
                    new.append(t)
        frontier = new
    return {r for r in roots if all(c >= 0 for c in r)}


def jacobi_defect(rs, i, j, k):
    """Sum of the three cyclic double brackets on basis indices; must vanish."""
    acc = {}
    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
        for m, cm in rs.bracket_basis(b, c):
            for q, cq in rs.bracket_basis(a, m):
                acc[q] = acc.get(q, Fraction(0)) + cm * cq
    return {q: v for q, v in acc.items() if v}
