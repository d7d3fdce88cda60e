from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gradedlie import (
    BasisElement,
    GradedLieAlgebra,
    abelian,
    adjoin_g0,
    center,
    degree_zero_derivations,
    fingerprint,
    free_nilpotent,
    graded_pairing_check,
    is_semisimple,
    killing_form,
    universal_prolongation,
)
from gradedlie import linalg
from gradedlie.diagnostics import symmetric_signature
from gradedlie.linalg import RatMatrix

F = Fraction

coeffs_st = st.fractions(min_value=-3, max_value=3, max_denominator=4)


def test_signature_unit_cases():
    assert symmetric_signature([[2]]) == (1, 0)
    assert symmetric_signature([[0, 0], [0, 0]]) == (0, 0)
    assert symmetric_signature([[0, 1], [1, 0]]) == (1, 1)
    assert symmetric_signature([[0, 1, 0], [1, 0, 0], [0, 0, -5]]) == (1, 2)
    assert symmetric_signature([[1, 2], [2, 1]]) == (1, 1)


def test_nilpotent_killing_form_vanishes(eta3):
    data = killing_form(eta3)
    assert data.matrix == RatMatrix(3, 3)
    assert data.rank == 0
    assert not data.nondegenerate
    assert not is_semisimple(eta3)
    assert graded_pairing_check(eta3)


def test_center_of_eta3(eta3):
    basis = center(eta3)
    assert basis == [[F(0), F(0), F(1)]]


def test_center_of_abelian():
    assert len(center(abelian(3))) == 3
    assert not is_semisimple(abelian(3))


def test_adjoined_algebra_is_not_semisimple(eta3, lambda_g0):
    assert not is_semisimple(adjoin_g0(eta3, lambda_g0))


def make_sl3():
    """sl(3, Q) from explicit matrices, graded by column minus row."""
    entries = [
        ("E31", (2, 0), -2),
        ("E21", (1, 0), -1),
        ("E32", (2, 1), -1),
        ("H1", None, 0),
        ("H2", None, 0),
        ("E12", (0, 1), 1),
        ("E23", (1, 2), 1),
        ("E13", (0, 2), 2),
    ]

    def matrix_of(name, pos):
        m = [[F(0)] * 3 for _ in range(3)]
        if pos is not None:
            m[pos[0]][pos[1]] = F(1)
        elif name == "H1":
            m[0][0], m[1][1] = F(1), F(-1)
        else:
            m[1][1], m[2][2] = F(1), F(-1)
        return m

    mats = [matrix_of(name, pos) for name, pos, _ in entries]

    def comm(a, b):
        out = [[F(0)] * 3 for _ in range(3)]
        for i in range(3):
            for j in range(3):
                out[i][j] = sum(a[i][k] * b[k][j] - b[i][k] * a[k][j] for k in range(3))
        return out

    flat = [[m[i][j] for i in range(3) for j in range(3)] for m in mats]
    basis = [BasisElement(name, deg) for name, _, deg in entries]
    table = {}
    for a in range(8):
        for b in range(a + 1, 8):
            c = comm(mats[a], mats[b])
            coords = linalg.express_in_basis(flat, [c[i][j] for i in range(3) for j in range(3)])
            assert coords is not None
            terms = {t: v for t, v in enumerate(coords) if v}
            if terms:
                table[(a, b)] = terms
    return GradedLieAlgebra(basis, table)


def test_example5_prolongation_matches_sl3(example5_result):
    computed = fingerprint(example5_result.algebra)
    reference = fingerprint(make_sl3())
    for key in ("dimension", "graded_dimensions", "killing_rank",
                "killing_signature", "semisimple", "center_dimension"):
        assert computed[key] == reference[key]
    assert computed["killing_signature"] == [5, 3]
    assert computed["graded_pairing_ok"]


def zorn_mult(x, y):
    """Split octonions as vector matrices (a, v; w, b) with v, w in Q^3."""

    def dot(u, v):
        return sum(a * b for a, b in zip(u, v))

    def cross(u, v):
        return (
            u[1] * v[2] - u[2] * v[1],
            u[2] * v[0] - u[0] * v[2],
            u[0] * v[1] - u[1] * v[0],
        )

    a, v, w, b = x[0], x[1:4], x[4:7], x[7]
    c, p, q, d = y[0], y[1:4], y[4:7], y[7]
    scal1 = a * c + dot(v, q)
    vec1 = tuple(a * p[i] + d * v[i] - cross(w, q)[i] for i in range(3))
    vec2 = tuple(c * w[i] + b * q[i] + cross(v, p)[i] for i in range(3))
    scal2 = b * d + dot(w, p)
    return (scal1,) + vec1 + vec2 + (scal2,)


def split_octonion_derivations():
    """Exact basis of the derivation algebra of the split octonions."""
    units = []
    for i in range(8):
        u = [F(0)] * 8
        u[i] = F(1)
        units.append(tuple(u))
    mult_table = [[zorn_mult(units[i], units[j]) for j in range(8)] for i in range(8)]
    # unknown D[c][b]: 64 entries; D(xy) = D(x) y + x D(y) on all basis pairs
    rows = []
    for i in range(8):
        for j in range(8):
            prod = mult_table[i][j]
            for c in range(8):
                row = [F(0)] * 64
                for t in range(8):
                    if prod[t]:
                        row[c * 8 + t] += prod[t]
                for s in range(8):
                    # D(e_i) = sum_s D[s][i] e_s acts through (e_s e_j), (e_i e_s)
                    row[s * 8 + i] -= mult_table[s][j][c]
                    row[s * 8 + j] -= mult_table[i][s][c]
                rows.append(row)
    return linalg.nullspace(RatMatrix.from_rows(rows, 64))


def test_m25_prolongation_matches_split_octonion_derivations(m25):
    g0 = degree_zero_derivations(m25)
    result = universal_prolongation(m25, g0)
    computed = fingerprint(result.algebra)
    assert computed["dimension"] == 14
    assert computed["killing_nondegenerate"]
    assert computed["graded_pairing_ok"]

    derivations = split_octonion_derivations()
    assert len(derivations) == 14
    # structure constants of the derivation algebra via matrix commutators
    basis = [BasisElement(f"D{i + 1}", 0) for i in range(14)]
    mats = [[[d[c * 8 + b] for b in range(8)] for c in range(8)] for d in derivations]

    def comm_flat(a, b):
        out = []
        for c in range(8):
            for t in range(8):
                out.append(
                    sum(a[c][k] * b[k][t] - b[c][k] * a[k][t] for k in range(8))
                )
        return out

    table = {}
    for a in range(14):
        for b in range(a + 1, 14):
            coords = linalg.express_in_basis(derivations, comm_flat(mats[a], mats[b]))
            assert coords is not None
            terms = {t: v for t, v in enumerate(coords) if v}
            if terms:
                table[(a, b)] = terms
    reference = GradedLieAlgebra(basis, table)
    ref_data = killing_form(reference)
    assert ref_data.nondegenerate
    assert ref_data.signature == killing_form(result.algebra).signature == (8, 6)


def test_graded_pairing_on_terminated_runs(example5_result):
    assert graded_pairing_check(example5_result.algebra)


def test_graded_pairing_across_corpus(corpus_results):
    checked = []
    for name, (_, _, _, result) in sorted(corpus_results.items()):
        if result.terminated:
            assert graded_pairing_check(result.algebra), name
            checked.append(name)
    assert checked


@settings(max_examples=20)
@given(
    st.lists(coeffs_st, min_size=8, max_size=8),
    st.lists(coeffs_st, min_size=8, max_size=8),
    st.lists(coeffs_st, min_size=8, max_size=8),
)
def test_killing_form_invariance(xs, ys, zs):
    algebra = make_sl3()
    data = killing_form(algebra)
    rows = data.matrix.dense_rows()

    def kappa(u, v):
        return sum(rows[i][j] * u[i] * v[j] for i in range(8) for j in range(8))

    assert kappa(algebra.bracket(xs, ys), zs) == kappa(xs, algebra.bracket(ys, zs))


def test_free_nilpotent_killing_is_zero():
    data = killing_form(free_nilpotent(2, 3))
    assert data.rank == 0
