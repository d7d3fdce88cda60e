import dataclasses
from fractions import Fraction

import pytest

from gradedlie import (
    GradedLinearMap,
    abelian,
    build_spencer,
    check_transitivity,
    check_validity,
    degree_zero_derivations,
    extend_brackets,
    orthogonal_derivations,
    prolong_step,
    spencer_kernel,
    universal_prolongation,
)
from gradedlie import linalg
from gradedlie.algebra import map_layout, tower_dims
from gradedlie.prolongation import leibniz_system
from gradedlie.symbols import EuclideanForm

F = Fraction


def reference_g1_maps():
    # X1 -> L1 + 3 L2, X3 -> -2 X2   and   X2 -> L1 - 3 L2, X3 -> 2 X1
    lam11 = GradedLinearMap(1, {-1: [[F(1), F(3)], [F(0), F(0)]], -2: [[F(0), F(-2)]]})
    lam21 = GradedLinearMap(1, {-1: [[F(0), F(0)], [F(1), F(-3)]], -2: [[F(2), F(0)]]})
    return lam11, lam21


def flatten_all(maps, layout):
    return [m.flatten(layout) for m in maps]


def spans_match(a_flat, b_flat):
    if len(a_flat) != len(b_flat):
        return False
    r = linalg.vectors_rank(a_flat) if a_flat else 0
    return r == len(a_flat) and linalg.vectors_rank(a_flat + b_flat) == r


def test_example5_first_prolongation(eta3, lambda_g0):
    basis1 = prolong_step(eta3, [list(lambda_g0.generators)])
    assert len(basis1) == 2
    dims = tower_dims(eta3, [lambda_g0.generators])
    layout = map_layout(dims, 1)
    lam11, lam21 = reference_g1_maps()
    assert spans_match(flatten_all(basis1, layout), flatten_all([lam11, lam21], layout))


def test_example5_second_and_third_prolongation(eta3, lambda_g0, example5_result):
    bases = example5_result.bases
    assert [len(b) for b in bases] == [2, 2, 1]
    assert example5_result.terminated
    assert example5_result.vanishing_degree == 3

    # express the stated degree-2 generator over the computed degree-1 basis
    dims = tower_dims(eta3, bases)
    layout1 = map_layout(dims, 1)
    computed1 = flatten_all(list(bases[1]), layout1)
    lam11, lam21 = reference_g1_maps()
    c11 = linalg.express_in_basis(computed1, lam11.flatten(layout1))
    c21 = linalg.express_in_basis(computed1, lam21.flatten(layout1))
    assert c11 is not None and c21 is not None
    reference_g2 = GradedLinearMap(
        2, {-1: [c21, [-x for x in c11]], -2: [[F(2), F(0)]]}
    )
    layout2 = map_layout(dims, 2)
    assert spans_match(flatten_all(list(bases[2]), layout2), [reference_g2.flatten(layout2)])


def test_route_equivalence_example5(eta3, lambda_g0, example5_result):
    g_bases = [list(b) for b in example5_result.bases]
    for k in range(len(g_bases)):
        direct = prolong_step(eta3, g_bases[: k + 1])
        kernel = spencer_kernel(eta3, g_bases[: k + 1], k)
        assert direct == kernel


def test_spencer_kernel_nonnegative_blocks_vanish_raw():
    # full contact symbol: infinite type with nontrivial non-negative blocks
    from gradedlie import heisenberg

    m = heisenberg(1)
    g0 = degree_zero_derivations(m)
    result = universal_prolongation(m, g0, max_degree=3)
    g_bases = [list(b) for b in result.bases]
    for k in (1, 2):
        system = build_spencer(m, g_bases[: k + 1], k)
        assert any(block.kind == "pos" for block in system.domain_layout)
        for vector in linalg.nullspace(system.matrix):
            _, positive = system.split_domain_vector(vector)
            assert not any(positive)


def test_riemannian_first_prolongation_vanishes():
    for n in (2, 3, 4, 5):
        m = abelian(n)
        q = EuclideanForm([[1 if i == j else 0 for j in range(n)] for i in range(n)])
        g0 = orthogonal_derivations(m, q)
        assert prolong_step(m, [list(g0.generators)]) == []


def test_gl_n_first_kernel_is_symmetric_tensors():
    for n in (2, 3):
        m = abelian(n)
        g0 = degree_zero_derivations(m)
        kernel = spencer_kernel(m, [list(g0.generators)], 0)
        assert len(kernel) == n * n * (n + 1) // 2


def test_zero_g0_prolongation_is_trivial(eta3):
    from gradedlie import custom_g0

    result = universal_prolongation(eta3, custom_g0(eta3, []))
    assert result.terminated
    assert result.vanishing_degree == 1
    assert result.total_dimension == 3


def test_infinite_type_line(eta3):
    m = abelian(1)
    g0 = degree_zero_derivations(m)
    result = universal_prolongation(m, g0, max_degree=10)
    assert not result.terminated
    assert result.total_dimension is None
    assert all(result.dims[k] == 1 for k in range(0, 11))
    # brute-force oracle: one basis element means no pairs, so the
    # constraint system is empty and the whole domain survives
    for k in range(1, 11):
        _, matrix = leibniz_system(m, [list(b) for b in result.bases[:k]], k)
        assert matrix.rows == 0
        assert matrix.cols == 1


def test_example5_assembled_table(eta3, lambda_g0, example5_result):
    result = example5_result
    algebra = result.algebra
    assert check_validity(algebra).ok

    dims = tower_dims(eta3, result.bases)
    layout1 = map_layout(dims, 1)
    computed1 = flatten_all(list(result.bases[1]), layout1)
    lam11, lam21 = reference_g1_maps()
    c11 = linalg.express_in_basis(computed1, lam11.flatten(layout1))
    c21 = linalg.express_in_basis(computed1, lam21.flatten(layout1))

    def global_vec(degree, coords):
        vec = [F(0)] * algebra.dim
        offset = {0: 3, 1: 5, 2: 7}[degree]
        for t, value in enumerate(coords):
            vec[offset + t] = value
        return vec

    v11 = global_vec(1, c11)
    v21 = global_vec(1, c21)
    lam10 = global_vec(0, [F(1), F(0)])
    lam20 = global_vec(0, [F(0), F(1)])

    # [L1^1, L2^1] = 2 Lambda with Lambda(X3) = 2 L1^0: recover Lambda's
    # global vector from the computed degree-2 basis
    dims2 = map_layout(dims, 2)
    computed2 = flatten_all(list(result.bases[2]), dims2)
    reference_g2 = GradedLinearMap(2, {-1: [c21, [-x for x in c11]], -2: [[F(2), F(0)]]})
    c_lam = linalg.express_in_basis(computed2, reference_g2.flatten(dims2))
    v_lam = global_vec(2, c_lam)

    assert algebra.bracket(v11, v21) == [2 * x for x in v_lam]
    # weight relations under the degree-zero part
    assert algebra.bracket(v11, lam10) == v11
    assert algebra.bracket(v11, lam20) == v11
    assert algebra.bracket(v21, lam10) == v21
    assert algebra.bracket(v21, lam20) == [-x for x in v21]
    # [f, f] = 0
    assert algebra.bracket(v11, v11) == [F(0)] * algebra.dim

    table = extend_brackets(result)
    assert set(table) >= {(0, 0, 0, 1), (1, 0, 1, 1)}


def test_transitivity_holds_and_detects_corruption(example5_result):
    report = check_transitivity(example5_result)
    assert report.ok

    bad_map = GradedLinearMap(
        1, {-1: [[F(0), F(0)], [F(0), F(0)]], -2: [[F(1), F(0)]]}
    )
    bases = list(example5_result.bases)
    bases[1] = tuple(list(bases[1]) + [bad_map])
    corrupted = dataclasses.replace(example5_result, bases=tuple(bases))
    report = check_transitivity(corrupted)
    assert not report.ok
    assert report.degree == 1
    assert report.witness is not None
    assert any(report.witness)


def test_truncated_run_reports_as_such(eta3, lambda_g0):
    result = universal_prolongation(eta3, lambda_g0, max_degree=1)
    assert not result.terminated
    assert result.vanishing_degree is None
    assert result.total_dimension is None
    assert result.dimension_of(1) == 2
    assert result.dimension_of(2) is None


def test_determinism(eta3, lambda_g0):
    a = universal_prolongation(eta3, lambda_g0)
    b = universal_prolongation(eta3, lambda_g0)
    assert a.bases == b.bases
    assert a.dims == b.dims
    assert all(
        a.algebra.bracket_basis(*p) == b.algebra.bracket_basis(*p)
        for p in a.algebra.bracket_pairs()
    )


def test_full_contact_symbol_matches_weighted_monomial_count():
    # the full symmetry algebra of the contact plane field is the contact
    # vector fields; its degree-k piece is spanned by generating functions of
    # weighted degree k + 2 in two weight-1 and one weight-2 variables
    from gradedlie import heisenberg

    m = heisenberg(1)
    result = universal_prolongation(m, degree_zero_derivations(m), max_degree=4)
    assert not result.terminated
    for k in range(-2, 5):
        expected = sum((k + 2 - 2 * c) + 1 for c in range((k + 2) // 2 + 1))
        assert result.dims[k] == expected


def test_higher_step_free_symbols_stop_at_degree_one():
    # regression pins: only step 3 on two generators prolongs past g^0
    from gradedlie import free_nilpotent

    for mu, total in ((4, 12), (5, 18)):
        m = free_nilpotent(2, mu)
        result = universal_prolongation(m, degree_zero_derivations(m))
        assert result.terminated
        assert result.vanishing_degree == 1
        assert result.total_dimension == total


def test_generic_subriemannian_contact_case():
    # regression pin: a generic metric on the 5-dimensional contact symbol
    from gradedlie import heisenberg

    m = heisenberg(2)
    q = EuclideanForm([[1, 0, 0, 0], [0, 2, 0, 0], [0, 0, 1, 0], [0, 0, 0, 2]])
    result = universal_prolongation(m, orthogonal_derivations(m, q), max_degree=5)
    assert result.terminated
    assert result.vanishing_degree == 1
    assert result.total_dimension == 7


def test_parallel_runs_are_independent():
    import concurrent.futures

    from gradedlie import custom_g0
    from conftest import LAMBDA_1, LAMBDA_2, make_eta3

    def run(_):
        m = make_eta3()
        g0 = custom_g0(m, [LAMBDA_1, LAMBDA_2])
        result = universal_prolongation(m, g0)
        return result.graded_dimensions(), result.total_dimension

    with concurrent.futures.ThreadPoolExecutor(max_workers=4) as pool:
        outcomes = list(pool.map(run, range(4)))
    assert all(outcome == outcomes[0] for outcome in outcomes)
    assert outcomes[0][1] == 8


def test_rejects_invalid_inputs(eta3):
    from gradedlie import BasisElement, GradedLieAlgebra, custom_g0

    with pytest.raises(ValueError, match="max_degree"):
        universal_prolongation(eta3, custom_g0(eta3, []), max_degree=0)
    split = GradedLieAlgebra([BasisElement("X1", -1), BasisElement("X2", -2)], {})
    with pytest.raises(ValueError, match="fundamental"):
        universal_prolongation(split, custom_g0(split, []))
