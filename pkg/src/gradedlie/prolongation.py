"""The universal prolongation of a fundamental graded nilpotent Lie algebra.

Each new degree is the space of maps f in the direct sum of Hom(g^i, g^{i+d})
over i < 0 satisfying the Leibniz identity

    f([v1, v2]) = [f(v1), v2] + [v1, f(v2)]   for all v1, v2 in the symbol,

computed as an exact nullspace over every negative basis pair.  The kernel of
the degree-(d-1) Spencer operator is the same space by a different route
(constraints for v1 of degree -1 only, over a domain with extra non-negative
blocks); the engine computes both and insists they agree, which makes every
run a self-test of the whole constraint assembly.

Brackets between non-negative degrees follow the recursion

    [f1, f2] v = [f1(v), f2] + [f1, f2(v)],

seeded by the degree-zero commutator table, and [f, v] = f(v) ties the
non-negative part to the symbol.  The assembled structure constants are
returned as a single graded Lie algebra and checked for the Jacobi identity
whenever the prolongation terminates.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .algebra import (
    BasisElement,
    DegreeZeroAlgebra,
    GradedLieAlgebra,
    GradedLinearMap,
    check_fundamental,
    check_validity,
    layout_offsets,
    map_layout,
    tower_dims,
)
from .linalg import RatMatrix
from .normalization import SpencerSystem, build_spencer


class InternalConsistencyError(RuntimeError):
    """An engine self-check failed; results cannot be trusted."""


def leibniz_system(symbol: GradedLieAlgebra, g_bases, degree: int):
    """Constraint matrix for degree-`degree` maps on the negative part.

    Columns follow map_layout (blocks ascending in i, domain index outer,
    target coordinate inner); rows are emitted pair by pair over all basis
    pairs (a, b) with a < b of the symbol.  Returns (layout, matrix).
    """
    dims = tower_dims(symbol, g_bases)
    layout = map_layout(dims, degree)
    offsets, ncols = layout_offsets(layout)
    block_target = {i: tgt for i, _, tgt in layout}

    def col(i, pos, t):
        return offsets[i] + pos * block_target[i] + t

    n = symbol.dim
    row_specs = []
    nrows = 0
    for a in range(n):
        for b in range(a + 1, n):
            t_deg = symbol.degree_of(a) + symbol.degree_of(b) + degree
            count = dims.get(t_deg, 0)
            if count:
                row_specs.append((a, b, t_deg, nrows))
                nrows += count

    matrix = RatMatrix(nrows, ncols)
    for a, b, t_deg, row_base in row_specs:
        i = symbol.degree_of(a)
        j = symbol.degree_of(b)
        pos_a = symbol.position_in_degree(a)
        pos_b = symbol.position_in_degree(b)

        # + f([e_a, e_b])
        low = i + j
        if low in block_target:
            for c, value in symbol.bracket_basis(a, b).items():
                pos_c = symbol.position_in_degree(c)
                for t in range(block_target[low]):
                    matrix.add_to(row_base + t, col(low, pos_c, t), value)

        # - [f(e_a), e_b], with f(e_a) expanded over the degree i+degree basis
        _emit_side(symbol, g_bases, dims, matrix, row_base,
                   i, pos_a, b, degree, col, block_target, Fraction(-1))
        # - [e_a, f(e_b)] = + [f(e_b), e_a]
        _emit_side(symbol, g_bases, dims, matrix, row_base,
                   j, pos_b, a, degree, col, block_target, Fraction(1))
    return layout, matrix


def _emit_side(symbol, g_bases, dims, matrix, row_base,
               dom_deg, dom_pos, other, degree, col, block_target, sign):
    """Rows of sign * [f(e_dom), e_other] for the unknown block on dom_deg."""
    if dom_deg not in block_target:
        return
    mid = dom_deg + degree
    count = dims.get(mid, 0)
    if mid < 0:
        for t, g in enumerate(symbol.indices_of_degree(mid)):
            column = col(dom_deg, dom_pos, t)
            for c, value in symbol.bracket_basis(g, other).items():
                u = symbol.position_in_degree(c)
                matrix.add_to(row_base + u, column, sign * value)
    else:
        other_deg = symbol.degree_of(other)
        other_pos = symbol.position_in_degree(other)
        for t in range(count):
            column = col(dom_deg, dom_pos, t)
            block = g_bases[mid][t].blocks.get(other_deg)
            if block is None:
                continue
            for u, value in enumerate(block[other_pos]):
                if value:
                    matrix.add_to(row_base + u, column, sign * value)


def _normalize_map_basis(vectors, degree, layout):
    """Reduced echelon form of the span, one map per reduced row."""
    if not vectors:
        return []
    _, rows = linalg.rref(RatMatrix.from_rows(vectors))
    return [GradedLinearMap.from_flat(degree, layout, row) for row in rows]


def leibniz_maps(symbol: GradedLieAlgebra, g_bases, degree: int):
    """Basis of degree-`degree` maps satisfying the Leibniz identity."""
    layout, matrix = leibniz_system(symbol, g_bases, degree)
    return _normalize_map_basis(linalg.nullspace(matrix), degree, layout)


def prolong_step(symbol: GradedLieAlgebra, g_bases):
    """Basis of the next prolongation degree from the computed tower.

    g_bases holds the bases of degrees 0..k; the result is the degree k+1
    basis, echelon-normalized, empty exactly when the prolongation stops.
    """
    if not g_bases:
        raise ValueError("g_bases must contain at least the degree-zero level")
    return leibniz_maps(symbol, g_bases, len(g_bases))


def spencer_kernel(symbol: GradedLieAlgebra, g_bases, k: int):
    """Kernel of the degree-k Spencer operator, as degree-(k+1) maps.

    Kernel elements provably vanish on the non-negative domain blocks; this
    is asserted on every element rather than assumed.
    """
    system = build_spencer(symbol, g_bases, k)
    maps, _ = spencer_kernel_from_system(symbol, g_bases, system)
    return maps


def spencer_kernel_from_system(symbol, g_bases, system: SpencerSystem):
    vectors = linalg.nullspace(system.matrix)
    negative = []
    for v in vectors:
        neg, pos = system.split_domain_vector(v)
        if any(pos):
            raise InternalConsistencyError(
                f"Spencer kernel element at k={system.k} has a nonzero non-negative block"
            )
        negative.append(neg)
    layout = system.negative_map_layout()
    return _normalize_map_basis(negative, system.k + 1, layout), vectors


@dataclass
class TransitivityReport:
    ok: bool
    degree: int | None
    witness: tuple[Fraction, ...] | None


@dataclass
class ProlongationResult:
    symbol: GradedLieAlgebra
    g0: DegreeZeroAlgebra
    bases: tuple[tuple[GradedLinearMap, ...], ...]
    dims: dict[int, int]
    terminated: bool
    vanishing_degree: int | None
    max_degree: int
    algebra: GradedLieAlgebra
    spencer_systems: tuple[SpencerSystem, ...]
    total_dimension: int | None

    def graded_dimensions(self):
        return [(d, self.dims[d]) for d in sorted(self.dims)]

    def dimension_of(self, degree: int):
        if degree in self.dims:
            return self.dims[degree]
        if degree > 0 and self.terminated:
            return 0
        if degree < 0:
            return 0
        return None  # truncated run, degree beyond the cutoff


def universal_prolongation(symbol: GradedLieAlgebra, g0, max_degree: int = 10,
                           cross_check: bool = True) -> ProlongationResult:
    """Compute the full prolongation of (symbol, g0) up to max_degree.

    Stops at the first empty degree (terminated, with the vanishing degree
    recorded) or at max_degree (truncated).  With cross_check on, every
    degree is recomputed through the Spencer kernel and compared, kernel
    elements are checked to vanish on non-negative blocks, the assembled
    algebra of a terminated run must pass check_validity, and transitivity
    must hold; failures raise InternalConsistencyError.
    """
    if max_degree < 1:
        raise ValueError("max_degree must be at least 1")
    report = check_validity(symbol)
    if not report.ok:
        raise ValueError(f"symbol is not a valid graded Lie algebra: {report.describe()}")
    if not check_fundamental(symbol):
        raise ValueError("symbol is not fundamental: degree -1 does not generate it")
    if not isinstance(g0, DegreeZeroAlgebra):
        g0 = DegreeZeroAlgebra(symbol, g0)

    g_bases: list[list[GradedLinearMap]] = [list(g0.generators)]
    systems: list[SpencerSystem] = []
    terminated = False
    vanishing = None
    for d in range(1, max_degree + 1):
        new_basis = prolong_step(symbol, g_bases)
        system = build_spencer(symbol, g_bases, d - 1)
        systems.append(system)
        if cross_check:
            kernel_maps, _ = spencer_kernel_from_system(symbol, g_bases, system)
            if len(kernel_maps) != len(new_basis) or any(
                a != b for a, b in zip(kernel_maps, new_basis)
            ):
                raise InternalConsistencyError(
                    f"Spencer kernel disagrees with the pairwise constraint route at degree {d}"
                )
        if not new_basis:
            terminated = True
            vanishing = d
            break
        g_bases.append(new_basis)

    table = _nonneg_table(symbol, g_bases, g0, terminated)
    algebra = _assemble(symbol, g_bases, table)
    dims = tower_dims(symbol, g_bases)
    total = algebra.dim if terminated else None

    result = ProlongationResult(
        symbol=symbol,
        g0=g0,
        bases=tuple(tuple(base) for base in g_bases),
        dims=dims,
        terminated=terminated,
        vanishing_degree=vanishing,
        max_degree=max_degree,
        algebra=algebra,
        spencer_systems=tuple(systems),
        total_dimension=total,
    )
    if cross_check:
        if terminated:
            final = check_validity(algebra)
            if not final.ok:
                raise InternalConsistencyError(
                    f"assembled prolongation fails validity: {final.describe()}"
                )
        trans = check_transitivity(result)
        if not trans.ok:
            raise InternalConsistencyError(
                f"transitivity fails at degree {trans.degree}: witness {trans.witness}"
            )
    return result


def check_transitivity(result: ProlongationResult) -> TransitivityReport:
    """No nonzero positive-degree element may vanish on the degree -1 part.

    For each computed degree k >= 1 the restriction-to-degree -1 map on the
    basis span must have full rank; a failing degree comes with the
    coefficients of a nonzero combination vanishing on g^-1.
    """
    dims = result.dims
    n1 = dims.get(-1, 0)
    for k in range(1, len(result.bases)):
        base = result.bases[k]
        if not base:
            continue
        width = n1 * dims.get(k - 1, 0)
        rows = []
        for f in base:
            block = f.blocks.get(-1)
            if block is None:
                rows.append([Fraction(0)] * width)
            else:
                row = []
                for colv in block:
                    row.extend(colv)
                rows.append(row)
        if width == 0 or linalg.vectors_rank(rows, width) < len(base):
            if width == 0:
                witness = tuple([Fraction(1)] + [Fraction(0)] * (len(base) - 1))
            else:
                kernel = linalg.nullspace(RatMatrix.from_rows(rows, width).transpose())
                witness = tuple(kernel[0])
            return TransitivityReport(False, k, witness)
    return TransitivityReport(True, None, None)


def _table_bracket(dims, table, p, s, q, t):
    """Coordinates of [B_{p,s}, B_{q,t}] over the degree p+q basis."""
    out_dim = dims.get(p + q, 0)
    if out_dim == 0:
        return [Fraction(0)] * 0
    if p < q or (p == q and s < t):
        return list(table[(p, s, q, t)])
    if p == q and s == t:
        return [Fraction(0)] * out_dim
    return [-x for x in table[(q, t, p, s)]]


def _pair_map_blocks(symbol, g_bases, dims, table, k, s, l, t):
    """[B_{k,s}, B_{l,t}] as blocks of a degree k+l map on the symbol."""
    D = k + l
    f1 = g_bases[k][s]
    f2 = g_bases[l][t]
    blocks = {}
    for i in sorted(d for d in dims if d < 0):
        out_dim = dims.get(i + D, 0)
        cols = []
        for a in range(dims[i]):
            vec = [Fraction(0)] * out_dim
            # [f1(e_a), f2]
            block1 = f1.blocks.get(i)
            if block1 is not None:
                left = block1[a]
                p = i + k
                if p < 0:
                    img = f2.apply(p, left)
                    for u, value in enumerate(img):
                        vec[u] -= value  # [w, f2] = -f2(w) for w in the symbol
                else:
                    for sp, value in enumerate(left):
                        if value:
                            for u, entry in enumerate(_table_bracket(dims, table, p, sp, l, t)):
                                vec[u] += value * entry
            # [f1, f2(e_a)]
            block2 = f2.blocks.get(i)
            if block2 is not None:
                right = block2[a]
                q = i + l
                if q < 0:
                    img = f1.apply(q, right)
                    for u, value in enumerate(img):
                        vec[u] += value  # [f1, w] = f1(w)
                else:
                    for sq, value in enumerate(right):
                        if value:
                            for u, entry in enumerate(_table_bracket(dims, table, k, s, q, sq)):
                                vec[u] += value * entry
            cols.append(vec)
        blocks[i] = cols
    return blocks


def _nonneg_table(symbol, g_bases, g0, terminated):
    """Structure constants among the non-negative degrees.

    Computed bottom-up in the total degree so that every recursive bracket
    lands on an already known entry.  When the prolongation terminated,
    pairs whose total degree exceeds the top computed degree are verified to
    vanish on every representable component.
    """
    dims = tower_dims(symbol, g_bases)
    kmax = len(g_bases) - 1
    table: dict[tuple[int, int, int, int], tuple[Fraction, ...]] = {}
    for (s, t), coords in g0.structure_constants.items():
        table[(0, s, 0, t)] = tuple(coords)

    layouts = {D: map_layout(dims, D) for D in range(1, kmax + 1)}
    flat_bases = {
        D: [f.flatten(layouts[D]) for f in g_bases[D]] for D in range(1, kmax + 1)
    }
    upper = 2 * kmax if terminated else kmax
    for D in range(1, upper + 1):
        for k in range(max(0, D - kmax), D // 2 + 1):
            l = D - k
            if l > kmax:
                continue
            for s in range(len(g_bases[k])):
                start = s + 1 if k == l else 0
                for t in range(start, len(g_bases[l])):
                    blocks = _pair_map_blocks(symbol, g_bases, dims, table, k, s, l, t)
                    if D <= kmax:
                        flat = GradedLinearMap(D, blocks).flatten(layouts[D])
                        coords = linalg.express_in_basis(flat_bases[D], flat)
                        if coords is None:
                            raise InternalConsistencyError(
                                f"bracket of degrees ({k}, {l}) escaped the degree-{D} basis"
                            )
                        table[(k, s, l, t)] = tuple(coords)
                    else:
                        if any(any(col) for cols in blocks.values() for col in cols):
                            raise InternalConsistencyError(
                                f"bracket of degrees ({k}, {l}) is nonzero beyond the vanishing degree"
                            )
    return table


def extend_brackets(result: ProlongationResult):
    """Recompute the non-negative structure-constant table of a result.

    Keys are (k, s, l, t) for the s-th degree-k and t-th degree-l basis
    elements with (k, s) lexicographically before (l, t); values are exact
    coordinates over the degree k+l basis.
    """
    return _nonneg_table(result.symbol, result.bases, result.g0, result.terminated)


def _assemble(symbol, g_bases, table) -> GradedLieAlgebra:
    n = symbol.dim
    dims = tower_dims(symbol, g_bases)
    used = {e.name for e in symbol.basis}
    elements = list(symbol.basis)
    offsets = {}
    position = n
    for k, base in enumerate(g_bases):
        offsets[k] = position
        for j in range(len(base)):
            name = f"g{k}_{j + 1}"
            while name in used:
                name += "_"
            used.add(name)
            elements.append(BasisElement(name, k))
        position += len(base)

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for pair in symbol.bracket_pairs():
        brackets[pair] = symbol.bracket_basis(*pair)

    def global_target(degree, t):
        if degree < 0:
            return symbol.indices_of_degree(degree)[t]
        return offsets[degree] + t

    for a in range(n):
        i = symbol.degree_of(a)
        pos = symbol.position_in_degree(a)
        for k, base in enumerate(g_bases):
            for j, f in enumerate(base):
                block = f.blocks.get(i)
                if block is None:
                    continue
                terms = {}
                for t, value in enumerate(block[pos]):
                    if value:
                        terms[global_target(i + k, t)] = -value  # [v, f] = -f(v)
                if terms:
                    brackets[(a, offsets[k] + j)] = terms

    for (k, s, l, t), coords in table.items():
        terms = {global_target(k + l, u): value for u, value in enumerate(coords) if value}
        if terms:
            brackets[(offsets[k] + s, offsets[l] + t)] = terms
    return GradedLieAlgebra(elements, brackets)
