"""Free nilpotent Lie algebras on r generators truncated at a given step.

The basis is a classical Hall set: trees ordered by degree, then by their
leaf word, with (u, v) admissible when u < v and v is a letter or v = (v1, v2)
with v1 <= u.  Structure constants are obtained by expanding bracketed trees
inside the truncated free associative algebra and solving exactly against the
expansions of the Hall elements of the matching degree, so every constant is
certified rather than rewritten.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .algebra import BasisElement, GradedLieAlgebra

# A Hall tree is an int (generator index) or a pair (left, right).


def _degree(tree) -> int:
    if isinstance(tree, int):
        return 1
    return _degree(tree[0]) + _degree(tree[1])


def _foliage(tree) -> tuple[int, ...]:
    if isinstance(tree, int):
        return (tree,)
    return _foliage(tree[0]) + _foliage(tree[1])


def _shape(tree):
    if isinstance(tree, int):
        return (0, tree)
    return (1, _shape(tree[0]), _shape(tree[1]))


def _tree_key(tree):
    return (_degree(tree), _foliage(tree), _shape(tree))


def hall_trees(r: int, mu: int) -> dict[int, list]:
    """Hall trees of each degree 1..mu on r generators, in basis order."""
    if r < 1 or mu < 1:
        raise ValueError("need r >= 1 and mu >= 1")
    by_degree: dict[int, list] = {1: list(range(r))}
    for d in range(2, mu + 1):
        found = []
        for dl in range(1, d):
            for u in by_degree[dl]:
                for v in by_degree[d - dl]:
                    if _tree_key(u) >= _tree_key(v):
                        continue
                    if isinstance(v, tuple) and _tree_key(v[0]) > _tree_key(u):
                        continue
                    found.append((u, v))
        by_degree[d] = sorted(found, key=_tree_key)
    return by_degree


def _expand(tree, cache) -> dict[tuple[int, ...], Fraction]:
    """Expansion of a Hall tree in the free associative algebra (word -> coeff)."""
    key = _shape(tree)
    hit = cache.get(key)
    if hit is not None:
        return hit
    if isinstance(tree, int):
        poly = {(tree,): Fraction(1)}
    else:
        left = _expand(tree[0], cache)
        right = _expand(tree[1], cache)
        poly = {}
        for wl, cl in left.items():
            for wr, cr in right.items():
                word = wl + wr
                poly[word] = poly.get(word, Fraction(0)) + cl * cr
                word = wr + wl
                poly[word] = poly.get(word, Fraction(0)) - cl * cr
        poly = {w: c for w, c in poly.items() if c}
    cache[key] = poly
    return poly


def _poly_commutator(p, q) -> dict[tuple[int, ...], Fraction]:
    out: dict[tuple[int, ...], Fraction] = {}
    for wl, cl in p.items():
        for wr, cr in q.items():
            word = wl + wr
            out[word] = out.get(word, Fraction(0)) + cl * cr
            word = wr + wl
            out[word] = out.get(word, Fraction(0)) - cl * cr
    return {w: c for w, c in out.items() if c}


def free_nilpotent(r: int, mu: int) -> GradedLieAlgebra:
    """Free nilpotent graded Lie algebra on r generators of step mu.

    The degree -d component is spanned by the Hall trees with d leaves;
    basis names are X1, X2, ... in degree-ascending order.
    """
    trees = hall_trees(r, mu)
    ordered = []
    for d in range(1, mu + 1):
        for tree in trees[d]:
            ordered.append((d, tree))
    basis = [BasisElement(f"X{i + 1}", -d) for i, (d, _) in enumerate(ordered)]

    cache: dict = {}
    expansions = [_expand(tree, cache) for _, tree in ordered]
    # per-degree word index and flattened Hall expansions, for exact solving
    word_index: dict[int, dict[tuple[int, ...], int]] = {}
    hall_columns: dict[int, list[list[Fraction]]] = {}
    members: dict[int, list[int]] = {}
    for idx, (d, _) in enumerate(ordered):
        members.setdefault(d, []).append(idx)
    for d, idxs in members.items():
        seen: dict[tuple[int, ...], int] = {}
        for idx in idxs:
            for word in expansions[idx]:
                if word not in seen:
                    seen[word] = len(seen)
        word_index[d] = seen
        cols = []
        for idx in idxs:
            col = [Fraction(0)] * len(seen)
            for word, coeff in expansions[idx].items():
                col[seen[word]] = coeff
            cols.append(col)
        hall_columns[d] = cols

    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for a in range(len(ordered)):
        da = ordered[a][0]
        for b in range(a + 1, len(ordered)):
            d = da + ordered[b][0]
            if d > mu:
                continue
            comm = _poly_commutator(expansions[a], expansions[b])
            index = dict(word_index[d])
            for word in comm:
                if word not in index:
                    index[word] = len(index)
            target = [Fraction(0)] * len(index)
            for word, coeff in comm.items():
                target[index[word]] = coeff
            cols = []
            for col in hall_columns[d]:
                padded = list(col) + [Fraction(0)] * (len(index) - len(col))
                cols.append(padded)
            coords = linalg.express_in_basis(cols, target)
            if coords is None:
                raise ArithmeticError("bracket of Hall elements escaped the Hall span")
            terms = {
                members[d][t]: value for t, value in enumerate(coords) if value
            }
            if terms:
                brackets[(a, b)] = terms
    return GradedLieAlgebra(basis, brackets)
