"""Koszul-type minimal models.

Covers the general quadratic construction (lattice of intersections
J_n), the explicit exterior-generator model for polynomial rings, the
cyclic-group McKay model, and the vertex-deletion quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from . import linalg
from .core import AlgebraElement, Arrow, GradedQuiver, Path, Vertex
from .differential import Differential, DGModel, check_d_squared, check_grading
from .errors import InvalidInputError
from .presentations import QuadraticPresentation


def shuffle_sign(a: tuple[int, ...], b: tuple[int, ...]) -> int:
    """Sign of merging the ascending tuples a then b into ascending order.

    Equals the parity of the number of pairs (x, y) in a x b with x > y.
    """
    inv = sum(1 for x in a for y in b if x > y)
    return -1 if inv % 2 else 1


def _subsets(n: int):
    """All nonempty subsets of 1..n as ascending tuples, by size then lex."""
    for k in range(1, n + 1):
        yield from combinations(range(1, n + 1), k)


def _splits(s: tuple[int, ...]):
    """All ordered splits s = a ⊔ b with both parts nonempty."""
    s_set = set(s)
    for k in range(1, len(s)):
        for a in combinations(s, k):
            b = tuple(sorted(s_set - set(a)))
            yield a, b


def _subset_name(s: tuple[int, ...]) -> str:
    return "".join(str(i) for i in s)


# ---------------------------------------------------------------------------
# polynomial rings


def polynomial_model(n: int) -> DGModel:
    """Minimal model of k[x_1..x_n]: one vertex, a generator x_S per
    nonempty S in hdeg -|S|+1, adeg |S|, with the shuffle-sign differential."""
    if n < 1:
        raise InvalidInputError("need n >= 1")
    arrows = tuple(
        Arrow(f"x{_subset_name(s)}", 0, 0, -len(s) + 1, len(s), label=f"x_{{{_subset_name(s)}}}")
        for s in _subsets(n)
    )
    quiver = GradedQuiver((0,), arrows)
    on_arrows: dict[str, AlgebraElement] = {}
    for s in _subsets(n):
        terms: dict[Path, Fraction] = {}
        for a, b in _splits(s):
            coeff = Fraction((-1) ** (len(a) - 1) * shuffle_sign(a, b))
            terms[Path(0, (f"x{_subset_name(a)}", f"x{_subset_name(b)}"))] = coeff
        if terms:
            on_arrows[f"x{_subset_name(s)}"] = AlgebraElement(quiver, terms)
    d = Differential(quiver, on_arrows)
    return DGModel(quiver, d, provenance="polynomial", metadata={"n": n})


# ---------------------------------------------------------------------------
# McKay models for cyclic groups


@dataclass(frozen=True)
class McKayData:
    """Z/m acting diagonally on n variables with the given weights."""

    m: int
    weights: tuple[int, ...]
    warnings: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.m < 2:
            raise InvalidInputError("need m >= 2")
        if not self.weights:
            raise InvalidInputError("need at least one weight")
        if any(not (0 <= a <= self.m - 1) for a in self.weights):
            raise InvalidInputError("weights must lie in 0..m-1")
        warns = []
        for a in self.weights:
            if math.gcd(a, self.m) != 1:
                warns.append(
                    f"gcd({a},{self.m}) != 1: Gorenstein/isolated-singularity hypotheses fail"
                )
        if sum(self.weights) % self.m != 0:
            warns.append(
                f"sum of weights {sum(self.weights)} is not 0 mod {self.m}: "
                "Gorenstein/isolated-singularity hypotheses fail"
            )
        object.__setattr__(self, "warnings", tuple(warns))

    @property
    def n(self) -> int:
        return len(self.weights)

    def d_of(self, s: tuple[int, ...]) -> int:
        """Weight of a subset: sum of a_i over i in S, not reduced."""
        return sum(self.weights[i - 1] for i in s)


def mckay_arrow_name(j: int, s: tuple[int, ...]) -> str:
    return f"x{j}_{_subset_name(s)}"


def mckay_model(data: McKayData) -> DGModel:
    """Minimal model of k[x_1..x_n] # Z/m: vertices 0..m-1, an arrow
    x_{j,S,j+d(S)} per vertex j and nonempty subset S."""
    m, n = data.m, data.n
    arrows = []
    for j in range(m):
        for s in _subsets(n):
            t = (j + data.d_of(s)) % m
            arrows.append(
                Arrow(
                    mckay_arrow_name(j, s),
                    j,
                    t,
                    -len(s) + 1,
                    len(s),
                    label=f"x_{{{j},{{{_subset_name(s)}}},{t}}}",
                )
            )
    quiver = GradedQuiver(tuple(range(m)), tuple(arrows))
    on_arrows: dict[str, AlgebraElement] = {}
    for j in range(m):
        for s in _subsets(n):
            terms: dict[Path, Fraction] = {}
            for a, b in _splits(s):
                coeff = Fraction((-1) ** (len(a) - 1) * shuffle_sign(a, b))
                mid = (j + data.d_of(a)) % m
                terms[Path(j, (mckay_arrow_name(j, a), mckay_arrow_name(mid, b)))] = coeff
            if terms:
                on_arrows[mckay_arrow_name(j, s)] = AlgebraElement(quiver, terms)
    d = Differential(quiver, on_arrows)
    return DGModel(
        quiver,
        d,
        provenance="mckay",
        metadata={"m": m, "weights": data.weights, "warnings": data.warnings},
    )


def mckay_commutation_presentation(data: McKayData) -> "PresentedAlgebra":
    """The degree-0 quotient presentation: the McKay quiver on the
    singleton arrows with the commuting-square relations
    x_{j,k} x_{j+a_k,l} = x_{j,l} x_{j+a_l,k}."""
    from .presentations import PresentedAlgebra

    m, n = data.m, data.n
    arrows = tuple(
        Arrow(mckay_arrow_name(j, (i,)), j, (j + data.weights[i - 1]) % m, 0, 1)
        for j in range(m)
        for i in range(1, n + 1)
    )
    quiver = GradedQuiver(tuple(range(m)), arrows)
    relators = []
    for j in range(m):
        for k, l in combinations(range(1, n + 1), 2):
            ak, al = data.weights[k - 1], data.weights[l - 1]
            relators.append(
                AlgebraElement(
                    quiver,
                    {
                        Path(j, (mckay_arrow_name(j, (k,)), mckay_arrow_name((j + ak) % m, (l,)))): Fraction(1),
                        Path(j, (mckay_arrow_name(j, (l,)), mckay_arrow_name((j + al) % m, (k,)))): Fraction(-1),
                    },
                )
            )
    return PresentedAlgebra(quiver, tuple(relators))


# ---------------------------------------------------------------------------
# vertex deletion


def delete_vertex(model: DGModel, v: Vertex) -> DGModel:
    """Quotient by the two-sided ideal of e_v: drop v, adjacent arrows,
    and every differential term through a dropped arrow."""
    q = model.quiver
    if v not in q.vertices:
        raise InvalidInputError(f"unknown vertex {v!r}")
    keep = tuple(a for a in q.arrows if a.source != v and a.target != v)
    keep_names = {a.name for a in keep}
    q0 = GradedQuiver(tuple(w for w in q.vertices if w != v), keep)
    on_arrows: dict[str, AlgebraElement] = {}
    for name, da in model.differential.on_arrows.items():
        if name not in keep_names:
            continue
        terms = {p: c for p, c in da.terms.items() if set(p.arrows) <= keep_names}
        if terms:
            on_arrows[name] = AlgebraElement(q0, terms)
    d0 = Differential(q0, on_arrows)
    out = DGModel(q0, d0, provenance=model.provenance, metadata=dict(model.metadata) | {"deleted_vertex": v})
    if check_grading(model.differential)["status"] == "pass":
        rep = check_grading(d0)
        if rep["status"] != "pass":
            raise AssertionError(f"vertex deletion broke the grading: {rep}")
    max_adeg = max((a.adeg for a in keep), default=0)
    if keep:
        rep = check_d_squared(d0, max_adeg)
        if rep["status"] != "pass":
            raise AssertionError(f"vertex deletion broke d^2 = 0: {rep}")
    return out


# ---------------------------------------------------------------------------
# general quadratic algebras


def _paths_of_length(quiver: GradedQuiver, n: int) -> list[Path]:
    paths = [Path(v) for v in quiver.vertices]
    for _ in range(n):
        paths = [
            Path(p.start, p.arrows + (a.name,))
            for p in paths
            for a in quiver.out_arrows(quiver.path_target(p))
        ]
    return sorted(paths, key=Path.sort_key)


def _to_sparse(el: AlgebraElement, index: dict[Path, int]) -> linalg.SparseVec:
    return {index[p]: c for p, c in el.terms.items()}


def _from_sparse(quiver: GradedQuiver, row: linalg.SparseVec, paths: list[Path]) -> AlgebraElement:
    return AlgebraElement(quiver, {paths[i]: c for i, c in row.items()})


def compute_Jn(pres: QuadraticPresentation, n: int) -> list[AlgebraElement]:
    """Ordered rational basis of J_n = ∩_i V^{⊗i} ⊗ R ⊗ V^{⊗ n-2-i}.

    J_1 is the arrow span, J_2 the relator span; bases are returned in
    reduced row echelon form over the canonical path ordering.
    """
    if n < 1:
        raise InvalidInputError("need n >= 1")
    q = pres.quiver
    if n == 1:
        return [q.gen(a.name) for a in sorted(q.arrows, key=lambda a: a.name)]
    paths = _paths_of_length(q, n)
    index = {p: i for i, p in enumerate(paths)}
    if n == 2:
        rows = linalg.row_reduce([_to_sparse(r, index) for r in pres.relators])
        return [_from_sparse(q, row, paths) for row in rows]

    def factor_space(i: int) -> list[linalg.SparseVec]:
        """Spanning rows of V^{⊗i} ⊗ R ⊗ V^{⊗ n-2-i}."""
        lefts = _paths_of_length(q, i)
        rights = _paths_of_length(q, n - 2 - i)
        rows = []
        for r in pres.relators:
            src, tgt = r.endpoints()
            for u in lefts:
                if q.path_target(u) != src:
                    continue
                for v in rights:
                    if v.start != tgt:
                        continue
                    rows.append(
                        {
                            index[Path(u.start, u.arrows + p.arrows + v.arrows)]: c
                            for p, c in r.terms.items()
                        }
                    )
        return linalg.row_reduce(rows)

    basis = factor_space(0)
    for i in range(1, n - 1):
        if not basis:
            return []
        basis = linalg.intersect_rowspaces(basis, factor_space(i), len(paths))
    return [_from_sparse(q, row, paths) for row in basis]


def minimal_model_general(pres: QuadraticPresentation, nmax: int) -> DGModel:
    """Truncated minimal model of T_l V / (R) with generators from J_n,
    n <= nmax, and d(a) = sum_i (-1)^{i-1} delta_{i,n-i}(a)."""
    if nmax < 2:
        raise InvalidInputError("need nmax >= 2")
    bases = {n: compute_Jn(pres, n) for n in range(1, nmax + 1)}

    arrows: list[Arrow] = []
    gen_name: dict[tuple[int, int], str] = {}  # (n, basis position) -> arrow name
    for n in range(1, nmax + 1):
        for k, b in enumerate(bases[n]):
            src, tgt = b.endpoints()
            name = next(iter(b.terms)).arrows[0] if n == 1 else f"j{n}_{k}"
            gen_name[(n, k)] = name
            arrows.append(Arrow(name, src, tgt, -n + 1, n, label=name))
    quiver = GradedQuiver(pres.quiver.vertices, tuple(arrows))

    on_arrows: dict[str, AlgebraElement] = {}
    for n in range(2, nmax + 1):
        if not bases[n]:
            continue
        paths = _paths_of_length(pres.quiver, n)
        index = {p: i for i, p in enumerate(paths)}
        for k, b in enumerate(bases[n]):
            target_vec = _to_sparse(b, index)
            terms: dict[Path, Fraction] = {}
            for i in range(1, n):
                prods: list[linalg.SparseVec] = []
                pairs: list[tuple[int, int]] = []
                for ka, va in enumerate(bases[i]):
                    for kb, vb in enumerate(bases[n - i]):
                        if va.endpoints()[1] != vb.endpoints()[0]:
                            continue
                        prods.append(_to_sparse(va * vb, index))
                        pairs.append((ka, kb))
                sol = linalg.solve_in_span(prods, target_vec)
                if sol is None:
                    raise RuntimeError(
                        f"J_{n} basis vector not inside J_{i} ⊗ J_{n - i}: internal bug"
                    )
                sign = Fraction((-1) ** (i - 1))
                for (ka, kb), c in zip(pairs, sol):
                    if not c:
                        continue
                    src = bases[i][ka].endpoints()[0]
                    p = Path(src, (gen_name[(i, ka)], gen_name[(n - i, kb)]))
                    acc = terms.get(p, Fraction(0)) + sign * c
                    if acc:
                        terms[p] = acc
                    else:
                        terms.pop(p, None)
            if terms:
                on_arrows[gen_name[(n, k)]] = AlgebraElement(quiver, terms)
    d = Differential(quiver, on_arrows)
    return DGModel(quiver, d, provenance="general", metadata={"truncated_at": nmax})
