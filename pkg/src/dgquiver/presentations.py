"""Presented algebras: quadratic data for Koszul constructions and
general relator presentations for H^0 comparisons."""

from __future__ import annotations

from dataclasses import dataclass

from .core import AlgebraElement, GradedQuiver, Vertex
from .errors import InvalidInputError


def _check_relator(quiver: GradedQuiver, r: AlgebraElement, quadratic: bool):
    if r.quiver != quiver:
        raise InvalidInputError("relator lives over a different quiver")
    if not r.terms:
        raise InvalidInputError("zero relator")
    r.endpoints()  # raises unless component-pure
    r.adeg()  # raises unless Adams-homogeneous
    if quadratic and any(len(p.arrows) != 2 for p in r.terms):
        raise InvalidInputError("quadratic relators must be length-2")


@dataclass(frozen=True)
class QuadraticPresentation:
    """T_l V / (R) with V the arrow bimodule of a degree-(0,1) quiver."""

    quiver: GradedQuiver
    relators: tuple[AlgebraElement, ...]

    def __post_init__(self):
        for a in self.quiver.arrows:
            if a.hdeg != 0 or a.adeg != 1:
                raise InvalidInputError(f"arrow {a.name}: quadratic input needs hdeg 0, adeg 1")
        for r in self.relators:
            _check_relator(self.quiver, r, quadratic=True)


@dataclass(frozen=True)
class PresentedAlgebra:
    """kQ / (relators) for a quiver concentrated in hdeg 0.

    Relators are component-pure and Adams-homogeneous but may have any
    path length.
    """

    quiver: GradedQuiver
    relators: tuple[AlgebraElement, ...]

    def __post_init__(self):
        for a in self.quiver.arrows:
            if a.hdeg != 0:
                raise InvalidInputError(f"arrow {a.name}: presented algebras live in hdeg 0")
        for r in self.relators:
            _check_relator(self.quiver, r, quadratic=False)

    def delete_vertex(self, v: Vertex) -> "PresentedAlgebra":
        """Quotient by the two-sided ideal of the idempotent e_v.

        Drops v and adjacent arrows and filters relator terms through v;
        relators that lose all terms disappear.
        """
        if v not in self.quiver.vertices:
            raise InvalidInputError(f"unknown vertex {v!r}")
        keep_arrows = tuple(a for a in self.quiver.arrows if a.source != v and a.target != v)
        keep_names = {a.name for a in keep_arrows}
        q0 = GradedQuiver(tuple(w for w in self.quiver.vertices if w != v), keep_arrows)
        new_relators = []
        for r in self.relators:
            terms = {p: c for p, c in r.terms.items() if set(p.arrows) <= keep_names and p.start != v}
            if terms:
                new_relators.append(AlgebraElement(q0, terms))
        return PresentedAlgebra(q0, tuple(new_relators))
