"""Graded quivers, paths and exact-rational path algebra elements.

All coefficients are ``fractions.Fraction``; there is no floating point
anywhere.  Elements are stored sparsely as ``{Path: coefficient}`` with a
canonical ordering of paths so that iteration and printing are
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Union

from .errors import InvalidInputError

Vertex = Union[int, str]
Scalar = Union[int, Fraction]


def vertex_key(v: Vertex):
    """Total order on vertex ids, valid for mixed int/str vertex sets."""
    if isinstance(v, bool):
        raise InvalidInputError(f"bad vertex id {v!r}")
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


@dataclass(frozen=True)
class Arrow:
    name: str
    source: Vertex
    target: Vertex
    hdeg: int
    adeg: int
    label: str = ""

    def __post_init__(self):
        if self.hdeg > 0:
            raise InvalidInputError(f"arrow {self.name}: hdeg must be <= 0, got {self.hdeg}")
        if self.adeg < 1:
            raise InvalidInputError(f"arrow {self.name}: adeg must be >= 1, got {self.adeg}")


@dataclass(frozen=True)
class Path:
    """A composable left-to-right sequence of arrow names.

    The empty sequence is the idempotent path e_v at ``start``.
    """

    start: Vertex
    arrows: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), vertex_key(self.start), self.arrows)


@dataclass(frozen=True)
class GradedQuiver:
    vertices: tuple[Vertex, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InvalidInputError("duplicate vertex ids")
        vset = set(self.vertices)
        seen = set()
        for a in self.arrows:
            if a.name in seen:
                raise InvalidInputError(f"duplicate arrow id {a.name!r}")
            seen.add(a.name)
            if a.source not in vset or a.target not in vset:
                raise InvalidInputError(f"arrow {a.name}: endpoint not a vertex")

    @cached_property
    def _by_name(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    @cached_property
    def _out(self) -> dict[Vertex, tuple[Arrow, ...]]:
        out: dict[Vertex, list[Arrow]] = {v: [] for v in self.vertices}
        for a in self.arrows:
            out[a.source].append(a)
        return {v: tuple(lst) for v, lst in out.items()}

    def arrow(self, name: str) -> Arrow:
        try:
            return self._by_name[name]
        except KeyError:
            raise InvalidInputError(f"unknown arrow id {name!r}") from None

    def has_arrow(self, name: str) -> bool:
        return name in self._by_name

    def out_arrows(self, v: Vertex) -> tuple[Arrow, ...]:
        return self._out[v]

    # -- path bookkeeping ------------------------------------------------

    def is_valid_path(self, p: Path) -> bool:
        if p.start not in self._out:
            return False
        at = p.start
        for name in p.arrows:
            a = self._by_name.get(name)
            if a is None or a.source != at:
                return False
            at = a.target
        return True

    def path_target(self, p: Path) -> Vertex:
        return self._by_name[p.arrows[-1]].target if p.arrows else p.start

    def path_hdeg(self, p: Path) -> int:
        return sum(self._by_name[n].hdeg for n in p.arrows)

    def path_adeg(self, p: Path) -> int:
        return sum(self._by_name[n].adeg for n in p.arrows)

    def path_vertices(self, p: Path) -> list[Vertex]:
        """All visited vertices, endpoints included."""
        out = [p.start]
        for name in p.arrows:
            out.append(self._by_name[name].target)
        return out

    def compose(self, p: Path, q: Path) -> Path | None:
        """Concatenation p then q; None when endpoints mismatch."""
        if self.path_target(p) != q.start:
            return None
        return Path(p.start, p.arrows + q.arrows)

    # -- element constructors ---------------------------------------------

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, {})

    def idempotent(self, v: Vertex) -> "AlgebraElement":
        if v not in self._out:
            raise InvalidInputError(f"unknown vertex {v!r}")
        return AlgebraElement(self, {Path(v): Fraction(1)})

    def identity(self) -> "AlgebraElement":
        return AlgebraElement(self, {Path(v): Fraction(1) for v in self.vertices})

    def gen(self, name: str) -> "AlgebraElement":
        a = self.arrow(name)
        return AlgebraElement(self, {Path(a.source, (name,)): Fraction(1)})

    def element(self, terms: Mapping[Path, Scalar]) -> "AlgebraElement":
        return AlgebraElement(self, {p: Fraction(c) for p, c in terms.items()})


class AlgebraElement:
    """Finite rational linear combination of composable paths."""

    __slots__ = ("quiver", "terms")

    def __init__(self, quiver: GradedQuiver, terms: Mapping[Path, Scalar]):
        clean: dict[Path, Fraction] = {}
        for p, c in terms.items():
            c = Fraction(c)
            if c:
                clean[p] = c
        self.quiver = quiver
        self.terms = clean

    # -- basics ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def sorted_terms(self) -> list[tuple[Path, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key())

    def __iter__(self) -> Iterator[tuple[Path, Fraction]]:
        return iter(self.sorted_terms())

    def __eq__(self, other) -> bool:
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.quiver == other.quiver and self.terms == other.terms

    def __hash__(self):
        return hash((self.quiver, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for p, c in self.sorted_terms():
            word = "*".join(p.arrows) if p.arrows else f"e_{p.start}"
            bits.append(f"({c})" + word if c != 1 else word)
        return " + ".join(bits)

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        self._check_compatible(other)
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, Fraction(0)) + c
        return AlgebraElement(self.quiver, out)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.quiver, {p: -c for p, c in self.terms.items()})

    def scale(self, c: Scalar) -> "AlgebraElement":
        c = Fraction(c)
        return AlgebraElement(self.quiver, {p: c * v for p, v in self.terms.items()})

    def __rmul__(self, other: Scalar) -> "AlgebraElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __mul__(self, other) -> "AlgebraElement":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return NotImplemented

    def _check_compatible(self, other: "AlgebraElement"):
        if self.quiver != other.quiver:
            raise InvalidInputError("elements live over different quivers")

    # -- degrees -------------------------------------------------------------

    def hdeg(self) -> int | None:
        """Common homological degree, or raises when inhomogeneous.

        Returns None for the zero element (homogeneous of every degree).
        """
        degs = {self.quiver.path_hdeg(p) for p in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise InvalidInputError(f"element not hdeg-homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def adeg(self) -> int | None:
        degs = {self.quiver.path_adeg(p) for p in self.terms}
        if not degs:
            return None
        if len(degs) > 1:
            raise InvalidInputError(f"element not adeg-homogeneous: degrees {sorted(degs)}")
        return degs.pop()

    def is_hdeg_homogeneous(self) -> bool:
        return len({self.quiver.path_hdeg(p) for p in self.terms}) <= 1

    def endpoints(self) -> tuple[Vertex, Vertex] | None:
        """Common (source, target), or raises when mixed; None when zero."""
        ends = {(p.start, self.quiver.path_target(p)) for p in self.terms}
        if not ends:
            return None
        if len(ends) > 1:
            raise InvalidInputError("element is not component-pure")
        return ends.pop()

    def is_component_pure(self) -> bool:
        return len({(p.start, self.quiver.path_target(p)) for p in self.terms}) <= 1


def multiply(u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Bilinear extension of path concatenation; mismatches give zero."""
    u._check_compatible(v)
    q = u.quiver
    out: dict[Path, Fraction] = {}
    for p, c in u.terms.items():
        pt = q.path_target(p)
        for r, d in v.terms.items():
            if r.start != pt:
                continue
            key = Path(p.start, p.arrows + r.arrows)
            acc = out.get(key, Fraction(0)) + c * d
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return AlgebraElement(q, out)


def graded_commutator(
    u: AlgebraElement,
    v: AlgebraElement,
    hu: int | None = None,
    hv: int | None = None,
) -> AlgebraElement:
    """[u, v] = uv - (-1)^{hu*hv} vu for hdeg-homogeneous u, v."""
    du = u.hdeg()
    dv = v.hdeg()
    if hu is None:
        hu = du if du is not None else 0
    elif du is not None and du != hu:
        raise InvalidInputError(f"u has hdeg {du}, not {hu}")
    if hv is None:
        hv = dv if dv is not None else 0
    elif dv is not None and dv != hv:
        raise InvalidInputError(f"v has hdeg {dv}, not {hv}")
    sign = -1 if (hu * hv) % 2 else 1
    return u * v - sign * (v * u)


def truncate_adams(u: AlgebraElement, n: int) -> AlgebraElement:
    """Drop all paths of Adams degree > n."""
    if n < 0:
        raise InvalidInputError("truncation degree must be >= 0")
    q = u.quiver
    return AlgebraElement(q, {p: c for p, c in u.terms.items() if q.path_adeg(p) <= n})
