"""
Total complexes of the bicomplex ``D``.

Several totals share one assembly:

* ``interior``: ``A^{p,q} = D^{p+1,q+1}`` with ``d_h = d_H`` and
  ``d_v = (-1)^q d_V``; its cohomology is ``H_Tot``, and degree 1 is
  ``(sigma, tau)`` in ``D^{2,1} + D^{1,2}``.
* ``full``: every ``D^{r,s}`` with ``d = d_H + (-1)^s d_V``.
* ``edges``: the quotient of ``full`` by the interior, ``D^{0,0}`` and then
  ``D^{n,0} + D^{0,n}``.
* ``column`` and ``row``: the single edge complexes ``D^{n,0}`` and ``D^{0,n}``.
* ``subcomplex``: the interior sitting inside ``full``, with the sign of ``full``.
"""

from dataclasses import dataclass
from itertools import product
from typing import Dict, List, Tuple

import app.core.config as cfg
from app.cohomology.cochains import Bicomplex, Cochain, coboundary_h, coboundary_v
from app.cohomology.quotient import Subquotient, subquotient
from app.cohomology.sparse import SparseMatrix
from app.core.action import DoubleAction
from app.core.bundle import Element, FinAbGroup
from app.core.double_groupoid import FiniteDoubleGroupoid
from app.exceptions import ResourceLimitError
from app.logger import logger
from app.nerve.cells import NerveCell

Bidegree = Tuple[int, int]


def interior_summands(n: int) -> List[Bidegree]:
    return [(p + 1, n - p + 1) for p in range(n, -1, -1)] if n >= 0 else []


def full_summands(n: int) -> List[Bidegree]:
    return [(r, n - r) for r in range(n, -1, -1)] if n >= 0 else []


def edge_summands(n: int) -> List[Bidegree]:
    if n < 0:
        return []
    return [(0, 0)] if n == 0 else [(n, 0), (0, n)]


class TotalComplex:
    KINDS = {
        "interior": (interior_summands, lambda r, s: (-1) ** (s - 1)),
        "full": (full_summands, lambda r, s: (-1) ** s),
        "edges": (edge_summands, lambda r, s: (-1) ** s),
        "column": (lambda n: [(n, 0)] if n >= 0 else [], lambda r, s: 1),
        "row": (lambda n: [(0, n)] if n >= 0 else [], lambda r, s: 1),
        "subcomplex": (lambda n: [(r, n - r) for r in range(n - 1, 0, -1)], lambda r, s: (-1) ** s),
    }

    def __init__(self, bicomplex: Bicomplex, kind: str = "interior"):
        self.bicomplex = bicomplex
        self.kind = kind
        self._summands, self._sign = self.KINDS[kind]
        self._differentials: Dict[int, SparseMatrix] = {}
        self._cohomology: Dict[int, Subquotient] = {}

    @property
    def dg(self) -> FiniteDoubleGroupoid:
        return self.bicomplex.dg

    @property
    def action(self) -> DoubleAction:
        return self.bicomplex.action

    def summands(self, n: int) -> List[Bidegree]:
        return self._summands(n)

    def offsets(self, n: int) -> List[int]:
        out = [0]
        for r, s in self.summands(n):
            out.append(out[-1] + self.bicomplex.space(r, s).dimension)
        return out

    def moduli(self, n: int) -> List[int]:
        out: List[int] = []
        for r, s in self.summands(n):
            out.extend(self.bicomplex.space(r, s).moduli)
        return out

    def group(self, n: int) -> FinAbGroup:
        return FinAbGroup.from_cyclic(self.moduli(n))

    def differential(self, n: int) -> SparseMatrix:
        """``d^n: Tot^n -> Tot^(n+1)`` as one block matrix."""
        if n in self._differentials:
            return self._differentials[n]
        if n + 1 > cfg.MAX_DEGREE:
            raise ResourceLimitError(f"total degree {n + 1} exceeds MAX_DEGREE={cfg.MAX_DEGREE}")
        sources, targets = self.summands(n), self.summands(n + 1)
        position = {bidegree: i for i, bidegree in enumerate(targets)}
        parts = []
        for j, (r, s) in enumerate(sources):
            if (r + 1, s) in position:
                block = self.bicomplex.d_v(r, s)
                parts.append((position[(r + 1, s)], j, block.scaled(self._sign(r, s))))
            if (r, s + 1) in position:
                parts.append((position[(r, s + 1)], j, self.bicomplex.d_h(r, s)))
        matrix = SparseMatrix.blocks(self.offsets(n + 1), self.offsets(n), parts)
        self._differentials[n] = matrix
        return matrix

    def split(self, n: int, vector) -> List[Cochain]:
        """Cut a vector of ``Tot^n`` into its cochains."""
        offsets = self.offsets(n)
        return [
            self.bicomplex.space(r, s).cochain(vector[offsets[i]:offsets[i + 1]])
            for i, (r, s) in enumerate(self.summands(n))
        ]

    def join(self, cochains: List[Cochain]) -> List[int]:
        out: List[int] = []
        for cochain in cochains:
            out.extend(cochain.vector)
        return out

    def cohomology(self, n: int) -> Subquotient:
        if n not in self._cohomology:
            incoming = self.differential(n - 1) if n > 0 else None
            self._cohomology[n] = subquotient(
                incoming, self.differential(n), self.moduli(n), self.moduli(n + 1)
            )
            logger.debug("H^%d of the %s total of %s: %s", n, self.kind, self.dg.name, self._cohomology[n].group)
        return self._cohomology[n]

    def is_square_zero(self, n: int) -> bool:
        return self.differential(n).compose(self.differential(n - 1)).is_zero_modulo(
            self.moduli(n + 1)
        )


def total_complex(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    nmax: int,
    normalized: bool = True,
    max_cells: int | None = None,
) -> TotalComplex:
    """The total complex of the interior with every differential up to ``d^nmax`` assembled."""
    if nmax > cfg.MAX_DEGREE:
        raise ResourceLimitError(f"degree {nmax} exceeds MAX_DEGREE={cfg.MAX_DEGREE}")
    complex_ = TotalComplex(Bicomplex(dg, action, normalized, max_cells))
    for n in range(nmax + 1):
        complex_.differential(n)
    return complex_


def h_total(
    dg: FiniteDoubleGroupoid,
    action: DoubleAction,
    n: int,
    max_cells: int | None = None,
) -> FinAbGroup:
    group = TotalComplex(Bicomplex(dg, action, True, max_cells)).cohomology(n).group
    logger.info("H^%d_Tot(%s) = %s", n, dg.name, group)
    return group


def h0_morphisms(
    dg: FiniteDoubleGroupoid, action: DoubleAction, cap: int | None = None
) -> List[Cochain]:
    """
    Normalized maps ``λ`` on boxes with ``d_V λ = 0`` and ``d_H λ = 0``, i.e.
    ``λ(A/B) = l(B)^-1 λ(A) + λ(B)`` and ``λ(AB) = λ(A) + b(A) λ(B)``, by enumeration.
    """
    cap = cap if cap is not None else cfg.MAX_BRUTE_FORCE
    bicomplex = Bicomplex(dg, action)
    space = bicomplex.space(1, 1)
    if space.order > cap:
        raise ResourceLimitError(f"{space.order} candidate maps exceed the cap {cap}")
    vertical_target, horizontal_target = bicomplex.space(2, 1), bicomplex.space(1, 2)
    found = []
    for vector in product(*(range(d) for d in space.moduli)):
        lam = space.cochain(vector)
        if coboundary_v(dg, action, lam, vertical_target).is_zero() and coboundary_h(
            dg, action, lam, horizontal_target
        ).is_zero():
            found.append(lam)
    return found


@dataclass(frozen=True)
class TotalCocycle:
    """A total 1-cochain ``(sigma, tau)`` in ``D^{2,1} + D^{1,2}``."""

    sigma: Cochain
    tau: Cochain

    @classmethod
    def from_vector(cls, complex_: TotalComplex, vector) -> "TotalCocycle":
        sigma, tau = complex_.split(1, list(vector))
        return cls(sigma, tau)

    @classmethod
    def zero(cls, bicomplex: Bicomplex) -> "TotalCocycle":
        return cls(bicomplex.space(2, 1).zero(), bicomplex.space(1, 2).zero())

    @property
    def vector(self) -> Tuple[int, ...]:
        return self.sigma.vector + self.tau.vector

    @property
    def normalized(self) -> bool:
        return self.sigma.space.normalized

    def sigma_at(self, upper: int, lower: int) -> Element:
        return self.sigma.value(NerveCell(2, 1, (upper, lower)))

    def tau_at(self, left: int, right: int) -> Element:
        return self.tau.value(NerveCell(1, 2, (left, right)))

    def __add__(self, other: "TotalCocycle") -> "TotalCocycle":
        return TotalCocycle(self.sigma + other.sigma, self.tau + other.tau)

    def __sub__(self, other: "TotalCocycle") -> "TotalCocycle":
        return TotalCocycle(self.sigma - other.sigma, self.tau - other.tau)


def total_coboundary(dg: FiniteDoubleGroupoid, action: DoubleAction, z: TotalCocycle) -> List[Cochain]:
    """``d^1(sigma, tau) = (d_V sigma, d_H sigma - d_V tau, d_H tau)``."""
    return [
        coboundary_v(dg, action, z.sigma),
        coboundary_h(dg, action, z.sigma) - coboundary_v(dg, action, z.tau),
        coboundary_h(dg, action, z.tau),
    ]


def is_closed(dg: FiniteDoubleGroupoid, action: DoubleAction, z: TotalCocycle) -> bool:
    return all(part.is_zero() for part in total_coboundary(dg, action, z))


def zero_cochain_coboundary(dg: FiniteDoubleGroupoid, action: DoubleAction, lam: Cochain) -> TotalCocycle:
    """``d^0 lambda = (d_V lambda, d_H lambda)``."""
    return TotalCocycle(coboundary_v(dg, action, lam), coboundary_h(dg, action, lam))
