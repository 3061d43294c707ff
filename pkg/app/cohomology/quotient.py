"""
Subquotients ``ker(outgoing) / im(incoming)`` of finite abelian cochain groups.

A cochain group is ``Z/m_1 + ... + Z/m_N`` (one modulus per coordinate).
Two engines share one interface:

* ``LatticeQuotient`` works over the integers: the cocycles are the lattice
  ``{x : outgoing x = 0 mod m'}``, the coboundaries are generated by the
  columns of ``incoming`` and ``diag(m)``, and the quotient is read off a Smith
  normal form.
* ``FieldQuotient`` is used when every modulus involved is the same prime p;
  it is sparse gaussian elimination over F_p, which keeps large coefficient
  systems tractable.
"""

from itertools import product
from typing import Dict, Iterator, List, Sequence

from app.cohomology.snf import SmithNormalForm, object_matrix
from app.cohomology.sparse import SparseMatrix
from app.core.bundle import FinAbGroup
from app.exceptions import ResourceLimitError
from app.logger import logger


class Subquotient:
    group: FinAbGroup

    def __init__(self, incoming: SparseMatrix | None, outgoing: SparseMatrix | None, moduli: Sequence[int], next_moduli: Sequence[int]):
        self.moduli = list(moduli)
        self.next_moduli = list(next_moduli)
        self.incoming = incoming if incoming is not None else SparseMatrix(len(self.moduli), 0)
        self.outgoing = outgoing if outgoing is not None else SparseMatrix(0, len(self.moduli))

    @property
    def dimension(self) -> int:
        return len(self.moduli)

    def is_cocycle(self, x: Sequence[int]) -> bool:
        return all(value == 0 for value in self.outgoing.apply(x, self.next_moduli))

    def is_coboundary(self, x: Sequence[int]) -> bool:
        return self.is_cocycle(x) and not any(self.coordinates(x))

    def coordinates(self, x: Sequence[int]) -> tuple:
        raise NotImplementedError

    def representative(self, coordinates: Sequence[int]) -> List[int]:
        raise NotImplementedError

    def classes(self, cap: int) -> Iterator[tuple]:
        if self.group.order > cap:
            raise ResourceLimitError(
                f"cohomology group of order {self.group.order} exceeds the enumeration cap {cap}"
            )
        return product(*(range(d) for d in self.group.invariant_factors))


class LatticeQuotient(Subquotient):
    def __init__(self, incoming, outgoing, moduli, next_moduli):
        super().__init__(incoming, outgoing, moduli, next_moduli)
        n, m = len(self.moduli), len(self.next_moduli)

        # cocycle lattice: x-part of the kernel of [outgoing | diag(m')]
        if m:
            stacked = object_matrix([], (m, n + m))
            dense = self.outgoing.to_dense()
            for i in range(m):
                for j in range(n):
                    stacked[i, j] = dense[i, j]
                stacked[i, n + i] = self.next_moduli[i]
            kernel = SmithNormalForm(stacked)
            generators = kernel.right[:n, kernel.rank:]
        else:
            generators = object_matrix([], (n, 0))
        generators = _hstack(generators, _diagonal(self.moduli))

        basis = SmithNormalForm(generators)
        self._basis_factors = basis.diagonal[:n]
        self._to_basis = basis.left
        # columns of basis.left_inverse scaled by the diagonal span the cocycles
        self._basis = basis.left_inverse.copy()
        for j, d in enumerate(self._basis_factors):
            self._basis[:, j] *= d

        image = _hstack(self.incoming.to_dense(), _diagonal(self.moduli))
        relative = self._basis_coordinates_matrix(image)
        quotient = SmithNormalForm(relative)
        diagonal = quotient.diagonal
        self._kept = [i for i, d in enumerate(diagonal) if d != 1]
        self._factors = [diagonal[i] for i in self._kept]
        self._reduce = quotient.left
        self._lift = quotient.left_inverse
        self.group = FinAbGroup(tuple(self._factors))
        logger.debug(
            "lattice subquotient: %d coordinates, %d relations -> %s", n, m, self.group
        )

    def _basis_coordinates_matrix(self, vectors):
        product_ = self._to_basis.dot(vectors)
        for i, d in enumerate(self._basis_factors):
            for j in range(product_.shape[1]):
                if product_[i, j] % d != 0:
                    raise ArithmeticError("vector outside the cocycle lattice")
                product_[i, j] //= d
        return product_

    def coordinates(self, x: Sequence[int]) -> tuple:
        column = object_matrix([[int(v)] for v in x], (len(x), 1))
        y = self._basis_coordinates_matrix(column)
        z = self._reduce.dot(y)
        return tuple(int(z[i, 0]) % self._factors[k] for k, i in enumerate(self._kept))

    def representative(self, coordinates: Sequence[int]) -> List[int]:
        n = len(self.moduli)
        y = object_matrix([], (n, 1))
        for k, i in enumerate(self._kept):
            y[i, 0] = int(coordinates[k])
        x = self._basis.dot(self._lift.dot(y))
        return [int(x[i, 0]) % self.moduli[i] for i in range(n)]


class FieldQuotient(Subquotient):
    def __init__(self, incoming, outgoing, moduli, next_moduli, prime: int):
        super().__init__(incoming, outgoing, moduli, next_moduli)
        self.prime = prime
        p = prime
        n = len(self.moduli)

        kernel = _kernel_mod_p(self.outgoing, n, p)

        # reduced echelon basis of the cocycles; image vectors first, complements tagged
        self._pivots: Dict[int, Dict[int, int]] = {}
        self._tags: Dict[int, Dict[int, int]] = {}
        for column in self.incoming.columns().values():
            self._insert(dict(column), {})
        self._generators: List[Dict[int, int]] = []
        for vector in kernel:
            reduced, _ = self._reduce(vector)
            if reduced:
                index = len(self._generators)
                pivot = min(reduced)
                scale = pow(reduced[pivot], -1, p)
                reduced = {j: v * scale % p for j, v in reduced.items()}
                self._generators.append(reduced)
                self._insert(dict(reduced), {index: 1})
        self.group = FinAbGroup((p,) * len(self._generators))
        logger.debug(
            "F_%d subquotient: %d coordinates, kernel %d, quotient %s",
            p, n, len(kernel), self.group,
        )

    def _reduce(self, vector: Dict[int, int]):
        p = self.prime
        vector = {j: v % p for j, v in vector.items() if v % p}
        tag: Dict[int, int] = {}
        for pivot, row in self._pivots.items():
            c = vector.get(pivot, 0)
            if c:
                _axpy(vector, -c, row, p)
                _axpy(tag, c, self._tags[pivot], p)
        return vector, tag

    def _insert(self, vector: Dict[int, int], tag: Dict[int, int]) -> None:
        p = self.prime
        vector, correction = self._reduce(vector)
        if not vector:
            return
        _axpy(tag, -1, correction, p)
        pivot = min(vector)
        scale = pow(vector[pivot], -1, p)
        vector = {j: v * scale % p for j, v in vector.items()}
        tag = {j: v * scale % p for j, v in tag.items() if v * scale % p}
        for other, row in self._pivots.items():
            c = row.get(pivot, 0)
            if c:
                _axpy(row, -c, vector, p)
                _axpy(self._tags[other], -c, tag, p)
        self._pivots[pivot] = vector
        self._tags[pivot] = tag

    def coordinates(self, x: Sequence[int]) -> tuple:
        vector = {j: int(v) for j, v in enumerate(x) if int(v) % self.prime}
        remainder, tag = self._reduce(vector)
        if remainder:
            raise ArithmeticError("vector is not a cocycle")
        return tuple(tag.get(i, 0) % self.prime for i in range(len(self._generators)))

    def representative(self, coordinates: Sequence[int]) -> List[int]:
        out = [0] * len(self.moduli)
        for c, generator in zip(coordinates, self._generators):
            for j, v in generator.items():
                out[j] = (out[j] + c * v) % self.prime
        return out


def subquotient(
    incoming: SparseMatrix | None,
    outgoing: SparseMatrix | None,
    moduli: Sequence[int],
    next_moduli: Sequence[int],
) -> Subquotient:
    """Pick the engine for ``ker(outgoing) / im(incoming)``."""
    involved = set(moduli) | set(next_moduli)
    if len(involved) == 1:
        (p,) = involved
        if _is_prime(p):
            return FieldQuotient(incoming, outgoing, moduli, next_moduli, p)
    return LatticeQuotient(incoming, outgoing, moduli, next_moduli)


def _kernel_mod_p(matrix: SparseMatrix, n: int, p: int) -> List[Dict[int, int]]:
    """Basis of ``{x in F_p^n : matrix x = 0}`` from a reduced row echelon form."""
    pivots: Dict[int, Dict[int, int]] = {}
    for row in matrix.rows.values():
        vector = {j: v % p for j, v in row.items() if v % p}
        for pivot, prow in pivots.items():
            c = vector.get(pivot, 0)
            if c:
                _axpy(vector, -c, prow, p)
        if not vector:
            continue
        pivot = min(vector)
        scale = pow(vector[pivot], -1, p)
        vector = {j: v * scale % p for j, v in vector.items()}
        for prow in pivots.values():
            c = prow.get(pivot, 0)
            if c:
                _axpy(prow, -c, vector, p)
        pivots[pivot] = vector
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        vector = {f: 1}
        for pivot, prow in pivots.items():
            c = prow.get(f, 0)
            if c:
                vector[pivot] = -c % p
        basis.append(vector)
    return basis


def _axpy(target: Dict[int, int], c: int, source: Dict[int, int], p: int) -> None:
    for j, v in source.items():
        value = (target.get(j, 0) + c * v) % p
        if value:
            target[j] = value
        else:
            target.pop(j, None)


def _hstack(left, right):
    rows = left.shape[0]
    out = object_matrix([], (rows, left.shape[1] + right.shape[1]))
    out[:, : left.shape[1]] = left
    out[:, left.shape[1]:] = right
    return out


def _diagonal(moduli: Sequence[int]):
    n = len(moduli)
    out = object_matrix([], (n, n))
    for i, m in enumerate(moduli):
        out[i, i] = m
    return out


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    k = 2
    while k * k <= n:
        if n % k == 0:
            return False
        k += 1
    return True
