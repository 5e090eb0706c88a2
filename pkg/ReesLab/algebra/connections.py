"""
Equivariant connections on split toric bundles over affine space, in the normal form

    nabla = d + Omega,   Omega = sum over (p, i) of A_(p,i) z^p dz_i / z_i

The fibre V is graded by multi-degrees; A_(p,i) lowers the degree by p and vanishes when p_i = 0.
Polynomial matrices are dicts from exponent vectors to matrices.

"""
from __future__ import annotations

import itertools
from fractions import Fraction
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import sympy

from ReesLab.algebra.errors import InconsistentRecursionError, MalformedConnectionError, NotFlatError
from ReesLab.algebra.multifilt import MultiIndex, add_index, box
from ReesLab.algebra.scalars import Matrix, ONE, Scalar
from ReesLab.client.logger import ReesLabLogHandler

PolyMatrix = Dict[MultiIndex, Matrix]
CoefficientKey = Tuple[MultiIndex, int]


@dataclass(frozen=True)
class EquivariantConnection:
    """
    A connection d + Omega on the trivial bundle with graded fibre V

    """

    n: int
    grading: Tuple[MultiIndex, ...]
    coeffs: Dict[CoefficientKey, Matrix] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return len(self.grading)

    def spread(self) -> MultiIndex:
        """Per axis, the largest degree drop between two basis vectors"""

        if not self.grading:
            return (0,) * self.n
        return tuple(
            max(d[axis] for d in self.grading) - min(d[axis] for d in self.grading) for axis in range(self.n)
        )

    def component(self, axis: int) -> PolyMatrix:
        """Omega_i as a polynomial matrix"""

        return {p: a for (p, i), a in self.coeffs.items() if i == axis}

    def violations(self) -> List[str]:
        """
        Every violated normal-form constraint, described in words

        """

        problems: List[str] = []

        if any(len(d) != self.n for d in self.grading):
            problems.append(f"grading degrees must have {self.n} entries")

        for (p, axis), a in sorted(self.coeffs.items(), key=lambda item: item[0]):

            if len(p) != self.n or not 0 <= axis < self.n:
                problems.append(f"coefficient ({p}, {axis}) is not indexed by Z^{self.n} x 1..{self.n}")
                continue

            if any(x < 0 for x in p):
                problems.append(f"coefficient ({p}, {axis}) has a negative exponent")

            if a.shape != (self.dim, self.dim):
                problems.append(f"coefficient ({p}, {axis}) has shape {a.shape}, expected {(self.dim, self.dim)}")
                continue

            if p[axis] == 0 and not a.is_zero():
                problems.append(f"coefficient ({p}, {axis}) would cause a pole along z_{axis + 1}")

            if not is_degree_lowering(a, p, self.grading):
                problems.append(f"coefficient ({p}, {axis}) does not lower degrees by {p}")

        return problems


def is_degree_lowering(matrix: Matrix, p: MultiIndex, grading: Tuple[MultiIndex, ...]) -> bool:
    """Whether the matrix sends the basis vector of degree d into degree d - p"""

    for row, entries in enumerate(matrix.entries):
        for col, value in enumerate(entries):
            if value and add_index(grading[row], p) != grading[col]:
                return False
    return True


def check_wellformed(connection: EquivariantConnection) -> bool:
    problems: List[str] = connection.violations()
    for problem in problems:
        ReesLabLogHandler.get_logger().debug(f"Malformed connection: {problem}.")
    return not problems


def canonical_connection(n: int, grading: Tuple[MultiIndex, ...]) -> EquivariantConnection:
    return EquivariantConnection(n, tuple(grading), {})


def poly_add(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    result: PolyMatrix = dict(a)
    for p, m in b.items():
        result[p] = result[p] + m if p in result else m
    return {p: m for p, m in result.items() if not m.is_zero()}


def poly_mul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    result: PolyMatrix = {}
    for p, x in a.items():
        for q, y in b.items():
            key: MultiIndex = add_index(p, q)
            product: Matrix = x @ y
            result[key] = result[key] + product if key in result else product
    return {p: m for p, m in result.items() if not m.is_zero()}


def poly_scale(a: PolyMatrix, factor: Scalar) -> PolyMatrix:
    return {p: m.scale(factor) for p, m in a.items() if factor}


def euler_derivative(a: PolyMatrix, axis: int) -> PolyMatrix:
    """z_i d/dz_i, which multiplies the coefficient of z^p by p_i"""

    return {p: m.scale(p[axis]) for p, m in a.items() if p[axis]}


def poly_inverse(g: PolyMatrix, n: int, dim: int) -> PolyMatrix:
    """
    Inverse of a polynomial gauge with invertible constant term. The series terminates because
    the non-constant part is nilpotent for degree-compatible gauges.

    :raises: MalformedConnectionError

    """

    zero: MultiIndex = (0,) * n
    constant: Matrix = g.get(zero, Matrix.zeros(dim, dim))
    constant_inverse: Matrix = constant.inverse()

    nilpotent: PolyMatrix = {p: constant_inverse @ m for p, m in g.items() if p != zero}
    term: PolyMatrix = {zero: Matrix.identity(dim)}
    total: PolyMatrix = dict(term)

    # a strictly degree-lowering matrix has N^dim = 0
    for _ in range(dim + 1):
        term = poly_scale(poly_mul(nilpotent, term), -ONE)
        if not term:
            return poly_mul(total, {zero: constant_inverse})
        total = poly_add(total, term)

    raise MalformedConnectionError("The gauge is not invertible as a polynomial matrix")


def gauge_transform(connection: EquivariantConnection, g: PolyMatrix) -> EquivariantConnection:
    """
    The connection g^-1 nabla g, with Omega' = g^-1 Omega g + g^-1 dg

    """

    inverse: PolyMatrix = poly_inverse(g, connection.n, connection.dim)
    coeffs: Dict[CoefficientKey, Matrix] = {}

    for axis in range(connection.n):
        transformed: PolyMatrix = poly_add(
            poly_mul(poly_mul(inverse, connection.component(axis)), g),
            poly_mul(inverse, euler_derivative(g, axis))
        )
        for p, m in transformed.items():
            coeffs[(p, axis)] = m

    return EquivariantConnection(connection.n, connection.grading, coeffs)


def curvature(connection: EquivariantConnection) -> Dict[Tuple[MultiIndex, int, int], Matrix]:
    """
    K_(p,ij) = p_i A_(p,j) - p_j A_(p,i) + sum over q + r = p of [A_(q,i), A_(r,j)], for i < j

    :return: The nonzero curvature coefficients keyed by (p, i, j)

    """

    result: Dict[Tuple[MultiIndex, int, int], Matrix] = {}

    for i, j in itertools.combinations(range(connection.n), 2):
        omega_i: PolyMatrix = connection.component(i)
        omega_j: PolyMatrix = connection.component(j)

        total: PolyMatrix = poly_add(euler_derivative(omega_j, i), poly_scale(euler_derivative(omega_i, j), -ONE))
        total = poly_add(total, poly_mul(omega_i, omega_j))
        total = poly_add(total, poly_scale(poly_mul(omega_j, omega_i), -ONE))

        for p, m in total.items():
            result[(p, i, j)] = m

    return result


def is_flat(connection: EquivariantConnection) -> bool:
    return not curvature(connection)


def symbolic_curvature(connection: EquivariantConnection) -> Dict[Tuple[int, int], sympy.Matrix]:
    """
    The curvature recomputed in sympy from Omega = sum of omega_i dz_i, omega_i = Omega_i / z_i:
    the dz_i ^ dz_j coefficient of d Omega + Omega ^ Omega, times z_i z_j

    :return: The nonzero coefficients keyed by (i, j), i < j

    """

    z: Tuple[sympy.Symbol, ...] = sympy.symbols(f"z1:{connection.n + 1}")
    omega: List[sympy.Matrix] = [sympy.zeros(connection.dim, connection.dim) for _ in range(connection.n)]

    for (p, axis), a in connection.coeffs.items():
        omega[axis] += a.to_sympy() * sympy.Mul(*(v ** e for v, e in zip(z, p))) / z[axis]

    result: Dict[Tuple[int, int], sympy.Matrix] = {}
    for i, j in itertools.combinations(range(connection.n), 2):
        form: sympy.Matrix = (
            omega[j].diff(z[i]) - omega[i].diff(z[j]) + omega[i] * omega[j] - omega[j] * omega[i]
        )
        coefficient: sympy.Matrix = (form * z[i] * z[j]).applyfunc(sympy.cancel)
        if any(entry != 0 for entry in coefficient):
            result[(i, j)] = coefficient

    return result


def trivialize_flat(connection: EquivariantConnection) -> PolyMatrix:
    """
    The gauge g = Id + sum of g_p z^p with g^-1 nabla g = d, from the recursion

        p_i g_p = - sum over q + r = p, q != 0 of A_(q,i) g_r

    which must give the same g_p for every i with p_i > 0, and zero for every i with p_i = 0.

    :raises: MalformedConnectionError
    :raises: NotFlatError
    :raises: InconsistentRecursionError

    """

    if not check_wellformed(connection):
        raise MalformedConnectionError("; ".join(connection.violations()))

    if not is_flat(connection):
        raise NotFlatError("The connection has nonzero curvature")

    n: int = connection.n
    dim: int = connection.dim
    zero: MultiIndex = (0,) * n
    gauge: PolyMatrix = {zero: Matrix.identity(dim)}
    components: List[PolyMatrix] = [connection.component(axis) for axis in range(n)]

    exponents: List[MultiIndex] = sorted(
        (p for p in box([(0, s) for s in connection.spread()]) if p != zero),
        key=lambda p: (sum(p), p)
    )

    for p in exponents:
        candidates: List[Matrix] = []

        for axis in range(n):
            rhs: Matrix = Matrix.zeros(dim, dim)
            for q, a in components[axis].items():
                r: MultiIndex = tuple(x - y for x, y in zip(p, q))
                if all(x >= 0 for x in r) and r in gauge:
                    rhs = rhs - a @ gauge[r]

            if p[axis] == 0:
                if not rhs.is_zero():
                    raise InconsistentRecursionError(f"Recursion at {p} is inconsistent along axis {axis}")
                continue

            candidates.append(rhs.scale(Fraction(1, p[axis])))

        if any(c != candidates[0] for c in candidates[1:]):
            raise InconsistentRecursionError(f"Recursion at {p} gives different coefficients along different axes")

        if not candidates[0].is_zero():
            gauge[p] = candidates[0]

    if gauge_transform(connection, gauge).coeffs:
        raise InconsistentRecursionError("The recursive gauge does not trivialize the connection")

    ReesLabLogHandler.get_logger().debug(f"Trivialized a flat connection with {len(gauge)} gauge coefficients.")
    return gauge


def gauge_of_trivial(n: int, grading: Tuple[MultiIndex, ...], h: PolyMatrix) -> EquivariantConnection:
    """The flat connection h^-1 d h"""

    return gauge_transform(canonical_connection(n, grading), h)
