"""
Built-in bigraded models, a registry of named descriptors, and seeded random generators

"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

from ReesLab.algebra.complexes import Bidegree, BigradedComplex
from ReesLab.algebra.connections import EquivariantConnection, PolyMatrix, gauge_of_trivial
from ReesLab.algebra.multifilt import Filtration, FilteredMap, MultiFilteredSpace, MultiIndex, box
from ReesLab.algebra.scalars import Matrix, Scalar, Subspace, Vector, to_scalar
from ReesLab.client.errors import UnknownModelError
from ReesLab.client.settings import LabDefaults

Monomial = Tuple[int, ...]
Form = Dict[Monomial, int]


class ExteriorModel:
    """
    The exterior algebra on g generators of type (1,0) followed by their g conjugates of type (0,1),
    with del and delbar extended from the generators by the graded Leibniz rule

    Monomials are increasing index tuples, so every basis monomial reads alpha_I ^ beta_J.

    """

    def __init__(self, g: int, del_generators: Mapping[int, Form], delbar_generators: Mapping[int, Form]):
        """
        :param g: Number of (1,0) generators
        :param del_generators: del of each generator, as 2-forms; missing generators are closed
        :param delbar_generators: delbar of each generator

        """

        self.g: int = g
        self.del_generators: Dict[int, Form] = dict(del_generators)
        self.delbar_generators: Dict[int, Form] = dict(delbar_generators)

        self.monomials: Dict[Bidegree, List[Monomial]] = {}
        for size in range(2 * g + 1):
            for monomial in itertools.combinations(range(2 * g), size):
                self.monomials.setdefault(self.bidegree(monomial), []).append(monomial)

        self.index: Dict[Monomial, int] = {
            monomial: position for group in self.monomials.values() for position, monomial in enumerate(group)
        }

    def bidegree(self, monomial: Monomial) -> Bidegree:
        p: int = sum(1 for x in monomial if x < self.g)
        return p, len(monomial) - p

    @staticmethod
    def wedge(left: Monomial, right: Monomial) -> Tuple[int, Monomial]:
        """The sign and sorted monomial of left ^ right (sign 0 when they share a generator)"""

        if set(left) & set(right):
            return 0, ()

        sequence: List[int] = list(left) + list(right)
        inversions: int = sum(1 for a, b in itertools.combinations(sequence, 2) if a > b)
        return (-1) ** inversions, tuple(sorted(sequence))

    def _apply(self, generators: Mapping[int, Form], monomial: Monomial) -> Form:
        result: Form = {}

        for position, generator in enumerate(monomial):
            prefix: Monomial = monomial[:position]
            suffix: Monomial = monomial[position + 1:]

            for term, coefficient in generators.get(generator, {}).items():
                first_sign, head = self.wedge(prefix, term)
                second_sign, whole = self.wedge(head, suffix)
                sign: int = (-1) ** position * first_sign * second_sign
                if sign:
                    result[whole] = result.get(whole, 0) + sign * coefficient

        return {m: c for m, c in result.items() if c}

    def _matrix(self, generators: Mapping[int, Form], source: Bidegree, target: Bidegree) -> Matrix:
        rows: int = len(self.monomials.get(target, []))
        columns: List[List[int]] = []

        for monomial in self.monomials[source]:
            column: List[int] = [0] * rows
            for image, coefficient in self._apply(generators, monomial).items():
                column[self.index[image]] += coefficient
            columns.append(column)

        return Matrix.from_columns(columns, rows)

    def _conjugate_monomial(self, monomial: Monomial) -> Tuple[int, Monomial]:
        alphas: List[int] = [x for x in monomial if x < self.g]
        betas: List[int] = [x - self.g for x in monomial if x >= self.g]
        swapped: Monomial = tuple(betas) + tuple(x + self.g for x in alphas)
        return (-1) ** (len(alphas) * len(betas)), swapped

    def _sigma(self, source: Bidegree) -> Matrix:
        target: Bidegree = (source[1], source[0])
        rows: int = len(self.monomials[target])
        columns: List[List[int]] = []

        for monomial in self.monomials[source]:
            column: List[int] = [0] * rows
            sign, image = self._conjugate_monomial(monomial)
            column[self.index[image]] = sign
            columns.append(column)

        return Matrix.from_columns(columns, rows)

    def build(self, real: bool = True) -> BigradedComplex:
        terms: Dict[Bidegree, int] = {pq: len(group) for pq, group in self.monomials.items()}

        delta: Dict[Bidegree, Matrix] = {}
        delta_bar: Dict[Bidegree, Matrix] = {}
        for (p, q) in terms:
            if (p + 1, q) in terms:
                delta[(p, q)] = self._matrix(self.del_generators, (p, q), (p + 1, q))
            if (p, q + 1) in terms:
                delta_bar[(p, q)] = self._matrix(self.delbar_generators, (p, q), (p, q + 1))

        sigma: Optional[Dict[Bidegree, Matrix]] = {pq: self._sigma(pq) for pq in terms} if real else None
        return BigradedComplex(terms, delta, delta_bar, sigma)


def torus(g: int = 1) -> BigradedComplex:
    """
    Invariant forms on a complex torus of dimension g: C^(p,q) has dim C(g,p) C(g,q) and d = 0

    """

    if g < 1:
        raise ValueError(f"A torus model needs g >= 1, got {g}")
    return ExteriorModel(g, {}, {}).build()


def iwasawa() -> BigradedComplex:
    """
    Invariant forms on the Iwasawa manifold, with del w3 = -w1^w2 and delbar of its conjugate
    equal to minus the conjugate product

    """

    return ExteriorModel(3, {2: {(0, 1): -1}}, {5: {(3, 4): -1}}).build()


def synthetic_d2() -> BigradedComplex:
    """
    The smallest complex with a nonzero d_2: a in C^(0,1), e in C^(1,0), b in C^(1,1),
    c in C^(2,0), with del a = b, delbar e = b, del e = c

    """

    one: Matrix = Matrix.from_rows([[1]])
    return BigradedComplex(
        {(0, 1): 1, (1, 0): 1, (1, 1): 1, (2, 0): 1},
        {(0, 1): one, (1, 0): one},
        {(1, 0): one}
    )


def three_lines() -> MultiFilteredSpace:
    """
    Three distinct lines in the plane, each the step F_i^1 of its own filtration. Any two filtrations
    split, all three do not: the D^p add up to 3 > 2.

    """

    lines: Tuple[Tuple[int, int], ...] = ((1, 0), (0, 1), (1, 1))
    return MultiFilteredSpace(2, tuple(
        Filtration(2, [(0, Subspace.full(2)), (1, Subspace.span([line], 2))]) for line in lines
    ))


@dataclass(frozen=True)
class ModelDescriptor:
    """
    A registered model with its integer parameters and where it comes from

    """

    name: str
    parameters: Dict[str, int] = field(default_factory=dict)
    provenance_note: str = ""

    @property
    def descriptor(self) -> str:
        if not self.parameters:
            return self.name
        return self.name + ":" + ",".join(f"{key}={value}" for key, value in sorted(self.parameters.items()))


@dataclass(frozen=True)
class _RegisteredModel:
    defaults: Dict[str, int]
    factory: Callable[..., BigradedComplex]
    provenance_note: str


MODEL_REGISTRY: Dict[str, _RegisteredModel] = {
    "torus": _RegisteredModel(
        {"g": 1}, torus,
        "Exterior algebra on g (1,0)- and g (0,1)-generators with vanishing differentials; sigma swaps generators"
    ),
    "iwasawa": _RegisteredModel(
        {}, iwasawa,
        "Left-invariant forms on the complex Heisenberg nilmanifold; del w3 = -w1^w2, sigma is conjugation"
    ),
    "synthetic_d2": _RegisteredModel(
        {}, synthetic_d2,
        "Four one-dimensional terms whose spectral sequence has a nonzero d_2 and no cohomology"
    ),
}

_DESCRIPTOR_PATTERN: re.Pattern = re.compile(r"^(?P<name>[A-Za-z_0-9-]+)(:(?P<params>[a-z_]+=-?\d+(,[a-z_]+=-?\d+)*))?$")


def parse_descriptor(text: str) -> ModelDescriptor:
    """
    Parse ``name`` or ``name:key=value,...`` against the registry

    :raises: UnknownModelError

    """

    match: Optional[re.Match] = _DESCRIPTOR_PATTERN.match(text.strip())
    name: str = match.group("name").lower().replace("-", "_") if match else ""

    if name not in MODEL_REGISTRY:
        raise UnknownModelError(text, f"No model matches '{text}'; known: {', '.join(sorted(MODEL_REGISTRY))}")

    registered: _RegisteredModel = MODEL_REGISTRY[name]
    parameters: Dict[str, int] = dict(registered.defaults)

    for assignment in (match.group("params") or "").split(","):
        if not assignment:
            continue
        key, value = assignment.split("=")
        if key not in registered.defaults:
            raise UnknownModelError(text, f"Model '{name}' takes no parameter '{key}'")
        parameters[key] = int(value)

    return ModelDescriptor(name, parameters, registered.provenance_note)


def instantiate(descriptor: ModelDescriptor) -> BigradedComplex:
    return MODEL_REGISTRY[descriptor.name].factory(**descriptor.parameters)


def load_model(text: str) -> BigradedComplex:
    return instantiate(parse_descriptor(text))


def list_models() -> List[ModelDescriptor]:
    return [ModelDescriptor(name, dict(entry.defaults), entry.provenance_note) for name, entry in sorted(MODEL_REGISTRY.items())]


def _random_scalar(rng: random.Random, low: int = -3, high: int = 3) -> Scalar:
    return to_scalar(rng.randint(low, high))


def random_invertible(rng: random.Random, size: int) -> Matrix:
    """A random integer matrix, redrawn until it is invertible"""

    while True:
        candidate: Matrix = Matrix.from_rows(
            [[_random_scalar(rng) for _ in range(size)] for _ in range(size)], size
        )
        if candidate.rank() == size:
            return candidate


def random_subspace_pair(seed: int, max_ambient: int = 8) -> Tuple[Subspace, Subspace]:
    """
    Two random subspaces of one k^d with d <= max_ambient. The second reuses some spanning vectors
    of the first, so their intersection is often nonzero.

    """

    rng: random.Random = random.Random(seed)
    ambient: int = rng.randint(1, max_ambient)

    def vectors(count: int) -> List[Vector]:
        return [tuple(_random_scalar(rng, -2, 2) for _ in range(ambient)) for _ in range(count)]

    left: List[Vector] = vectors(rng.randint(0, ambient))
    shared: List[Vector] = rng.sample(left, rng.randint(0, len(left)))
    right: List[Vector] = shared + vectors(rng.randint(0, ambient - len(shared)))

    return Subspace.span(left, ambient), Subspace.span(right, ambient)


def _flag_filtration(rng: random.Random, dim: int, jump_range: Tuple[int, int]) -> Filtration:
    basis: Matrix = random_invertible(rng, dim)
    labels: List[int] = [rng.randint(*jump_range) for _ in range(dim)]

    return Filtration.from_function(
        dim, min(labels, default=0), max(labels, default=0),
        lambda p: Subspace.span([basis.column(c) for c in range(dim) if labels[c] >= p], dim)
    )


def random_multifiltration(
        seed: int,
        n: int,
        dim: int,
        jump_range: Optional[Tuple[int, int]] = None
) -> MultiFilteredSpace:
    """
    n filtrations, each built from its own random flag with random jump labels

    """

    if n < 1 or dim < 0:
        raise ValueError(f"Need n >= 1 and dim >= 0, got n={n}, dim={dim}")

    rng: random.Random = random.Random(seed)
    jump_range = jump_range or LabDefaults.random_jump_range
    return MultiFilteredSpace(dim, tuple(_flag_filtration(rng, dim, jump_range) for _ in range(n)))


def _split_space(rng: random.Random, n: int, dim: int, jump_range: Tuple[int, int]) -> Tuple[MultiFilteredSpace, Matrix, List[MultiIndex]]:
    basis: Matrix = random_invertible(rng, dim)
    labels: List[MultiIndex] = [tuple(rng.randint(*jump_range) for _ in range(n)) for _ in range(dim)]

    filtrations: List[Filtration] = []
    for axis in range(n):
        filtrations.append(Filtration.from_function(
            dim, jump_range[0], jump_range[1],
            lambda p, axis=axis: Subspace.span(
                [basis.column(c) for c in range(dim) if labels[c][axis] >= p], dim
            )
        ))

    return MultiFilteredSpace(dim, tuple(filtrations)), basis, labels


def random_filtered_map(
        seed: int,
        n: int,
        source_dim: int,
        target_dim: int,
        jump_range: Optional[Tuple[int, int]] = None
) -> FilteredMap:
    """
    A random filtered map between split spaces: in adapted bases, the entry from a basis vector
    labelled a to one labelled b may be nonzero only when b >= a in every coordinate

    """

    rng: random.Random = random.Random(seed)
    jump_range = jump_range or LabDefaults.random_jump_range

    source, source_basis, source_labels = _split_space(rng, n, source_dim, jump_range)
    target, target_basis, target_labels = _split_space(rng, n, target_dim, jump_range)

    adapted: Matrix = Matrix.from_rows(
        [
            [
                _random_scalar(rng, -2, 2) if all(b >= a for a, b in zip(source_labels[c], target_labels[r])) else 0
                for c in range(source_dim)
            ]
            for r in range(target_dim)
        ],
        source_dim
    )

    source_inverse: Matrix = source_basis.inverse() if source_dim else Matrix.zeros(0, 0)
    return FilteredMap(source, target, target_basis @ adapted @ source_inverse)


def random_grading(rng: random.Random, n: int, dim: int, spread: int = 2) -> Tuple[MultiIndex, ...]:
    return tuple(tuple(rng.randint(0, spread) for _ in range(n)) for _ in range(dim))


def random_gauge(rng: random.Random, n: int, grading: Sequence[MultiIndex], density: float = 0.6) -> PolyMatrix:
    """
    A polynomial gauge h with a degree-preserving invertible constant term and, at z^p, entries
    only where they lower degrees by p

    """

    dim: int = len(grading)
    zero: MultiIndex = (0,) * n

    while True:
        constant: Matrix = Matrix.from_rows(
            [[_random_scalar(rng) if grading[r] == grading[c] else 0 for c in range(dim)] for r in range(dim)], dim
        )
        if constant.rank() == dim:
            break

    gauge: PolyMatrix = {zero: constant}
    spread: List[Tuple[int, int]] = [
        (0, max((d[axis] for d in grading), default=0) - min((d[axis] for d in grading), default=0))
        for axis in range(n)
    ]

    for p in box(spread):
        if p == zero:
            continue
        entries: List[List[Scalar]] = [
            [
                _random_scalar(rng, -2, 2)
                if tuple(a + b for a, b in zip(grading[r], p)) == grading[c] and rng.random() < density else to_scalar(0)
                for c in range(dim)
            ]
            for r in range(dim)
        ]
        coefficient: Matrix = Matrix.from_rows(entries, dim)
        if not coefficient.is_zero():
            gauge[p] = coefficient

    return gauge


def random_flat_connection(seed: int, n: int = 2, dim: int = 3) -> Tuple[EquivariantConnection, PolyMatrix]:
    """
    A flat connection h^-1 d h for a random gauge h

    :return: The connection and h

    """

    rng: random.Random = random.Random(seed)
    grading: Tuple[MultiIndex, ...] = random_grading(rng, n, dim)
    gauge: PolyMatrix = random_gauge(rng, n, grading)
    return gauge_of_trivial(n, grading, gauge), gauge


def random_perturbation(seed: int, connection: EquivariantConnection) -> Tuple[EquivariantConnection, MultiIndex, int]:
    """
    Add one random nonzero normal-form coefficient A_(p,i) to a connection

    :return: The perturbed connection, p and i

    """

    rng: random.Random = random.Random(seed)
    grading: Tuple[MultiIndex, ...] = connection.grading
    dim: int = connection.dim
    candidates: List[Tuple[MultiIndex, int, int, int]] = [
        (tuple(c - r for r, c in zip(grading[row], grading[col])), axis, row, col)
        for row in range(dim) for col in range(dim) for axis in range(connection.n)
    ]
    candidates = [(p, axis, row, col) for p, axis, row, col in candidates if all(x >= 0 for x in p) and p[axis] > 0]

    if not candidates:
        raise ValueError("The grading admits no normal-form coefficient")

    p, axis, row, col = rng.choice(candidates)
    entries: List[List[int]] = [[0] * dim for _ in range(dim)]
    entries[row][col] = rng.choice([-2, -1, 1, 2])
    perturbation: Matrix = Matrix.from_rows(entries, dim)

    coeffs: Dict = dict(connection.coeffs)
    coeffs[(p, axis)] = coeffs[(p, axis)] + perturbation if (p, axis) in coeffs else perturbation
    return EquivariantConnection(connection.n, grading, coeffs), p, axis


_ELEMENTARY_SHAPES: Tuple[str, ...] = ("dot", "del", "delbar", "square", "zigzag")


def _elementary(shape: str) -> Tuple[Dict[Bidegree, int], List[Tuple[str, Bidegree, int, int, int]]]:
    """
    A one-dimensional-per-vector building block at the origin

    :return: Per-bidegree counts and arrows (kind, source bidegree, source slot, target slot, coefficient)

    """

    if shape == "dot":
        return {(0, 0): 1}, []
    if shape == "del":
        return {(0, 0): 1, (1, 0): 1}, [("del", (0, 0), 0, 0, 1)]
    if shape == "delbar":
        return {(0, 0): 1, (0, 1): 1}, [("delbar", (0, 0), 0, 0, 1)]
    if shape == "square":
        return {(0, 0): 1, (1, 0): 1, (0, 1): 1, (1, 1): 1}, [
            ("del", (0, 0), 0, 0, 1), ("delbar", (0, 0), 0, 0, 1),
            ("delbar", (1, 0), 0, 0, 1), ("del", (0, 1), 0, 0, -1)
        ]
    # a in (0,1), e in (1,0), b in (1,1), c in (2,0)
    return {(0, 1): 1, (1, 0): 1, (1, 1): 1, (2, 0): 1}, [
        ("del", (0, 1), 0, 0, 1), ("delbar", (1, 0), 0, 0, 1), ("del", (1, 0), 0, 0, 1)
    ]


def random_complex(seed: int, bound: int = 3, pieces: int = 4) -> BigradedComplex:
    """
    A direct sum of shifted elementary blocks, conjugated by random invertible matrices per bidegree.
    Terms stay within 0 <= p, q <= bound.

    """

    rng: random.Random = random.Random(seed)
    terms: Dict[Bidegree, int] = {}
    arrows: List[Tuple[str, Bidegree, int, int, int]] = []

    for _ in range(pieces):
        shape: str = rng.choice(_ELEMENTARY_SHAPES)
        counts, block_arrows = _elementary(shape)
        dx: int = rng.randint(0, bound - (2 if shape == "zigzag" else 1))
        dy: int = rng.randint(0, bound - 1)

        offsets: Dict[Bidegree, int] = {}
        for (p, q), count in counts.items():
            shifted: Bidegree = (p + dx, q + dy)
            offsets[(p, q)] = terms.get(shifted, 0)
            terms[shifted] = terms.get(shifted, 0) + count

        for kind, (p, q), source_slot, target_slot, coefficient in block_arrows:
            target: Bidegree = (p + 1, q) if kind == "del" else (p, q + 1)
            arrows.append((
                kind, (p + dx, q + dy),
                offsets[(p, q)] + source_slot, offsets[target] + target_slot, coefficient
            ))

    def assemble(kind: str) -> Dict[Bidegree, List[List[int]]]:
        grids: Dict[Bidegree, List[List[int]]] = {}
        for arrow_kind, (p, q), source_slot, target_slot, coefficient in arrows:
            if arrow_kind != kind:
                continue
            target: Bidegree = (p + 1, q) if kind == "del" else (p, q + 1)
            grid: List[List[int]] = grids.setdefault((p, q), [[0] * terms[(p, q)] for _ in range(terms[target])])
            grid[target_slot][source_slot] += coefficient
        return grids

    changes: Dict[Bidegree, Matrix] = {pq: random_invertible(rng, d) for pq, d in terms.items()}
    inverses: Dict[Bidegree, Matrix] = {pq: m.inverse() for pq, m in changes.items()}

    def conjugated(kind: str) -> Dict[Bidegree, Matrix]:
        result: Dict[Bidegree, Matrix] = {}
        for (p, q), grid in assemble(kind).items():
            target: Bidegree = (p + 1, q) if kind == "del" else (p, q + 1)
            raw: Matrix = Matrix.from_rows(grid, terms[(p, q)])
            result[(p, q)] = changes[target] @ raw @ inverses[(p, q)]
        return result

    return BigradedComplex(terms, conjugated("del"), conjugated("delbar"))
