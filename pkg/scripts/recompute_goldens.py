"""
Recompute the frozen model numbers from raw matrices with plain sympy ranks, without the
spectral-sequence code of the library. Run before changing a golden in the verify-all suite.

    python recompute_goldens.py

"""
import json
import logging
import sys
from typing import Callable, Dict, List, Optional, Tuple

import sympy
from sympy.polys.domains import QQ_I

from ReesLab.algebra.complexes import BigradedComplex
from ReesLab.algebra.models import list_models, load_model
from ReesLab.algebra.scalars import Matrix
from ReesLab.client.logger import LogLevel, ReesLabLogHandler

"""Numbers asserted by the verify-all goldens"""
FROZEN: Dict[str, Dict[str, object]] = {
    "torus:g=1": {"betti": [1, 2, 1], "e1_degree_1": {"0,1": 1, "1,0": 1}, "degeneration_page": 1},
    "iwasawa": {"betti_1": 4, "e1_sum_degree_1": 5, "e2_sum_degree_1": 4, "degeneration_page_1": 2},
    "synthetic_d2": {"betti": [0, 0, 0], "degeneration_page": 3},
}


def to_sympy(matrix: Matrix) -> sympy.Matrix:
    return sympy.Matrix(matrix.rows, matrix.cols, [QQ_I.to_sympy(v) for row in matrix.entries for v in row])


class RankOracle:
    """
    Pages of the spectral sequence of the column filtration, as dimensions of
    (Z_r + F^(p+1)) / (B_r + F^(p+1)) with Z_r = {x in F^p : dx in F^(p+r)} and B_r = F^p cap d(F^(p-r+1))

    """

    def __init__(self, complex_: BigradedComplex):
        self.complex_: BigradedComplex = complex_
        self.top: int = complex_.max_degree
        self.differentials: Dict[int, sympy.Matrix] = {k: self._differential(k) for k in range(-1, self.top + 1)}

    def _labels(self, k: int) -> List[int]:
        """The column degree p of every coordinate of C^k"""

        if k < 0:
            return []
        return [p for p in range(k + 1) for _ in range(self.complex_.dim(p, k - p))]

    def _differential(self, k: int) -> sympy.Matrix:
        source, target = self._labels(k), self._labels(k + 1)
        d: sympy.Matrix = sympy.zeros(len(target), len(source))
        if not source or not target:
            return d

        for p in range(k + 1):
            q: int = k - p
            if not self.complex_.dim(p, q):
                continue
            column: int = source.index(p)
            for (tp, tq), block in (((p + 1, q), self.complex_.del_at(p, q)), ((p, q + 1), self.complex_.delbar_at(p, q))):
                if not self.complex_.dim(tp, tq):
                    continue
                row: int = target.index(tp)
                d[row:row + block.rows, column:column + block.cols] += to_sympy(block)

        return d

    def _coordinates(self, k: int, keep: Callable[[int], bool]) -> sympy.Matrix:
        labels: List[int] = self._labels(k)
        chosen: List[int] = [i for i, p in enumerate(labels) if keep(p)]
        basis: sympy.Matrix = sympy.zeros(len(labels), len(chosen))
        for column, i in enumerate(chosen):
            basis[i, column] = 1
        return basis

    @staticmethod
    def _solutions(images: sympy.Matrix, forbidden: List[int]) -> sympy.Matrix:
        """Combinations of the columns of ``images`` vanishing on the forbidden rows"""

        if not forbidden or images.cols == 0:
            return sympy.eye(images.cols)

        kernel: List[sympy.Matrix] = images.extract(forbidden, list(range(images.cols))).nullspace()
        return sympy.Matrix.hstack(*kernel) if kernel else sympy.zeros(images.cols, 0)

    def page_dim(self, r: int, p: int, k: int) -> int:
        labels_next: List[int] = self._labels(k + 1)
        labels_here: List[int] = self._labels(k)

        f_p: sympy.Matrix = self._coordinates(k, lambda s: s >= p)
        f_next: sympy.Matrix = self._coordinates(k, lambda s: s >= p + 1)

        outside: List[int] = [i for i, s in enumerate(labels_next) if s < p + r]
        cycles: sympy.Matrix = f_p * self._solutions(self.differentials[k] * f_p, outside)

        f_back: sympy.Matrix = self._coordinates(k - 1, lambda s: s >= p - r + 1)
        pushed: sympy.Matrix = self.differentials[k - 1] * f_back
        below: List[int] = [i for i, s in enumerate(labels_here) if s < p]
        boundaries: sympy.Matrix = pushed * self._solutions(pushed, below)

        return sympy.Matrix.hstack(cycles, f_next).rank() - sympy.Matrix.hstack(boundaries, f_next).rank()

    def page(self, r: int) -> Dict[Tuple[int, int], int]:
        dims: Dict[Tuple[int, int], int] = {}
        for k in range(self.top + 1):
            for p in range(k + 1):
                if self.complex_.dim(p, k - p):
                    dims[(p, k - p)] = self.page_dim(r, p, k)
        return dims

    def betti(self) -> List[int]:
        return [
            self.differentials[k].cols - self.differentials[k].rank() - self.differentials[k - 1].rank()
            for k in range(self.top + 1)
        ]

    def degeneration(self, degree: Optional[int] = None) -> int:
        infinity: Dict[Tuple[int, int], int] = self.page(self.top + 2)
        r: int = 1
        while True:
            page: Dict[Tuple[int, int], int] = self.page(r)
            if all(page[pq] == infinity[pq] for pq in page if degree is None or sum(pq) == degree):
                return r
            r += 1


def recompute(descriptor: str) -> Dict[str, object]:
    oracle: RankOracle = RankOracle(load_model(descriptor))
    e1, e2 = oracle.page(1), oracle.page(2)
    betti: List[int] = oracle.betti()

    return {
        "betti": betti,
        "betti_1": betti[1] if len(betti) > 1 else 0,
        "e1_degree_1": {f"{p},{q}": d for (p, q), d in sorted(e1.items()) if p + q == 1 and d},
        "e1_sum_degree_1": sum(d for (p, q), d in e1.items() if p + q == 1),
        "e2_sum_degree_1": sum(d for (p, q), d in e2.items() if p + q == 1),
        "degeneration_page": oracle.degeneration(),
        "degeneration_page_1": oracle.degeneration(1),
    }


if __name__ == '__main__':

    logger: logging.Logger = ReesLabLogHandler.get_logger(level=LogLevel.INFO)
    mismatches: int = 0

    for model in list_models():
        logger.info(f"Recomputing {model.descriptor}...")
        numbers: Dict[str, object] = recompute(model.descriptor)
        print(json.dumps({model.descriptor: numbers}, sort_keys=True))

        for name, expected in FROZEN.get(model.descriptor, {}).items():
            if numbers[name] != expected:
                mismatches += 1
                logger.error(f"{model.descriptor}: {name} is {numbers[name]}, frozen as {expected}")

    logger.info(f"Finished with {mismatches} mismatch(es).")
    sys.exit(1 if mismatches else 0)
