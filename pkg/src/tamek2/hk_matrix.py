"""Hilbert-symbol matrices, their F2 ranks, and the resulting 4-ranks.

The tame-kernel matrix for Q(sqrt d) has rows (-d, p_i) for the first
t-1 odd primes, a row (-d, v), and a row (d, -1); its columns are the
places 2, p_1, ..., p_t.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from tamek2 import kernels
from tamek2.arith import Factorization, factor_squarefree, hilbert_symbol, norm_tests
from tamek2.errors import ConsistencyFailure, InvalidArgument
from tamek2.zsqrt2 import UNIT_SQ, NormRepresentation, QuadInt, represent_norm, represent_norm_direct


@dataclass(frozen=True)
class SymbolMatrix:
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    entries: tuple[tuple[int, ...], ...]

    @property
    def f2(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(1 if e == -1 else 0 for e in row) for row in self.entries)

    @property
    def bit_rows(self) -> list[int]:
        rows = []
        for row in self.entries:
            bits = 0
            for j, e in enumerate(row):
                if e == -1:
                    bits |= 1 << j
            rows.append(bits)
        return rows

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.col_labels)

    def drop_rows(self, *indices: int) -> "SymbolMatrix":
        n = len(self.entries)
        keep = [i for i in range(n) if i not in {k % n for k in indices}]
        return SymbolMatrix(
            tuple(self.row_labels[i] for i in keep),
            self.col_labels,
            tuple(self.entries[i] for i in keep),
        )

    def format(self) -> str:
        width = max([len(r) for r in self.row_labels] + [4])
        head = " " * width + " | " + " ".join(f"{c:>4}" for c in self.col_labels)
        lines = [head, "-" * len(head)]
        for label, row in zip(self.row_labels, self.entries):
            lines.append(f"{label:>{width}} | " + " ".join(f"{e:>+4d}" for e in row))
        lines.append("")
        lines.append("F2 image:")
        for label, row in zip(self.row_labels, self.f2):
            lines.append(f"{label:>{width}} | " + " ".join(f"{e:>4d}" for e in row))
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {
            "rows": list(self.row_labels),
            "cols": list(self.col_labels),
            "entries": [list(r) for r in self.entries],
            "f2": [list(r) for r in self.f2],
        }


def f2_rank(matrix: SymbolMatrix | list[int], ncols: int | None = None) -> int:
    """Rank over F2 of a symbol matrix (or of bit-packed rows with ``ncols`` columns)."""
    if isinstance(matrix, SymbolMatrix):
        return kernels.f2_rank(matrix.bit_rows, matrix.shape[1])
    if ncols is None:
        ncols = max((r.bit_length() for r in matrix), default=0)
    return kernels.f2_rank(list(matrix), ncols)


def _as_fac(d) -> Factorization:
    fac = d if isinstance(d, Factorization) else factor_squarefree(d)
    if fac.value <= 1:
        raise InvalidArgument(f"d must be > 1, got {fac.value}")
    return fac


def in_X(fac: Factorization) -> bool:
    """d = p1 p2 p3 with distinct primes p_i = 1 mod 8."""
    return fac.n == 0 and fac.m == 0 and fac.t == 3 and all(p % 8 == 1 for p in fac.odd_primes)


@dataclass(frozen=True)
class MatrixContext:
    fac: Factorization
    a: int
    a_prime: int
    v: int
    norm_rep: NormRepresentation | None
    matrix: SymbolMatrix


def _symbol_row(x: int, y: int, places: list[int]) -> tuple[int, ...]:
    return tuple(hilbert_symbol(x, y, p) for p in places)


def matrix_context(d, element: QuadInt | None = None) -> MatrixContext:
    fac = _as_fac(d)
    dv = fac.value
    a, a_prime = norm_tests(fac)
    norm_rep = None
    if a == 1:
        v = 2
    else:
        if element is None:
            norm_rep = represent_norm(fac)
        else:
            if element.norm() != dv:
                raise InvalidArgument(f"{element} does not have norm {dv}")
            norm_rep = NormRepresentation(dv, element.a, element.b)
        v = norm_rep.u + norm_rep.w
    places = [2, *fac.odd_primes]
    rows = []
    labels = []
    for p in fac.odd_primes[:-1]:
        rows.append(_symbol_row(-dv, p, places))
        labels.append(f"(-d,{p})")
    rows.append(_symbol_row(-dv, v, places))
    labels.append(f"(-d,v={v})")
    rows.append(_symbol_row(dv, -1, places))
    labels.append("(d,-1)")
    matrix = SymbolMatrix(tuple(labels), tuple(str(p) for p in places), tuple(rows))
    return MatrixContext(fac, a, a_prime, v, norm_rep, matrix)


def build_matrix(d, element: QuadInt | None = None) -> SymbolMatrix:
    return matrix_context(d, element).matrix


def row_product_ok(matrix: SymbolMatrix) -> bool:
    """Every row except the v-row has entries multiplying to +1."""
    for label, row in zip(matrix.row_labels, matrix.entries):
        if label.startswith("(-d,v="):
            continue
        prod = 1
        for e in row:
            prod *= e
        if prod != 1:
            return False
    return True


@dataclass(frozen=True)
class FourRankReport:
    d: int
    t: int
    v: int
    norm_rep: NormRepresentation | None
    a: int
    a_prime: int
    matrix: SymbolMatrix = field(repr=False)
    rank: int
    four_rank: int
    case_label: int | None = None
    sym2: int | None = None

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "t": self.t,
            "v": self.v,
            "a": self.a,
            "a_prime": self.a_prime,
            "rank": self.rank,
            "four_rank": self.four_rank,
            "case": self.case_label,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def four_rank_k2(d, element: QuadInt | None = None, cross_check: bool = True) -> FourRankReport:
    """4-rank of K2(O_F) for F = Q(sqrt d) from the symbol matrix.

    For d in X the case label is attached and, when ``cross_check`` is set,
    the case-analysis fast path must agree or ConsistencyFailure is raised.
    """
    ctx = matrix_context(d, element)
    fac = ctx.fac
    rank = f2_rank(ctx.matrix)
    four = fac.t - rank + ctx.a_prime - ctx.a
    case_label = None
    if in_X(fac):
        from tamek2.cases import classify_and_rank

        profile, fast = classify_and_rank(*fac.odd_primes, v=ctx.v)
        case_label = profile.case_label
        if cross_check and fast != four:
            raise ConsistencyFailure(
                f"d={fac.value}: matrix path gives {four}, case path gives {fast}",
                {"d": fac.value, "matrix": four, "case": fast, "v": ctx.v},
            )
    return FourRankReport(
        d=fac.value,
        t=fac.t,
        v=ctx.v,
        norm_rep=ctx.norm_rep,
        a=ctx.a,
        a_prime=ctx.a_prime,
        matrix=ctx.matrix,
        rank=rank,
        four_rank=four,
        case_label=case_label,
        sym2=ctx.matrix.entries[fac.t - 1][0],
    )


def reduced_matrix(d) -> SymbolMatrix:
    """The matrix without its (d,-1) row: the 3x4 form used for d in X."""
    return build_matrix(d).drop_rows(-1)


def last_row_deletion_check(d) -> bool:
    m = build_matrix(d)
    return f2_rank(m) == f2_rank(m.drop_rows(-1))


def redei_matrix(d_prime) -> SymbolMatrix:
    fac = d_prime if isinstance(d_prime, Factorization) else factor_squarefree(d_prime)
    if fac.value <= 1 or fac.m or fac.n:
        raise InvalidArgument(f"need an odd squarefree d' > 1, got {fac.value}")
    if any(p % 4 != 1 for p in fac.odd_primes):
        raise InvalidArgument(f"prime divisors of {fac.value} must be 1 mod 4")
    dv = fac.value
    places = list(fac.odd_primes)
    rows = tuple(_symbol_row(-dv, p, places) for p in fac.odd_primes)
    return SymbolMatrix(tuple(f"(-d',{p})" for p in places), tuple(str(p) for p in places), rows)


def redei_four_rank(d_prime) -> tuple[SymbolMatrix, int]:
    """4-rank of the narrow class group of Q(sqrt d') as t - 1 - rank(R)."""
    r = redei_matrix(d_prime)
    return r, r.shape[0] - 1 - f2_rank(r)


def representation_invariance_check(d, k_range=(-1, 0, 1)) -> bool:
    """Four-rank is unchanged when (u, w) is moved by powers of 3+2sqrt2 or
    replaced by the direct-search representation."""
    fac = _as_fac(d)
    base = four_rank_k2(fac, cross_check=False)
    if base.norm_rep is None:
        return True
    z0 = base.norm_rep.element
    elements = []
    for k in k_range:
        z = z0 * (UNIT_SQ**k)
        if z.a < 0:
            z = -z
        elements.append(z)
    elements.append(represent_norm_direct(fac.value).element)
    return all(four_rank_k2(fac, element=z, cross_check=False).four_rank == base.four_rank for z in elements)
