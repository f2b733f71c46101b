"""Census of 4-ranks over X = {p1 p2 p3 : p_i = 1 mod 8 distinct primes}."""

from __future__ import annotations

import csv
import os
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from pathlib import Path

from tamek2.arith import sieve_primes
from tamek2.cases import ADMISSIBLE, case_marginals, classify_and_rank, theoretical_densities
from tamek2.errors import ConsistencyFailure, InvalidArgument
from tamek2.hk_matrix import f2_rank, four_rank_k2, redei_four_rank

GOLDEN_RANGE = (50881, 20_000_000)
GOLDEN_TOTAL = 7257
GOLDEN_COUNTS = {0: 2121, 1: 3977, 2: 1086, 3: 73}
GOLDEN_PERCENTAGES = {0: "29.23", 1: "54.80", 2: "14.96", 3: "1.01"}

CSV_FIELDS = ["d", "p1", "p2", "p3", "case", "four_rank", "v", "sym2"]


def enumerate_X(min_d: int, max_d: int) -> list[tuple[int, int, int, int]]:
    """All (d, p1, p2, p3) with min_d <= d < max_d, ascending in d."""
    if min_d < 2 or max_d <= min_d:
        raise InvalidArgument(f"invalid range [{min_d}, {max_d})")
    # p3 is at most max_d / (17 * 41)
    primes = sieve_primes(max_d // (17 * 41) + 2, (1, 8))
    out = []
    n = len(primes)
    for i in range(n):
        p1 = primes[i]
        if p1 * primes[i + 1 if i + 1 < n else i] * primes[i + 2 if i + 2 < n else i] >= max_d:
            break
        for j in range(i + 1, n):
            p2 = primes[j]
            if j + 1 >= n or p1 * p2 * primes[j + 1] >= max_d:
                break
            for k in range(j + 1, n):
                d = p1 * p2 * primes[k]
                if d >= max_d:
                    break
                if d >= min_d:
                    out.append((d, p1, p2, primes[k]))
    out.sort()
    return out


@dataclass(frozen=True)
class SurveyRow:
    d: int
    p1: int
    p2: int
    p3: int
    case: int
    four_rank: int
    v: int
    sym2: int

    def as_list(self) -> list[int]:
        return [self.d, self.p1, self.p2, self.p3, self.case, self.four_rank, self.v, self.sym2]


def survey_one(d: int, p1: int, p2: int, p3: int) -> SurveyRow:
    """Fast path and matrix path for one d; any disagreement raises ConsistencyFailure."""
    profile, fast = classify_and_rank(p1, p2, p3)
    report = four_rank_k2(d, cross_check=False)
    counter = {"d": d, "case_path": fast, "matrix_path": report.four_rank, "v": report.v}
    if fast != report.four_rank:
        raise ConsistencyFailure(f"d={d}: case path {fast} != matrix path {report.four_rank}", counter)
    if report.v != profile.v:
        raise ConsistencyFailure(f"d={d}: paths used different v", counter)
    if f2_rank(report.matrix) != f2_rank(report.matrix.drop_rows(-1)):
        raise ConsistencyFailure(f"d={d}: deleting the (d,-1) row changes the rank", counter)
    if (profile.case_label, fast) not in ADMISSIBLE:
        raise ConsistencyFailure(f"d={d}: inadmissible (case, rank) {(profile.case_label, fast)}", counter)
    sym2 = profile.v_symbols[0]
    if sym2 == -1:
        _, narrow = redei_four_rank(d)
        if narrow != fast:
            counter["redei"] = narrow
            raise ConsistencyFailure(f"d={d}: Redei 4-rank {narrow} != K2 4-rank {fast}", counter)
    return SurveyRow(d, p1, p2, p3, profile.case_label, fast, report.v, sym2)


def _survey_block(block: list[tuple[int, int, int, int]]) -> list[SurveyRow]:
    return [survey_one(*item) for item in block]


@dataclass
class SurveyTally:
    min_d: int
    max_d: int
    total: int = 0
    counts: dict[int, int] = field(default_factory=lambda: {r: 0 for r in range(4)})
    case_counts: dict[tuple[int, int], int] = field(default_factory=lambda: {k: 0 for k in sorted(ADMISSIBLE)})

    def add(self, row: SurveyRow) -> None:
        self.total += 1
        self.counts[row.four_rank] += 1
        self.case_counts[(row.case, row.four_rank)] += 1

    def merge(self, other: "SurveyTally") -> None:
        self.total += other.total
        for k, v in other.counts.items():
            self.counts[k] += v
        for k, v in other.case_counts.items():
            self.case_counts[k] += v

    @property
    def frequencies(self) -> dict[int, Fraction]:
        if not self.total:
            return {}
        return {r: Fraction(c, self.total) for r, c in self.counts.items()}

    @property
    def case_totals(self) -> dict[int, int]:
        out = {c: 0 for c in range(1, 5)}
        for (case, _), n in self.case_counts.items():
            out[case] += n
        return out

    @property
    def expected(self) -> dict[int, Fraction]:
        return theoretical_densities()[0]

    def to_dict(self) -> dict:
        return {
            "min_d": self.min_d,
            "max_d": self.max_d,
            "total": self.total,
            "counts": {str(k): v for k, v in sorted(self.counts.items())},
            "case_counts": {f"{c},{r}": v for (c, r), v in sorted(self.case_counts.items())},
            "frequencies": {str(k): float(v) for k, v in sorted(self.frequencies.items())},
        }


def _chunks(items: list, n: int) -> list[list]:
    size = max(1, -(-len(items) // n))
    return [items[i : i + size] for i in range(0, len(items), size)]


def write_csv(rows: list[SurveyRow], path: Path) -> None:
    """Write rows sorted by d; the file appears atomically."""
    path = Path(path)
    parent = path.parent if str(path.parent) else Path(".")
    fd, tmp = tempfile.mkstemp(dir=parent, prefix=f".{path.name}-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(CSV_FIELDS)
            for row in sorted(rows, key=lambda r: r.d):
                writer.writerow(row.as_list())
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_csv(path: Path) -> list[SurveyRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        return [SurveyRow(*(int(rec[k]) for k in CSV_FIELDS)) for rec in reader]


def run_survey(
    min_d: int,
    max_d: int,
    jobs: int = 1,
    out_path: Path | None = None,
    blocks_per_job: int = 4,
) -> tuple[SurveyTally, list[SurveyRow]]:
    """Run both 4-rank paths on every d in X within [min_d, max_d).

    Work is split into blocks of consecutive d; results are merged in d
    order, so the output does not depend on ``jobs``.
    """
    if out_path is not None:
        parent = Path(out_path).parent
        if not os.access(parent if str(parent) else ".", os.W_OK):
            raise OSError(f"cannot write to {out_path}")
    items = enumerate_X(min_d, max_d)
    if jobs > 1 and len(items) > 1:
        blocks = _chunks(items, jobs * blocks_per_job)
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_survey_block, blocks))
        rows = [row for block in results for row in block]
    else:
        rows = _survey_block(items)
    rows.sort(key=lambda r: r.d)
    tally = SurveyTally(min_d, max_d)
    for row in rows:
        tally.add(row)
    if out_path is not None:
        write_csv(rows, out_path)
    return tally, rows


def percent(count: int, total: int) -> str:
    """count/total as a percentage rounded half-up to two decimals."""
    q = Decimal(count * 100) / Decimal(total)
    return str(q.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP))


def compare_with_published(tally: SurveyTally) -> dict:
    """Compare a tally with the published census and the limiting densities."""
    report: dict = {"range": [tally.min_d, tally.max_d], "total": tally.total}
    if tally.total == 0:
        report["comparisons"] = None
        return report
    if (tally.min_d, tally.max_d) == GOLDEN_RANGE:
        pct = {r: percent(tally.counts[r], tally.total) for r in range(4)}
        report["golden"] = {
            "expected_total": GOLDEN_TOTAL,
            "expected_counts": {str(k): v for k, v in GOLDEN_COUNTS.items()},
            "percentages": {str(k): v for k, v in pct.items()},
            "expected_percentages": {str(k): v for k, v in GOLDEN_PERCENTAGES.items()},
            "match": tally.total == GOLDEN_TOTAL
            and all(tally.counts[r] == GOLDEN_COUNTS[r] for r in range(4))
            and pct == GOLDEN_PERCENTAGES,
        }
    by_rank, by_case = theoretical_densities()
    freq = tally.frequencies
    report["density"] = {
        "rank": {
            str(r): {"empirical": float(freq[r]), "theoretical": float(by_rank[r]), "abs_dev": float(abs(freq[r] - by_rank[r]))}
            for r in range(4)
        },
        "case_rank": {
            f"{c},{r}": {
                "empirical": tally.case_counts[(c, r)] / tally.total,
                "theoretical": float(v),
                "abs_dev": abs(tally.case_counts[(c, r)] / tally.total - float(v)),
            }
            for (c, r), v in sorted(by_case.items())
        },
        "case": {
            str(c): {
                "empirical": tally.case_totals[c] / tally.total,
                "theoretical": float(v),
                "abs_dev": abs(tally.case_totals[c] / tally.total - float(v)),
            }
            for c, v in sorted(case_marginals(by_case).items())
        },
    }
    return report
