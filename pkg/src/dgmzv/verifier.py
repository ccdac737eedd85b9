"""Verification suites: proven identities and conjecture checks, cell by cell.

Each suite is a list of independent cells (one per weight, or per weight and
Lie degree).  Cells may run in worker processes; results are merged in cell
order so reports are byte-identical whatever the worker count.
"""
from __future__ import annotations

import csv
import io
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, Sequence

from .ihara import check_nondegenerate, dg_span, odd_coefficient_matrix, quasi_uneven_free
from .linalg import intersect, left_kernel, rank, row_space
from .period import period_space
from .poly import enumerate_compositions
from .series import a_series, bk_series, os as odd_series, ss as cusp_series
from .tasaka import build_C, build_E, build_E_shifted, d_matrix, dtilde_matrix, eta_map, w_space, xi_map

PASS = "PASS"
FAIL = "FAIL"
CONJECTURE_CONSISTENT = "CONJECTURE_CONSISTENT"
CONJECTURE_VIOLATED = "CONJECTURE_VIOLATED"
VACUOUS = "VACUOUS"
STATUSES = (PASS, FAIL, CONJECTURE_CONSISTENT, CONJECTURE_VIOLATED, VACUOUS)

DEFAULT_MAX_DEPTH2 = 30
DEFAULT_MAX_DEPTH3 = 27
DEFAULT_MAX_TRIPLE = 21
DEFAULT_MAX_LIE = 27
DEFAULT_MAX_LIE_N4 = 18


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    weight: int
    depth: int
    status: str
    lhs: int
    rhs: int
    details: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")


def proven(check_id: str, weight: int, depth: int, lhs: int, rhs: int, ok: bool, details: str = "") -> CheckResult:
    return CheckResult(check_id, weight, depth, PASS if ok else FAIL, lhs, rhs, details)


def conjecture(check_id: str, weight: int, depth: int, lhs: int, rhs: int, ok: bool, details: str = "") -> CheckResult:
    status = CONJECTURE_CONSISTENT if ok else CONJECTURE_VIOLATED
    return CheckResult(check_id, weight, depth, status, lhs, rhs, details)


# --- concurrency ------------------------------------------------------------------

def max_workers() -> int:
    """Worker cap: MZV_MAX_THREADS if set, else the CPU count."""
    raw = os.environ.get("MZV_MAX_THREADS", "").strip()
    if raw:
        try:
            n = int(raw)
        except ValueError:
            raise ValueError(f"MZV_MAX_THREADS must be an integer, got {raw!r}") from None
        return max(1, n)
    return os.cpu_count() or 1


def run_cells(func: Callable, cells: Sequence, workers: int | None = None) -> list[CheckResult]:
    """Apply ``func`` to every cell and concatenate results in cell order."""
    workers = max_workers() if workers is None else max(1, workers)
    workers = min(workers, len(cells))
    if workers <= 1:
        chunks = [func(c) for c in cells]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(func, cells))
    return [r for chunk in chunks for r in chunk]


# --- depth 2 ----------------------------------------------------------------------

def _series_coeff(series, n: int) -> int:
    return int(series[n]) if n <= series.truncation_order else 0


def depth2_cell(weight: int) -> list[CheckResult]:
    if weight % 2:
        size = len(enumerate_compositions(weight, 2))
        return [CheckResult("depth2.odd_weight", weight, 2, VACUOUS, size, 0, "no totally odd pairs in odd weight")]
    e = build_E(weight, 2).matrix
    ker = left_kernel(e)
    dim_p = period_space(weight).dim
    w = w_space(weight, 2).subspace
    order = max(weight, 2)
    expected = _series_coeff(odd_series(order) * odd_series(order) - cusp_series(order), weight)
    r = rank(e)
    return [
        proven("depth2.kernel_is_period", weight, 2, ker.dim, dim_p, ker.dim == dim_p,
               "dim Ker E vs dim of restricted even period polynomials"),
        proven("depth2.w_equals_kernel", weight, 2, w.dim, ker.dim, w == ker,
               "pi_1(W) = Ker E as subspaces"),
        proven("depth2.rank_series", weight, 2, r, expected, r == expected, "rank E vs O^2 - S"),
    ]


def verify_depth2(max_weight: int = DEFAULT_MAX_DEPTH2, workers: int | None = None) -> list[CheckResult]:
    if max_weight < 6:
        raise ValueError("depth-2 suite needs max weight >= 6")
    return run_cells(depth2_cell, list(range(6, max_weight + 1)), workers)


# --- depth 3 ----------------------------------------------------------------------

def depth3_cell(args: tuple[int, int]) -> list[CheckResult]:
    weight, triple_max = args
    if weight % 2 == 0:
        return [CheckResult("depth3.even_weight", weight, 3, VACUOUS, 0, 0, "no totally odd triples in even weight")]
    e = build_E(weight, 3).matrix
    e2 = build_E_shifted(weight, 3, 1).matrix
    c = build_C(weight, 3).matrix
    w = w_space(weight, 3)
    eta, xi = eta_map(weight, 3), xi_map(weight, 3)
    ker_e, ker_e2, ker_c = left_kernel(e), left_kernel(e2), left_kernel(c)
    im_e2 = row_space(e2)
    overlap = intersect(im_e2, ker_e).dim
    rank_c = rank(c)
    order = weight
    o = odd_series(order)
    expected = _series_coeff(o * o * o - o * cusp_series(order) * 2, weight)
    d = d_matrix(weight, 3)
    dd = d @ dtilde_matrix(weight, 3)
    nonzero = sum(1 for row in dd.rows for x in row if x)
    rank_eta, rank_xi = rank(eta), rank(xi)
    xi_e = xi @ e
    out = [
        proven("depth3.eta_injective", weight, 3, rank_eta, w.dim, rank_eta == w.dim, "rank eta vs dim W"),
        proven("depth3.xi_injective", weight, 3, rank_xi, w.dim, rank_xi == w.dim, "rank xi vs dim W"),
        proven("depth3.xi_in_kernel", weight, 3, int(not xi_e.is_zero()), 0, xi_e.is_zero(),
               "xi E = 0, i.e. Im xi inside Ker E^(2) E"),
        proven("depth3.d_after_dtilde", weight, 3, nonzero, 0, nonzero == 0, "nonzero entries of D dtilde"),
        proven("depth3.d_surjective", weight, 3, rank(d), d.nrows, rank(d) == d.nrows, "rank D vs target dim"),
        proven("depth3.kernel_decomposition", weight, 3, ker_c.dim, ker_e2.dim + overlap,
               ker_c.dim == ker_e2.dim + overlap, "dim Ker C = dim Ker E^(2) + dim(Im E^(2) meet Ker E)"),
        conjecture("depth3.rank_series", weight, 3, rank_c, expected, rank_c == expected, "rank C vs O^3 - 2 O S"),
        conjecture("depth3.kernel_in_image", weight, 3, overlap, ker_e.dim, overlap == ker_e.dim,
                   "Ker E inside Im E^(2)"),
        conjecture("depth3.xi_onto_kernel", weight, 3, w.dim, ker_e.dim, w.dim == ker_e.dim, "dim W vs dim Ker E"),
    ]
    if weight <= triple_max:
        products = odd_coefficient_matrix(weight, 3, "product")
        diff = sum(1 for a, b in zip(products.rows, c.rows) for x, y in zip(a, b) if x != y)
        out.append(proven("depth3.triple_product_matrix", weight, 3, diff, 0, diff == 0,
                          "entries where triple-product coefficients differ from C"))
    return out


def verify_depth3(max_weight: int = DEFAULT_MAX_DEPTH3, triple_max: int = DEFAULT_MAX_TRIPLE,
                  workers: int | None = None) -> list[CheckResult]:
    if max_weight < 9:
        raise ValueError("depth-3 suite needs max weight >= 9")
    cells = [(n, triple_max) for n in range(9, max_weight + 1, 2)]
    return run_cells(depth3_cell, cells, workers)


# --- Lie-algebra checks -------------------------------------------------------------

def nondegenerate_cell(args: tuple[int, int]) -> list[CheckResult]:
    weight, n = args
    rep = check_nondegenerate(weight, n)
    details = (f"lie_dim={rep.lie_dim} beta_rank={rep.beta_rank} "
               f"alpha_in_ker_beta={rep.alpha_in_ker_beta} status={rep.status}")
    if rep.lie_dim == 0:
        return [CheckResult("lie.nondegenerate", weight, n, VACUOUS, 0, 0, details)]
    make = proven if rep.by_theorem else conjecture
    return [make("lie.nondegenerate", weight, n, rep.ker_beta_dim, rep.alpha_image_dim, rep.exact, details)]


def quasi_uneven_cell(weight: int) -> list[CheckResult]:
    span = dg_span(weight, 2, "product")
    coeff_rank = rank(odd_coefficient_matrix(weight, 2, "product"))
    ok = quasi_uneven_free(weight, 2)
    return [proven("lie.quasi_uneven_depth2", weight, 2, coeff_rank, span.dim, ok,
                   "rank of odd-coefficient map on the product span vs its dimension")]


def verify_lie(max_weight: int = DEFAULT_MAX_LIE, max_weight_n4: int = DEFAULT_MAX_LIE_N4,
               max_weight_depth2: int = DEFAULT_MAX_DEPTH2, workers: int | None = None) -> list[CheckResult]:
    cells = [(w, 2) for w in range(6, max_weight + 1, 2)]
    cells += [(w, 3) for w in range(9, max_weight + 1, 2)]
    cells += [(w, 4) for w in range(12, max_weight_n4 + 1, 2)]
    out = run_cells(nondegenerate_cell, cells, workers)
    out += run_cells(quasi_uneven_cell, list(range(6, max_weight_depth2 + 1, 2)), workers)
    return out


# --- generating-function table -----------------------------------------------------

@dataclass(frozen=True)
class BKRow:
    weight: int
    depth: int
    predicted_A: int
    predicted_H: int
    computed: int | None
    provenance: str


def _provenance(r: int) -> str:
    if r <= 2:
        return "proved"
    if r == 3:
        return "conjectural"
    return "prediction"


def _computed_dim(weight: int, r: int) -> int | None:
    if r > 3:
        return None
    if not enumerate_compositions(weight, r):
        return 0
    if r == 3:
        return rank(build_C(weight, 3).matrix)
    return rank(build_E(weight, r).matrix)


def bk_table(max_weight: int, max_depth: int) -> tuple[list[BKRow], list[CheckResult]]:
    """Predicted dims of gr_r of the algebra without and with zeta(2), next to
    computed ranks for r <= 3."""
    if max_weight < 1 or max_depth < 1:
        raise ValueError("need max weight and max depth >= 1")
    a = a_series(max_weight, max_depth)
    h = bk_series(max_weight, max_depth)
    rows, checks = [], []
    for n in range(1, max_weight + 1):
        for r in range(1, max_depth + 1):
            pa, ph = int(a.coefficient(n, r)), int(h.coefficient(n, r))
            comp = _computed_dim(n, r)
            rows.append(BKRow(n, r, pa, ph, comp, _provenance(r)))
            if comp is None:
                continue
            make = proven if r <= 2 else conjecture
            checks.append(make("bk.dimension", n, r, comp, pa, comp == pa, "computed rank vs series prediction"))
    return rows, checks


def bk_table_csv(rows: Iterable[BKRow]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["N", "r", "predicted_A", "predicted_H", "computed", "provenance"])
    for row in rows:
        w.writerow([row.weight, row.depth, row.predicted_A, row.predicted_H,
                    "" if row.computed is None else row.computed, row.provenance])
    return buf.getvalue()


# --- reports -----------------------------------------------------------------------

def to_json(results: Iterable[CheckResult]) -> str:
    return json.dumps([asdict(r) for r in results], indent=2) + "\n"


def to_csv(results: Iterable[CheckResult]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["check_id", "N", "r", "status", "lhs", "rhs"])
    for r in results:
        w.writerow([r.check_id, r.weight, r.depth, r.status, r.lhs, r.rhs])
    return buf.getvalue()


def has_failures(results: Iterable[CheckResult]) -> bool:
    return any(r.status == FAIL for r in results)


def violations(results: Iterable[CheckResult]) -> list[CheckResult]:
    return [r for r in results if r.status == CONJECTURE_VIOLATED]


def status_counts(results: Iterable[CheckResult]) -> dict[str, int]:
    counts = dict.fromkeys(STATUSES, 0)
    for r in results:
        counts[r.status] += 1
    return counts


SUITES = ("depth2", "depth3", "lie", "bk")


def run_suites(suites: Sequence[str], max_weight: int | None = None, max_depth: int = 4,
               workers: int | None = None) -> list[CheckResult]:
    """Run the named suites in the given order; ``max_weight`` overrides each
    suite's default range."""
    out: list[CheckResult] = []
    for name in suites:
        if name == "depth2":
            out += verify_depth2(max_weight or DEFAULT_MAX_DEPTH2, workers)
        elif name == "depth3":
            top = max_weight or DEFAULT_MAX_DEPTH3
            out += verify_depth3(top, min(top, DEFAULT_MAX_TRIPLE), workers)
        elif name == "lie":
            top = max_weight or DEFAULT_MAX_LIE
            out += verify_lie(top, min(top, DEFAULT_MAX_LIE_N4), max(6, min(top, DEFAULT_MAX_DEPTH2)), workers)
        elif name == "bk":
            out += bk_table(max_weight or DEFAULT_MAX_DEPTH2, max_depth)[1]
        else:
            raise ValueError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return out
