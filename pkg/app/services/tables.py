import logging
from typing import Iterable, List, Optional, Sequence, Tuple

from app.schemas.broadcast import Interval
from app.schemas.cloning import Mode
from app.schemas.tables import TableReport, TableRow
from app.services.broadcast import beta2_ranges

logger = logging.getLogger(__name__)

TABLE_DIGITS = 3

# (β1, β3, [(нижняя, верхняя, нижняя открыта, верхняя открыта), ...]) как напечатано
Row = Tuple[float, float, Sequence[Tuple[float, float, bool, bool]]]

LOCAL_TABLE: List[Row] = [
    (0.15, -0.2, [(0.430, 0.460, True, False)]),
    (0.15, -0.15, [(0.455, 0.460, True, False)]),
    (0.2, 0.2, [(-0.495, -0.430, False, True)]),
    (0.2, 0.15, [(-0.495, -0.455, False, True)]),
    (0.2, 0.1, [(-0.495, -0.480, False, True)]),
    (0.2, -0.1, [(0.480, 0.495, True, False)]),
    (0.2, -0.2, [(0.430, 0.495, True, False)]),
    (0.3, 0.05, [(-0.566, -0.505, False, True), (0.555, 0.566, True, False)]),
    (0.3, 0.1, [(-0.566, -0.480, False, True)]),
    (0.3, -0.1, [(0.48033, 0.566, True, False)]),
    (0.4, 0.05, [(-0.636, -0.505, False, True), (0.555, 0.636, True, False)]),
]

NONLOCAL_TABLE: List[Row] = [
    (-0.2, -0.2, [(0.036, 0.212, True, False)]),
    (-0.2, -0.1, [(0.136, 0.212, True, False)]),
    (-0.2, 0.1, [(-0.212, -0.136, False, True)]),
    (-0.2, 0.2, [(-0.212, -0.036, False, True)]),
    (-0.1, -0.2, [(-0.283, -0.236, False, True), (0.036, 0.283, True, False)]),
    (-0.1, -0.1, [(-0.283, -0.236, False, True), (0.136, 0.283, True, False)]),
    (-0.1, 0.1, [(-0.283, -0.136, False, True), (0.236, 0.283, True, False)]),
    (-0.1, 0.2, [(-0.283, -0.036, False, True), (0.236, 0.283, True, False)]),
    (0.1, -0.2, [(-0.424, -0.236, False, True), (0.036, 0.424, True, False)]),
    (0.1, -0.1, [(-0.424, -0.236, False, True), (0.136, 0.424, True, False)]),
    (0.1, 0.1, [(-0.424, -0.136, False, True), (0.236, 0.424, True, False)]),
    (0.1, 0.2, [(-0.424, -0.036, False, True), (0.236, 0.424, True, False)]),
    (0.2, -0.2, [(-0.495, -0.236, False, True), (0.036, 0.495, True, False)]),
    (0.2, -0.1, [(-0.495, -0.236, False, True), (0.136, 0.495, True, False)]),
    (0.2, 0.1, [(-0.495, -0.136, False, True), (0.236, 0.495, True, False)]),
    (0.2, 0.2, [(-0.495, -0.036, False, True), (0.236, 0.495, True, False)]),
]

TABLES = {"local": ("I", LOCAL_TABLE), "nonlocal": ("II", NONLOCAL_TABLE)}


def published_intervals(row: Row) -> List[Interval]:
    return [
        Interval(lower=lower, upper=upper, lower_open=lower_open, upper_open=upper_open)
        for lower, upper, lower_open, upper_open in row[2]
    ]


def compare_row(table: str, mode: Mode, row: Row) -> TableRow:
    beta1, beta3, _ = row
    published = [interval.rounded(TABLE_DIGITS) for interval in published_intervals(row)]
    computed = [interval.rounded(TABLE_DIGITS) for interval in beta2_ranges(mode, beta1, beta3).intervals]
    match = published == computed
    if not match:
        logger.warning("Таблица %s, β1=%s β3=%s: ожидалось %s, получено %s", table, beta1, beta3, published, computed)
    return TableRow(
        table=table,
        mode=mode,
        beta1=beta1,
        beta3=beta3,
        published=published,
        computed=computed,
        match=match,
    )


def reproduce_tables(modes: Optional[Iterable[Mode]] = None) -> TableReport:
    """Пересчитывает строки таблиц диапазонов β2 и сравнивает с опубликованными."""
    rows = []
    for mode in modes or ("local", "nonlocal"):
        table, fixture = TABLES[mode]
        rows.extend(compare_row(table, mode, row) for row in fixture)
    mismatches = sum(not row.match for row in rows)
    logger.info("Сверено строк: %d, расхождений: %d", len(rows), mismatches)
    return TableReport(rows=rows, mismatches=mismatches)
