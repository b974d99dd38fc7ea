import csv
import json
import math
from decimal import ROUND_HALF_UP, Decimal
from typing import Any, Iterable, TextIO

import numpy as np

CSV_HEADER = ("beta1", "beta2", "beta3", "in_tetrahedron", "broadcastable", "nonlocal_coherence", "hue")


def round_half_up(value: float, digits: int = 3) -> float:
    """Округление до digits знаков, половина - от нуля (0.4303 → 0.430, −0.0357 → −0.036)."""
    quantum = Decimal(1).scaleb(-digits)
    return float(Decimal(repr(float(value))).quantize(quantum, rounding=ROUND_HALF_UP))


def significant(value: float, digits: int = 6) -> float:
    if value == 0 or not math.isfinite(value):
        return float(value)
    return float(f"{value:.{digits}g}")


def round_floats(obj: Any, digits: int = 6) -> Any:
    """Рекурсивно округляет все числа до digits значащих цифр."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return significant(obj, digits)
    if isinstance(obj, dict):
        return {key: round_floats(value, digits) for key, value in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_floats(value, digits) for value in obj]
    return obj


def dumps(obj: Any) -> str:
    return json.dumps(round_floats(obj), ensure_ascii=False, indent=2)



def matrix_from_pairs(data) -> np.ndarray:
    array = np.asarray(data, dtype=float)
    if array.ndim != 3 or array.shape[-1] != 2:
        raise ValueError("Матрица задаётся как вложенный список пар [re, im]")
    return array[..., 0] + 1j * array[..., 1]


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(significant(value))
    return str(value)


def write_csv(records: Iterable, stream: TextIO) -> int:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    count = 0
    for record in records:
        writer.writerow([_csv_value(getattr(record, column)) for column in CSV_HEADER])
        count += 1
    return count


def read_csv(stream: TextIO) -> list[dict]:
    """Читает CSV сетки обратно в словари с типизированными полями."""
    reader = csv.DictReader(stream)
    if tuple(reader.fieldnames or ()) != CSV_HEADER:
        raise ValueError("Неожиданный заголовок CSV")
    rows = []
    for row in reader:
        rows.append({
            "beta1": float(row["beta1"]),
            "beta2": float(row["beta2"]),
            "beta3": float(row["beta3"]),
            "in_tetrahedron": row["in_tetrahedron"] == "true",
            "broadcastable": row["broadcastable"] == "true",
            "nonlocal_coherence": float(row["nonlocal_coherence"]),
            "hue": float(row["hue"]) if row["hue"] else None,
        })
    return rows


def write_jsonl(records: Iterable, stream: TextIO) -> int:
    count = 0
    for record in records:
        stream.write(json.dumps(round_floats(record.model_dump()), ensure_ascii=False))
        stream.write("\n")
        count += 1
    return count
