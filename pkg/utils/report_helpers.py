from typing import Dict, Iterable, List

import pandas as pd

COEFFICIENT_COLUMNS = ["l", "n1", "n2", "m1", "m2", "q0", "q1", "q2", "q3", "modulus"]


def coefficient_table(rows: Iterable[Dict]) -> pd.DataFrame:
    """
    Flatten analysis-coefficient rows {l, n, m, q} into one column per
    component, ordered by (l, n, m).
    """
    records = []
    for row in rows:
        q = row["q"]
        records.append({
            "l": row["l"],
            "n1": row["n"][0],
            "n2": row["n"][1],
            "m1": row["m"][0],
            "m2": row["m"][1],
            "q0": q[0],
            "q1": q[1],
            "q2": q[2],
            "q3": q[3],
            "modulus": sum(v * v for v in q) ** 0.5,
        })
    table = pd.DataFrame(records, columns=COEFFICIENT_COLUMNS)
    return table.sort_values(["l", "n1", "n2", "m1", "m2"], kind="mergesort").reset_index(drop=True)


def coefficient_csv(rows: Iterable[Dict]) -> str:
    return coefficient_table(rows).to_csv(index=False, float_format="%.17g")


def diagnostics_table(diagnostics: List[Dict]) -> pd.DataFrame:
    """Per-k rows (k, diagonal, off_row) with k split into k1/k2."""
    table = pd.DataFrame(diagnostics)
    if table.empty:
        return table
    table[["k1", "k2"]] = pd.DataFrame(table.pop("k").tolist(), index=table.index)
    return table[["k1", "k2"] + [c for c in table.columns if c not in ("k1", "k2")]]


def diagnostics_summary(diagnostics: List[Dict], M: int) -> Dict[str, float]:
    """M²-scaled extremes of the per-k row data, as the criteria read them."""
    table = diagnostics_table(diagnostics)
    if table.empty:
        return {"min_diagonal": 0.0, "max_diagonal": 0.0, "max_off_row": 0.0, "min_bracket": 0.0}
    scale = float(M * M)
    return {
        "min_diagonal": scale * float(table["diagonal"].min()),
        "max_diagonal": scale * float(table["diagonal"].max()),
        "max_off_row": scale * float(table["off_row"].max()),
        "min_bracket": scale * float((table["diagonal"] - table["off_row"]).min()),
    }
