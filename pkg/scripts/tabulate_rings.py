"""Tabulate Ch(k, r, d): graded dimensions, scaled relations and the lambda scale factors.

    python3 scripts/tabulate_rings.py --max-r 5 --max-k 2 --max-d 3
    python3 scripts/tabulate_rings.py --json tables.json
"""

import argparse
import json
import time
from dataclasses import asdict, dataclass

from chowring.nonlinear import NonlinearRing, presentation_dims, scaled_relations
from chowring.schubert import poincare_dims


@dataclass
class TableConfig:
    max_k: int = 2
    max_r: int = 5
    max_d: int = 3


@dataclass
class Row:
    k: int
    r: int
    d: int
    dims: list
    total: int
    relations: list
    presentation_matches: bool
    seconds: float


def tabulate(cfg: TableConfig) -> list[Row]:
    rows = []
    for r in range(1, cfg.max_r + 1):
        for k in range(1, min(cfg.max_k, r) + 1):
            for d in range(1, cfg.max_d + 1):
                start = time.perf_counter()
                ring = NonlinearRing(k, r, d)
                dims = poincare_dims(ring.grass)
                names = [f"s{j}" for j in ring.profile]
                rels = [rel.format(names) for rel in scaled_relations(k, r, d)]
                match = presentation_dims(ring)[:-1] == dims
                rows.append(Row(k, r, d, dims, sum(dims), rels, match, time.perf_counter() - start))
    return rows


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--max-k", type=int, default=TableConfig.max_k)
    parser.add_argument("--max-r", type=int, default=TableConfig.max_r)
    parser.add_argument("--max-d", type=int, default=TableConfig.max_d)
    parser.add_argument("--json", help="also write the table to this file")
    args = parser.parse_args(argv)
    cfg = TableConfig(args.max_k, args.max_r, args.max_d)
    rows = tabulate(cfg)

    print(f"{'k':>2} {'r':>2} {'d':>2}  {'dims':<28} {'total':>5}  ok   relations")
    for row in rows:
        rel_text = "; ".join(row.relations) or "-"
        print(f"{row.k:>2} {row.r:>2} {row.d:>2}  {str(row.dims):<28} {row.total:>5}  {'yes' if row.presentation_matches else 'NO ':<3}  {rel_text}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"config": asdict(cfg), "rows": [asdict(r) for r in rows]}, fh, indent=2)
    return 0 if all(r.presentation_matches for r in rows) else 1


if __name__ == "__main__":
    raise SystemExit(main())
