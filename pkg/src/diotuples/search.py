"""Norm-bounded exhaustive search for D(n)-tuples across imaginary quadratic rings.

Tuples of size k are exactly the k-cliques of the compatibility graph whose
vertices are the nonzero elements within a norm bound and whose edges join
pairs {a, b} with a*b + n a square.  A campaign runs one field per work unit,
persists a JSON checkpoint after each field and is resumable.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass

from . import __version__
from .quad_ring import (
    OmegaMode,
    QuadInt,
    RingParams,
    elem_from_json,
    elem_key,
    elem_to_json,
    iter_elements,
    make_ring,
    parse_elem,
    sqrt_exact,
)
from .tuples import make_tuple, pair_witness, verify_tuple

__all__ = [
    "SearchConfig",
    "CompatGraph",
    "FieldResult",
    "SearchReport",
    "enum_elements",
    "build_graph",
    "find_cliques",
    "brute_force_tuples",
    "run_campaign",
    "load_report",
    "write_report",
    "write_clique_csv",
]

SCHEMA_VERSION = 1


def enum_elements(ring: RingParams, max_norm: int) -> list[QuadInt]:
    """All nonzero elements with norm <= max_norm, sorted by (norm, x, y)."""
    if max_norm < 1:
        raise ValueError("max_norm must be >= 1")
    return sorted(iter_elements(ring, max_norm), key=elem_key)


def _conj_coords(ring: RingParams, x: int, y: int) -> tuple[int, int]:
    if ring.omega_mode is OmegaMode.SQRT:
        return x, -y
    return x + y, -y


@dataclass
class CompatGraph:
    """Compatibility graph: adjacency stored as one bitmask per vertex."""

    ring: RingParams
    n: QuadInt
    vertices: list[QuadInt]
    adj: list[int]

    @property
    def edge_count(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def edges(self) -> list[tuple[QuadInt, QuadInt]]:
        out = []
        for i, m in enumerate(self.adj):
            m >>= i + 1
            j = i + 1
            while m:
                if m & 1:
                    out.append((self.vertices[i], self.vertices[j]))
                m >>= 1
                j += 1
        return out


def build_graph(elements, n: QuadInt) -> CompatGraph:
    """Edge {a, b} iff a*b + n is a square; square tests memoized per product.

    The memo key is canonical under conjugation: w is a square iff conj(w) is.
    """
    vs = sorted(elements, key=elem_key)
    ring = n.ring
    for e in vs:
        if e.ring != ring:
            raise ValueError("elements must live in the ring of n")
        if e.is_zero():
            raise ValueError("zero is not a valid vertex")
    if len(set(vs)) != len(vs):
        raise ValueError("duplicate vertices")

    cnt = len(vs)
    adj = [0] * cnt
    memo: dict[tuple[int, int], bool] = {}
    for i in range(cnt):
        a = vs[i]
        for j in range(i + 1, cnt):
            w = a * vs[j] + n
            k1 = (w.x, w.y)
            k2 = _conj_coords(ring, w.x, w.y)
            key = k1 if k1 <= k2 else k2
            hit = memo.get(key)
            if hit is None:
                hit = sqrt_exact(w) is not None
                memo[key] = hit
            if hit:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    return CompatGraph(ring, n, vs, adj)


def find_cliques(g: CompatGraph, k: int) -> list[tuple[QuadInt, ...]]:
    """All k-cliques, each once, by ordered DFS over vertices sorted by (norm, x, y)."""
    if k < 2:
        raise ValueError("k must be >= 2")
    adj = g.adj
    cnt = len(g.vertices)
    out: list[tuple[int, ...]] = []

    def grow(prefix: list[int], cand: int) -> None:
        if len(prefix) == k:
            out.append(tuple(prefix))
            return
        need = k - len(prefix) - 1
        m = cand
        while m:
            b = m & -m
            m ^= b
            j = b.bit_length() - 1
            nxt = cand & adj[j] & ~((b << 1) - 1)
            if nxt.bit_count() >= need:
                prefix.append(j)
                grow(prefix, nxt)
                prefix.pop()

    for i in range(cnt):
        high = adj[i] >> (i + 1) << (i + 1)
        if high.bit_count() >= k - 1:
            grow([i], high)
    return [tuple(g.vertices[i] for i in idx) for idx in out]


def brute_force_tuples(elements, k: int, n: QuadInt) -> list[tuple[QuadInt, ...]]:
    """Oracle for find_cliques: k-subsets whose pairs all carry witnesses.

    Subsets are enumerated in lexicographic order with early rejection of any
    prefix already containing a witness-less pair (a subset fails verification
    on that same pair, so nothing is lost); accepted subsets are re-passed
    through verify_tuple.  No graph, adjacency or memoization is shared with
    find_cliques.  Intended for small inputs (<= ~200 elements).
    """
    if k < 2:
        raise ValueError("k must be >= 2")
    vs = sorted(elements, key=elem_key)
    cnt = len(vs)
    out: list[tuple[QuadInt, ...]] = []

    def rec(chosen: list[QuadInt], start: int) -> None:
        if len(chosen) == k:
            t = make_tuple(n.ring, n, chosen)
            assert verify_tuple(t).ok
            out.append(tuple(chosen))
            return
        for j in range(start, cnt):
            if cnt - j < k - len(chosen):
                break
            b = vs[j]
            if all(pair_witness(a, b, n) is not None for a in chosen):
                chosen.append(b)
                rec(chosen, j + 1)
                chosen.pop()

    rec([], 0)
    return out


def _clique_orbit(elems: tuple[QuadInt, ...], n: QuadInt) -> list[tuple[QuadInt, ...]]:
    """Images of a clique under {id, -1} and, for real n, conjugation."""
    forms = [elems, tuple(-e for e in elems)]
    if n.half_coords()[1] == 0:
        cj = tuple(e.conj() for e in elems)
        forms += [cj, tuple(-e for e in cj)]
    canon = {tuple(sorted(f, key=elem_key)) for f in forms}
    return sorted(canon, key=lambda t: [elem_key(e) for e in t])


@dataclass
class SearchConfig:
    """Campaign parameters; n is element text so one config spans many rings."""

    D_list: list[int]
    max_norm: int
    k: int
    n: str = "-1"
    symmetry_prune: bool = True
    jobs: int = 1
    checkpoint_path: str | None = None

    def validate(self) -> None:
        if self.max_norm < 1:
            raise ValueError("max_norm must be >= 1")
        if self.k < 2:
            raise ValueError("k must be >= 2")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if not self.D_list:
            raise ValueError("D_list must be nonempty")
        for D in self.D_list:
            make_ring(D)  # raises on non-squarefree D

    def semantic_json(self) -> dict:
        # jobs and checkpoint_path do not affect results, so they are not hashed
        return {
            "D_list": sorted(set(self.D_list)),
            "max_norm": self.max_norm,
            "k": self.k,
            "n": self.n,
            "symmetry_prune": self.symmetry_prune,
        }

    def config_hash(self) -> str:
        blob = json.dumps(self.semantic_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


@dataclass
class FieldResult:
    D: int
    vertex_count: int
    edge_count: int
    cliques: list[dict]  # {"elems": [...]} plus "orbit": [[...]] when pruned
    wall_time: float

    def clique_sets(self, ring: RingParams) -> set[frozenset[QuadInt]]:
        out: set[frozenset[QuadInt]] = set()
        for rec in self.cliques:
            groups = rec.get("orbit", [rec["elems"]])
            for g in groups:
                out.add(frozenset(elem_from_json(e, ring) for e in g))
        return out

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "vertex_count": self.vertex_count,
            "edge_count": self.edge_count,
            "cliques": self.cliques,
            "wall_time": self.wall_time,
        }


@dataclass
class SearchReport:
    config: SearchConfig
    results: list[FieldResult]
    wall_time: float
    schema: int = SCHEMA_VERSION
    version: str = __version__

    @property
    def total_cliques(self) -> int:
        total = 0
        for r in self.results:
            for rec in r.cliques:
                total += len(rec.get("orbit", [rec["elems"]]))
        return total

    def all_clique_sets(self) -> dict[int, set[frozenset[QuadInt]]]:
        return {r.D: r.clique_sets(make_ring(r.D)) for r in self.results}

    def to_json(self) -> dict:
        return {
            "schema": self.schema,
            "version": self.version,
            "config": {**self.config.semantic_json(), "jobs": self.config.jobs},
            "results": [r.to_json() for r in self.results],
            "total_cliques": self.total_cliques,
            "wall_time": self.wall_time,
        }


def _run_field(D: int, max_norm: int, k: int, n_text: str, symmetry_prune: bool) -> dict:
    ring = make_ring(D)
    n = parse_elem(n_text, ring)
    t0 = time.monotonic()
    elems = enum_elements(ring, max_norm)
    g = build_graph(elems, n)
    cliques = find_cliques(g, k)
    for c in cliques:
        # report invariant: every emitted clique re-verifies
        assert verify_tuple(make_tuple(ring, n, c)).ok, f"clique {c} failed re-verification"
    if symmetry_prune:
        records = _group_orbits(cliques, n)
    else:
        records = [{"elems": [elem_to_json(e) for e in c]} for c in cliques]
    return {
        "D": D,
        "vertex_count": len(elems),
        "edge_count": g.edge_count,
        "cliques": records,
        "wall_time": time.monotonic() - t0,
    }


def _group_orbits(cliques: list[tuple[QuadInt, ...]], n: QuadInt) -> list[dict]:
    """Group the found cliques into symmetry orbits: representative + expansion."""
    seen: set[tuple] = set()
    records: list[dict] = []
    for c in cliques:
        key = tuple(elem_key(e) for e in c)
        if key in seen:
            continue
        orbit = _clique_orbit(c, n)
        for f in orbit:
            seen.add(tuple(elem_key(e) for e in f))
        records.append(
            {
                "elems": [elem_to_json(e) for e in orbit[0]],
                "orbit": [[elem_to_json(e) for e in f] for f in orbit],
            }
        )
    return records


def _field_task(args: tuple) -> tuple[int, dict]:
    D, max_norm, k, n_text, symmetry_prune = args
    return D, _run_field(D, max_norm, k, n_text, symmetry_prune)


def _atomic_write_json(path: str, payload: dict) -> None:
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as f:
        json.dump(payload, f, indent=1)
    os.replace(tmp, path)


def _load_checkpoint(cfg: SearchConfig) -> dict[int, dict]:
    path = cfg.checkpoint_path
    if not path or not os.path.exists(path):
        return {}
    with open(path, encoding="utf-8") as f:
        data = json.load(f)
    if data.get("schema") != SCHEMA_VERSION:
        raise ValueError(f"checkpoint {path}: unsupported schema {data.get('schema')}")
    if data.get("config_hash") != cfg.config_hash():
        raise ValueError(f"checkpoint {path} was written by a different configuration")
    return {int(D): res for D, res in data.get("completed", {}).items()}


def _save_checkpoint(cfg: SearchConfig, completed: dict[int, dict]) -> None:
    if not cfg.checkpoint_path:
        return
    _atomic_write_json(
        cfg.checkpoint_path,
        {
            "schema": SCHEMA_VERSION,
            "version": __version__,
            "config_hash": cfg.config_hash(),
            "config": cfg.semantic_json(),
            "completed": {str(D): res for D, res in sorted(completed.items())},
        },
    )


def run_campaign(cfg: SearchConfig, progress=None) -> SearchReport:
    """Run the campaign field by field, checkpointing after each completed D.

    Fields already present in a compatible checkpoint are skipped.  Workers
    (cfg.jobs > 1) each own a single field; the merge is by ascending D and
    independent of completion order.
    """
    cfg.validate()
    t0 = time.monotonic()
    ds = sorted(set(cfg.D_list))
    completed = _load_checkpoint(cfg)
    pending = [D for D in ds if D not in completed]
    tasks = [(D, cfg.max_norm, cfg.k, cfg.n, cfg.symmetry_prune) for D in pending]

    if cfg.jobs == 1 or len(tasks) <= 1:
        for task in tasks:
            D, res = _field_task(task)
            completed[D] = res
            _save_checkpoint(cfg, completed)
            if progress:
                progress(res)
    else:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            futures = [pool.submit(_field_task, t) for t in tasks]
            for fut in as_completed(futures):
                D, res = fut.result()  # a worker failure propagates here
                completed[D] = res
                _save_checkpoint(cfg, completed)
                if progress:
                    progress(res)

    results = [
        FieldResult(
            D=completed[D]["D"],
            vertex_count=completed[D]["vertex_count"],
            edge_count=completed[D]["edge_count"],
            cliques=completed[D]["cliques"],
            wall_time=completed[D]["wall_time"],
        )
        for D in ds
    ]
    return SearchReport(cfg, results, time.monotonic() - t0)


def load_report(path: str) -> dict:
    with open(path, encoding="utf-8") as f:
        return json.load(f)


def write_report(report: SearchReport, path: str) -> None:
    _atomic_write_json(path, report.to_json())


def write_clique_csv(report: SearchReport, path: str) -> None:
    """CSV export: one row per clique, columns D, k, elems..."""
    import csv

    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["D", "k", "elems"])
        for r in report.results:
            ring = make_ring(r.D)
            for s in sorted(
                r.clique_sets(ring),
                key=lambda fs: sorted(elem_key(e) for e in fs),
            ):
                elems = sorted(s, key=elem_key)
                writer.writerow([r.D, len(elems), *[str(e) for e in elems]])
