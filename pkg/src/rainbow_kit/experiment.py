"""Batch experiments over generated graph families, report files and DOT export."""
from __future__ import annotations

import csv
import io
import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .colourers import ALGORITHMS, BoundReport, run_algorithm
from .colouring import EdgeColouring, SearchBudget, rc_exact
from .ears import DEFAULT_EAR_CAP
from .generators import RANDOM_FAMILIES, FamilySpec, gen_family
from .graph import Graph
from .metrics import compute_metrics

EXTRA_ALGORITHMS = ("metrics", "rc-exact")

PALETTE = (
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0",
    "#f032e6", "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324", "#fffac8",
    "#800000", "#aaffc3", "#808000", "#ffd8b1", "#000075", "#808080", "#000000",
)


@dataclass
class ExperimentConfig:
    families: list = field(default_factory=list)
    algorithms: list = field(default_factory=list)
    seeds: list = field(default_factory=lambda: [0])
    cap_edges: int = SearchBudget.max_edges
    cap_depth: int = DEFAULT_EAR_CAP
    l: int = 1
    kappa: int | None = None
    rc_check: bool = False
    out_csv: str | None = None
    out_json: str | None = None

    def __post_init__(self):
        self.families = [f if isinstance(f, FamilySpec) else FamilySpec(f["family"], dict(f.get("params", {})))
                         for f in self.families]
        if not self.families:
            raise ValueError("config needs at least one family")
        if not self.algorithms:
            raise ValueError("config needs at least one algorithm")
        for a in self.algorithms:
            if a not in ALGORITHMS + EXTRA_ALGORITHMS:
                raise ValueError(f"unknown algorithm {a!r}; known: {list(ALGORITHMS + EXTRA_ALGORITHMS)}")
        if self.cap_edges <= 0 or self.cap_depth <= 0:
            raise ValueError("caps must be positive")

    @classmethod
    def from_dict(cls, data: dict) -> ExperimentConfig:
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ValueError(f"unknown config keys {sorted(extra)}")
        return cls(**data)

    @classmethod
    def load(cls, path: str) -> ExperimentConfig:
        with open(path) as fh:
            return cls.from_dict(json.load(fh))


def expand(spec: FamilySpec) -> list[FamilySpec]:
    """One spec per combination of list-valued parameters (theta lengths excepted)."""
    keys, pools = [], []
    for k, v in sorted(spec.params.items()):
        if isinstance(v, list) and not (spec.family == "theta" and k == "lengths"
                                        and not any(isinstance(x, list) for x in v)):
            keys.append(k)
            pools.append(v)
    if not keys:
        return [spec]
    out = []
    for combo in itertools.product(*pools):
        p = dict(spec.params)
        p.update(zip(keys, combo))
        out.append(FamilySpec(spec.family, p))
    return out


def instances(cfg: ExperimentConfig) -> list[tuple[str, FamilySpec, int | None]]:
    out = []
    for spec in cfg.families:
        for s in expand(spec):
            if s.family in RANDOM_FAMILIES and "seed" not in s.params:
                out.extend((f"{s.label}#seed={seed}", s, seed) for seed in cfg.seeds)
            else:
                out.append((s.label, s, s.params.get("seed")))
    return out


def _run_instance(job) -> list[BoundReport]:
    idx, name, spec, seed, cfg = job
    try:
        g = gen_family(spec, seed)
        metrics = compute_metrics(g)
    except Exception as exc:
        return [BoundReport(a, 0, seed=seed, instance=name, family=spec.family,
                            error=f"{type(exc).__name__}: {exc}") for a in cfg.algorithms]
    rc = None
    if cfg.rc_check or "rc-exact" in cfg.algorithms:
        if g.m <= cfg.cap_edges:
            rc = rc_exact(g, SearchBudget(max_edges=cfg.cap_edges)).rc_value
    reports = []
    for a in cfg.algorithms:
        if a in EXTRA_ALGORITHMS:
            rep = BoundReport(a, g.n, metrics.vertex_connectivity, metrics.edge_connectivity,
                              metrics.min_degree, metrics.girth, metrics.diameter, seed=seed,
                              verified=True)
        else:
            rep = run_algorithm(a, g, kappa=cfg.kappa, l=cfg.l, seed=seed, metrics=metrics,
                                cap=cfg.cap_depth)
        rep.instance, rep.family, rep.rc = name, spec.family, rc
        if rc is not None and rep.colours_used is not None and rep.colours_used < rc:
            rep.error = f"{rep.colours_used} colours below rc = {rc}"
        reports.append(rep)
    return reports


def worker_count() -> int:
    raw = os.environ.get("RAINBOW_KIT_THREADS", "")
    try:
        return max(1, int(raw)) if raw else 1
    except ValueError:
        return 1


def run_experiment(cfg: ExperimentConfig, workers: int | None = None) -> list[BoundReport]:
    """One report per (instance, algorithm), ordered by instance then algorithm.

    Writes CSV/JSON when the config names output paths.  ``workers``
    defaults to ``RAINBOW_KIT_THREADS`` (1 when unset).
    """
    jobs = [(i, name, spec, seed, cfg) for i, (name, spec, seed) in enumerate(instances(cfg))]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_run_instance, jobs))
    else:
        chunks = [_run_instance(j) for j in jobs]
    reports = [r for chunk in chunks for r in chunk]
    if cfg.out_csv:
        with open(cfg.out_csv, "w", newline="") as fh:
            fh.write(reports_csv(reports))
    if cfg.out_json:
        with open(cfg.out_json, "w") as fh:
            fh.write(reports_json(reports))
    return reports


def all_ok(reports) -> bool:
    return all(r.ok for r in reports)


def reports_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=BoundReport.CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.row())
    return buf.getvalue()


def reports_json(reports) -> str:
    return json.dumps([r.row() for r in reports], indent=2)


def export_dot(g: Graph, c: EdgeColouring | None = None, name: str = "G") -> str:
    """Undirected DOT text; with ``c`` each edge is labelled and coloured by its colour id."""
    if c is not None and len(c) != g.m:
        raise ValueError(f"colouring has {len(c)} edges, graph has {g.m}")
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        lines.append(f"  {v};")
    for e, (u, v) in enumerate(g.edges):
        if c is None:
            lines.append(f"  {u} -- {v};")
        else:
            col = c[e]
            lines.append(f'  {u} -- {v} [label="{col}", color="{PALETTE[col % len(PALETTE)]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
