"""Property mining over deterministic instance streams.

A task names a registered property and a source: ``exhaustive`` walks the
property's enumerator up to ``max_points``, ``sampled`` draws ``count``
instances where instance ``i`` uses ``np.random.default_rng([seed, i])``.
Either way instance ``i`` depends only on the task, so the stream can be cut
into index ranges for worker processes and merged back in index order.

Every violation is written as a witness document that :func:`replay` can
re-check without the task that found it.
"""
from __future__ import annotations

import itertools
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from ..groups import ConvergenceGroup
from ..pasting import Cover
from ..spaces import PseudoSpace, SpaceMap
from .docformat import Document, load, serialize
from .properties import REGISTRY, Instance, Property

SOURCES = ("sampled", "exhaustive")


class UnknownProperty(KeyError):
    pass


@dataclass(frozen=True)
class MiningTask:
    prop: str
    source: str = "sampled"
    seed: int = 0
    count: int = 1000
    max_points: Optional[int] = None
    out_dir: Optional[str] = None
    workers: int = 1
    max_witnesses: int = 20

    def __post_init__(self):
        if self.prop not in REGISTRY:
            raise UnknownProperty(self.prop)
        if self.source not in SOURCES:
            raise ValueError(f"source must be one of {SOURCES}")
        if REGISTRY[self.prop].exhaustive is None and self.source == "exhaustive":
            raise ValueError(f"{self.prop} has no exhaustive enumerator")
        if self.count < 0 or self.workers < 1:
            raise ValueError("count must be >= 0 and workers >= 1")

    @property
    def registered(self) -> Property:
        return REGISTRY[self.prop]

    @property
    def bound(self) -> int:
        if self.max_points is not None:
            return self.max_points
        p = self.registered
        return p.exhaustive_max_points if self.source == "exhaustive" else p.default_max_points


@dataclass
class Violation:
    index: int
    message: str
    witness: Optional[str] = None


@dataclass
class MiningReport:
    prop: str
    source: str
    seed: Optional[int]
    max_points: int
    instances: int
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def to_json(self) -> str:
        d = asdict(self)
        d["status"] = "ok" if self.ok else "violated"
        return json.dumps(d, indent=2, sort_keys=True) + "\n"


# instance streams

def instance_at(task: MiningTask, i: int) -> Instance:
    """Sampled instance ``i``; depends on nothing but the task and ``i``."""
    rng = np.random.default_rng([task.seed, i])
    return task.registered.sample(rng, task.bound)


def stream(task: MiningTask, lo: int = 0, hi: Optional[int] = None) -> Iterator[tuple[int, Instance]]:
    if task.source == "sampled":
        hi = task.count if hi is None else min(hi, task.count)
        for i in range(lo, hi):
            yield i, instance_at(task, i)
    else:
        it = task.registered.exhaustive(task.bound)
        yield from zip(itertools.count(lo), itertools.islice(it, lo, hi))


def evaluate(prop: Property, inst: Instance) -> Optional[str]:
    try:
        return prop.check(inst)
    except Exception as exc:  # a crash is a finding, not a pass
        return f"error: {type(exc).__name__}: {exc}"


def _run_range(task: MiningTask, lo: int, hi: Optional[int]) -> tuple[int, list[tuple[int, str, Instance]]]:
    prop = task.registered
    seen, bad = 0, []
    for i, inst in stream(task, lo, hi):
        seen += 1
        msg = evaluate(prop, inst)
        if msg is not None:
            bad.append((i, msg, inst))
    return seen, bad


def _ranges(task: MiningTask) -> list[tuple[int, Optional[int]]]:
    if task.workers == 1:
        return [(0, None)]
    if task.source == "sampled":
        total = task.count
    else:
        total = sum(1 for _ in task.registered.exhaustive(task.bound))
    step = max(1, -(-total // (task.workers * 4)))
    return [(lo, min(lo + step, total)) for lo in range(0, total, step)] or [(0, 0)]


# witnesses

def instance_document(inst: Instance) -> Document:
    """Declare every named object; unnamed domains and carriers get derived names."""
    doc = Document()

    def name_of(space: PseudoSpace, fallback: str) -> str:
        for n, s in doc.spaces.items():
            if s == space:
                return n
        doc.add_space(fallback, space)
        return fallback

    for key, obj in inst.items():
        if isinstance(obj, PseudoSpace):
            doc.add_space(key, obj)
    for key, obj in inst.items():
        if isinstance(obj, SpaceMap):
            dom = name_of(obj.dom, f"{key}_dom")
            cod = name_of(obj.cod, f"{key}_cod")
            doc.add_map(key, obj, dom, cod)
        elif isinstance(obj, Cover):
            doc.add_cover(key, obj, name_of(obj.space, f"{key}_space"))
        elif isinstance(obj, ConvergenceGroup):
            doc.add_group(key, obj, name_of(obj.space, f"{key}_space"))
        elif not isinstance(obj, PseudoSpace):
            raise TypeError(f"instance entry {key!r} has unsupported type {type(obj).__name__}")
    return doc


def document_instance(doc: Document) -> Instance:
    inst: Instance = {}
    for kind, name in doc.order:
        if kind == "space":
            inst[name] = doc.space(name)
        elif kind == "map":
            inst[name] = doc.map(name)
        elif kind == "group":
            inst[name] = doc.group(name)
        else:
            inst[name] = doc.cover(name)
    return inst


def witness_text(prop: str, message: str, inst: Instance) -> str:
    header = f"# property: {prop}\n# violation: {' '.join(message.split())}\n"
    return header + serialize(instance_document(inst))


def write_witness(out_dir: str, prop: str, index: int, message: str, inst: Instance) -> str:
    path = Path(out_dir) / f"{prop}-{index:06d}.fcv"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(witness_text(prop, message, inst), encoding="utf-8")
    return path.name


def replay(path) -> tuple[str, Optional[str]]:
    """Re-check a witness file: returns ``(property, message or None)``."""
    text = Path(path).read_text(encoding="utf-8")
    prop = None
    for line in text.splitlines():
        if line.startswith("# property:"):
            prop = line.split(":", 1)[1].strip()
            break
    if prop not in REGISTRY:
        raise UnknownProperty(prop)
    return prop, evaluate(REGISTRY[prop], document_instance(load(path)))


# driver

def mine(task: MiningTask) -> MiningReport:
    ranges = _ranges(task)
    if task.workers == 1 or len(ranges) == 1:
        results = [_run_range(task, lo, hi) for lo, hi in ranges]
    else:
        with ProcessPoolExecutor(max_workers=task.workers) as pool:
            results = list(pool.map(_run_range, itertools.repeat(task), *zip(*ranges)))
    report = MiningReport(
        prop=task.prop,
        source=task.source,
        seed=task.seed if task.source == "sampled" else None,
        max_points=task.bound,
        instances=sum(seen for seen, _ in results),
    )
    found = sorted((v for _, bad in results for v in bad), key=lambda v: v[0])
    for k, (i, msg, inst) in enumerate(found):
        witness = None
        if task.out_dir is not None and k < task.max_witnesses:
            witness = write_witness(task.out_dir, task.prop, i, msg, inst)
        report.violations.append(Violation(i, msg, witness))
    if task.out_dir is not None:
        os.makedirs(task.out_dir, exist_ok=True)
        Path(task.out_dir, f"{task.prop}-report.json").write_text(report.to_json(), encoding="utf-8")
    return report


def property_names() -> list[str]:
    return sorted(REGISTRY)
